#include "numqa/locate.hpp"

#include <algorithm>

#include "numqa/errors.hpp"

namespace numqa {

namespace {

// Small non-negative integers kept literal are treated as derived constants
// (divisors like the 3 in an average, percent bases, counts).
bool looks_like_constant(const Decimal& value) {
    return value.is_integer() && !value.is_negative() && value <= Decimal(100);
}

class Grounder {
public:
    Grounder(const Table& table, AmbiguityPolicy policy) : table_(&table), policy_(policy) {}
    explicit Grounder(std::nullptr_t) : table_(nullptr), policy_(AmbiguityPolicy::first_match) {}

    Formula ground(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::number: return number_leaf(f);
            case Formula::Kind::binary: {
                Formula left = ground(f.left());
                Formula right = ground(f.right());
                return Formula::binary(f.op(), std::move(left), std::move(right))
                    .with_parens(f.parenthesized());
            }
            default: return f;
        }
    }

    LocationReport report;
    std::vector<ResidualLiteral> residuals;

private:
    Formula number_leaf(const Formula& f) {
        LeafOutcome outcome;
        outcome.raw = f.raw_text().empty() ? f.number_value().to_string() : f.raw_text();
        outcome.value = f.number_value();
        if (table_)
            outcome.matches =
                locate_value(*table_, NormalizedValue{f.number_value()}, outcome.raw);

        Formula result = f;
        if (outcome.matches.empty()) {
            outcome.kind = LeafOutcome::Kind::missing;
            residuals.push_back({outcome.raw, outcome.value,
                                 looks_like_constant(outcome.value)
                                     ? ResidualLiteral::Reason::constant
                                     : ResidualLiteral::Reason::not_in_table});
        } else if (outcome.matches.size() == 1) {
            outcome.kind = LeafOutcome::Kind::unique;
            outcome.chosen = outcome.matches.front();
            result = Formula::cell(*outcome.chosen);
        } else {
            outcome.kind = LeafOutcome::Kind::ambiguous;
            if (policy_ == AmbiguityPolicy::first_match) {
                outcome.chosen = outcome.matches.front();
                result = Formula::cell(*outcome.chosen);
            } else {
                residuals.push_back({outcome.raw, outcome.value,
                                     ResidualLiteral::Reason::ambiguous_kept_literal});
            }
        }
        report.outcomes.push_back(std::move(outcome));
        return result;
    }

    const Table* table_;
    AmbiguityPolicy policy_;
};

}  // namespace

int LocationReport::ambiguity_count() const {
    return static_cast<int>(std::count_if(
        outcomes.begin(), outcomes.end(),
        [](const LeafOutcome& o) { return o.kind == LeafOutcome::Kind::ambiguous; }));
}

int LocationReport::missing_count() const {
    return static_cast<int>(std::count_if(
        outcomes.begin(), outcomes.end(),
        [](const LeafOutcome& o) { return o.kind == LeafOutcome::Kind::missing; }));
}

std::string_view residual_reason_name(ResidualLiteral::Reason reason) {
    switch (reason) {
        case ResidualLiteral::Reason::not_in_table: return "not_in_table";
        case ResidualLiteral::Reason::constant: return "constant";
        case ResidualLiteral::Reason::ambiguous_kept_literal: return "ambiguous_kept_literal";
    }
    return "not_in_table";
}

std::vector<CellRef> locate_value(const Table& table, const NormalizedValue& value,
                                  std::string_view raw) {
    std::vector<CellRef> exact;
    std::vector<CellRef> by_value;
    for (int r = 1; r <= table.n_rows(); ++r) {
        for (int c = 1; c <= table.n_cols(); ++c) {
            CellRef ref{c, r};
            const Cell& cell = table.cell_at(ref);
            if (!raw.empty() && cell.raw_text == raw) exact.push_back(ref);
            if (cell.normalized && cell.normalized->magnitude == value.magnitude)
                by_value.push_back(ref);
        }
    }
    return exact.empty() ? by_value : exact;
}

std::pair<LocatedFormula, LocationReport> locate_formula(const Formula& formula,
                                                         const Table& table,
                                                         AmbiguityPolicy policy) {
    Grounder grounder(table, policy);
    Formula located = grounder.ground(formula);
    return {LocatedFormula{std::move(located), std::move(grounder.residuals)},
            std::move(grounder.report)};
}

std::pair<LocatedFormula, LocationReport> locate_formula_without_table(const Formula& formula) {
    Grounder grounder(nullptr);
    Formula located = grounder.ground(formula);
    return {LocatedFormula{std::move(located), std::move(grounder.residuals)},
            std::move(grounder.report)};
}

Formula resolve_refs(const Formula& formula, const Table& table) {
    switch (formula.kind()) {
        case Formula::Kind::cell: {
            const Cell& cell = table.cell_at(formula.cell_ref());
            if (!cell.normalized)
                throw NonNumericCell("cell " + ref_to_string(formula.cell_ref()) +
                                     " holds non-numeric text '" + cell.raw_text + "'");
            const Decimal& magnitude = cell.normalized->magnitude;
            return Formula::number(magnitude, magnitude.to_string());
        }
        case Formula::Kind::binary: {
            Formula left = resolve_refs(formula.left(), table);
            Formula right = resolve_refs(formula.right(), table);
            return Formula::binary(formula.op(), std::move(left), std::move(right))
                .with_parens(formula.parenthesized());
        }
        default: return formula;
    }
}

Formula resolve(const LocatedFormula& located, const Table& table) {
    return resolve_refs(located.ast, table);
}

}  // namespace numqa
