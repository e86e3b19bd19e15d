#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numqa/formula.hpp"
#include "numqa/table.hpp"

namespace numqa {

/// What happened to one numeric operand during grounding, in left-to-right
/// leaf order.
struct LeafOutcome {
    enum class Kind { unique, ambiguous, missing };
    Kind kind = Kind::missing;
    std::string raw;                 // operand spelling in the source formula
    Decimal value;
    std::vector<CellRef> matches;    // all matching cells, row-major
    std::optional<CellRef> chosen;   // the reference substituted, if any
};

struct LocationReport {
    std::vector<LeafOutcome> outcomes;

    int ambiguity_count() const;
    int missing_count() const;
    bool fully_located() const { return missing_count() == 0; }
};

/// When a value matches several cells we either substitute the row-major
/// first match (default, flagged in the report) or keep the literal.
enum class AmbiguityPolicy { first_match, keep_literal };

struct ResidualLiteral {
    enum class Reason { not_in_table, constant, ambiguous_kept_literal };
    std::string raw;
    Decimal value;
    Reason reason = Reason::not_in_table;
};

std::string_view residual_reason_name(ResidualLiteral::Reason reason);

/// A formula whose grounded numeric leaves were replaced by cell references;
/// leaves that stayed literal are listed with the reason.
struct LocatedFormula {
    Formula ast;
    std::vector<ResidualLiteral> residual_literals;
};

/// Two-pass cell search: exact raw-text match first, then normalized
/// magnitude equality (so the literal 1.7 matches a "1.7%" cell). Matches
/// come back in row-major order; empty means no match.
std::vector<CellRef> locate_value(const Table& table, const NormalizedValue& value,
                                  std::string_view raw);

/// Ground every numeric leaf of the formula against the table. Never throws:
/// degradation (ambiguous or unmatched operands) is reported, not raised.
std::pair<LocatedFormula, LocationReport> locate_formula(
    const Formula& formula, const Table& table,
    AmbiguityPolicy policy = AmbiguityPolicy::first_match);

/// Grounding without evidence: identity formula, every numeric leaf reported
/// missing. Used for records that carry no table.
std::pair<LocatedFormula, LocationReport> locate_formula_without_table(const Formula& formula);

/// Replace every cell reference by the referenced cell's normalized
/// magnitude, producing a formula the evaluator accepts.
Formula resolve(const LocatedFormula& located, const Table& table);
Formula resolve_refs(const Formula& formula, const Table& table);

}  // namespace numqa
