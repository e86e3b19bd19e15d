#include "numqa/decompose.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "numqa/errors.hpp"
#include "numqa/text.hpp"

namespace numqa {

namespace {

bool placeholder_target(const std::string& target, int* index) {
    if (target.size() < 2 || target[0] != 'x') return false;
    int value = 0;
    for (std::size_t i = 1; i < target.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(target[i]))) return false;
        value = value * 10 + (target[i] - '0');
    }
    *index = value;
    return true;
}

class Splitter {
public:
    Formula split(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::binary: {
                Formula left = split(f.left());
                operators.push_back(std::string(op_name(f.op())));
                Formula right = split(f.right());
                return Formula::binary(f.op(), std::move(left), std::move(right))
                    .with_parens(f.parenthesized());
            }
            case Formula::Kind::number: {
                operands.push_back(f.raw_text().empty() ? f.number_value().to_string()
                                                        : f.raw_text());
                return Formula::placeholder(static_cast<int>(operands.size()));
            }
            case Formula::Kind::cell: {
                operands.push_back(ref_to_string(f.cell_ref()));
                return Formula::placeholder(static_cast<int>(operands.size()));
            }
            case Formula::Kind::aggregation: {
                operands.push_back(f.aggregation_target());
                operators.push_back(std::string(agg_name(f.aggregation_kind())));
                return Formula::aggregation(f.aggregation_kind(),
                                            "x" + std::to_string(operands.size()));
            }
            case Formula::Kind::placeholder: return f;
        }
        return f;
    }

    std::vector<std::string> operands;
    std::vector<std::string> operators;
};

Formula parse_operand(const std::string& text) {
    auto tokens = tokenize(text);
    if (tokens.size() == 2 && tokens[0].type == Tok::number)
        return Formula::number(tokens[0].number, tokens[0].raw);
    if (tokens.size() == 3 && tokens[0].type == Tok::minus && tokens[1].type == Tok::number)
        return Formula::number(tokens[1].number.negated(), "-" + tokens[1].raw);
    if (tokens.size() == 2 && tokens[0].type == Tok::cell_ref)
        return Formula::cell(tokens[0].ref);
    throw PlaceholderMismatch("operand '" + text + "' is not a literal or cell reference");
}

class Substituter {
public:
    Substituter(const std::vector<std::string>& operands, int base)
        : operands_(operands), base_(base) {}

    Formula apply(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::placeholder: return parse_operand(operand(f.placeholder_index()));
            case Formula::Kind::binary: {
                Formula left = apply(f.left());
                Formula right = apply(f.right());
                return Formula::binary(f.op(), std::move(left), std::move(right))
                    .with_parens(f.parenthesized());
            }
            case Formula::Kind::aggregation: {
                int index = 0;
                if (placeholder_target(f.aggregation_target(), &index))
                    return Formula::aggregation(f.aggregation_kind(), operand(index));
                return f;
            }
            default: return f;
        }
    }

private:
    const std::string& operand(int placeholder_index) const {
        int i = placeholder_index - base_;
        if (i < 0 || i >= static_cast<int>(operands_.size()))
            throw PlaceholderMismatch("placeholder x" + std::to_string(placeholder_index) +
                                      " has no operand");
        return operands_[i];
    }

    const std::vector<std::string>& operands_;
    int base_;
};

void collect_placeholders(const Formula& f, std::set<int>* out) {
    switch (f.kind()) {
        case Formula::Kind::placeholder: out->insert(f.placeholder_index()); break;
        case Formula::Kind::binary:
            collect_placeholders(f.left(), out);
            collect_placeholders(f.right(), out);
            break;
        case Formula::Kind::aggregation: {
            int index = 0;
            if (placeholder_target(f.aggregation_target(), &index)) out->insert(index);
            break;
        }
        default: break;
    }
}

}  // namespace

Decomposition decompose(const Formula& formula, FormulaForm form) {
    Splitter splitter;
    Decomposition d;
    d.template_ast = splitter.split(formula);
    d.operands = std::move(splitter.operands);
    d.operators = std::move(splitter.operators);
    d.form = form;
    PrintOptions options;
    options.form = form;
    options.compact = form == FormulaForm::infix;
    d.structure = print_formula(d.template_ast, options);
    return d;
}

Formula recompose(const Decomposition& decomposition) {
    Formula tmpl = parse_formula(decomposition.structure).first;
    std::set<int> indices;
    collect_placeholders(tmpl, &indices);
    if (indices.size() != decomposition.operands.size())
        throw PlaceholderMismatch("structure has " + std::to_string(indices.size()) +
                                  " placeholders for " +
                                  std::to_string(decomposition.operands.size()) + " operands");
    if (!indices.empty()) {
        int base = *indices.begin();
        if (base != 0 && base != 1)
            throw PlaceholderMismatch("placeholders must start at x0 or x1");
        int expected = base;
        for (int index : indices)
            if (index != expected++)
                throw PlaceholderMismatch("placeholder indices are not contiguous");
        return Substituter(decomposition.operands, base).apply(tmpl);
    }
    return tmpl;
}

std::vector<EvidenceNumber> extract_evidence_numbers(const std::string& text, int window) {
    std::vector<EvidenceNumber> out;
    auto tokens = whitespace_tokens(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        // strip token-edge punctuation, keep inner grouping/decimal marks
        std::string t = tokens[i];
        while (!t.empty() && !std::isdigit(static_cast<unsigned char>(t.front())) &&
               t.front() != '-')
            t.erase(t.begin());
        while (!t.empty() && !std::isdigit(static_cast<unsigned char>(t.back()))) t.pop_back();
        if (t.empty()) continue;
        auto clean = degroup_number(t);
        if (!clean) continue;
        auto value = Decimal::parse(*clean);
        if (!value) continue;
        std::size_t begin = i >= static_cast<std::size_t>(window) ? i - window : 0;
        std::size_t end = std::min(tokens.size(), i + static_cast<std::size_t>(window) + 1);
        std::string context;
        for (std::size_t j = begin; j < end; ++j) {
            if (!context.empty()) context.push_back(' ');
            context += tokens[j];
        }
        out.push_back({*value, std::move(context)});
    }
    return out;
}

std::vector<InducedCandidate> induce_formula(const Decimal& answer,
                                             const std::vector<EvidenceNumber>& numbers,
                                             const std::string& question, int max_terms) {
    if (max_terms < 1 || max_terms > 4)
        throw ConfigError("induce_formula supports 1 to 4 terms, got " +
                          std::to_string(max_terms));
    const int n = static_cast<int>(numbers.size());

    std::vector<std::string> contexts;
    contexts.reserve(numbers.size());
    for (const auto& num : numbers) contexts.push_back(num.context);
    IdfTable idf(contexts);

    std::vector<InducedCandidate> candidates;
    std::vector<int> chosen;

    auto emit = [&](const std::vector<int>& indices, unsigned signs) {
        Decimal sum;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const Decimal& v = numbers[indices[i]].value;
            sum = (signs >> i) & 1 ? sum.subtract(v) : sum.add(v);
        }
        if (sum != answer) return;
        Formula formula = Formula::number(Decimal(0));
        std::string joined_context;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const Decimal& v = numbers[indices[i]].value;
            bool negative = (signs >> i) & 1;
            if (i == 0) {
                Decimal first = negative ? v.negated() : v;
                formula = Formula::number(first, first.to_string());
            } else {
                formula = Formula::binary(negative ? OpKind::subtract : OpKind::add,
                                          std::move(formula),
                                          Formula::number(v, v.to_string()));
            }
            if (!joined_context.empty()) joined_context.push_back(' ');
            joined_context += numbers[indices[i]].context;
        }
        InducedCandidate c;
        c.text = print_infix(formula);
        c.formula = std::move(formula);
        c.similarity = idf.coverage(question, joined_context);
        c.term_count = static_cast<int>(indices.size());
        candidates.push_back(std::move(c));
    };

    // choose k of n indices, then every sign pattern over them
    auto choose = [&](auto&& self, int next, int remaining) -> void {
        if (remaining == 0) {
            unsigned patterns = 1u << chosen.size();
            for (unsigned signs = 0; signs < patterns; ++signs) emit(chosen, signs);
            return;
        }
        for (int i = next; i <= n - remaining; ++i) {
            chosen.push_back(i);
            self(self, i + 1, remaining - 1);
            chosen.pop_back();
        }
    };
    for (int k = 1; k <= std::min(max_terms, n); ++k) choose(choose, 0, k);

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const InducedCandidate& a, const InducedCandidate& b) {
                         if (a.similarity != b.similarity) return a.similarity > b.similarity;
                         if (a.term_count != b.term_count) return a.term_count < b.term_count;
                         return a.text < b.text;
                     });
    // drop duplicate renderings (same values found at different positions)
    std::vector<InducedCandidate> unique;
    for (auto& c : candidates) {
        bool seen = false;
        for (const auto& u : unique)
            if (u.text == c.text) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(std::move(c));
    }
    return unique;
}

}  // namespace numqa
