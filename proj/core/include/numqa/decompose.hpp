#pragma once

#include <string>
#include <vector>

#include "numqa/formula.hpp"

namespace numqa {

/// A formula split into its operand list, operator list, and x-placeholder
/// structure template. Substituting the operands back into the structure
/// reproduces the source formula.
struct Decomposition {
    /// Operand spellings in left-to-right source order: literal raw texts,
    /// "{Col i, Row j}" tokens for cell leaves, header names for aggregation
    /// targets.
    std::vector<std::string> operands;
    /// Canonical operator names in in-order traversal, e.g.
    /// ["subtract", "add", "subtract"]. Aggregations contribute their
    /// "table_*" name.
    std::vector<std::string> operators;
    /// Source formula with operands replaced by x1..xn placeholders.
    Formula template_ast = Formula::placeholder(1);
    /// Rendered template: compact infix ("(x1-x2)+(x3-x4)") or DSL
    /// ("divide(subtract(x1, x2), x3)") depending on the source form.
    std::string structure;
    FormulaForm form = FormulaForm::infix;
};

Decomposition decompose(const Formula& formula, FormulaForm form = FormulaForm::infix);

/// Inverse of decompose: parses the structure and substitutes the operands.
/// Throws PlaceholderMismatch when the placeholder set and operand list do
/// not line up.
Formula recompose(const Decomposition& decomposition);

/// A number found in text evidence together with the words around it.
struct EvidenceNumber {
    Decimal value;
    std::string context;
};

struct InducedCandidate {
    std::string text;        // e.g. "40 + 2"
    Formula formula = Formula::placeholder(1);
    double similarity = 0.0;
    int term_count = 0;
};

/// Brute-force search for +/- combinations of up to max_terms evidence
/// numbers that evaluate exactly to the answer, ranked by idf-weighted
/// overlap between the question and the chosen numbers' context windows.
/// max_terms is capped at 4 (the search is exponential).
std::vector<InducedCandidate> induce_formula(const Decimal& answer,
                                             const std::vector<EvidenceNumber>& numbers,
                                             const std::string& question, int max_terms = 3);

/// Numbers extracted from free text with +/- `window` whitespace tokens of
/// context each; feeds induce_formula.
std::vector<EvidenceNumber> extract_evidence_numbers(const std::string& text, int window = 20);

}  // namespace numqa
