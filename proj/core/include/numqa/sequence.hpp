#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numqa/decompose.hpp"
#include "numqa/locate.hpp"
#include "numqa/metrics.hpp"

namespace numqa {

/// Tag and separator tokens of the serialized reasoning sequence. Defaults
/// reproduce the training-string format; the optional <O> slot spells the
/// operator list out in front of the structure.
struct CodecOptions {
    std::string operand_tag = "<V>";
    std::string operator_tag = "<O>";
    std::string structure_tag = "<D>";
    std::string answer_tag = "<A>";
    std::string scale_tag = "<S>";
    std::string type_tag = "<T>";
    std::string separator = " | ";
    bool emit_operator_slot = false;
    MultiplySpelling multiply_spelling = MultiplySpelling::multiple;
};

/// A reasoning sequence: the operand slot, the structure template, the
/// answer (a located formula, a literal, or span text), plus optional scale
/// and answer-type tags. `raw` holds the serialized wire form.
struct ReasoningSequence {
    std::vector<std::string> operands;
    std::optional<std::string> operators;
    std::optional<std::string> structure;
    std::optional<std::string> answer;
    std::optional<std::string> scale;
    std::optional<std::string> answer_type;
    std::string raw;
    std::vector<std::string> diagnostics;

    bool operator==(const ReasoningSequence& rhs) const {
        return operands == rhs.operands && operators == rhs.operators &&
               structure == rhs.structure && answer == rhs.answer && scale == rhs.scale &&
               answer_type == rhs.answer_type;
    }
};

std::string serialize(const ReasoningSequence& sequence, const CodecOptions& options = {});

/// Build the training sequence for a formula answer. The operand slot lists
/// each operand as its cell reference when grounding succeeded, otherwise as
/// its literal; the answer slot prints the located formula. Throws
/// SlotMismatch when the located formula and the decomposition disagree on
/// the operand count.
ReasoningSequence encode(const Decomposition& decomposition, const LocatedFormula& located,
                         const CodecOptions& options = {},
                         const std::optional<std::string>& scale = std::nullopt,
                         const std::optional<std::string>& answer_type = std::nullopt);

/// Answer-only sequences (span / spans / count records): empty <V>/<D>
/// omitted, answer text plus the answer-type tag.
ReasoningSequence encode_answer_only(const std::string& answer_text,
                                     const std::string& answer_type,
                                     const std::optional<std::string>& scale = std::nullopt,
                                     const CodecOptions& options = {});

/// Lenient inverse for untrusted model output: never throws, tolerates
/// irregular whitespace, records problems as diagnostics.
ReasoningSequence decode(const std::string& text, const CodecOptions& options = {});

// --- scoring ---

struct GoldAnswer {
    enum class Kind { number, spans, count };
    Kind kind = Kind::number;
    NumericValue value;              // kind == number
    std::vector<std::string> spans;  // kind == spans
    long long count = 0;             // kind == count
    std::optional<std::string> scale;

    static GoldAnswer number_of(NumericValue v);
    static GoldAnswer spans_of(std::vector<std::string> spans);
    static GoldAnswer count_of(long long n);
};

enum class ScoreOutcome { correct, incorrect, unexecutable };
std::string_view score_outcome_name(ScoreOutcome outcome);

struct ScoreResult {
    ScoreOutcome outcome = ScoreOutcome::unexecutable;
    std::optional<NumericValue> executed;
    ReasoningSequence decoded;
    std::vector<std::string> diagnostics;
};

/// decode -> resolve the answer slot against the table -> evaluate -> compare
/// under the four-decimal rule (spans by normalized set equality). Execution
/// failures come back as the unexecutable outcome, never as exceptions.
ScoreResult score_prediction(const std::string& prediction, const Table* table,
                             const GoldAnswer& gold, const CodecOptions& options = {});

// --- in-context-learning prompts ---

enum class PromptStyle { tatqa, finqa };

/// One demonstration (or the target) of the Entities/Formula/Answer format.
struct PromptExample {
    std::vector<std::string> evidence_lines;
    std::string question;
    std::vector<std::string> entities;
    std::string structure;  // x0-based template
    std::string answer;     // infix (tatqa) or DSL (finqa) formula
};

/// Instruction header + demonstrations + the target question, ending with an
/// "Entities:" cue line for the model to continue.
std::string build_icl_prompt(const std::vector<PromptExample>& demonstrations,
                             const PromptExample& target, PromptStyle style);

}  // namespace numqa
