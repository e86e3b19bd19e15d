#include "numqa/sequence.hpp"

#include <algorithm>
#include <cctype>

#include "numqa/errors.hpp"
#include "numqa/text.hpp"

namespace numqa {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_slot(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t bar = text.find('|', start);
        std::string piece =
            trim(text.substr(start, bar == std::string_view::npos ? bar : bar - start));
        if (!piece.empty()) out.push_back(std::move(piece));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& separator) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += separator;
        out += p;
    }
    return out;
}

}  // namespace

std::string serialize(const ReasoningSequence& sequence, const CodecOptions& options) {
    std::vector<std::string> slots;
    if (!sequence.operands.empty())
        slots.push_back(options.operand_tag + " " + join(sequence.operands, options.separator));
    if (sequence.operators)
        slots.push_back(options.operator_tag + " " + *sequence.operators);
    if (sequence.structure) slots.push_back(options.structure_tag + " " + *sequence.structure);
    if (sequence.answer) slots.push_back(options.answer_tag + " " + *sequence.answer);
    if (sequence.scale) slots.push_back(options.scale_tag + " " + *sequence.scale);
    if (sequence.answer_type) slots.push_back(options.type_tag + " " + *sequence.answer_type);
    return join(slots, options.separator);
}

ReasoningSequence encode(const Decomposition& decomposition, const LocatedFormula& located,
                         const CodecOptions& options, const std::optional<std::string>& scale,
                         const std::optional<std::string>& answer_type) {
    ReasoningSequence seq;
    located.ast.visit_leaves([&](const Formula& leaf) {
        switch (leaf.kind()) {
            case Formula::Kind::cell:
                seq.operands.push_back(ref_to_string(leaf.cell_ref()));
                break;
            case Formula::Kind::number:
                seq.operands.push_back(leaf.raw_text().empty() ? leaf.number_value().to_string()
                                                               : leaf.raw_text());
                break;
            case Formula::Kind::aggregation:
                seq.operands.push_back(leaf.aggregation_target());
                break;
            default: break;
        }
    });
    if (seq.operands.size() != decomposition.operands.size())
        throw SlotMismatch("located formula has " + std::to_string(seq.operands.size()) +
                           " operands, decomposition has " +
                           std::to_string(decomposition.operands.size()));
    if (options.emit_operator_slot)
        seq.operators = join(decomposition.operators, options.separator);
    seq.structure = decomposition.structure;
    PrintOptions print_options;
    print_options.form = decomposition.form;
    print_options.compact = decomposition.form == FormulaForm::infix;
    print_options.multiply_spelling = options.multiply_spelling;
    seq.answer = print_formula(located.ast, print_options);
    seq.scale = scale;
    seq.answer_type = answer_type;
    seq.raw = serialize(seq, options);
    return seq;
}

ReasoningSequence encode_answer_only(const std::string& answer_text,
                                     const std::string& answer_type,
                                     const std::optional<std::string>& scale,
                                     const CodecOptions& options) {
    ReasoningSequence seq;
    seq.answer = answer_text;
    seq.scale = scale;
    seq.answer_type = answer_type;
    seq.raw = serialize(seq, options);
    return seq;
}

ReasoningSequence decode(const std::string& text, const CodecOptions& options) {
    ReasoningSequence seq;
    seq.raw = text;

    struct TagHit {
        std::size_t pos;
        std::size_t len;
        char which;  // V O D A S T
    };
    const std::pair<const std::string*, char> tags[] = {
        {&options.operand_tag, 'V'},   {&options.operator_tag, 'O'},
        {&options.structure_tag, 'D'}, {&options.answer_tag, 'A'},
        {&options.scale_tag, 'S'},     {&options.type_tag, 'T'},
    };
    std::vector<TagHit> hits;
    for (const auto& [tag, which] : tags) {
        std::size_t at = 0;
        bool first = true;
        while ((at = text.find(*tag, at)) != std::string::npos) {
            if (first) {
                hits.push_back({at, tag->size(), which});
                first = false;
            } else {
                seq.diagnostics.push_back(std::string("duplicate tag ") + *tag + " ignored");
            }
            at += tag->size();
        }
    }
    if (hits.empty()) {
        seq.diagnostics.push_back("no slot tags found");
        return seq;
    }
    std::sort(hits.begin(), hits.end(),
              [](const TagHit& a, const TagHit& b) { return a.pos < b.pos; });
    if (hits.front().pos > 0) {
        std::string head = trim(text.substr(0, hits.front().pos));
        if (!head.empty())
            seq.diagnostics.push_back("text before first tag ignored: '" + head + "'");
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
        std::size_t begin = hits[i].pos + hits[i].len;
        std::size_t end = i + 1 < hits.size() ? hits[i + 1].pos : text.size();
        std::string content = trim(text.substr(begin, end - begin));
        // strip a trailing slot separator left before the next tag
        while (!content.empty() && content.back() == '|') content = trim(content.substr(0, content.size() - 1));
        switch (hits[i].which) {
            case 'V': seq.operands = split_slot(content); break;
            case 'O': seq.operators = content; break;
            case 'D': seq.structure = content; break;
            case 'A': seq.answer = content; break;
            case 'S': seq.scale = content; break;
            case 'T': seq.answer_type = content; break;
        }
    }
    if (seq.answer && !seq.answer->empty()) {
        bool formula_like = seq.answer_type ? *seq.answer_type == "arithmetic" : true;
        if (formula_like) {
            try {
                parse_formula(*seq.answer);
            } catch (const Error& e) {
                seq.diagnostics.push_back(std::string("answer slot does not parse: ") + e.what());
            }
        }
    }
    return seq;
}

GoldAnswer GoldAnswer::number_of(NumericValue v) {
    GoldAnswer g;
    g.kind = Kind::number;
    g.value = std::move(v);
    return g;
}

GoldAnswer GoldAnswer::spans_of(std::vector<std::string> spans) {
    GoldAnswer g;
    g.kind = Kind::spans;
    g.spans = std::move(spans);
    return g;
}

GoldAnswer GoldAnswer::count_of(long long n) {
    GoldAnswer g;
    g.kind = Kind::count;
    g.count = n;
    return g;
}

std::string_view score_outcome_name(ScoreOutcome outcome) {
    switch (outcome) {
        case ScoreOutcome::correct: return "correct";
        case ScoreOutcome::incorrect: return "incorrect";
        case ScoreOutcome::unexecutable: return "unexecutable";
    }
    return "unexecutable";
}

namespace {

Formula resolve_all_refs(const Formula& f, const Table* table) {
    if (f.kind() == Formula::Kind::cell) {
        if (!table) throw UnresolvedReference("prediction references a cell but no table given");
        return resolve_refs(f, *table);
    }
    if (f.kind() == Formula::Kind::binary) {
        Formula left = resolve_all_refs(f.left(), table);
        Formula right = resolve_all_refs(f.right(), table);
        return Formula::binary(f.op(), std::move(left), std::move(right))
            .with_parens(f.parenthesized());
    }
    return f;
}

bool scale_matches(const ReasoningSequence& seq, const GoldAnswer& gold) {
    if (!gold.scale || gold.scale->empty()) return true;
    return seq.scale && *seq.scale == *gold.scale;
}

}  // namespace

ScoreResult score_prediction(const std::string& prediction, const Table* table,
                             const GoldAnswer& gold, const CodecOptions& options) {
    ScoreResult result;
    result.decoded = decode(prediction, options);
    const ReasoningSequence& seq = result.decoded;

    if (!seq.answer || seq.answer->empty()) {
        result.outcome = gold.kind == GoldAnswer::Kind::number ? ScoreOutcome::unexecutable
                                                               : ScoreOutcome::incorrect;
        result.diagnostics.push_back("prediction has no answer slot");
        return result;
    }

    switch (gold.kind) {
        case GoldAnswer::Kind::spans: {
            std::vector<std::string> pred_spans = split_slot(*seq.answer);
            bool match = exact_match_spans(pred_spans, gold.spans) && scale_matches(seq, gold);
            result.outcome = match ? ScoreOutcome::correct : ScoreOutcome::incorrect;
            return result;
        }
        case GoldAnswer::Kind::count: {
            auto value = Decimal::parse(trim(*seq.answer));
            bool match = value && value->is_integer() &&
                         *value == Decimal(gold.count) && scale_matches(seq, gold);
            result.outcome = match ? ScoreOutcome::correct : ScoreOutcome::incorrect;
            return result;
        }
        case GoldAnswer::Kind::number: {
            try {
                Formula ast = parse_formula(*seq.answer).first;
                Formula resolved = resolve_all_refs(ast, table);
                NumericValue value = evaluate(resolved, table);
                result.executed = value;
                bool match = exact_match(value, gold.value) && scale_matches(seq, gold);
                result.outcome = match ? ScoreOutcome::correct : ScoreOutcome::incorrect;
            } catch (const Error& e) {
                result.outcome = ScoreOutcome::unexecutable;
                result.diagnostics.push_back(e.what());
            }
            return result;
        }
    }
    return result;
}

namespace {

constexpr std::string_view kTatqaHeader =
    "Answer the given question based on the given evidence.\n"
    "You should generate an formula to answer the arithmetic question.\n"
    "When answering the question, you should firstly generate the used entities.\n"
    "Then you generate the formula structure.\n"
    "Finally you generate the answer formula based on the entities and the formula structure.\n";

constexpr std::string_view kFinqaHeader =
    "Solve the following questions with the programs.\n"
    "The program consists of a sequence of operations.\n"
    "Each operation takes a list of arguments.\n"
    "There are 6 mathematical operations: $add$, $subtract$, $multiply$, $divide$, $greater$, "
    "$exp$.\n"
    "And 4 table aggregation operations: $table-max$, $table-min$, $table-sum$, "
    "$table-average$.\n"
    "The mathematical operations take arguments of either numbers from the given text and "
    "table, or a numerical result from a previous step.\n"
    "The table operations take arguments of table row names.\n"
    "We use the special token #n to denote the result from the n-th step.\n"
    "The given information is enough to solve the question.\n";

void render_example(std::string& out, const PromptExample& example, PromptStyle style,
                    bool is_target) {
    out += "Read the following text and table, and then answer a question:\n";
    for (const auto& line : example.evidence_lines) {
        out += line;
        out += "\n";
    }
    out += "Question: " + example.question + "\n";
    if (is_target) {
        out += "Entities:";
        return;
    }
    const char* separator = style == PromptStyle::tatqa ? " | " : ", ";
    std::string entities;
    for (const auto& e : example.entities) {
        if (!entities.empty()) entities += separator;
        entities += e;
    }
    out += "Entities: " + entities + "\n";
    out += "Formula: " + example.structure + "\n";
    out += "Answer: " + example.answer + "\n";
}

}  // namespace

std::string build_icl_prompt(const std::vector<PromptExample>& demonstrations,
                             const PromptExample& target, PromptStyle style) {
    if (demonstrations.empty()) throw EmptyDemonstrations();
    std::string out(style == PromptStyle::tatqa ? kTatqaHeader : kFinqaHeader);
    for (const auto& demo : demonstrations) {
        out += "\n";
        render_example(out, demo, style, /*is_target=*/false);
    }
    out += "\n";
    render_example(out, target, style, /*is_target=*/true);
    return out;
}

}  // namespace numqa
