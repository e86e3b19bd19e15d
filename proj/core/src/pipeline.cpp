#include "numqa/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "numqa/errors.hpp"

namespace numqa {

using nlohmann::json;
using nlohmann::ordered_json;

// --- ingest ---

namespace {

const json* find_field(const json& j, const char* name) {
    auto it = j.find(name);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string require_string(const json& j, const char* name, int line) {
    const json* field = find_field(j, name);
    if (!field || !field->is_string())
        throw SchemaViolation(line, name, "required string field");
    return field->get<std::string>();
}

std::vector<std::string> optional_string_array(const json& j, const char* name, int line) {
    const json* field = find_field(j, name);
    if (!field) return {};
    if (!field->is_array()) throw SchemaViolation(line, name, "must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : *field) {
        if (!item.is_string()) throw SchemaViolation(line, name, "must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

Table table_from_json(const json& j, int line) {
    if (!j.is_object()) throw SchemaViolation(line, "tables", "table must be an object");
    std::string id = require_string(j, "id", line);
    const json* headers = find_field(j, "column_headers");
    if (!headers || !headers->is_array())
        throw SchemaViolation(line, "tables.column_headers", "required array of header paths");
    std::vector<std::vector<std::string>> column_headers;
    for (const auto& path : *headers) {
        if (!path.is_array())
            throw SchemaViolation(line, "tables.column_headers", "each path must be an array");
        std::vector<std::string> levels;
        for (const auto& level : path) {
            if (!level.is_string())
                throw SchemaViolation(line, "tables.column_headers", "levels must be strings");
            levels.push_back(level.get<std::string>());
        }
        column_headers.push_back(std::move(levels));
    }
    std::vector<std::string> row_headers = optional_string_array(j, "row_headers", line);
    const json* cells_json = find_field(j, "cells");
    if (!cells_json || !cells_json->is_array())
        throw SchemaViolation(line, "tables.cells", "required array of rows");
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : *cells_json) {
        if (!row.is_array())
            throw SchemaViolation(line, "tables.cells", "each row must be an array");
        std::vector<std::string> out_row;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw SchemaViolation(line, "tables.cells", "cells must be strings");
            out_row.push_back(cell.get<std::string>());
        }
        cells.push_back(std::move(out_row));
    }
    std::string caption;
    if (const json* c = find_field(j, "caption")) {
        if (!c->is_string()) throw SchemaViolation(line, "tables.caption", "must be a string");
        caption = c->get<std::string>();
    }
    try {
        return Table(std::move(id), std::move(column_headers), std::move(row_headers),
                     std::move(cells), std::move(caption));
    } catch (const Error& e) {
        throw SchemaViolation(line, "tables", e.what());
    }
}

}  // namespace

Record record_from_json_line(const std::string& line, int line_number) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw SchemaViolation(line_number, "", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaViolation(line_number, "", "line must be a JSON object");

    Record record;
    record.id = require_string(j, "id", line_number);
    if (record.id.empty()) throw SchemaViolation(line_number, "id", "must be non-empty");
    record.question = require_string(j, "question", line_number);
    record.paragraphs = optional_string_array(j, "paragraphs", line_number);

    if (const json* tables = find_field(j, "tables")) {
        if (!tables->is_array())
            throw SchemaViolation(line_number, "tables", "must be an array");
        for (const auto& t : *tables) record.tables.push_back(table_from_json(t, line_number));
    }

    record.answer_type = require_string(j, "answer_type", line_number);
    if (record.answer_type != "arithmetic" && record.answer_type != "span" &&
        record.answer_type != "spans" && record.answer_type != "count")
        throw SchemaViolation(line_number, "answer_type",
                              "must be one of arithmetic|span|spans|count");

    const json* answer = find_field(j, "answer");
    if (!answer || !answer->is_object())
        throw SchemaViolation(line_number, "answer", "required object");
    const json* formula = find_field(*answer, "formula");
    const json* spans = find_field(*answer, "spans");
    const json* count = find_field(*answer, "count");
    int provided = (formula != nullptr) + (spans != nullptr) + (count != nullptr);
    if (provided != 1)
        throw SchemaViolation(line_number, "answer",
                              "exactly one of formula|spans|count is required");
    if (formula) {
        if (!formula->is_string())
            throw SchemaViolation(line_number, "answer.formula", "must be a string");
        if (record.answer_type != "arithmetic")
            throw SchemaViolation(line_number, "answer_type",
                                  "formula answers must be arithmetic");
        record.answer.kind = AnswerSpec::Kind::formula;
        record.answer.formula = formula->get<std::string>();
        try {
            parse_formula(record.answer.formula);
        } catch (const Error& e) {
            throw SchemaViolation(line_number, "answer.formula", e.what());
        }
    } else if (spans) {
        if (record.answer_type != "span" && record.answer_type != "spans")
            throw SchemaViolation(line_number, "answer_type",
                                  "span answers must be span or spans");
        record.answer.kind = AnswerSpec::Kind::spans;
        record.answer.spans = optional_string_array(*answer, "spans", line_number);
        if (record.answer.spans.empty())
            throw SchemaViolation(line_number, "answer.spans", "must list at least one span");
    } else {
        if (!count->is_number_integer())
            throw SchemaViolation(line_number, "answer.count", "must be an integer");
        if (record.answer_type != "count")
            throw SchemaViolation(line_number, "answer_type", "count answers must be count");
        record.answer.kind = AnswerSpec::Kind::count;
        record.answer.count = count->get<long long>();
    }

    if (const json* scale = find_field(j, "scale")) {
        if (!scale->is_string())
            throw SchemaViolation(line_number, "scale", "must be a string");
        record.scale = scale->get<std::string>();
    }
    if (const json* source = find_field(j, "source")) {
        if (!source->is_string())
            throw SchemaViolation(line_number, "source", "must be a string");
        std::string s = source->get<std::string>();
        if (s != "text" && s != "table" && s != "hybrid")
            throw SchemaViolation(line_number, "source", "must be one of text|table|hybrid");
        record.source = s;
    }
    if (const json* history = find_field(j, "history")) {
        if (!history->is_array())
            throw SchemaViolation(line_number, "history", "must be an array");
        for (const auto& turn : *history) {
            if (!turn.is_object())
                throw SchemaViolation(line_number, "history", "turns must be objects");
            QaTurn t;
            t.question = require_string(turn, "q", line_number);
            t.answer = require_string(turn, "a", line_number);
            record.history.push_back(std::move(t));
        }
    }
    return record;
}

IngestResult ingest(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw FileNotFound(path);
    IngestResult result;
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        try {
            result.records.push_back(record_from_json_line(line, line_number));
        } catch (const SchemaViolation& e) {
            result.issues.push_back({e.line, e.field, e.what()});
        }
    }
    return result;
}

// --- evidence ---

std::vector<EvidenceUnit> record_units(const Record& record) {
    std::vector<EvidenceUnit> units;
    for (std::size_t i = 0; i < record.paragraphs.size(); ++i)
        units.push_back(make_paragraph_unit("p" + std::to_string(i), record.paragraphs[i]));
    for (const Table& table : record.tables)
        for (int c = 1; c <= table.n_cols(); ++c)
            units.push_back(
                make_column_unit(table, c, table.id() + ":col" + std::to_string(c)));
    return units;
}

std::string question_with_history(const Record& record) {
    std::string out;
    for (const QaTurn& turn : record.history) {
        out += turn.question;
        out += " ";
        out += turn.answer;
        out += " ";
    }
    out += record.question;
    return out;
}

std::string model_input_text(const Record& record, const std::vector<EvidenceUnit>& units,
                             const RetrievalResult& retrieval) {
    std::string out = question_with_history(record);
    for (const std::string& id : retrieval.selected) {
        for (const EvidenceUnit& unit : units) {
            if (unit.id == id) {
                out += "\n";
                out += unit.text;
                break;
            }
        }
    }
    return out;
}

const Table* primary_table(const Record& record, const Formula* formula, AmbiguityPolicy policy) {
    if (record.tables.empty()) return nullptr;
    if (formula == nullptr || record.tables.size() == 1) return &record.tables.front();
    const Table* best = &record.tables.front();
    int best_located = -1;
    for (const Table& table : record.tables) {
        auto [located, report] = locate_formula(*formula, table, policy);
        int located_count = static_cast<int>(report.outcomes.size()) - report.missing_count();
        if (located_count > best_located) {
            best_located = located_count;
            best = &table;
        }
    }
    return best;
}

GoldAnswer gold_answer(const Record& record) {
    GoldAnswer gold;
    switch (record.answer.kind) {
        case AnswerSpec::Kind::formula: {
            auto [ast, form] = parse_formula(record.answer.formula);
            const Table* table = primary_table(record, &ast);
            Formula resolved = table ? resolve_refs(ast, *table) : ast;
            gold = GoldAnswer::number_of(evaluate(resolved, table));
            break;
        }
        case AnswerSpec::Kind::spans: gold = GoldAnswer::spans_of(record.answer.spans); break;
        case AnswerSpec::Kind::count: gold = GoldAnswer::count_of(record.answer.count); break;
    }
    gold.scale = record.scale;
    return gold;
}

// --- compile ---

namespace {

std::string join_spans(const std::vector<std::string>& spans) {
    std::string out;
    for (const auto& s : spans) {
        if (!out.empty()) out += " | ";
        out += s;
    }
    return out;
}

}  // namespace

CompiledRecord compile_record(const Record& record, const PipelineConfig& config) {
    CompiledRecord out;
    out.id = record.id;
    try {
        std::vector<EvidenceUnit> units = record_units(record);
        out.retrieval =
            retrieve(question_with_history(record), units, config.budget, config.k_max);
        out.input = model_input_text(record, units, out.retrieval);

        switch (record.answer.kind) {
            case AnswerSpec::Kind::formula: {
                out.arithmetic = true;
                auto [ast, form] = parse_formula(record.answer.formula);
                const Table* table = primary_table(record, &ast, config.ambiguity);
                auto [located, report] =
                    table ? locate_formula(ast, *table, config.ambiguity)
                          : locate_formula_without_table(ast);
                out.location = std::move(report);
                if (table) out.primary_table_id = table->id();
                Decomposition decomposition = decompose(ast, form);
                ReasoningSequence seq =
                    encode(decomposition, located, config.codec, record.scale, std::nullopt);
                out.target_sequence = seq.raw;
                break;
            }
            case AnswerSpec::Kind::spans: {
                ReasoningSequence seq = encode_answer_only(
                    join_spans(record.answer.spans), record.answer_type, record.scale,
                    config.codec);
                out.target_sequence = seq.raw;
                break;
            }
            case AnswerSpec::Kind::count: {
                ReasoningSequence seq =
                    encode_answer_only(std::to_string(record.answer.count), "count",
                                       record.scale, config.codec);
                out.target_sequence = seq.raw;
                break;
            }
        }
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

namespace {

std::vector<RetrievalTrainingRow> training_rows(const Record& record,
                                                const CompiledRecord& compiled) {
    std::vector<RetrievalTrainingRow> rows;
    std::vector<EvidenceUnit> units = record_units(record);
    std::string question = question_with_history(record);

    // positive column units: columns holding a located operand of the gold formula
    std::vector<CellRef> chosen;
    for (const LeafOutcome& outcome : compiled.location.outcomes)
        if (outcome.chosen) chosen.push_back(*outcome.chosen);
    // positive paragraphs: contain an unlocated operand's spelling or a gold span
    std::vector<std::string> needles;
    for (const LeafOutcome& outcome : compiled.location.outcomes)
        if (outcome.kind == LeafOutcome::Kind::missing) {
            needles.push_back(outcome.raw);
            needles.push_back(outcome.value.to_string());
        }
    for (const auto& span : record.answer.spans) needles.push_back(span);

    for (const EvidenceUnit& unit : units) {
        int label = 0;
        if (unit.kind == EvidenceUnit::Kind::table_column) {
            if (unit.table_id == compiled.primary_table_id)
                for (CellRef ref : chosen)
                    if (ref.col == unit.column) {
                        label = 1;
                        break;
                    }
        } else {
            for (const auto& needle : needles)
                if (!needle.empty() && unit.text.find(needle) != std::string::npos) {
                    label = 1;
                    break;
                }
        }
        rows.push_back({record.id, unit.id, question, unit.text, label});
    }
    return rows;
}

}  // namespace

PipelineArtifacts run_pipeline(const std::vector<Record>& records, const PipelineConfig& config) {
    std::vector<CompiledRecord> results(records.size());
    int workers = std::clamp(config.workers, 1, 64);
    if (workers <= 1 || records.size() <= 1) {
        for (std::size_t i = 0; i < records.size(); ++i)
            results[i] = compile_record(records[i], config);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= records.size()) break;
                results[i] = compile_record(records[i], config);
            }
        };
        std::vector<std::thread> threads;
        for (int t = 1; t < workers; ++t) threads.emplace_back(work);
        work();
        for (auto& thread : threads) thread.join();
    }

    // merge in record-id order, independent of worker scheduling
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return results[a].id < results[b].id;
    });

    PipelineArtifacts artifacts;
    for (std::size_t i : order) {
        const CompiledRecord& compiled = results[i];
        if (compiled.error.empty()) {
            artifacts.total_operands += static_cast<int>(compiled.location.outcomes.size());
            artifacts.ambiguous_operands += compiled.location.ambiguity_count();
            artifacts.missing_operands += compiled.location.missing_count();
        } else {
            ++artifacts.failures;
        }
        auto rows = training_rows(records[i], compiled);
        artifacts.retrieval_training.insert(artifacts.retrieval_training.end(), rows.begin(),
                                            rows.end());
        artifacts.compiled.push_back(std::move(results[i]));
    }
    return artifacts;
}

// --- evaluation ---

std::map<std::string, std::string> read_predictions(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw FileNotFound(path);
    std::map<std::string, std::string> out;
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaViolation(line_number, "", std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) throw SchemaViolation(line_number, "", "line must be an object");
        out[require_string(j, "id", line_number)] =
            require_string(j, "prediction", line_number);
    }
    return out;
}

namespace {

std::vector<std::string> split_answer_spans(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t bar = text.find('|', start);
        std::string piece =
            text.substr(start, bar == std::string::npos ? bar : bar - start);
        // trim
        std::size_t b = piece.find_first_not_of(" \t");
        std::size_t e = piece.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(piece.substr(b, e - b + 1));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

std::vector<std::string> gold_f1_spans(const GoldAnswer& gold) {
    switch (gold.kind) {
        case GoldAnswer::Kind::spans: return gold.spans;
        case GoldAnswer::Kind::number: return {gold.value.to_string()};
        case GoldAnswer::Kind::count: return {std::to_string(gold.count)};
    }
    return {};
}

std::vector<std::string> pred_f1_spans(const ScoreResult& score, const GoldAnswer& gold) {
    if (!score.decoded.answer) return {};
    if (gold.kind == GoldAnswer::Kind::spans) return split_answer_spans(*score.decoded.answer);
    if (score.executed) return {score.executed->to_string()};
    return {*score.decoded.answer};
}

}  // namespace

EvalReport evaluate_run(const std::vector<Record>& records,
                        const std::map<std::string, std::string>& predictions,
                        const PipelineConfig& config, std::vector<RecordOutcome>* outcomes_out) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].id < records[b].id;
    });

    std::vector<RecordOutcome> outcomes;
    std::vector<RecordLabel> labels;
    for (std::size_t i : order) {
        const Record& record = records[i];
        RecordOutcome outcome;
        outcome.id = record.id;
        labels.push_back({record.answer_type, record.source.value_or("")});

        GoldAnswer gold;
        bool gold_ok = true;
        try {
            gold = gold_answer(record);
        } catch (const Error& e) {
            gold_ok = false;
            outcome.diagnostics.push_back(std::string("gold answer failed to evaluate: ") +
                                          e.what());
        }

        auto it = predictions.find(record.id);
        if (it == predictions.end()) {
            outcome.missing_prediction = true;
            outcome.em = false;
            outcome.diagnostics.push_back("missing prediction");
            if (record.answer.kind == AnswerSpec::Kind::formula) outcome.execution = false;
            outcomes.push_back(std::move(outcome));
            continue;
        }
        if (!gold_ok) {
            outcome.em = false;
            outcomes.push_back(std::move(outcome));
            continue;
        }

        auto [ast, form] = record.answer.kind == AnswerSpec::Kind::formula
                               ? parse_formula(record.answer.formula)
                               : std::make_pair(Formula::number(Decimal(0)), FormulaForm::infix);
        const Table* table = record.answer.kind == AnswerSpec::Kind::formula
                                 ? primary_table(record, &ast, config.ambiguity)
                                 : (record.tables.empty() ? nullptr : &record.tables.front());

        ScoreResult score = score_prediction(it->second, table, gold, config.codec);
        outcome.em = score.outcome == ScoreOutcome::correct;
        outcome.unexecutable = score.outcome == ScoreOutcome::unexecutable;
        outcome.f1 = numeracy_f1(pred_f1_spans(score, gold), gold_f1_spans(gold));
        for (auto& d : score.diagnostics) outcome.diagnostics.push_back(std::move(d));

        if (record.answer.kind == AnswerSpec::Kind::formula) {
            outcome.execution = score.outcome == ScoreOutcome::correct;
            // gold program: the located formula (or the raw one when no table)
            bool program = false;
            if (score.decoded.answer) {
                Formula gold_program =
                    table ? locate_formula(ast, *table, config.ambiguity).first.ast : ast;
                program = program_accuracy_text(*score.decoded.answer, gold_program) ||
                          program_accuracy_text(*score.decoded.answer, ast);
            }
            outcome.program = program;
        }
        outcomes.push_back(std::move(outcome));
    }

    EvalReport report = aggregate(outcomes, labels);
    if (outcomes_out) *outcomes_out = std::move(outcomes);
    return report;
}

// --- prompts ---

namespace {

std::vector<std::string> table_prompt_lines(const Table& table) {
    std::vector<std::string> lines;
    for (int level = 0; level < table.header_depth(); ++level) {
        std::string line = "—";
        for (int c = 1; c <= table.n_cols(); ++c) {
            line += " | ";
            line += table.column_path(c)[level];
        }
        lines.push_back(std::move(line));
    }
    for (int r = 1; r <= table.n_rows(); ++r) {
        std::string line = table.row_header(r);
        for (int c = 1; c <= table.n_cols(); ++c) {
            line += " | ";
            line += table.cell_at({c, r}).raw_text;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

bool appears_in_paragraphs(const Record& record, const LeafOutcome& outcome) {
    for (const auto& paragraph : record.paragraphs) {
        if (!outcome.raw.empty() && paragraph.find(outcome.raw) != std::string::npos)
            return true;
        if (paragraph.find(outcome.value.to_string()) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

PromptExample make_prompt_example(const Record& record, PromptStyle style) {
    PromptExample example;
    for (const auto& paragraph : record.paragraphs) example.evidence_lines.push_back(paragraph);
    for (const Table& table : record.tables) {
        auto lines = table_prompt_lines(table);
        example.evidence_lines.insert(example.evidence_lines.end(), lines.begin(), lines.end());
    }
    example.question = question_with_history(record);
    if (record.answer.kind != AnswerSpec::Kind::formula) {
        if (record.answer.kind == AnswerSpec::Kind::spans)
            example.answer = join_spans(record.answer.spans);
        else
            example.answer = std::to_string(record.answer.count);
        return example;
    }

    auto [ast, form] = parse_formula(record.answer.formula);
    const Table* table = primary_table(record, &ast);
    LocationReport report;
    if (table) report = locate_formula(ast, *table).second;

    // Entities are the operands grounded in the evidence (finqa style lists
    // every operand); the rest stay literal in the structure template.
    std::size_t leaf_index = 0;
    std::function<Formula(const Formula&)> rewrite = [&](const Formula& f) -> Formula {
        switch (f.kind()) {
            case Formula::Kind::binary: {
                Formula left = rewrite(f.left());
                Formula right = rewrite(f.right());
                return Formula::binary(f.op(), std::move(left), std::move(right))
                    .with_parens(f.parenthesized());
            }
            case Formula::Kind::number: {
                std::size_t index = leaf_index++;
                const LeafOutcome* outcome =
                    index < report.outcomes.size() ? &report.outcomes[index] : nullptr;
                bool located = outcome && outcome->kind != LeafOutcome::Kind::missing;
                bool entity = style == PromptStyle::finqa || located ||
                              (outcome && appears_in_paragraphs(record, *outcome));
                if (!entity) return f;
                std::string surface;
                if (style == PromptStyle::tatqa && located && outcome->chosen)
                    surface = table->cell_at(*outcome->chosen).raw_text;
                else
                    surface = f.raw_text().empty() ? f.number_value().to_string() : f.raw_text();
                example.entities.push_back(std::move(surface));
                return Formula::placeholder(static_cast<int>(example.entities.size()) - 1);
            }
            case Formula::Kind::aggregation: {
                example.entities.push_back(f.aggregation_target());
                return Formula::aggregation(
                    f.aggregation_kind(),
                    "x" + std::to_string(example.entities.size() - 1));
            }
            default: return f;
        }
    };
    Formula display = rewrite(ast);

    PrintOptions structure_options;
    structure_options.form = style == PromptStyle::finqa ? FormulaForm::dsl : FormulaForm::infix;
    structure_options.multiply_spelling = MultiplySpelling::multiply;
    example.structure = print_formula(display, structure_options);
    PrintOptions answer_options = structure_options;
    example.answer = print_formula(ast, answer_options);
    return example;
}

// --- pretraining data ---

std::vector<SynthExample> synth_corpus(const std::vector<Record>& records,
                                       const SynthConfig& config) {
    std::vector<Table> tables;
    std::vector<std::string> seen;
    for (const Record& record : records) {
        for (const Table& table : record.tables) {
            if (std::find(seen.begin(), seen.end(), table.id()) != seen.end()) continue;
            seen.push_back(table.id());
            tables.push_back(table);
        }
    }
    return synth_all(tables, config);
}

// --- writers ---

namespace {

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FileNotFound(path);
    for (const auto& line : lines) {
        file << line << "\n";
    }
}

}  // namespace

void write_training_jsonl(const PipelineArtifacts& artifacts, const std::string& path) {
    std::vector<std::string> lines;
    for (const CompiledRecord& compiled : artifacts.compiled) {
        if (!compiled.error.empty()) continue;
        ordered_json j;
        j["id"] = compiled.id;
        j["input"] = compiled.input;
        j["target_sequence"] = compiled.target_sequence;
        lines.push_back(j.dump());
    }
    write_lines(path, lines);
}

void write_retrieval_training_jsonl(const PipelineArtifacts& artifacts, const std::string& path) {
    std::vector<std::string> lines;
    for (const RetrievalTrainingRow& row : artifacts.retrieval_training) {
        ordered_json j;
        j["record_id"] = row.record_id;
        j["unit_id"] = row.unit_id;
        j["question"] = row.question;
        j["unit"] = row.unit_text;
        j["label"] = row.label;
        lines.push_back(j.dump());
    }
    write_lines(path, lines);
}

void write_location_report_json(const PipelineArtifacts& artifacts, const std::string& path) {
    ordered_json summary;
    summary["records"] = static_cast<int>(artifacts.compiled.size());
    summary["failures"] = artifacts.failures;
    summary["total_operands"] = artifacts.total_operands;
    summary["ambiguous_operands"] = artifacts.ambiguous_operands;
    summary["missing_operands"] = artifacts.missing_operands;
    summary["ambiguity_rate"] = artifacts.ambiguity_rate();
    summary["missing_rate"] = artifacts.missing_rate();

    ordered_json records = ordered_json::array();
    for (const CompiledRecord& compiled : artifacts.compiled) {
        ordered_json r;
        r["id"] = compiled.id;
        if (!compiled.error.empty()) {
            r["error"] = compiled.error;
            records.push_back(std::move(r));
            continue;
        }
        r["primary_table"] = compiled.primary_table_id;
        r["ambiguous"] = compiled.location.ambiguity_count();
        r["missing"] = compiled.location.missing_count();
        ordered_json operands = ordered_json::array();
        for (const LeafOutcome& outcome : compiled.location.outcomes) {
            ordered_json o;
            o["raw"] = outcome.raw;
            switch (outcome.kind) {
                case LeafOutcome::Kind::unique: o["outcome"] = "unique"; break;
                case LeafOutcome::Kind::ambiguous: o["outcome"] = "ambiguous"; break;
                case LeafOutcome::Kind::missing: o["outcome"] = "missing"; break;
            }
            if (outcome.chosen) o["chosen"] = ref_to_string(*outcome.chosen);
            o["match_count"] = static_cast<int>(outcome.matches.size());
            operands.push_back(std::move(o));
        }
        r["operands"] = std::move(operands);
        records.push_back(std::move(r));
    }

    ordered_json j;
    j["summary"] = std::move(summary);
    j["records"] = std::move(records);
    write_lines(path, {j.dump(2)});
}

void write_pretrain_jsonl(const std::vector<SynthExample>& examples, const std::string& path) {
    std::vector<std::string> lines;
    for (const SynthExample& example : examples) {
        ordered_json j;
        j["task"] = std::string(synth_task_name(example.task));
        j["question"] = example.question;
        j["answer"] = example.answer;
        j["table_id"] = example.table_id;
        j["seed"] = example.seed;
        lines.push_back(j.dump());
    }
    write_lines(path, lines);
}

}  // namespace numqa
