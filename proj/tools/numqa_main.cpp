// numqa — compile numerical-reasoning QA records into reasoning sequences,
// synthesize pre-training data, build prompts, and score predictions.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "numqa/decompose.hpp"
#include "numqa/errors.hpp"
#include "numqa/pipeline.hpp"

using nlohmann::ordered_json;

namespace {

struct CommonOptions {
    std::string input;
    numqa::PipelineConfig config;
    std::string multiply_spelling = "multiple";
    std::string ambiguous_policy = "first-match";
};

void finalize_config(CommonOptions& options) {
    if (options.multiply_spelling == "multiple")
        options.config.codec.multiply_spelling = numqa::MultiplySpelling::multiple;
    else if (options.multiply_spelling == "multiply")
        options.config.codec.multiply_spelling = numqa::MultiplySpelling::multiply;
    else
        throw numqa::ConfigError("--canonical-multiply must be 'multiple' or 'multiply'");
    if (options.ambiguous_policy == "first-match")
        options.config.ambiguity = numqa::AmbiguityPolicy::first_match;
    else if (options.ambiguous_policy == "keep-literal")
        options.config.ambiguity = numqa::AmbiguityPolicy::keep_literal;
    else
        throw numqa::ConfigError("--ambiguous must be 'first-match' or 'keep-literal'");
    if (options.config.workers < 1)
        throw numqa::ConfigError("--workers must be at least 1");
    options.config.synth.seed = options.config.seed;
}

numqa::IngestResult load_records(const std::string& path, bool* had_issues) {
    numqa::IngestResult result = numqa::ingest(path);
    for (const auto& issue : result.issues)
        std::cerr << "schema violation: " << issue.message << "\n";
    if (had_issues) *had_issues = !result.issues.empty();
    return result;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw numqa::FileNotFound(path);
    file << text;
}

void write_json_lines(const std::string& path, const std::vector<ordered_json>& rows) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw numqa::FileNotFound(path);
    for (const auto& row : rows) file << row.dump() << "\n";
}

int run_ingest_check(const std::string& input, const std::string& report_path) {
    bool had_issues = false;
    numqa::IngestResult result = load_records(input, &had_issues);
    std::cout << "records: " << result.records.size() << "\n"
              << "issues:  " << result.issues.size() << "\n";
    if (!report_path.empty()) {
        ordered_json j;
        j["records"] = static_cast<int>(result.records.size());
        ordered_json issues = ordered_json::array();
        for (const auto& issue : result.issues) {
            ordered_json row;
            row["line"] = issue.line;
            row["field"] = issue.field;
            row["message"] = issue.message;
            issues.push_back(std::move(row));
        }
        j["issues"] = std::move(issues);
        write_text_file(report_path, j.dump(2) + "\n");
    }
    return had_issues ? 1 : 0;
}

int run_retrieve(CommonOptions& options, const std::string& output,
                 const std::string& training_path) {
    finalize_config(options);
    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);

    std::vector<ordered_json> rows;
    for (const auto& record : ingested.records) {
        auto units = numqa::record_units(record);
        auto result = numqa::retrieve(numqa::question_with_history(record), units,
                                      options.config.budget, options.config.k_max);
        ordered_json row;
        row["id"] = record.id;
        ordered_json ranked = ordered_json::array();
        for (const auto& scored : result.ranked) {
            ordered_json r;
            r["unit"] = scored.id;
            r["confidence"] = scored.confidence;
            ranked.push_back(std::move(r));
        }
        row["ranked"] = std::move(ranked);
        row["selected"] = result.selected;
        row["budget_used"] = result.budget_used;
        rows.push_back(std::move(row));
    }
    write_json_lines(output, rows);

    if (!training_path.empty()) {
        auto artifacts = numqa::run_pipeline(ingested.records, options.config);
        numqa::write_retrieval_training_jsonl(artifacts, training_path);
    }
    return had_issues ? 1 : 0;
}

int run_compile(CommonOptions& options, const std::string& output, const std::string& report,
                const std::string& training_path) {
    finalize_config(options);
    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);
    numqa::PipelineArtifacts artifacts = numqa::run_pipeline(ingested.records, options.config);
    numqa::write_training_jsonl(artifacts, output);
    if (!report.empty()) numqa::write_location_report_json(artifacts, report);
    if (!training_path.empty())
        numqa::write_retrieval_training_jsonl(artifacts, training_path);
    std::cout << "compiled " << artifacts.compiled.size() - artifacts.failures << "/"
              << artifacts.compiled.size() << " records, ambiguity rate "
              << artifacts.ambiguity_rate() << ", missing rate " << artifacts.missing_rate()
              << "\n";
    return had_issues ? 1 : 0;
}

int run_synth(CommonOptions& options, const std::string& output) {
    finalize_config(options);
    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);
    auto examples = numqa::synth_corpus(ingested.records, options.config.synth);
    numqa::write_pretrain_jsonl(examples, output);
    std::cout << "synthesized " << examples.size() << " examples\n";
    return had_issues ? 1 : 0;
}

int run_prompt(CommonOptions& options, const std::string& style_name, const std::string& target_id,
               std::vector<std::string> demo_ids, int shots, const std::string& output) {
    finalize_config(options);
    numqa::PromptStyle style;
    if (style_name == "tatqa")
        style = numqa::PromptStyle::tatqa;
    else if (style_name == "finqa")
        style = numqa::PromptStyle::finqa;
    else
        throw numqa::ConfigError("--style must be 'tatqa' or 'finqa'");

    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);
    const auto& records = ingested.records;
    if (records.empty()) throw numqa::ConfigError("no records in input");

    auto find_record = [&](const std::string& id) -> const numqa::Record& {
        for (const auto& record : records)
            if (record.id == id) return record;
        throw numqa::ConfigError("no record with id '" + id + "'");
    };
    const numqa::Record& target = target_id.empty() ? records.back() : find_record(target_id);

    if (demo_ids.empty()) {
        for (const auto& record : records) {
            if (record.id == target.id) continue;
            if (record.answer.kind != numqa::AnswerSpec::Kind::formula) continue;
            demo_ids.push_back(record.id);
            if (static_cast<int>(demo_ids.size()) >= shots) break;
        }
    }
    std::vector<numqa::PromptExample> demos;
    for (const auto& id : demo_ids)
        demos.push_back(numqa::make_prompt_example(find_record(id), style));
    std::string prompt =
        numqa::build_icl_prompt(demos, numqa::make_prompt_example(target, style), style);
    if (output.empty())
        std::cout << prompt << "\n";
    else
        write_text_file(output, prompt + "\n");
    return had_issues ? 1 : 0;
}

int run_evaluate(CommonOptions& options, const std::string& predictions_path,
                 const std::string& output, bool text_report) {
    finalize_config(options);
    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);
    auto predictions = numqa::read_predictions(predictions_path);
    std::vector<numqa::RecordOutcome> outcomes;
    numqa::EvalReport report =
        numqa::evaluate_run(ingested.records, predictions, options.config, &outcomes);
    if (!output.empty()) {
        ordered_json j = ordered_json::parse(numqa::report_to_json(report));
        ordered_json rows = ordered_json::array();
        for (const auto& outcome : outcomes) {
            ordered_json row;
            row["id"] = outcome.id;
            row["em"] = outcome.em;
            if (outcome.execution) row["execution"] = *outcome.execution;
            if (outcome.program) row["program"] = *outcome.program;
            row["f1"] = outcome.f1;
            if (outcome.unexecutable) row["unexecutable"] = true;
            if (outcome.missing_prediction) row["missing_prediction"] = true;
            if (!outcome.diagnostics.empty()) row["diagnostics"] = outcome.diagnostics;
            rows.push_back(std::move(row));
        }
        j["records"] = std::move(rows);
        write_text_file(output, j.dump(2) + "\n");
    }
    if (text_report || output.empty()) std::cout << numqa::report_to_text(report);
    return had_issues ? 1 : 0;
}

int run_induce(CommonOptions& options, const std::string& output, int max_terms, int window) {
    finalize_config(options);
    bool had_issues = false;
    numqa::IngestResult ingested = load_records(options.input, &had_issues);

    std::vector<ordered_json> rows;
    for (const auto& record : ingested.records) {
        if (record.answer.kind != numqa::AnswerSpec::Kind::formula) continue;
        numqa::Formula ast = numqa::parse_formula(record.answer.formula).first;
        if (ast.kind() != numqa::Formula::Kind::number) continue;  // already a real formula

        std::vector<numqa::EvidenceNumber> numbers;
        for (const auto& paragraph : record.paragraphs) {
            auto extracted = numqa::extract_evidence_numbers(paragraph, window);
            numbers.insert(numbers.end(), extracted.begin(), extracted.end());
        }
        auto candidates =
            numqa::induce_formula(ast.number_value(), numbers, record.question, max_terms);
        ordered_json row;
        row["id"] = record.id;
        row["answer"] = ast.number_value().to_string();
        ordered_json list = ordered_json::array();
        for (const auto& candidate : candidates) {
            ordered_json c;
            c["formula"] = candidate.text;
            c["similarity"] = candidate.similarity;
            list.push_back(std::move(c));
        }
        row["candidates"] = std::move(list);
        if (!candidates.empty()) row["top"] = candidates.front().text;
        rows.push_back(std::move(row));
    }
    write_json_lines(output, rows);
    return had_issues ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numqa — numerical-reasoning QA data compiler"};
    app.require_subcommand(1);

    CommonOptions options;

    auto add_common = [&](CLI::App* cmd, bool with_codec = true) {
        cmd->add_option("--input", options.input, "input records (JSONL)")->required();
        cmd->add_option("--budget", options.config.budget, "retrieval token budget");
        cmd->add_option("--k-max", options.config.k_max, "retrieval unit cap");
        cmd->add_option("--seed", options.config.seed, "deterministic seed");
        cmd->add_option("--workers", options.config.workers, "worker thread count");
        if (with_codec) {
            cmd->add_flag("--emit-operator-slot", options.config.codec.emit_operator_slot,
                          "serialize the operator list as its own slot");
            cmd->add_option("--canonical-multiply", options.multiply_spelling,
                            "DSL spelling of multiply: multiple|multiply");
            cmd->add_option("--ambiguous", options.ambiguous_policy,
                            "ambiguous-operand policy: first-match|keep-literal");
        }
    };

    // ingest-check
    auto* ingest_cmd = app.add_subcommand("ingest-check", "validate an input file");
    std::string ingest_report;
    ingest_cmd->add_option("--input", options.input, "input records (JSONL)")->required();
    ingest_cmd->add_option("--report", ingest_report, "write an issue report (JSON)");

    // retrieve
    auto* retrieve_cmd = app.add_subcommand("retrieve", "rank and select evidence units");
    std::string retrieve_output, retrieve_training;
    add_common(retrieve_cmd, false);
    retrieve_cmd->add_option("--output", retrieve_output, "retrieval results (JSONL)")
        ->required();
    retrieve_cmd->add_option("--emit-training", retrieve_training,
                             "write retrieval training pairs (JSONL)");

    // compile
    auto* compile_cmd =
        app.add_subcommand("compile", "locate + decompose + encode training sequences");
    std::string compile_output, compile_report, compile_training;
    add_common(compile_cmd);
    compile_cmd->add_option("--output", compile_output, "training data (JSONL)")->required();
    compile_cmd->add_option("--report", compile_report, "location report (JSON)");
    compile_cmd->add_option("--retrieval-training", compile_training,
                            "retrieval training pairs (JSONL)");

    // synth-pretrain
    auto* synth_cmd = app.add_subcommand("synth-pretrain", "synthesize pre-training data");
    std::string synth_output;
    add_common(synth_cmd, false);
    synth_cmd->add_option("--output", synth_output, "pre-training data (JSONL)")->required();
    synth_cmd->add_option("--location-per-table", options.config.synth.location_per_table,
                          "cell-lookup examples per table");
    synth_cmd->add_option("--calculation-per-table", options.config.synth.calculation_per_table,
                          "column-formula examples per table");
    synth_cmd->add_option("--hierarchy-per-table", options.config.synth.hierarchy_per_table,
                          "first-level-header examples per table");

    // prompt
    auto* prompt_cmd = app.add_subcommand("prompt", "build an in-context-learning prompt");
    std::string prompt_style = "tatqa", prompt_target, prompt_output;
    std::vector<std::string> prompt_demos;
    int prompt_shots = 3;
    add_common(prompt_cmd, false);
    prompt_cmd->add_option("--style", prompt_style, "prompt style: tatqa|finqa");
    prompt_cmd->add_option("--target", prompt_target, "target record id (default: last)");
    prompt_cmd->add_option("--demos", prompt_demos, "demonstration record ids");
    prompt_cmd->add_option("--shots", prompt_shots, "demonstrations when --demos is omitted");
    prompt_cmd->add_option("--output", prompt_output, "prompt text file (default: stdout)");

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "score a prediction file");
    std::string eval_predictions, eval_output;
    bool eval_text = false;
    add_common(evaluate_cmd);
    evaluate_cmd->add_option("--predictions", eval_predictions, "predictions (JSONL)")
        ->required();
    evaluate_cmd->add_option("--output", eval_output, "evaluation report (JSON)");
    evaluate_cmd->add_flag("--text", eval_text, "also print the human-readable table");

    // induce
    auto* induce_cmd =
        app.add_subcommand("induce", "induce +/- formulas for answer-only records");
    std::string induce_output;
    int induce_terms = 3, induce_window = 20;
    add_common(induce_cmd, false);
    induce_cmd->add_option("--output", induce_output, "induction results (JSONL)")->required();
    induce_cmd->add_option("--max-terms", induce_terms, "maximum terms per formula (<=4)");
    induce_cmd->add_option("--window", induce_window, "context window in tokens");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ingest_cmd) return run_ingest_check(options.input, ingest_report);
        if (*retrieve_cmd) return run_retrieve(options, retrieve_output, retrieve_training);
        if (*compile_cmd)
            return run_compile(options, compile_output, compile_report, compile_training);
        if (*synth_cmd) return run_synth(options, synth_output);
        if (*prompt_cmd)
            return run_prompt(options, prompt_style, prompt_target, prompt_demos, prompt_shots,
                              prompt_output);
        if (*evaluate_cmd) return run_evaluate(options, eval_predictions, eval_output, eval_text);
        if (*induce_cmd) return run_induce(options, induce_output, induce_terms, induce_window);
    } catch (const numqa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numqa::FileNotFound& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numqa::SchemaViolation& e) {
        std::cerr << "schema violation: " << e.what() << "\n";
        return 1;
    } catch (const numqa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
