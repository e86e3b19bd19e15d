#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "numqa/errors.hpp"
#include "numqa/pipeline.hpp"
#include "testutil.hpp"

using namespace numqa;

namespace {

const char* kGoldenSequence =
    "<V> {Col2, Row1} | {Col1, Row1} | {Col2, Row2} | {Col1, Row2} | {Col2, Row3} | "
    "{Col1, Row3} | <D> (x1-x2)+(x3-x4)+(x5-x6) | <A> ({Col2, Row1}-{Col1, Row1})+"
    "({Col2, Row2}-{Col1, Row2})+({Col2, Row3}-{Col1, Row3})";

std::vector<Record> load(const std::string& name) {
    IngestResult result = ingest(testutil::test_data_path(name));
    REQUIRE(result.issues.empty());
    return std::move(result.records);
}

// small synthetic corpus for determinism / evaluation tests
std::vector<Record> synthetic_corpus(int n) {
    std::vector<Record> records;
    DetRng rng(1000);
    for (int i = 0; i < n; ++i) {
        std::vector<Decimal> values;
        Record r;
        r.id = "synth-" + std::to_string(i);
        r.question = "what is the difference between the first two values of table " +
                     std::to_string(i) + "?";
        r.tables.push_back(testutil::distinct_table(rng, 3, 3, &values));
        r.answer.kind = AnswerSpec::Kind::formula;
        r.answer.formula = values[0].to_string() + " - " + values[4].to_string();
        r.answer_type = "arithmetic";
        r.source = "table";
        records.push_back(std::move(r));
    }
    return records;
}

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file);
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("ingest") {
    SUBCASE("the worked-example fixture loads as one record with a 4x2 table") {
        auto records = load("appendix_b.jsonl");
        REQUIRE(records.size() == 1);
        const Record& r = records[0];
        CHECK(r.id == "appendix-b");
        REQUIRE(r.tables.size() == 1);
        CHECK(r.tables[0].n_rows() == 4);
        CHECK(r.tables[0].n_cols() == 2);
        CHECK(r.answer.kind == AnswerSpec::Kind::formula);
        // ingest preserves every cell's raw text
        CHECK(r.tables[0].cell_at({2, 1}).raw_text == "113,246");
        CHECK(r.tables[0].cell_at({1, 4}).raw_text == "22,312");
        CHECK(r.tables[0].linearize().find("2018 | 18,967 | 113,246") != std::string::npos);
    }
    SUBCASE("malformed lines are reported and valid lines still load") {
        IngestResult result = ingest(testutil::test_data_path("malformed.jsonl"));
        REQUIRE(result.records.size() == 2);
        CHECK(result.records[0].id == "ok-1");
        CHECK(result.records[1].id == "ok-2");
        REQUIRE(result.issues.size() == 3);
        CHECK(result.issues[0].line == 2);
        CHECK(result.issues[0].field == "question");
        CHECK(result.issues[1].line == 3);
        CHECK(result.issues[2].line == 4);
        CHECK(result.issues[2].field == "answer.formula");
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(ingest("/nonexistent/file.jsonl"), FileNotFound);
    }
    SUBCASE("empty file") {
        std::string path = "empty_fixture.jsonl";
        { std::ofstream out(path); }
        IngestResult result = ingest(path);
        CHECK(result.records.empty());
        CHECK(result.issues.empty());
        std::remove(path.c_str());
    }
}

TEST_CASE("record schema validation details") {
    CHECK_THROWS_AS(record_from_json_line("{\"id\":\"x\"}", 1), SchemaViolation);
    CHECK_THROWS_AS(
        record_from_json_line(
            "{\"id\":\"x\",\"question\":\"q\",\"answer\":{},\"answer_type\":\"span\"}", 1),
        SchemaViolation);
    CHECK_THROWS_AS(
        record_from_json_line("{\"id\":\"x\",\"question\":\"q\",\"answer\":{\"spans\":[]},"
                              "\"answer_type\":\"span\"}",
                              1),
        SchemaViolation);
    CHECK_THROWS_AS(
        record_from_json_line("{\"id\":\"x\",\"question\":\"q\",\"answer\":{\"count\":3},"
                              "\"answer_type\":\"span\"}",
                              1),
        SchemaViolation);
    CHECK_THROWS_AS(
        record_from_json_line("{\"id\":\"x\",\"question\":\"q\",\"answer\":{\"formula\":\"1+1\"},"
                              "\"answer_type\":\"arithmetic\",\"source\":\"banana\"}",
                              1),
        SchemaViolation);
    // ragged table
    CHECK_THROWS_AS(
        record_from_json_line(
            "{\"id\":\"x\",\"question\":\"q\",\"tables\":[{\"id\":\"t\",\"column_headers\":"
            "[[\"A\"],[\"B\"]],\"row_headers\":[\"r\"],\"cells\":[[\"1\"]]}],"
            "\"answer\":{\"formula\":\"1+1\"},\"answer_type\":\"arithmetic\"}",
            1),
        SchemaViolation);
    // history turns
    Record r = record_from_json_line(
        "{\"id\":\"x\",\"question\":\"and in 2019?\",\"answer\":{\"formula\":\"1+1\"},"
        "\"answer_type\":\"arithmetic\",\"history\":[{\"q\":\"what was revenue in 2018?\","
        "\"a\":\"42\"}]}",
        1);
    REQUIRE(r.history.size() == 1);
    CHECK(question_with_history(r) == "what was revenue in 2018? 42 and in 2019?");
}

TEST_CASE("compile_record reproduces the golden target sequence") {
    auto records = load("appendix_b.jsonl");
    PipelineConfig config;
    CompiledRecord compiled = compile_record(records[0], config);
    REQUIRE(compiled.error.empty());
    CHECK(compiled.target_sequence == kGoldenSequence);
    CHECK(compiled.location.missing_count() == 0);
    CHECK(compiled.location.ambiguity_count() == 0);
    CHECK(compiled.primary_table_id == "t-appendix-b");
    // input leads with the question, evidence follows
    CHECK(compiled.input.rfind("I want to know the balance sum from 2018 to 2020", 0) == 0);
    CHECK(compiled.input.find("113,246") != std::string::npos);
}

TEST_CASE("compile_record for span and count answers") {
    Record span;
    span.id = "s";
    span.question = "who won?";
    span.paragraphs = {"the Raiders won the game"};
    span.answer.kind = AnswerSpec::Kind::spans;
    span.answer.spans = {"the Raiders"};
    span.answer_type = "span";
    PipelineConfig config;
    CompiledRecord compiled = compile_record(span, config);
    CHECK(compiled.target_sequence == "<A> the Raiders | <T> span");

    Record count;
    count.id = "c";
    count.question = "how many quarters?";
    count.answer.kind = AnswerSpec::Kind::count;
    count.answer.count = 4;
    count.answer_type = "count";
    compiled = compile_record(count, config);
    CHECK(compiled.target_sequence == "<A> 4 | <T> count");
}

TEST_CASE("compile_record isolates failures") {
    Record bad;
    bad.id = "bad";
    bad.question = "q";
    bad.answer.kind = AnswerSpec::Kind::formula;
    bad.answer.formula = "1 +";  // unparseable slips past ingest when built directly
    bad.answer_type = "arithmetic";
    PipelineConfig config;
    CompiledRecord compiled = compile_record(bad, config);
    CHECK(!compiled.error.empty());

    PipelineArtifacts artifacts = run_pipeline({bad}, config);
    CHECK(artifacts.failures == 1);
}

TEST_CASE("run_pipeline output is deterministic across worker counts and runs") {
    auto records = synthetic_corpus(12);
    PipelineConfig one;
    one.workers = 1;
    PipelineConfig eight;
    eight.workers = 8;

    PipelineArtifacts a = run_pipeline(records, one);
    PipelineArtifacts b = run_pipeline(records, eight);
    PipelineArtifacts c = run_pipeline(records, eight);

    REQUIRE(a.compiled.size() == b.compiled.size());
    for (std::size_t i = 0; i < a.compiled.size(); ++i) {
        CHECK(a.compiled[i].id == b.compiled[i].id);
        CHECK(a.compiled[i].input == b.compiled[i].input);
        CHECK(a.compiled[i].target_sequence == b.compiled[i].target_sequence);
        CHECK(b.compiled[i].target_sequence == c.compiled[i].target_sequence);
    }

    write_training_jsonl(a, "det_a.jsonl");
    write_training_jsonl(b, "det_b.jsonl");
    CHECK(slurp("det_a.jsonl") == slurp("det_b.jsonl"));
    std::remove("det_a.jsonl");
    std::remove("det_b.jsonl");

    // ordering is sorted by record id
    for (std::size_t i = 1; i < a.compiled.size(); ++i)
        CHECK(a.compiled[i - 1].id <= a.compiled[i].id);
}

TEST_CASE("retrieval training rows label the located column") {
    auto records = load("appendix_b.jsonl");
    PipelineConfig config;
    PipelineArtifacts artifacts = run_pipeline(records, config);
    REQUIRE(artifacts.retrieval_training.size() == 2);  // two columns, no paragraphs
    int positives = 0;
    for (const auto& row : artifacts.retrieval_training) positives += row.label;
    CHECK(positives == 2);  // both columns hold located operands
}

TEST_CASE("evaluate_run is self-consistent on the pipeline's own outputs") {
    auto records = load("appendix_b.jsonl");
    auto more = load("figure1.jsonl");
    records.insert(records.end(), more.begin(), more.end());

    PipelineConfig config;
    PipelineArtifacts artifacts = run_pipeline(records, config);
    std::map<std::string, std::string> predictions;
    for (const auto& compiled : artifacts.compiled)
        predictions[compiled.id] = compiled.target_sequence;

    std::vector<RecordOutcome> outcomes;
    EvalReport report = evaluate_run(records, predictions, config, &outcomes);
    CHECK(report.total == 2);
    CHECK(report.em == doctest::Approx(1.0));
    CHECK(report.execution_accuracy == doctest::Approx(1.0));
    CHECK(report.program_accuracy == doctest::Approx(1.0));
    for (const auto& outcome : outcomes) CHECK(outcome.em);
}

TEST_CASE("evaluate_run counts missing and wrong predictions") {
    auto records = load("appendix_b.jsonl");
    PipelineConfig config;

    SUBCASE("empty prediction set") {
        EvalReport report = evaluate_run(records, {}, config);
        CHECK(report.em == doctest::Approx(0.0));
        CHECK(report.missing_predictions == 1);
    }
    SUBCASE("wrong value") {
        EvalReport report = evaluate_run(records, {{"appendix-b", "<A> 299523"}}, config);
        CHECK(report.em == doctest::Approx(0.0));
        CHECK(report.unexecutable == 0);
    }
    SUBCASE("one wrong operand reference flips execution accuracy") {
        // {Col2, Row4} holds 130,725 instead of 113,246
        std::string wrong =
            "<A> ({Col2, Row4}-{Col1, Row1})+({Col2, Row2}-{Col1, Row2})+({Col2, Row3}-{Col1, "
            "Row3})";
        EvalReport report = evaluate_run(records, {{"appendix-b", wrong}}, config);
        CHECK(report.em == doctest::Approx(0.0));
    }
    SUBCASE("unexecutable prediction") {
        EvalReport report = evaluate_run(records, {{"appendix-b", "<A> divide(1, 0)"}}, config);
        CHECK(report.unexecutable == 1);
    }
}

TEST_CASE("make_prompt_example tatqa style") {
    Record r;
    r.id = "tatqa-demo";
    r.question = "What was the change in Foreign in 2019 from 2018?";
    r.tables.push_back(Table(
        "tax", {{"Years Ended June 30,", "2019"}, {"Years Ended June 30,", "2018"},
                {"Years Ended June 30,", "2017"}},
        {"Domestic", "Foreign", "Income before income taxes"},
        {{"$204.2", "$140.3", "$56.0"}, {"11.8", "19.9", "14.2"}, {"$216.0", "$160.2", "$70.2"}}));
    r.answer.kind = AnswerSpec::Kind::formula;
    r.answer.formula = "11.8 - 19.9";
    r.answer_type = "arithmetic";

    PromptExample example = make_prompt_example(r, PromptStyle::tatqa);
    CHECK(example.entities == std::vector<std::string>{"11.8", "19.9"});
    CHECK(example.structure == "x0 - x1");
    CHECK(example.answer == "11.8 - 19.9");

    // ungrounded constants stay literal: the divisor 3 of an average
    Record avg;
    avg.id = "avg";
    avg.question = "What was the average dividend yield for the 3 years from 2017 to 2019?";
    avg.tables.push_back(Table("yield", {{"Expected life (in years)"}, {"Dividend yield"}},
                               {"2019", "2018", "2017"},
                               {{"4.6", "1.7%"}, {"4.7", "1.5%"}, {"4.8", "1.5%"}}));
    avg.answer.kind = AnswerSpec::Kind::formula;
    avg.answer.formula = "(1.7 + 1.5 + 1.5) / 3";
    avg.answer_type = "arithmetic";
    PromptExample avg_example = make_prompt_example(avg, PromptStyle::tatqa);
    CHECK(avg_example.entities == std::vector<std::string>{"1.7%", "1.5%", "1.5%"});
    CHECK(avg_example.structure == "(x0 + x1 + x2) / 3");
    CHECK(avg_example.answer == "(1.7 + 1.5 + 1.5) / 3");
}

TEST_CASE("make_prompt_example finqa style lists every operand") {
    Record r;
    r.id = "finqa-demo";
    r.question =
        "what was the percentage change in pre-tax earnings for the institutional client "
        "services segment between 2012 and 2013?";
    r.tables.push_back(Table("gs",
                             {{"year ended december 2014"}, {"year ended december 2013"},
                              {"year ended december 2012"}},
                             {"total net revenues", "operating expenses", "pre-tax earnings"},
                             {{"15197", "15721", "18124"},
                              {"10880", "11792", "12490"},
                              {"$ 4317", "$ 3929", "$ 5634"}}));
    r.answer.kind = AnswerSpec::Kind::formula;
    r.answer.formula = "divide(subtract(3929, 5634), 5634)";
    r.answer_type = "arithmetic";

    PromptExample example = make_prompt_example(r, PromptStyle::finqa);
    CHECK(example.entities == std::vector<std::string>{"3929", "5634", "5634"});
    CHECK(example.structure == "divide(subtract(x0, x1), x2)");
    CHECK(example.answer == "divide(subtract(3929, 5634), 5634)");

    std::string prompt = build_icl_prompt({example}, example, PromptStyle::finqa);
    CHECK(prompt.find("Entities: 3929, 5634, 5634\n") != std::string::npos);
    CHECK(prompt.find("Formula: divide(subtract(x0, x1), x2)\n") != std::string::npos);
    CHECK(prompt.find("Answer: divide(subtract(3929, 5634), 5634)\n") != std::string::npos);
}

TEST_CASE("synth_corpus deduplicates shared tables") {
    auto records = load("figure1.jsonl");
    records.push_back(records[0]);
    records[1].id = "figure-1-copy";
    SynthConfig config;
    config.seed = 7;
    auto once = synth_corpus({records[0]}, config);
    auto twice = synth_corpus(records, config);
    CHECK(once == twice);
}

TEST_CASE("writers emit one JSON object per line") {
    auto records = load("appendix_b.jsonl");
    PipelineConfig config;
    PipelineArtifacts artifacts = run_pipeline(records, config);

    write_training_jsonl(artifacts, "writer_check.jsonl");
    std::string text = slurp("writer_check.jsonl");
    CHECK(text.back() == '\n');
    CHECK(text.find("\"target_sequence\"") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    std::remove("writer_check.jsonl");

    write_location_report_json(artifacts, "report_check.json");
    std::string report = slurp("report_check.json");
    CHECK(report.find("\"ambiguity_rate\"") != std::string::npos);
    std::remove("report_check.json");
}
