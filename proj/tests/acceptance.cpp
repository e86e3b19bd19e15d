// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "numqa/decompose.hpp"
#include "numqa/metrics.hpp"
#include "numqa/pipeline.hpp"
#include "testutil.hpp"

using namespace numqa;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = {}) {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

std::string data_path(const std::string& name) {
    return std::string(NUMQA_TEST_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: worked-example golden sequence, byte for byte, < 1 s ---

void criterion_1() {
    const std::string golden =
        "<V> {Col2, Row1} | {Col1, Row1} | {Col2, Row2} | {Col1, Row2} | {Col2, Row3} | "
        "{Col1, Row3} | <D> (x1-x2)+(x3-x4)+(x5-x6) | <A> ({Col2, Row1}-{Col1, Row1})+"
        "({Col2, Row2}-{Col1, Row2})+({Col2, Row3}-{Col1, Row3})";
    auto start = std::chrono::steady_clock::now();
    IngestResult ingested = ingest(data_path("appendix_b.jsonl"));
    PipelineArtifacts artifacts = run_pipeline(ingested.records, PipelineConfig{});
    double elapsed = seconds_since(start);
    bool ok = ingested.issues.empty() && artifacts.compiled.size() == 1 &&
              artifacts.compiled[0].target_sequence == golden && elapsed < 1.0;
    report(1, "worked-example golden sequence", ok,
           ok ? "byte-exact in " + std::to_string(elapsed) + " s"
              : "got: " + (artifacts.compiled.empty() ? std::string("<none>")
                                                      : artifacts.compiled[0].target_sequence));
}

// --- criterion 2: DSL unification, exact string ---

void criterion_2() {
    std::string out = print_dsl(parse_infix("2+1×3"));
    report(2, "DSL unification of 2+1×3", out == "add(2, multiple(1, 3))", out);
}

// --- criterion 3: pre-training templates reproduce the example rows ---

void criterion_3() {
    IngestResult ingested = ingest(data_path("figure1.jsonl"));
    SynthConfig config;
    config.seed = 1;
    config.location_per_table = 16;
    config.calculation_per_table = 16;  // enumerate all (column, kind) pairs
    config.hierarchy_per_table = 16;
    auto examples = synth_corpus(ingested.records, config);

    auto find = [&](const std::string& question) -> const SynthExample* {
        for (const auto& e : examples)
            if (e.question == question) return &e;
        return nullptr;
    };
    const SynthExample* location = find("What is { Col3 , Row2 } ?");
    const SynthExample* calculation = find("What is the sum of Current : Federal ?");
    const SynthExample* hierarchy = find("What is the { Col2 , Row2 } belong to ?");

    bool ok = location && location->answer == "0.47";
    ok = ok && hierarchy && hierarchy->answer == "Current";
    // The printed source for this row spaces the two references inconsistently
    // ("{ Col1 , Row1 } + { Col1, Row2 }"); the uniform rendering is compared
    // byte-exact and the source string structurally (same typo policy as the
    // 19,766/19,786 discrepancy).
    ok = ok && calculation && calculation->answer == "{ Col1 , Row1 } + { Col1 , Row2 }";
    ok = ok && calculation &&
         parse_infix(calculation->answer) == parse_infix("{ Col1 , Row1 } + { Col1, Row2 }");
    report(3, "pre-training template rows", ok,
           ok ? "all three example rows reproduced"
              : "missing or mismatched template row");
}

// --- criterion 4: property suites, < 60 s total ---

void criterion_4() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    DetRng rng(20240601);
    testutil::FormulaGenOptions any;
    any.max_depth = 8;
    any.with_cells = true;
    any.with_aggregations = true;
    testutil::FormulaGenOptions additive;
    additive.integer_only = true;
    additive.additive_only = true;
    additive.max_literal = 999;

    for (int i = 0; i < 10000 && ok; ++i) {
        Formula f = testutil::random_formula(rng, any);
        if (!(parse_infix(print_infix(f)) == f) ||
            !(parse_infix(print_infix(f, true)) == f) || !(parse_dsl(print_dsl(f)) == f)) {
            ok = false;
            detail = "print/parse round-trip failed: " + print_infix(f);
            break;
        }
        Decomposition d = decompose(f);
        if (!(recompose(d) == f)) {
            ok = false;
            detail = "decompose/recompose failed: " + d.structure;
            break;
        }
        Formula g = testutil::random_formula(rng, additive);
        auto expected = testutil::naive_eval(g);
        NumericValue actual = evaluate(g);
        if (!expected || !actual.value.is_integer() || actual.value.unscaled() != *expected) {
            ok = false;
            detail = "naive-interpreter mismatch: " + print_infix(g);
            break;
        }
    }

    for (int i = 0; i < 1000 && ok; ++i) {
        std::vector<Decimal> values;
        Table t = testutil::distinct_table(rng, 3, 4, &values);
        auto pick = [&]() {
            const Decimal& v = values[rng.below(values.size())];
            return Formula::number(v, v.to_string());
        };
        Formula f = Formula::binary(OpKind::add,
                                    Formula::binary(OpKind::subtract, pick(), pick()), pick());
        auto [located, report_] = locate_formula(f, t);
        if (report_.missing_count() != 0 ||
            !(evaluate(resolve(located, t)).value == evaluate(f).value)) {
            ok = false;
            detail = "locate/resolve equality failed";
            break;
        }
    }

    double elapsed = seconds_since(start);
    ok = ok && elapsed < 60.0;
    report(4, "property suites (10k formulas + 1k tables)", ok,
           ok ? std::to_string(elapsed) + " s" : detail);
}

// --- criterion 5: mini-corpus self-consistency ---

void criterion_5() {
    IngestResult ingested = ingest(data_path("mini_corpus.jsonl"));
    bool ok = ingested.issues.empty() && ingested.records.size() == 50;
    std::string detail;

    PipelineConfig config;
    PipelineArtifacts artifacts = run_pipeline(ingested.records, config);

    std::map<std::string, std::string> predictions;
    for (const auto& compiled : artifacts.compiled)
        if (compiled.error.empty()) predictions[compiled.id] = compiled.target_sequence;

    std::vector<RecordOutcome> outcomes;
    evaluate_run(ingested.records, predictions, config, &outcomes);

    // EM must be 1.0 on records whose location had no missing operands
    std::map<std::string, const CompiledRecord*> by_id;
    for (const auto& compiled : artifacts.compiled) by_id[compiled.id] = &compiled;
    int fully_located = 0;
    for (const auto& outcome : outcomes) {
        const CompiledRecord* compiled = by_id.at(outcome.id);
        if (!compiled->error.empty() || compiled->location.missing_count() > 0) continue;
        ++fully_located;
        if (!outcome.em) {
            ok = false;
            detail = "record " + outcome.id + " not correct against its own gold sequence";
        }
    }
    if (fully_located < 30) {
        ok = false;
        detail = "too few fully-located records: " + std::to_string(fully_located);
    }

    // brute-force scan of ambiguity/missing rates, independent of the locator
    int scan_total = 0, scan_ambiguous = 0, scan_missing = 0;
    for (const auto& record : ingested.records) {
        if (record.answer.kind != AnswerSpec::Kind::formula) continue;
        Formula ast = parse_formula(record.answer.formula).first;
        const Table* table = record.tables.empty() ? nullptr : &record.tables.front();
        ast.visit_leaves([&](const Formula& leaf) {
            if (leaf.kind() != Formula::Kind::number) return;
            ++scan_total;
            if (!table) {
                ++scan_missing;
                return;
            }
            int exact = 0, by_value = 0;
            for (int r = 1; r <= table->n_rows(); ++r) {
                for (int c = 1; c <= table->n_cols(); ++c) {
                    const Cell& cell = table->cell_at({c, r});
                    if (cell.raw_text == leaf.raw_text()) ++exact;
                    if (cell.normalized && cell.normalized->magnitude == leaf.number_value())
                        ++by_value;
                }
            }
            int matches = exact > 0 ? exact : by_value;
            if (matches == 0) ++scan_missing;
            if (matches >= 2) ++scan_ambiguous;
        });
    }
    if (artifacts.total_operands != scan_total ||
        artifacts.ambiguous_operands != scan_ambiguous ||
        artifacts.missing_operands != scan_missing) {
        ok = false;
        detail = "rates diverge from brute-force scan";
    }

    report(5, "mini-corpus self-consistency", ok,
           ok ? "EM 1.0 on " + std::to_string(fully_located) +
                    " fully-located records; ambiguity/missing match the scan (" +
                    std::to_string(scan_ambiguous) + "/" + std::to_string(scan_missing) + " of " +
                    std::to_string(scan_total) + ")"
              : detail);
}

// --- criterion 6: metric unit cases ---

void criterion_6() {
    auto num = [](const char* s) { return NumericValue{Decimal::parse_or_throw(s)}; };
    bool ok = exact_match(num("0.33335"), num("0.33344"));
    ok = ok && !exact_match(num("0.33334"), num("0.33335"));
    double f1 = numeracy_f1({"four touchdowns"}, {"four"});
    ok = ok && f1 > 2.0 / 3.0 - 1e-12 && f1 < 2.0 / 3.0 + 1e-12;
    ok = ok && program_accuracy(parse_dsl("multiple(2, 3)"), parse_dsl("multiply(2, 3)"));
    ok = ok && !program_accuracy(parse_dsl("add(2, 3)"), parse_dsl("add(3, 2)"));
    report(6, "metric unit cases", ok);
}

// --- criterion 7: formula induction on planted answer sets ---

void criterion_7() {
    int top_matches = 0;
    bool all_exact = true;
    for (int k = 0; k < 20; ++k) {
        long long a = 10 + 3 * k, b = 5 + 2 * k;
        // planted: a + b; distractors use off-topic context windows and odd
        // values whose sums do not collide with the answer
        std::vector<EvidenceNumber> numbers = {
            {Decimal(a), "the team scored " + std::to_string(a) + " points early in total"},
            {Decimal(b), "then added " + std::to_string(b) + " points to the total score"},
            {Decimal(1000 + 7 * k), "a drive of many yards against the defense"},
            {Decimal(2000 + 11 * k), "passing yards in the third quarter"},
        };
        Decimal answer(a + b);
        auto candidates =
            induce_formula(answer, numbers, "how many points did the team score in total", 3);
        if (candidates.empty()) continue;
        std::string planted = std::to_string(a) + " + " + std::to_string(b);
        if (candidates.front().text == planted) ++top_matches;
        for (const auto& candidate : candidates)
            if (!(evaluate(candidate.formula).value == answer)) all_exact = false;
    }
    bool ok = top_matches >= 18 && all_exact;
    report(7, "formula induction", ok,
           std::to_string(top_matches) + "/20 top candidates match the plant; candidates " +
               (all_exact ? "all evaluate exactly" : "DO NOT all evaluate exactly"));
}

// --- criterion 8: CLI determinism across worker counts and runs ---

int run_cli(const std::string& args) {
    std::string cmd = std::string(NUMQA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

void criterion_8() {
    std::string input = data_path("mini_corpus.jsonl");
    bool ok = true;
    std::string detail;

    ok = ok && run_cli("compile --input " + input + " --output acc_c1.jsonl --seed 7 --workers 1") == 0;
    ok = ok && run_cli("compile --input " + input + " --output acc_c8.jsonl --seed 7 --workers 8") == 0;
    ok = ok && run_cli("compile --input " + input + " --output acc_c8b.jsonl --seed 7 --workers 8") == 0;
    if (ok) {
        std::string one = slurp("acc_c1.jsonl"), eight = slurp("acc_c8.jsonl"),
                    again = slurp("acc_c8b.jsonl");
        ok = !one.empty() && one == eight && eight == again;
        if (!ok) detail = "compile outputs differ across workers/runs";
    } else {
        detail = "compile invocation failed";
    }

    if (ok) {
        ok = run_cli("synth-pretrain --input " + input +
                     " --output acc_s1.jsonl --seed 7 --workers 1") == 0 &&
             run_cli("synth-pretrain --input " + input +
                     " --output acc_s8.jsonl --seed 7 --workers 8") == 0 &&
             run_cli("synth-pretrain --input " + input +
                     " --output acc_s8b.jsonl --seed 7 --workers 8") == 0;
        if (ok) {
            std::string one = slurp("acc_s1.jsonl"), eight = slurp("acc_s8.jsonl"),
                        again = slurp("acc_s8b.jsonl");
            ok = !one.empty() && one == eight && eight == again;
            if (!ok) detail = "synth-pretrain outputs differ across workers/runs";
        } else {
            detail = "synth-pretrain invocation failed";
        }
    }
    for (const char* name : {"acc_c1.jsonl", "acc_c8.jsonl", "acc_c8b.jsonl", "acc_s1.jsonl",
                             "acc_s8.jsonl", "acc_s8b.jsonl"})
        std::remove(name);
    report(8, "CLI determinism (fixed seed, 1 vs 8 workers, repeated runs)", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
