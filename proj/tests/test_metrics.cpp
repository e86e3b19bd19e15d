#include <doctest.h>

#include "numqa/metrics.hpp"
#include "testutil.hpp"

using namespace numqa;

namespace {

NumericValue num(const char* text) {
    return NumericValue{Decimal::parse_or_throw(text)};
}

}  // namespace

TEST_CASE("exact_match four-decimal rule") {
    CHECK(exact_match(num("0.333349"), NumericValue{Decimal(1).divide(Decimal(3))}));
    CHECK(exact_match(num("0.33335"), num("0.33344")));   // both round to 0.3334
    CHECK(!exact_match(num("0.33334"), num("0.33335")));  // 0.3333 vs 0.3334
    CHECK(exact_match(num("299524"), num("299524")));
    CHECK(exact_match(num("-0.30262"), num("-0.3026")));
    CHECK(exact_match(num("1"), NumericValue{Decimal(1), /*boolean=*/true}));
}

TEST_CASE("exact_match is symmetric and reflexive") {
    testutil::FormulaGenOptions options;
    numqa::DetRng rng(5);
    for (int i = 0; i < 200; ++i) {
        NumericValue a{Decimal(static_cast<long long>(rng.below(10000))).divide(
            Decimal(1 + static_cast<long long>(rng.below(7))))};
        NumericValue b{Decimal(static_cast<long long>(rng.below(10000))).divide(
            Decimal(1 + static_cast<long long>(rng.below(7))))};
        CHECK(exact_match(a, a));
        CHECK(exact_match(a, b) == exact_match(b, a));
    }
}

TEST_CASE("exact_match_spans") {
    CHECK(exact_match_spans({"Four"}, {"four"}));
    CHECK(exact_match_spans({"a", "b"}, {"b", "a"}));
    CHECK(!exact_match_spans({"a"}, {"a", "b"}));
    CHECK(exact_match_spans({"  the Raiders. "}, {"the raiders"}));
}

TEST_CASE("program_accuracy") {
    Formula gold = parse_dsl("add(2, 3)");
    CHECK(program_accuracy(parse_dsl("add(2, 3)"), gold));
    CHECK(!program_accuracy(parse_dsl("add(3, 2)"), gold));  // no commutativity credit
    CHECK(program_accuracy(parse_dsl("multiple(2, 3)"), parse_dsl("multiply(2, 3)")));
    CHECK(program_accuracy_text("add(2, 3)", gold));
    CHECK(program_accuracy_text("add(2,3)", gold));
    CHECK(!program_accuracy_text("add(2, 3", gold));  // unparseable -> false
    // grouping commas normalize away
    CHECK(program_accuracy(parse_infix("113,246 - 18,967"), parse_infix("113246-18967")));
}

TEST_CASE("execution_accuracy") {
    Formula pred = parse_dsl("divide(subtract(3929, 5634), 5634)");
    // (3929-5634)/5634 = -0.302626908058 -> -0.3026 at four decimals
    CHECK(execution_accuracy(pred, num("-0.3026")));
    CHECK(!execution_accuracy(pred, num("-0.3027")));
    CHECK(!execution_accuracy(parse_dsl("divide(1, 0)"), num("1")));
    Formula gold = parse_infix("(113246-18967)+(120523-19766)+(125843-21355)");
    CHECK(execution_accuracy(gold, evaluate(gold)));
}

TEST_CASE("numeracy_f1") {
    CHECK(numeracy_f1({"four touchdowns"}, {"four touchdowns"}) == doctest::Approx(1.0));
    CHECK(numeracy_f1({"four touchdowns"}, {"four"}) == doctest::Approx(2.0 / 3.0));
    CHECK(numeracy_f1({"alpha"}, {"beta"}) == doctest::Approx(0.0));
    CHECK(numeracy_f1({"a", "b"}, {"a"}) == doctest::Approx(0.5));
    CHECK(numeracy_f1({"a"}, {"a", "b"}) == doctest::Approx(0.5));
    CHECK(numeracy_f1({}, {}) == doctest::Approx(1.0));
    // range property
    numqa::DetRng rng(9);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::string> pred, gold;
        for (std::uint64_t k = 0; k < 1 + rng.below(3); ++k)
            pred.push_back("tok" + std::to_string(rng.below(6)));
        for (std::uint64_t k = 0; k < 1 + rng.below(3); ++k)
            gold.push_back("tok" + std::to_string(rng.below(6)));
        double f1 = numeracy_f1(pred, gold);
        CHECK(f1 >= 0.0);
        CHECK(f1 <= 1.0);
        CHECK(numeracy_f1(gold, gold) == doctest::Approx(1.0));
    }
}

TEST_CASE("aggregate") {
    SUBCASE("all correct") {
        std::vector<RecordOutcome> outcomes(3);
        std::vector<RecordLabel> labels(3);
        for (int i = 0; i < 3; ++i) {
            outcomes[i].em = true;
            outcomes[i].f1 = 1.0;
            labels[i] = {"arithmetic", "table"};
        }
        EvalReport report = aggregate(outcomes, labels);
        CHECK(report.em == doctest::Approx(1.0));
        CHECK(report.arithmetic_em == doctest::Approx(1.0));
        CHECK(report.by_type.at("arithmetic").count == 3);
    }
    SUBCASE("mixed types compute arithmetic_em over arithmetic only") {
        std::vector<RecordOutcome> outcomes(4);
        std::vector<RecordLabel> labels = {{"arithmetic", "table"},
                                           {"arithmetic", "table"},
                                           {"span", "text"},
                                           {"span", "text"}};
        outcomes[0].em = true;
        outcomes[1].em = false;
        outcomes[2].em = true;
        outcomes[3].em = true;
        EvalReport report = aggregate(outcomes, labels);
        CHECK(report.em == doctest::Approx(0.75));
        CHECK(report.arithmetic_em == doctest::Approx(0.5));
        int bucket_total = 0;
        for (const auto& [name, bucket] : report.by_type) bucket_total += bucket.count;
        CHECK(bucket_total == report.total);
        bucket_total = 0;
        for (const auto& [name, bucket] : report.by_source) bucket_total += bucket.count;
        CHECK(bucket_total == report.total);
    }
    SUBCASE("empty input reports absent rates") {
        EvalReport report = aggregate({}, {});
        CHECK(report.total == 0);
        CHECK(!report.em);
        CHECK(!report.arithmetic_em);
    }
    SUBCASE("json and text renderings") {
        std::vector<RecordOutcome> outcomes(1);
        outcomes[0].em = true;
        EvalReport report = aggregate(outcomes, {{"count", "hybrid"}});
        std::string json = report_to_json(report);
        CHECK(json.find("\"em\": 1.0") != std::string::npos);
        CHECK(json.find("\"by_type\"") != std::string::npos);
        std::string text = report_to_text(report);
        CHECK(text.find("em:") != std::string::npos);
        CHECK(text.find("count") != std::string::npos);
    }
}
