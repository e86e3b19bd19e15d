#include <benchmark/benchmark.h>

#include "numqa/decompose.hpp"
#include "numqa/locate.hpp"
#include "numqa/retrieve.hpp"
#include "numqa/sequence.hpp"

namespace {

const char* kFormula = "(113,246-18,967) + (120,523-19,766) + (125,843-21,355)";

numqa::Table worked_table() {
    return numqa::Table("t", {{"Outcome"}, {"Income"}}, {"2018", "2019", "2020", "2021"},
                        {{"18,967", "113,246"},
                         {"19,766", "120,523"},
                         {"21,355", "125,843"},
                         {"22,312", "130,725"}});
}

void BM_ParseInfix(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(numqa::parse_infix(kFormula));
}
BENCHMARK(BM_ParseInfix);

void BM_Evaluate(benchmark::State& state) {
    numqa::Formula f = numqa::parse_infix(kFormula);
    for (auto _ : state) benchmark::DoNotOptimize(numqa::evaluate(f));
}
BENCHMARK(BM_Evaluate);

void BM_LocateFormula(benchmark::State& state) {
    numqa::Table t = worked_table();
    numqa::Formula f = numqa::parse_infix(kFormula);
    for (auto _ : state) benchmark::DoNotOptimize(numqa::locate_formula(f, t));
}
BENCHMARK(BM_LocateFormula);

void BM_EncodeDecode(benchmark::State& state) {
    numqa::Table t = worked_table();
    numqa::Formula f = numqa::parse_infix(kFormula);
    auto [located, report] = numqa::locate_formula(f, t);
    numqa::Decomposition d = numqa::decompose(f);
    for (auto _ : state) {
        numqa::ReasoningSequence seq = numqa::encode(d, located);
        benchmark::DoNotOptimize(numqa::decode(seq.raw));
    }
}
BENCHMARK(BM_EncodeDecode);

void BM_Retrieve(benchmark::State& state) {
    numqa::Table t = worked_table();
    std::vector<numqa::EvidenceUnit> units;
    for (int c = 1; c <= t.n_cols(); ++c)
        units.push_back(numqa::make_column_unit(t, c, "t:col" + std::to_string(c)));
    for (int i = 0; i < 8; ++i)
        units.push_back(numqa::make_paragraph_unit(
            "p" + std::to_string(i), "filler paragraph about balances and outcomes " +
                                         std::to_string(i)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            numqa::retrieve("I want to know the balance sum from 2018 to 2020", units, 512));
}
BENCHMARK(BM_Retrieve);

}  // namespace

BENCHMARK_MAIN();
