#include "numqa/pretrain.hpp"

#include <algorithm>
#include <set>

#include "numqa/errors.hpp"

namespace numqa {

namespace {

std::string spaced_ref(CellRef ref) {
    return ref_to_string(ref, RefStyle::spaced);
}

std::vector<int> numeric_columns(const Table& table) {
    std::vector<int> out;
    for (int c = 1; c <= table.n_cols(); ++c) {
        if (table.n_rows() == 0) continue;
        bool all_numeric = true;
        for (const Cell* cell : table.column_cells(c)) {
            if (!cell->normalized) {
                all_numeric = false;
                break;
            }
        }
        if (all_numeric) out.push_back(c);
    }
    return out;
}

std::string reference_chain(int column, int rows) {
    std::string out;
    for (int r = 1; r <= rows; ++r) {
        if (!out.empty()) out += " + ";
        out += spaced_ref(CellRef{column, r});
    }
    return out;
}

constexpr std::string_view kCalcKinds[] = {"max", "min", "sum", "average"};

}  // namespace

std::string_view synth_task_name(SynthTask task) {
    switch (task) {
        case SynthTask::location: return "location";
        case SynthTask::calculation: return "calculation";
        case SynthTask::hierarchy: return "hierarchy";
    }
    return "location";
}

std::vector<SynthExample> synth_location(const Table& table, DetRng& rng, int max_count) {
    std::vector<CellRef> numeric;
    for (int r = 1; r <= table.n_rows(); ++r)
        for (int c = 1; c <= table.n_cols(); ++c)
            if (table.cell_at({c, r}).normalized) numeric.push_back({c, r});
    if (numeric.empty()) throw NoNumericCells("table '" + table.id() + "' has no numeric cells");

    std::vector<SynthExample> out;
    for (int i : rng.sample_indices(static_cast<int>(numeric.size()),
                                    std::min<int>(max_count, numeric.size()))) {
        CellRef ref = numeric[i];
        out.push_back({SynthTask::location, "What is " + spaced_ref(ref) + " ?",
                       table.cell_at(ref).raw_text, table.id(), 0});
    }
    return out;
}

std::vector<SynthExample> synth_calculation(const Table& table, DetRng& rng, int max_count) {
    std::vector<int> columns = numeric_columns(table);
    if (columns.empty())
        throw NonNumericColumn("table '" + table.id() + "' has no fully numeric column");

    struct Candidate {
        int column;
        std::string_view kind;
    };
    std::vector<Candidate> candidates;
    for (int c : columns)
        for (std::string_view kind : kCalcKinds) candidates.push_back({c, kind});

    std::vector<SynthExample> out;
    for (int i : rng.sample_indices(static_cast<int>(candidates.size()),
                                    std::min<int>(max_count, candidates.size()))) {
        const Candidate& cand = candidates[i];
        std::string column_name = table.column_name(cand.column);
        std::string question =
            "What is the " + std::string(cand.kind) + " of " + column_name + " ?";
        std::string answer;
        if (cand.kind == "sum") {
            answer = reference_chain(cand.column, table.n_rows());
        } else if (cand.kind == "average") {
            std::string chain = reference_chain(cand.column, table.n_rows());
            answer = "(" + chain + ") / " + std::to_string(table.n_rows());
        } else {
            answer = std::string(cand.kind == "max" ? "table_max" : "table_min") + "(" +
                     column_name + ", none)";
        }
        out.push_back({SynthTask::calculation, std::move(question), std::move(answer),
                       table.id(), 0});
    }
    return out;
}

std::vector<SynthExample> synth_hierarchy(const Table& table, DetRng& rng, int max_count) {
    if (table.header_depth() < 2)
        throw FlatTable("table '" + table.id() + "' has flat headers");
    std::vector<CellRef> cells;
    for (int r = 1; r <= table.n_rows(); ++r)
        for (int c = 1; c <= table.n_cols(); ++c) cells.push_back({c, r});
    if (cells.empty()) throw FlatTable("table '" + table.id() + "' has no data cells");

    std::vector<SynthExample> out;
    for (int i : rng.sample_indices(static_cast<int>(cells.size()),
                                    std::min<int>(max_count, cells.size()))) {
        CellRef ref = cells[i];
        out.push_back({SynthTask::hierarchy,
                       "What is the " + spaced_ref(ref) + " belong to ?",
                       table.column_path(ref.col).front(), table.id(), 0});
    }
    return out;
}

std::vector<SynthExample> synth_all(const std::vector<Table>& corpus, const SynthConfig& config) {
    std::vector<SynthExample> all;
    for (const Table& table : corpus) {
        auto run = [&](SynthTask task, int cap, auto fn) {
            if (cap <= 0) return;
            DetRng rng(derive_seed(config.seed,
                                   table.id() + "/" + std::string(synth_task_name(task))));
            try {
                auto examples = fn(table, rng, cap);
                all.insert(all.end(), examples.begin(), examples.end());
            } catch (const Error&) {
                // table cannot serve this task; nothing to synthesize
            }
        };
        run(SynthTask::location, config.location_per_table, synth_location);
        run(SynthTask::calculation, config.calculation_per_table, synth_calculation);
        run(SynthTask::hierarchy, config.hierarchy_per_table, synth_hierarchy);
    }
    for (auto& example : all) example.seed = config.seed;

    std::set<SynthExample> seen;
    std::vector<SynthExample> unique;
    unique.reserve(all.size());
    for (auto& example : all)
        if (seen.insert(example).second) unique.push_back(example);

    DetRng shuffle_rng(derive_seed(config.seed, "shuffle"));
    shuffle_rng.shuffle(unique);
    return unique;
}

}  // namespace numqa
