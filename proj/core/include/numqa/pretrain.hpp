#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "numqa/table.hpp"
#include "numqa/text.hpp"

namespace numqa {

enum class SynthTask { location, calculation, hierarchy };

std::string_view synth_task_name(SynthTask task);

/// One synthesized pre-training example. The question instantiates the
/// task's template; the answer is derivable from the table by the task's
/// rule (cell lookup, column formula, or first-level header).
struct SynthExample {
    SynthTask task = SynthTask::location;
    std::string question;
    std::string answer;
    std::string table_id;
    std::uint64_t seed = 0;

    bool operator==(const SynthExample&) const = default;
    auto operator<=>(const SynthExample&) const = default;
};

struct SynthConfig {
    int location_per_table = 8;
    int calculation_per_table = 4;
    int hierarchy_per_table = 8;
    std::uint64_t seed = 0;
};

/// "What is { Col i , Row j } ?" -> the cell's raw text. Samples numeric
/// cells without replacement; throws NoNumericCells when the table has none.
std::vector<SynthExample> synth_location(const Table& table, DetRng& rng, int max_count);

/// "What is the max/min/sum/average of <column> ?" -> the located-formula
/// expression over the whole column (sum/average as reference chains,
/// max/min in table_* call form). Throws NonNumericColumn when no column is
/// fully numeric.
std::vector<SynthExample> synth_calculation(const Table& table, DetRng& rng, int max_count);

/// "What is the { Col i , Row j } belong to ?" -> first level of the cell's
/// column header path. Throws FlatTable for depth-1 tables.
std::vector<SynthExample> synth_hierarchy(const Table& table, DetRng& rng, int max_count);

/// Deduplicated union of all three tasks over the corpus, shuffled
/// deterministically with the config seed. Tables that cannot serve a task
/// (flat, fully textual) simply contribute nothing for it.
std::vector<SynthExample> synth_all(const std::vector<Table>& corpus, const SynthConfig& config);

}  // namespace numqa
