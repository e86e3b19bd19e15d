#include "numqa/retrieve.hpp"

#include <algorithm>

#include "numqa/errors.hpp"

namespace numqa {

EvidenceUnit make_paragraph_unit(std::string id, std::string text) {
    EvidenceUnit unit;
    unit.kind = EvidenceUnit::Kind::paragraph;
    unit.id = std::move(id);
    unit.text = std::move(text);
    unit.token_count = count_whitespace_tokens(unit.text);
    return unit;
}

EvidenceUnit make_column_unit(const Table& table, int column, std::string id) {
    EvidenceUnit unit;
    unit.kind = EvidenceUnit::Kind::table_column;
    unit.id = std::move(id);
    unit.table_id = table.id();
    unit.column = column;
    std::string text = "Col" + std::to_string(column) + ": " + table.column_name(column);
    for (const Cell* cell : table.column_cells(column)) {
        text += " | ";
        text += cell->raw_text;
    }
    unit.text = std::move(text);
    unit.token_count = count_whitespace_tokens(unit.text);
    return unit;
}

LexicalScorer::LexicalScorer(const std::vector<EvidenceUnit>& corpus) {
    std::vector<std::string> documents;
    documents.reserve(corpus.size());
    for (const auto& unit : corpus) documents.push_back(unit.text);
    idf_ = IdfTable(documents);
}

double LexicalScorer::score(const std::string& question, const EvidenceUnit& unit) const {
    return idf_.cosine(question, unit.text);
}

RetrievalResult retrieve(const std::string& question, const std::vector<EvidenceUnit>& units,
                         int budget, int k_max, const EvidenceScorer* scorer) {
    if (budget <= 0) throw ConfigError("retrieval budget must be positive");
    std::unique_ptr<LexicalScorer> fallback;
    if (scorer == nullptr) {
        fallback = std::make_unique<LexicalScorer>(units);
        scorer = fallback.get();
    }

    RetrievalResult result;
    result.ranked.reserve(units.size());
    std::vector<const EvidenceUnit*> by_id;
    for (const auto& unit : units) {
        result.ranked.push_back({unit.id, scorer->score(question, unit)});
        by_id.push_back(&unit);
    }
    std::vector<std::size_t> order(units.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (result.ranked[a].confidence != result.ranked[b].confidence)
            return result.ranked[a].confidence > result.ranked[b].confidence;
        return result.ranked[a].id < result.ranked[b].id;
    });
    std::vector<RetrievalResult::Scored> ranked;
    ranked.reserve(order.size());
    std::vector<const EvidenceUnit*> ranked_units;
    for (std::size_t i : order) {
        ranked.push_back(result.ranked[i]);
        ranked_units.push_back(by_id[i]);
    }
    result.ranked = std::move(ranked);

    for (std::size_t i = 0; i < ranked_units.size(); ++i) {
        if (static_cast<int>(result.selected.size()) >= k_max) break;
        int cost = ranked_units[i]->token_count;
        if (result.budget_used + cost > budget) {
            if (result.selected.empty())
                result.diagnostics.push_back("unit '" + ranked_units[i]->id +
                                             "' alone exceeds the token budget");
            break;
        }
        result.selected.push_back(ranked_units[i]->id);
        result.budget_used += cost;
    }
    return result;
}

}  // namespace numqa
