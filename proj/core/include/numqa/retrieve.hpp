#pragma once

#include <memory>
#include <string>
#include <vector>

#include "numqa/table.hpp"
#include "numqa/text.hpp"

namespace numqa {

/// One retrievable piece of evidence: a text paragraph or a table column
/// rendered as "ColK: header path | cell | cell | ...".
struct EvidenceUnit {
    enum class Kind { paragraph, table_column };
    Kind kind = Kind::paragraph;
    std::string id;
    std::string text;
    int token_count = 0;

    // table_column provenance, for training-label extraction
    std::string table_id;
    int column = 0;
};

EvidenceUnit make_paragraph_unit(std::string id, std::string text);
EvidenceUnit make_column_unit(const Table& table, int column, std::string id);

/// Confidence scorer interface; the lexical scorer stands in for a trained
/// relevance classifier and a learned one can be plugged in behind it.
class EvidenceScorer {
public:
    virtual ~EvidenceScorer() = default;
    /// Deterministic confidence in [0, 1].
    virtual double score(const std::string& question, const EvidenceUnit& unit) const = 0;
};

/// idf-weighted cosine overlap between question and unit tokens.
class LexicalScorer final : public EvidenceScorer {
public:
    explicit LexicalScorer(const std::vector<EvidenceUnit>& corpus);
    double score(const std::string& question, const EvidenceUnit& unit) const override;

private:
    IdfTable idf_;
};

struct RetrievalResult {
    struct Scored {
        std::string id;
        double confidence = 0.0;
    };
    /// Total order: confidence descending, unit id ascending.
    std::vector<Scored> ranked;
    /// Prefix of `ranked` that fits the token budget, capped at k_max.
    std::vector<std::string> selected;
    int budget_used = 0;
    std::vector<std::string> diagnostics;
};

/// Rank all units and greedily take them in rank order while the token
/// budget holds. Selection stops at the first unit that does not fit, so the
/// result is always a prefix of the ranking.
RetrievalResult retrieve(const std::string& question, const std::vector<EvidenceUnit>& units,
                         int budget, int k_max = 5, const EvidenceScorer* scorer = nullptr);

}  // namespace numqa
