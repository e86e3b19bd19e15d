#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace numqa {

/// Lowercased whitespace tokens; punctuation is kept so surface forms like
/// "1.7%" survive for matching.
std::vector<std::string> whitespace_tokens(std::string_view text);

/// Lowercase + strip leading/trailing punctuation per token; empty tokens
/// dropped. This is the normalization used for span comparison and lexical
/// scoring.
std::vector<std::string> normalized_tokens(std::string_view text);

int count_whitespace_tokens(std::string_view text);

std::string to_lower(std::string_view text);

/// Normalize a span for exact-match comparison: lowercase, strip surrounding
/// punctuation of each token, collapse whitespace.
std::string normalize_span(std::string_view span);

/// Smoothed inverse document frequencies over a small corpus of texts.
class IdfTable {
public:
    IdfTable() = default;
    explicit IdfTable(const std::vector<std::string>& documents);

    double idf(const std::string& token) const;
    bool empty() const { return n_documents_ == 0; }

    /// tf-idf cosine between two texts, clamped to [0, 1].
    double cosine(std::string_view a, std::string_view b) const;

    /// Fraction of `query` idf mass covered by `document` tokens, in [0, 1].
    double coverage(std::string_view query, std::string_view document) const;

private:
    std::map<std::string, int> document_frequency_;
    int n_documents_ = 0;
};

/// Token-level F1 between two bags of words (SQuAD style): 2PR/(P+R) over
/// multiset intersection counts.
double bag_of_words_f1(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Deterministic 64-bit mix of a base seed and a string key (FNV-1a over the
/// key, xor-folded with the base). Used to derive per-record RNG streams.
std::uint64_t derive_seed(std::uint64_t base, std::string_view key);

/// Deterministic RNG. std::mt19937_64's output sequence is pinned by the
/// standard; index reduction uses plain modulo so results never depend on the
/// standard library's distribution implementations.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// k distinct indices from [0, n), order randomized (partial Fisher-Yates).
    std::vector<int> sample_indices(int n, int k);

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace numqa
