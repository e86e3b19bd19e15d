#include "numqa/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace numqa {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string strip_punct(std::string_view token) {
    std::size_t b = 0, e = token.size();
    while (b < e && is_punct(token[b])) ++b;
    while (e > b && is_punct(token[e - 1])) --e;
    return std::string(token.substr(b, e - b));
}

std::map<std::string, double> weighted_bag(const std::vector<std::string>& tokens,
                                           const IdfTable& idf) {
    std::map<std::string, double> bag;
    for (const auto& t : tokens) bag[t] += 1.0;
    for (auto& [token, weight] : bag) weight *= idf.idf(token);
    return bag;
}

}  // namespace

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> whitespace_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t b = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > b) tokens.push_back(to_lower(text.substr(b, i - b)));
    }
    return tokens;
}

std::vector<std::string> normalized_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    for (const auto& raw : whitespace_tokens(text)) {
        std::string t = strip_punct(raw);
        if (!t.empty()) tokens.push_back(std::move(t));
    }
    return tokens;
}

int count_whitespace_tokens(std::string_view text) {
    int n = 0;
    bool in_token = false;
    for (char c : text) {
        if (is_space(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

std::string normalize_span(std::string_view span) {
    auto tokens = normalized_tokens(span);
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

IdfTable::IdfTable(const std::vector<std::string>& documents) {
    n_documents_ = static_cast<int>(documents.size());
    for (const auto& doc : documents) {
        auto tokens = normalized_tokens(doc);
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (auto& t : tokens) ++document_frequency_[t];
    }
}

double IdfTable::idf(const std::string& token) const {
    if (n_documents_ == 0) return 1.0;
    auto it = document_frequency_.find(token);
    int df = it == document_frequency_.end() ? 0 : it->second;
    return std::log(1.0 + static_cast<double>(n_documents_) / (1.0 + df)) + 1.0;
}

double IdfTable::cosine(std::string_view a, std::string_view b) const {
    auto bag_a = weighted_bag(normalized_tokens(a), *this);
    auto bag_b = weighted_bag(normalized_tokens(b), *this);
    if (bag_a.empty() || bag_b.empty()) return 0.0;
    if (bag_a == bag_b) return 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [token, wa] : bag_a) {
        na += wa * wa;
        auto it = bag_b.find(token);
        if (it != bag_b.end()) dot += wa * it->second;
    }
    for (const auto& [token, wb] : bag_b) nb += wb * wb;
    double denom = std::sqrt(na) * std::sqrt(nb);
    if (denom == 0.0) return 0.0;
    return std::clamp(dot / denom, 0.0, 1.0);
}

double IdfTable::coverage(std::string_view query, std::string_view document) const {
    auto q = normalized_tokens(query);
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    if (q.empty()) return 0.0;
    auto d = normalized_tokens(document);
    std::sort(d.begin(), d.end());
    double covered = 0.0, total = 0.0;
    for (const auto& token : q) {
        double w = idf(token);
        total += w;
        if (std::binary_search(d.begin(), d.end(), token)) covered += w;
    }
    if (total == 0.0) return 0.0;
    return std::clamp(covered / total, 0.0, 1.0);
}

double bag_of_words_f1(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::map<std::string, int> count_a;
    for (const auto& t : a) ++count_a[t];
    int overlap = 0;
    for (const auto& t : b) {
        auto it = count_a.find(t);
        if (it != count_a.end() && it->second > 0) {
            --it->second;
            ++overlap;
        }
    }
    if (overlap == 0) return 0.0;
    double precision = static_cast<double>(overlap) / b.size();
    double recall = static_cast<double>(overlap) / a.size();
    return 2.0 * precision * recall / (precision + recall);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view key) {
    std::uint64_t h = 14695981039346656037ULL ^ base;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    // splitmix64 finalizer to spread low-entropy keys
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

std::vector<int> DetRng::sample_indices(int n, int k) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    if (k >= n) {
        shuffle(all);
        return all;
    }
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(below(n - i));
        std::swap(all[i], all[j]);
        out.push_back(all[i]);
    }
    return out;
}

}  // namespace numqa
