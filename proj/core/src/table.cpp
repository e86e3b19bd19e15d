#include "numqa/table.hpp"

#include <algorithm>
#include <cctype>

#include "numqa/errors.hpp"
#include "numqa/text.hpp"

namespace numqa {

namespace {

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

// "-9 ( 9 )" -> "-9" when the parenthesized part repeats the magnitude.
std::string_view strip_parenthesized_duplicate(std::string_view s) {
    if (s.empty() || s.back() != ')') return s;
    std::size_t open = s.rfind('(');
    if (open == std::string_view::npos || open == 0) return s;
    std::string_view head = trim(s.substr(0, open));
    std::string_view inner = trim(s.substr(open + 1, s.size() - open - 2));
    auto head_clean = degroup_number(head);
    auto inner_clean = degroup_number(inner);
    if (!head_clean || !inner_clean) return s;
    auto a = Decimal::parse(*head_clean);
    auto b = Decimal::parse(*inner_clean);
    if (a && b && a->abs() == b->abs()) return head;
    return s;
}

std::optional<Scale> scale_from_word(std::string_view word) {
    std::string w = to_lower(word);
    if (w == "thousand" || w == "thousands") return Scale::thousand;
    if (w == "million" || w == "millions") return Scale::million;
    if (w == "billion" || w == "billions") return Scale::billion;
    if (w == "percent" || w == "percentage") return Scale::percent;
    return std::nullopt;
}

}  // namespace

std::string_view scale_name(Scale scale) {
    switch (scale) {
        case Scale::none: return "none";
        case Scale::percent: return "percent";
        case Scale::thousand: return "thousand";
        case Scale::million: return "million";
        case Scale::billion: return "billion";
    }
    return "none";
}

std::optional<Scale> scale_by_name(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "none" || n.empty()) return Scale::none;
    return scale_from_word(n);
}

std::string ref_to_string(CellRef ref, RefStyle style) {
    if (style == RefStyle::sequence)
        return "{Col" + std::to_string(ref.col) + ", Row" + std::to_string(ref.row) + "}";
    return "{ Col" + std::to_string(ref.col) + " , Row" + std::to_string(ref.row) + " }";
}

std::optional<std::string> degroup_number(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) out.push_back(text[i++]);
    std::size_t first_group = 0;
    while (i < text.size() && is_digit(text[i])) {
        out.push_back(text[i++]);
        ++first_group;
    }
    if (first_group == 0 && !(i < text.size() && text[i] == '.')) return std::nullopt;
    bool grouped = false;
    while (i < text.size() && text[i] == ',') {
        if (first_group == 0 || first_group > 3) return std::nullopt;
        if (text.size() - (i + 1) < 3) return std::nullopt;
        if (!is_digit(text[i + 1]) || !is_digit(text[i + 2]) || !is_digit(text[i + 3]))
            return std::nullopt;
        out.append(text.substr(i + 1, 3));
        i += 4;
        grouped = true;
    }
    if (grouped && i < text.size() && is_digit(text[i])) return std::nullopt;
    if (i < text.size() && text[i] == '.') {
        out.push_back(text[i++]);
        std::size_t frac = 0;
        while (i < text.size() && is_digit(text[i])) {
            out.push_back(text[i++]);
            ++frac;
        }
        if (frac == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    return out;
}

std::optional<NormalizedValue> normalize_cell_value(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;

    s = strip_parenthesized_duplicate(s);
    s = trim(s);

    Scale scale = Scale::none;

    // trailing '%' or a scale word
    if (!s.empty() && s.back() == '%') {
        scale = Scale::percent;
        s = trim(s.substr(0, s.size() - 1));
    } else {
        std::size_t space = s.rfind(' ');
        if (space != std::string_view::npos) {
            if (auto w = scale_from_word(trim(s.substr(space + 1)))) {
                scale = *w;
                s = trim(s.substr(0, space));
            }
        }
    }

    // leading currency marker, possibly before or after the sign
    std::string cleaned;
    cleaned.reserve(s.size());
    for (char c : s) {
        if (c == '$') continue;
        cleaned.push_back(c);
    }
    std::string_view body = trim(cleaned);
    if (body.empty()) return std::nullopt;

    auto degrouped = degroup_number(body);
    if (!degrouped) return std::nullopt;
    auto value = Decimal::parse(*degrouped);
    if (!value) return std::nullopt;
    return NormalizedValue{*value, scale};
}

Table::Table(std::string id, std::vector<std::vector<std::string>> column_headers,
             std::vector<std::string> row_headers, std::vector<std::vector<std::string>> cells,
             std::string caption)
    : id_(std::move(id)),
      caption_(std::move(caption)),
      column_headers_(std::move(column_headers)),
      row_headers_(std::move(row_headers)) {
    if (column_headers_.empty()) throw Error("table '" + id_ + "' has no columns");
    header_depth_ = static_cast<int>(column_headers_.front().size());
    if (header_depth_ < 1) throw Error("table '" + id_ + "' has an empty column header path");
    for (const auto& path : column_headers_)
        if (static_cast<int>(path.size()) != header_depth_)
            throw Error("table '" + id_ + "' has non-uniform header depth");
    if (cells.size() != row_headers_.size())
        throw Error("table '" + id_ + "': row count does not match row headers");
    cells_.reserve(cells.size());
    for (auto& row : cells) {
        if (row.size() != column_headers_.size())
            throw Error("table '" + id_ + "': grid is not rectangular");
        std::vector<Cell> out;
        out.reserve(row.size());
        for (auto& raw : row) out.push_back(Cell{raw, normalize_cell_value(raw)});
        cells_.push_back(std::move(out));
    }
    if (!caption_.empty()) {
        for (const auto& word : normalized_tokens(caption_)) {
            if (auto w = scale_from_word(word)) {
                default_scale_ = *w;
                break;
            }
        }
    }
}

bool Table::in_bounds(CellRef ref) const {
    return ref.col >= 1 && ref.col <= n_cols() && ref.row >= 1 && ref.row <= n_rows();
}

const Cell& Table::cell_at(CellRef ref) const {
    if (!in_bounds(ref)) throw OutOfBounds(ref.col, ref.row, n_cols(), n_rows());
    return cells_[ref.row - 1][ref.col - 1];
}

const std::vector<std::string>& Table::column_path(int col) const {
    if (col < 1 || col > n_cols()) throw OutOfBounds(col, 1, n_cols(), n_rows());
    return column_headers_[col - 1];
}

const std::string& Table::row_header(int row) const {
    if (row < 1 || row > n_rows()) throw OutOfBounds(1, row, n_cols(), n_rows());
    return row_headers_[row - 1];
}

std::string Table::column_name(int col) const {
    const auto& path = column_path(col);
    std::string out;
    for (const auto& level : path) {
        if (!out.empty()) out += " : ";
        out += level;
    }
    return out;
}

std::pair<std::vector<std::string>, std::string> Table::header_path(CellRef ref) const {
    if (!in_bounds(ref)) throw OutOfBounds(ref.col, ref.row, n_cols(), n_rows());
    return {column_path(ref.col), row_header(ref.row)};
}

std::string Table::linearize() const {
    std::string out;
    for (int c = 1; c <= n_cols(); ++c) {
        if (c > 1) out += " | ";
        out += "Col" + std::to_string(c) + ": " + column_name(c);
    }
    for (int r = 1; r <= n_rows(); ++r) {
        out += "\n";
        out += row_header(r);
        for (int c = 1; c <= n_cols(); ++c) {
            out += " | ";
            out += cells_[r - 1][c - 1].raw_text;
        }
    }
    return out;
}

std::vector<const Cell*> Table::column_cells(int col) const {
    if (col < 1 || col > n_cols()) throw OutOfBounds(col, 1, n_cols(), n_rows());
    std::vector<const Cell*> out;
    out.reserve(n_rows());
    for (int r = 0; r < n_rows(); ++r) out.push_back(&cells_[r][col - 1]);
    return out;
}

std::vector<const Cell*> Table::row_cells(int row) const {
    if (row < 1 || row > n_rows()) throw OutOfBounds(1, row, n_cols(), n_rows());
    std::vector<const Cell*> out;
    out.reserve(n_cols());
    for (int c = 0; c < n_cols(); ++c) out.push_back(&cells_[row - 1][c]);
    return out;
}

}  // namespace numqa
