#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numqa/decimal.hpp"

namespace numqa {

/// Magnitude scale inferred from surface markers ("%", "million", ...).
enum class Scale { none, percent, thousand, million, billion };

std::string_view scale_name(Scale scale);
std::optional<Scale> scale_by_name(std::string_view name);

/// A cell value reduced to an exact magnitude plus its scale marker. The
/// magnitude is signed; currency symbols, grouping commas, the "%" sign and
/// parenthesized duplicates ("-9 ( 9 )") are stripped.
struct NormalizedValue {
    Decimal magnitude;
    Scale scale = Scale::none;

    bool negative() const { return magnitude.is_negative(); }
    bool operator==(const NormalizedValue&) const = default;
};

/// 1-based reference into the data region of a table (headers excluded), so
/// {Col1, Row1} is the top-left data cell.
struct CellRef {
    int col = 0;
    int row = 0;

    bool operator==(const CellRef&) const = default;
    auto operator<=>(const CellRef&) const = default;
};

enum class RefStyle {
    sequence,  ///< "{Col2, Row1}" — reasoning-sequence slots
    spaced,    ///< "{ Col2 , Row1 }" — synthesized question templates
};

std::string ref_to_string(CellRef ref, RefStyle style = RefStyle::sequence);

struct Cell {
    std::string raw_text;
    std::optional<NormalizedValue> normalized;
};

/// Total function: nullopt when the text is not numeric under the
/// normalization rules.
std::optional<NormalizedValue> normalize_cell_value(std::string_view raw);

/// Validates comma grouping and strips it: "113,246" -> "113246".
/// Rejects malformed grouping like "1,23".
std::optional<std::string> degroup_number(std::string_view text);

/// Evidence table: hierarchical column header paths, row headers, and a
/// rectangular grid of data cells. Immutable after construction.
class Table {
public:
    Table(std::string id, std::vector<std::vector<std::string>> column_headers,
          std::vector<std::string> row_headers, std::vector<std::vector<std::string>> cells,
          std::string caption = {});

    const std::string& id() const { return id_; }
    const std::string& caption() const { return caption_; }
    int n_cols() const { return static_cast<int>(column_headers_.size()); }
    int n_rows() const { return static_cast<int>(row_headers_.size()); }
    /// Uniform length of the column header paths; 1 means a flat table.
    int header_depth() const { return header_depth_; }
    /// Scale implied by the caption ("$ in millions"), if any.
    std::optional<Scale> default_scale() const { return default_scale_; }

    bool in_bounds(CellRef ref) const;
    const Cell& cell_at(CellRef ref) const;  // throws OutOfBounds

    const std::vector<std::string>& column_path(int col) const;  // 1-based
    const std::string& row_header(int row) const;                // 1-based
    /// Column path joined with " : ", e.g. "Current : Federal".
    std::string column_name(int col) const;

    /// (full column header path, row header name) for a cell.
    std::pair<std::vector<std::string>, std::string> header_path(CellRef ref) const;

    /// Deterministic text rendering: one header line with per-column order
    /// marks ("Col1: Outcome | Col2: Income"), then one line per data row
    /// ("2018 | 18,967 | 113,246").
    std::string linearize() const;

    /// All cells of a 1-based column, top to bottom.
    std::vector<const Cell*> column_cells(int col) const;
    std::vector<const Cell*> row_cells(int row) const;

private:
    std::string id_;
    std::string caption_;
    std::vector<std::vector<std::string>> column_headers_;
    std::vector<std::string> row_headers_;
    std::vector<std::vector<Cell>> cells_;  // rows x cols
    int header_depth_ = 1;
    std::optional<Scale> default_scale_;
};

}  // namespace numqa
