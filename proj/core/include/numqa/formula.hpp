#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numqa/decimal.hpp"
#include "numqa/table.hpp"

namespace numqa {

/// The six mathematical operations. "multiple" is an accepted alias of
/// multiply on input; DSL output spelling is configurable.
enum class OpKind { add, subtract, multiply, divide, exp, greater };

/// The four table aggregation operations (table_max, table_min, ...).
enum class AggKind { max, min, sum, average };

std::string_view op_name(OpKind op);
std::string_view op_symbol(OpKind op);  // infix symbol, e.g. "×" for multiply
int op_precedence(OpKind op);           // greater < add/subtract < multiply/divide < exp
std::optional<OpKind> op_by_name(std::string_view name);
std::optional<OpKind> op_by_symbol(std::string_view symbol);

std::string_view agg_name(AggKind kind);         // "table_max"...
std::string_view agg_short_name(AggKind kind);   // "max"...
std::optional<AggKind> agg_by_name(std::string_view name);

/// Immutable arithmetic formula tree. Leaves are exact-decimal literals,
/// table cell references, x-placeholders (structure templates), or column/row
/// aggregations; interior nodes are binary operations.
///
/// Nodes are shared and never mutated, so Formula is a cheap value type and
/// safe to use across threads. `parenthesized` records explicit source
/// parentheses so printing reproduces the original grouping; it is ignored by
/// structural equality.
class Formula {
public:
    enum class Kind { number, cell, placeholder, binary, aggregation };

    static constexpr int kMaxDepth = 64;

    static Formula number(Decimal value, std::string raw = {});
    static Formula cell(CellRef ref);
    static Formula placeholder(int index);
    static Formula binary(OpKind op, Formula left, Formula right);
    static Formula aggregation(AggKind kind, std::string target);

    Kind kind() const;
    int depth() const;
    bool parenthesized() const;
    Formula with_parens(bool value) const;

    // leaf accessors (valid only for the matching kind)
    const Decimal& number_value() const;
    const std::string& raw_text() const;
    CellRef cell_ref() const;
    int placeholder_index() const;
    OpKind op() const;
    const Formula& left() const;
    const Formula& right() const;
    AggKind aggregation_kind() const;
    const std::string& aggregation_target() const;

    /// Structural equality: node kinds, operators, literal values (not their
    /// raw spellings), references, targets. Parenthesization is ignored.
    bool operator==(const Formula& rhs) const;

    /// In-order walk over leaves (number / cell / aggregation-target).
    void visit_leaves(const std::function<void(const Formula&)>& fn) const;
    int count_number_leaves() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// --- lexer ---

enum class Tok {
    number,
    ident,
    text,  // quoted string
    cell_ref,
    step_ref,
    plus,
    minus,
    star,
    slash,
    caret,
    greater,
    lparen,
    rparen,
    comma,
    colon,
    end
};

struct Token {
    Tok type = Tok::end;
    std::size_t pos = 0;
    std::string raw;   // source spelling (numbers keep grouping commas)
    Decimal number;    // for Tok::number
    CellRef ref;       // for Tok::cell_ref
    int step = 0;      // for Tok::step_ref
};

/// Whitespace-insensitive tokenizer shared by the infix and DSL parsers.
/// Accepts comma-grouped numbers ("113,246"), `{Col i, Row j}` reference
/// groups, `#n` step references, quoted strings, and the operator symbols
/// + - * × / ÷ ^ >.
std::vector<Token> tokenize(std::string_view text);

// --- parsers ---

enum class FormulaForm { infix, dsl };

/// Infix grammar with conventional precedence (`>` loosest, then +/-, then
/// ×/÷, then ^; all left-associative), parentheses, and unary minus folded
/// into number literals. Function-call syntax is accepted in operand position
/// so mixed inputs like "table_max(x, none) + 3" parse.
Formula parse_infix(std::string_view text);
Formula parse_infix(const std::vector<Token>& tokens);

/// Function-call programs: either one nested expression or comma-separated
/// steps whose results are referenced as #0, #1, ... Aliases ("multiple",
/// "table-max") are normalized.
Formula parse_dsl(std::string_view text);

/// Auto-detects the form (leading `name(` or a `#n` reference means DSL).
std::pair<Formula, FormulaForm> parse_formula(std::string_view text);

// --- printer ---

/// DSL spelling for multiply; the default reproduces "multiple" as in the
/// unified-format examples, switchable to "multiply".
enum class MultiplySpelling { multiple, multiply };

struct PrintOptions {
    FormulaForm form = FormulaForm::infix;
    /// Compact drops the spaces around infix operators:
    /// "(x1-x2)+(x3-x4)" instead of "(x1 - x2) + (x3 - x4)".
    bool compact = false;
    MultiplySpelling multiply_spelling = MultiplySpelling::multiple;
    RefStyle ref_style = RefStyle::sequence;
    /// Shift printed placeholder indices by this delta (e.g. -1 renders the
    /// x1-based template "x1 - x2" as "x0 - x1").
    int placeholder_shift = 0;
};

std::string print_formula(const Formula& f, const PrintOptions& options = {});
std::string print_infix(const Formula& f, bool compact = false);
std::string print_dsl(const Formula& f,
                      MultiplySpelling spelling = MultiplySpelling::multiple);

// --- evaluator ---

/// Exact-decimal evaluation. The table is required iff the formula contains
/// aggregations; cell references and placeholders must be resolved first.
NumericValue evaluate(const Formula& f, const Table* table = nullptr);

}  // namespace numqa
