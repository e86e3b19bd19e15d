#include "numqa/formula.hpp"

#include <algorithm>
#include <array>
#include <variant>

#include "numqa/errors.hpp"
#include "numqa/text.hpp"

namespace numqa {

namespace {

struct OpInfo {
    OpKind kind;
    std::string_view name;
    std::string_view symbol;
    int precedence;
};

constexpr std::array<OpInfo, 6> kOps = {{
    {OpKind::add, "add", "+", 2},
    {OpKind::subtract, "subtract", "-", 2},
    {OpKind::multiply, "multiply", "×", 3},
    {OpKind::divide, "divide", "/", 3},
    {OpKind::exp, "exp", "^", 4},
    {OpKind::greater, "greater", ">", 1},
}};

const OpInfo& info(OpKind op) {
    return kOps[static_cast<std::size_t>(op)];
}

}  // namespace

std::string_view op_name(OpKind op) { return info(op).name; }
std::string_view op_symbol(OpKind op) { return info(op).symbol; }
int op_precedence(OpKind op) { return info(op).precedence; }

std::optional<OpKind> op_by_name(std::string_view name) {
    std::string n = to_lower(name);
    for (const auto& op : kOps)
        if (n == op.name) return op.kind;
    if (n == "multiple") return OpKind::multiply;  // accepted alias
    return std::nullopt;
}

std::optional<OpKind> op_by_symbol(std::string_view symbol) {
    if (symbol == "+") return OpKind::add;
    if (symbol == "-") return OpKind::subtract;
    if (symbol == "*" || symbol == "×") return OpKind::multiply;
    if (symbol == "/" || symbol == "÷") return OpKind::divide;
    if (symbol == "^") return OpKind::exp;
    if (symbol == ">") return OpKind::greater;
    return std::nullopt;
}

std::string_view agg_name(AggKind kind) {
    switch (kind) {
        case AggKind::max: return "table_max";
        case AggKind::min: return "table_min";
        case AggKind::sum: return "table_sum";
        case AggKind::average: return "table_average";
    }
    return "table_max";
}

std::string_view agg_short_name(AggKind kind) {
    switch (kind) {
        case AggKind::max: return "max";
        case AggKind::min: return "min";
        case AggKind::sum: return "sum";
        case AggKind::average: return "average";
    }
    return "max";
}

std::optional<AggKind> agg_by_name(std::string_view name) {
    std::string n = to_lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "table_max") return AggKind::max;
    if (n == "table_min") return AggKind::min;
    if (n == "table_sum") return AggKind::sum;
    if (n == "table_average" || n == "table_avg") return AggKind::average;
    return std::nullopt;
}

// --- AST ---

struct Formula::Node {
    struct Number {
        Decimal value;
        std::string raw;
    };
    struct Cell {
        CellRef ref;
    };
    struct Placeholder {
        int index;
    };
    struct Binary {
        OpKind op;
        Formula left;
        Formula right;
    };
    struct Aggregation {
        AggKind kind;
        std::string target;
    };

    std::variant<Number, Cell, Placeholder, Binary, Aggregation> data;
    int depth = 1;
    bool parens = false;
};

Formula Formula::number(Decimal value, std::string raw) {
    auto node = std::make_shared<Node>();
    node->data = Node::Number{std::move(value), std::move(raw)};
    return Formula(std::move(node));
}

Formula Formula::cell(CellRef ref) {
    auto node = std::make_shared<Node>();
    node->data = Node::Cell{ref};
    return Formula(std::move(node));
}

Formula Formula::placeholder(int index) {
    auto node = std::make_shared<Node>();
    node->data = Node::Placeholder{index};
    return Formula(std::move(node));
}

Formula Formula::binary(OpKind op, Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->depth = 1 + std::max(left.depth(), right.depth());
    if (node->depth > kMaxDepth) throw Error("formula exceeds maximum depth");
    node->data = Node::Binary{op, std::move(left), std::move(right)};
    return Formula(std::move(node));
}

Formula Formula::aggregation(AggKind kind, std::string target) {
    auto node = std::make_shared<Node>();
    node->data = Node::Aggregation{kind, std::move(target)};
    return Formula(std::move(node));
}

Formula::Kind Formula::kind() const {
    switch (node_->data.index()) {
        case 0: return Kind::number;
        case 1: return Kind::cell;
        case 2: return Kind::placeholder;
        case 3: return Kind::binary;
        default: return Kind::aggregation;
    }
}

int Formula::depth() const { return node_->depth; }
bool Formula::parenthesized() const { return node_->parens; }

Formula Formula::with_parens(bool value) const {
    if (node_->parens == value) return *this;
    auto node = std::make_shared<Node>(*node_);
    node->parens = value;
    return Formula(std::move(node));
}

const Decimal& Formula::number_value() const {
    return std::get<Node::Number>(node_->data).value;
}

const std::string& Formula::raw_text() const {
    return std::get<Node::Number>(node_->data).raw;
}

CellRef Formula::cell_ref() const { return std::get<Node::Cell>(node_->data).ref; }
int Formula::placeholder_index() const { return std::get<Node::Placeholder>(node_->data).index; }
OpKind Formula::op() const { return std::get<Node::Binary>(node_->data).op; }
const Formula& Formula::left() const { return std::get<Node::Binary>(node_->data).left; }
const Formula& Formula::right() const { return std::get<Node::Binary>(node_->data).right; }
AggKind Formula::aggregation_kind() const {
    return std::get<Node::Aggregation>(node_->data).kind;
}
const std::string& Formula::aggregation_target() const {
    return std::get<Node::Aggregation>(node_->data).target;
}

bool Formula::operator==(const Formula& rhs) const {
    if (node_ == rhs.node_) return true;
    if (kind() != rhs.kind()) return false;
    switch (kind()) {
        case Kind::number: return number_value() == rhs.number_value();
        case Kind::cell: return cell_ref() == rhs.cell_ref();
        case Kind::placeholder: return placeholder_index() == rhs.placeholder_index();
        case Kind::binary:
            return op() == rhs.op() && left() == rhs.left() && right() == rhs.right();
        case Kind::aggregation:
            return aggregation_kind() == rhs.aggregation_kind() &&
                   aggregation_target() == rhs.aggregation_target();
    }
    return false;
}

void Formula::visit_leaves(const std::function<void(const Formula&)>& fn) const {
    switch (kind()) {
        case Kind::binary:
            left().visit_leaves(fn);
            right().visit_leaves(fn);
            break;
        default:
            fn(*this);
    }
}

int Formula::count_number_leaves() const {
    int n = 0;
    visit_leaves([&](const Formula& leaf) {
        if (leaf.kind() == Kind::number) ++n;
    });
    return n;
}

// --- printer ---

namespace {

std::string print_number(const Formula& f) {
    const std::string& raw = f.raw_text();
    return raw.empty() ? f.number_value().to_string() : raw;
}

std::string quoted_target(const std::string& target) {
    if (target.find('"') != std::string::npos)
        throw UnprintableNode("aggregation target contains a quote: " + target);
    if (target.find(',') != std::string::npos) return "\"" + target + "\"";
    return target;
}

class Printer {
public:
    explicit Printer(const PrintOptions& options) : options_(options) {}

    std::string render(const Formula& f) const {
        return options_.form == FormulaForm::dsl ? dsl(f) : infix(f, 0, false);
    }

private:
    std::string leaf(const Formula& f) const {
        switch (f.kind()) {
            case Formula::Kind::number: return print_number(f);
            case Formula::Kind::cell: return ref_to_string(f.cell_ref(), options_.ref_style);
            case Formula::Kind::placeholder:
                return "x" + std::to_string(f.placeholder_index() + options_.placeholder_shift);
            case Formula::Kind::aggregation:
                return std::string(agg_name(f.aggregation_kind())) + "(" +
                       quoted_target(f.aggregation_target()) + ", none)";
            default: return {};
        }
    }

    std::string op_text(OpKind op) const {
        if (options_.form == FormulaForm::dsl && op == OpKind::multiply &&
            options_.multiply_spelling == MultiplySpelling::multiple)
            return "multiple";
        return std::string(op_name(op));
    }

    std::string infix(const Formula& f, int parent_precedence, bool right_child) const {
        if (f.kind() != Formula::Kind::binary) return leaf(f);
        int prec = op_precedence(f.op());
        std::string body = infix(f.left(), prec, false) +
                           (options_.compact ? std::string(op_symbol(f.op()))
                                             : " " + std::string(op_symbol(f.op())) + " ") +
                           infix(f.right(), prec, true);
        bool need = prec < parent_precedence || (prec == parent_precedence && right_child);
        if (need || f.parenthesized()) return "(" + body + ")";
        return body;
    }

    std::string dsl(const Formula& f) const {
        if (f.kind() != Formula::Kind::binary) return leaf(f);
        return op_text(f.op()) + "(" + dsl(f.left()) + ", " + dsl(f.right()) + ")";
    }

    const PrintOptions& options_;
};

}  // namespace

std::string print_formula(const Formula& f, const PrintOptions& options) {
    return Printer(options).render(f);
}

std::string print_infix(const Formula& f, bool compact) {
    PrintOptions options;
    options.compact = compact;
    return Printer(options).render(f);
}

std::string print_dsl(const Formula& f, MultiplySpelling spelling) {
    PrintOptions options;
    options.form = FormulaForm::dsl;
    options.multiply_spelling = spelling;
    return Printer(options).render(f);
}

// --- evaluator ---

namespace {

Decimal aggregate_cells(AggKind kind, const std::vector<const Cell*>& cells,
                        const std::string& target) {
    std::vector<Decimal> values;
    for (const Cell* cell : cells)
        if (cell->normalized) values.push_back(cell->normalized->magnitude);
    if (values.empty())
        throw NonNumericAggregationTarget("no numeric cells under '" + target + "'");
    switch (kind) {
        case AggKind::max: return *std::max_element(values.begin(), values.end());
        case AggKind::min: return *std::min_element(values.begin(), values.end());
        case AggKind::sum:
        case AggKind::average: {
            Decimal total;
            for (const auto& v : values) total = total.add(v);
            if (kind == AggKind::sum) return total;
            return total.divide(Decimal(static_cast<long long>(values.size())));
        }
    }
    throw NonNumericAggregationTarget(target);
}

NumericValue evaluate_aggregation(const Formula& f, const Table* table) {
    if (table == nullptr) throw MissingTable();
    const std::string& target = f.aggregation_target();
    for (int c = 1; c <= table->n_cols(); ++c)
        if (table->column_name(c) == target)
            return {aggregate_cells(f.aggregation_kind(), table->column_cells(c), target)};
    for (int r = 1; r <= table->n_rows(); ++r)
        if (table->row_header(r) == target)
            return {aggregate_cells(f.aggregation_kind(), table->row_cells(r), target)};
    throw NonNumericAggregationTarget("no column or row named '" + target + "'");
}

}  // namespace

NumericValue evaluate(const Formula& f, const Table* table) {
    switch (f.kind()) {
        case Formula::Kind::number: return {f.number_value()};
        case Formula::Kind::cell:
            throw UnresolvedReference("unresolved cell reference " +
                                      ref_to_string(f.cell_ref()));
        case Formula::Kind::placeholder:
            throw UnresolvedReference("unresolved placeholder x" +
                                      std::to_string(f.placeholder_index()));
        case Formula::Kind::aggregation: return evaluate_aggregation(f, table);
        case Formula::Kind::binary: break;
    }
    NumericValue lhs = evaluate(f.left(), table);
    NumericValue rhs = evaluate(f.right(), table);
    bool inexact = lhs.inexact || rhs.inexact;
    switch (f.op()) {
        case OpKind::add: return {lhs.value.add(rhs.value), false, inexact};
        case OpKind::subtract: return {lhs.value.subtract(rhs.value), false, inexact};
        case OpKind::multiply: return {lhs.value.multiply(rhs.value), false, inexact};
        case OpKind::divide: return {lhs.value.divide(rhs.value), false, inexact};
        case OpKind::exp: {
            bool pow_inexact = false;
            Decimal result = lhs.value.power(rhs.value, &pow_inexact);
            return {result, false, inexact || pow_inexact};
        }
        case OpKind::greater:
            return {Decimal(lhs.value.compare(rhs.value) > 0 ? 1 : 0), true, inexact};
    }
    throw EvalError("unknown operator");
}

}  // namespace numqa
