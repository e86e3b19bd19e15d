#pragma once

// Shared test helpers: seeded random formula/table generators and the naive
// reference interpreter the exact-arithmetic evaluator is checked against.
// The oracle deliberately avoids the Decimal type: integer formulas over
// {+,-,×} are evaluated straight on boost's big integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "numqa/formula.hpp"
#include "numqa/table.hpp"
#include "numqa/text.hpp"

namespace testutil {

using BigInt = boost::multiprecision::cpp_int;

/// Recursive reference interpreter for integer formulas over +, -, ×.
/// Returns nullopt for any other node kind.
inline std::optional<BigInt> naive_eval(const numqa::Formula& f) {
    using numqa::Formula;
    switch (f.kind()) {
        case Formula::Kind::number: {
            const numqa::Decimal& v = f.number_value();
            if (!v.is_integer()) return std::nullopt;
            return BigInt(v.unscaled());
        }
        case Formula::Kind::binary: {
            auto lhs = naive_eval(f.left());
            auto rhs = naive_eval(f.right());
            if (!lhs || !rhs) return std::nullopt;
            switch (f.op()) {
                case numqa::OpKind::add: return *lhs + *rhs;
                case numqa::OpKind::subtract: return *lhs - *rhs;
                case numqa::OpKind::multiply: return *lhs * *rhs;
                default: return std::nullopt;
            }
        }
        default: return std::nullopt;
    }
}

struct FormulaGenOptions {
    int max_depth = 6;
    bool integer_only = false;     // literals are small integers
    bool additive_only = false;    // only + - × (naive-oracle domain)
    bool with_cells = false;       // sprinkle {Col i, Row j} leaves
    bool with_aggregations = false;
    int max_literal = 9999;
};

inline numqa::Formula random_formula(numqa::DetRng& rng, const FormulaGenOptions& options,
                                     int depth = 0) {
    using numqa::Formula;
    using numqa::OpKind;
    bool leaf = depth >= options.max_depth || rng.below(100) < 35;
    if (leaf) {
        if (options.with_cells && rng.below(100) < 20)
            return Formula::cell({static_cast<int>(rng.below(6)) + 1,
                                  static_cast<int>(rng.below(6)) + 1});
        if (options.with_aggregations && rng.below(100) < 8) {
            static const char* names[] = {"net revenue", "Current : Federal", "total assets"};
            numqa::AggKind kind = static_cast<numqa::AggKind>(rng.below(4));
            return Formula::aggregation(kind, names[rng.below(3)]);
        }
        long long magnitude = static_cast<long long>(rng.below(options.max_literal + 1));
        if (options.integer_only) {
            numqa::Decimal value(magnitude);
            if (rng.below(100) < 10) value = value.negated();
            return Formula::number(value, value.to_string());
        }
        // decimals with up to 3 fractional digits
        int scale = static_cast<int>(rng.below(4));
        std::string text = std::to_string(magnitude);
        if (scale > 0) {
            std::string frac;
            for (int i = 0; i < scale; ++i) frac += std::to_string(rng.below(10));
            text += "." + frac;
        }
        if (rng.below(100) < 10) text = "-" + text;
        return Formula::number(numqa::Decimal::parse_or_throw(text), text);
    }
    OpKind op;
    if (options.additive_only) {
        static const OpKind additive[] = {OpKind::add, OpKind::subtract, OpKind::multiply};
        op = additive[rng.below(3)];
    } else {
        static const OpKind any[] = {OpKind::add,    OpKind::subtract, OpKind::multiply,
                                     OpKind::divide, OpKind::exp,      OpKind::greater};
        // keep exp rare: big exponents make exact results enormous
        std::uint64_t pick = rng.below(100);
        op = pick < 30   ? OpKind::add
             : pick < 55 ? OpKind::subtract
             : pick < 75 ? OpKind::multiply
             : pick < 90 ? OpKind::divide
             : pick < 95 ? OpKind::greater
                         : OpKind::exp;
        (void)any;
    }
    numqa::Formula left = random_formula(rng, options, depth + 1);
    numqa::Formula right = random_formula(rng, options, depth + 1);
    if (op == OpKind::exp) {
        // bounded integer exponent
        long long e = static_cast<long long>(rng.below(4));
        right = numqa::Formula::number(numqa::Decimal(e), std::to_string(e));
    }
    numqa::Formula out = numqa::Formula::binary(op, std::move(left), std::move(right));
    if (rng.below(100) < 30) out = out.with_parens(true);
    return out;
}

/// Rectangular table whose cells are pairwise-distinct integers, so every
/// literal drawn from it locates uniquely.
inline numqa::Table distinct_table(numqa::DetRng& rng, int cols, int rows,
                                   std::vector<numqa::Decimal>* values_out = nullptr) {
    std::vector<std::vector<std::string>> headers;
    for (int c = 1; c <= cols; ++c) headers.push_back({"col " + std::to_string(c)});
    std::vector<std::string> row_headers;
    for (int r = 1; r <= rows; ++r) row_headers.push_back("row " + std::to_string(r));
    std::vector<std::vector<std::string>> cells;
    long long base = static_cast<long long>(rng.below(1000));
    long long step = 1 + static_cast<long long>(rng.below(97));
    long long value = base;
    for (int r = 0; r < rows; ++r) {
        std::vector<std::string> row;
        for (int c = 0; c < cols; ++c) {
            value += step;
            row.push_back(std::to_string(value));
            if (values_out) values_out->push_back(numqa::Decimal(value));
        }
        cells.push_back(std::move(row));
    }
    return numqa::Table("t" + std::to_string(rng.below(100000)), headers, row_headers, cells);
}

inline std::string test_data_path(const std::string& name) {
    return std::string(NUMQA_TEST_DATA_DIR) + "/" + name;
}

}  // namespace testutil
