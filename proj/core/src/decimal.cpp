#include "numqa/decimal.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "numqa/errors.hpp"

namespace numqa {

namespace {

Decimal::Int pow10(int n) {
    Decimal::Int r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

// Half-away-from-zero division of num/den (den > 0).
Decimal::Int div_round_half_away(const Decimal::Int& num, const Decimal::Int& den) {
    Decimal::Int a = boost::multiprecision::abs(num);
    Decimal::Int q = a / den;
    Decimal::Int r = a % den;
    if (r * 2 >= den) ++q;
    return num < 0 ? Decimal::Int(-q) : q;
}

}  // namespace

void Decimal::normalize() {
    if (units_ == 0) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0 && units_ % 10 == 0) {
        units_ /= 10;
        --scale_;
    }
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    int scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point) ++scale;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    if (seen_point && scale == 0) return std::nullopt;  // "1." is not a number
    // cpp_int reads a leading zero as an octal prefix; trim to decimal digits
    std::size_t nonzero = digits.find_first_not_of('0');
    if (nonzero == std::string::npos) nonzero = digits.size() - 1;
    Int units(digits.substr(nonzero));
    if (negative) units = -units;
    return Decimal(std::move(units), scale);
}

Decimal Decimal::parse_or_throw(std::string_view text) {
    auto v = parse(text);
    if (!v) throw Error("not a decimal number: '" + std::string(text) + "'");
    return *v;
}

Decimal Decimal::from_double(double value, int digits) {
    if (!std::isfinite(value)) throw Error("non-finite value cannot become a decimal");
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return parse_or_throw(buf);
}

long long Decimal::to_long_long() const {
    if (scale_ != 0) throw Error("decimal is not an integer: " + to_string());
    if (units_ > std::numeric_limits<long long>::max() ||
        units_ < std::numeric_limits<long long>::min())
        throw Error("decimal out of integer range: " + to_string());
    return units_.convert_to<long long>();
}

double Decimal::to_double() const {
    return std::stod(to_string());
}

Decimal Decimal::negated() const {
    Decimal r = *this;
    r.units_ = -r.units_;
    return r;
}

Decimal Decimal::abs() const {
    return is_negative() ? negated() : *this;
}

Decimal Decimal::add(const Decimal& rhs) const {
    int scale = std::max(scale_, rhs.scale_);
    Int a = units_ * pow10(scale - scale_);
    Int b = rhs.units_ * pow10(scale - rhs.scale_);
    return Decimal(a + b, scale);
}

Decimal Decimal::subtract(const Decimal& rhs) const {
    return add(rhs.negated());
}

Decimal Decimal::multiply(const Decimal& rhs) const {
    return Decimal(units_ * rhs.units_, scale_ + rhs.scale_);
}

Decimal Decimal::divide(const Decimal& rhs, int max_scale) const {
    if (rhs.units_ == 0) throw DivisionByZero();
    // this/rhs = units_/rhs.units_ * 10^(rhs.scale_ - scale_); shift so the
    // quotient lands at max_scale fractional digits.
    int shift = max_scale - scale_ + rhs.scale_;
    Int num = units_;
    Int den = rhs.units_;
    if (shift >= 0)
        num *= pow10(shift);
    else
        den *= pow10(-shift);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Decimal(div_round_half_away(num, den), max_scale);
}

Decimal Decimal::power(const Decimal& exponent, bool* inexact) const {
    if (inexact) *inexact = false;
    if (exponent.is_integer()) {
        long long e;
        bool fits = true;
        try {
            e = exponent.to_long_long();
        } catch (const Error&) {
            fits = false;
            e = 0;
        }
        if (fits && e >= -kMaxExactExponent && e <= kMaxExactExponent) {
            if (e == 0) return Decimal(1);
            bool negative_exp = e < 0;
            unsigned long long n = negative_exp ? -e : e;
            Decimal base = *this;
            Decimal acc(1);
            while (n > 0) {
                if (n & 1) acc = acc.multiply(base);
                base = base.multiply(base);
                n >>= 1;
            }
            if (negative_exp) return Decimal(1).divide(acc);
            return acc.rounded_half_away(kDivisionScale);
        }
    }
    if (is_negative()) throw EvalError("fractional power of a negative base");
    if (inexact) *inexact = true;
    return from_double(std::pow(to_double(), exponent.to_double()));
}

Decimal Decimal::rounded_half_away(int fraction_digits) const {
    if (scale_ <= fraction_digits) return *this;
    Int den = pow10(scale_ - fraction_digits);
    return Decimal(div_round_half_away(units_, den), fraction_digits);
}

int Decimal::compare(const Decimal& rhs) const {
    int scale = std::max(scale_, rhs.scale_);
    Int a = units_ * pow10(scale - scale_);
    Int b = rhs.units_ * pow10(scale - rhs.scale_);
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

std::string Decimal::to_string() const {
    Int a = boost::multiprecision::abs(units_);
    std::string out;
    if (scale_ == 0) {
        out = a.str();
    } else {
        Int den = pow10(scale_);
        Int ipart = a / den;
        Int rem = a % den;
        std::string frac = rem.str();
        frac.insert(frac.begin(), scale_ - frac.size(), '0');
        out = ipart.str() + "." + frac;
    }
    if (units_ < 0) out.insert(out.begin(), '-');
    return out;
}

}  // namespace numqa
