#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace numqa {

/// Arbitrary-precision decimal number: unscaled integer * 10^-scale.
///
/// Addition, subtraction and multiplication are exact. Division and
/// exponentiation extend the scale up to `kDivisionScale` fractional digits
/// and round half away from zero beyond that, so results never pick up
/// binary-float drift. Values are kept normalized (no trailing fractional
/// zeros), which makes equality a plain member-wise comparison.
class Decimal {
public:
    using Int = boost::multiprecision::cpp_int;

    static constexpr int kDivisionScale = 12;
    // Exponents beyond this fall back to double-precision pow.
    static constexpr int kMaxExactExponent = 128;

    Decimal() = default;
    Decimal(long long value) : units_(value) {}  // NOLINT: implicit by design

    /// Strict parse: [+-]? (digits [. digits] | . digits). No grouping, no
    /// whitespace. Returns nullopt on anything else.
    static std::optional<Decimal> parse(std::string_view text);
    static Decimal parse_or_throw(std::string_view text);

    /// Nearest decimal with at most `digits` fractional digits.
    static Decimal from_double(double value, int digits = kDivisionScale);

    bool is_zero() const { return units_ == 0; }
    bool is_negative() const { return units_ < 0; }
    bool is_integer() const { return scale_ == 0; }
    int scale() const { return scale_; }
    const Int& unscaled() const { return units_; }

    /// Integer value; only valid when is_integer() and the value fits.
    long long to_long_long() const;
    double to_double() const;

    Decimal negated() const;
    Decimal abs() const;

    Decimal add(const Decimal& rhs) const;
    Decimal subtract(const Decimal& rhs) const;
    Decimal multiply(const Decimal& rhs) const;
    /// Throws DivisionByZero. Result carries at most `max_scale` fractional
    /// digits, rounded half away from zero.
    Decimal divide(const Decimal& rhs, int max_scale = kDivisionScale) const;
    /// Integer exponents up to kMaxExactExponent are computed exactly (then
    /// quantized to kDivisionScale digits); anything else uses the double
    /// fallback and sets *inexact.
    Decimal power(const Decimal& exponent, bool* inexact = nullptr) const;

    Decimal rounded_half_away(int fraction_digits) const;

    int compare(const Decimal& rhs) const;
    bool operator==(const Decimal& rhs) const = default;
    bool operator<(const Decimal& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const Decimal& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const Decimal& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const Decimal& rhs) const { return compare(rhs) >= 0; }

    /// Canonical text: minimal digits, plain notation, e.g. "-0.25", "299524".
    std::string to_string() const;

private:
    Decimal(Int units, int scale) : units_(std::move(units)), scale_(scale) { normalize(); }

    void normalize();

    Int units_ = 0;
    int scale_ = 0;
};

/// Result of evaluating a formula. `boolean` marks comparison results
/// (greater), which print as 1/0. `inexact` marks the double-precision
/// exponentiation fallback.
struct NumericValue {
    Decimal value;
    bool boolean = false;
    bool inexact = false;

    std::string to_string() const { return value.to_string(); }
    bool operator==(const NumericValue&) const = default;
};

}  // namespace numqa
