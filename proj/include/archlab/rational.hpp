#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace archlab {

/// Exact fraction of 64-bit integers, always stored in lowest terms with a
/// positive denominator. Arithmetic throws Error(ArithmeticOverflow) instead
/// of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {} // NOLINT: implicit by intent
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    Rational reciprocal() const;
    Rational abs() const;
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", or "p" when the value is an integer.
    std::string to_string() const;

    /// Inverse of to_string(); accepts "p", "-p" and "p/q".
    static Rational parse(const std::string& text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

} // namespace archlab
