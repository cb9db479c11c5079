#include "archlab/rational.hpp"

#include "archlab/error.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

namespace archlab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error(ErrorCode::ArithmeticOverflow, "rational multiplication overflow");
    }
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Error(ErrorCode::ArithmeticOverflow, "rational addition overflow");
    }
    return out;
}

std::int64_t parse_int(std::string_view text, const std::string& whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::ParseError, "malformed rational '" + whole + "'");
    }
    return value;
}

} // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = checked_mul(numerator, -1);
        denominator = checked_mul(denominator, -1);
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
    const std::int64_t g = std::gcd(den_, rhs.den_);
    const std::int64_t lhs_scale = rhs.den_ / g;
    const std::int64_t rhs_scale = den_ / g;
    *this = Rational(checked_add(checked_mul(num_, lhs_scale), checked_mul(rhs.num_, rhs_scale)),
                     checked_mul(den_, lhs_scale));
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    // Cross-reduce first so intermediate products stay small.
    const std::int64_t g1 = std::gcd(num_, rhs.den_);
    const std::int64_t g2 = std::gcd(rhs.num_, den_);
    *this = Rational(checked_mul(num_ / g1, rhs.num_ / g2), checked_mul(den_ / g2, rhs.den_ / g1));
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.reciprocal(); }

__extension__ typedef __int128 wide_int;

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const wide_int a = static_cast<wide_int>(lhs.num_) * rhs.den_;
    const wide_int b = static_cast<wide_int>(rhs.num_) * lhs.den_;
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::reciprocal() const {
    if (num_ == 0) {
        throw std::domain_error("reciprocal of zero");
    }
    return Rational(den_, num_);
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

std::string Rational::to_string() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text, text));
    }
    const std::string_view view(text);
    const std::int64_t den = parse_int(view.substr(slash + 1), text);
    if (den == 0) {
        throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    }
    return Rational(parse_int(view.substr(0, slash), text), den);
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

} // namespace archlab
