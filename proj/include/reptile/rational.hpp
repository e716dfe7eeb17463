#pragma once

/// Exact rational arithmetic over arbitrary-precision integers.
///
/// Values are always kept in lowest terms with a positive denominator, so
/// structural equality is exact equality and canonical string encodings are
/// unique. All coefficients in this library are Rationals; floating point
/// appears only in human-facing output.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "reptile/errors.hpp"

namespace reptile {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class Rational {
    BigInt num_{0};
    BigInt den_{1}; // always > 0

    void normalize() {
        if (den_ == 0) throw Error("rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

public:
    Rational() = default;
    Rational(int n) : num_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(long long n) : num_(n) {}           // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)) {}   // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Error("rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const {
        return BigRational(num_, den_).convert_to<double>();
    }

    /// Canonical encoding: "p/q" in lowest terms, or "p" when q = 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Parses the canonical encoding. Accepts an optional leading sign on the
    /// numerator; the denominator must be a positive integer.
    static Rational parse(std::string_view text) {
        auto fail = [&] { throw SpecParseError("bad rational: '" + std::string(text) + "'"); };
        auto parse_int = [&](std::string_view part, bool allow_sign) {
            if (part.empty()) fail();
            std::size_t k = 0;
            if (allow_sign && (part[0] == '-' || part[0] == '+')) k = 1;
            if (k == part.size()) fail();
            for (std::size_t i = k; i < part.size(); ++i)
                if (part[i] < '0' || part[i] > '9') fail();
            return BigInt(std::string(part));
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text, true));
        BigInt n = parse_int(text.substr(0, slash), true);
        BigInt d = parse_int(text.substr(slash + 1), false);
        if (d == 0) fail();
        return Rational(std::move(n), std::move(d));
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.abs(); }

} // namespace reptile

template <>
struct std::hash<reptile::Rational> {
    std::size_t operator()(const reptile::Rational& r) const noexcept {
        std::size_t h = boost::multiprecision::hash_value(r.numerator());
        std::size_t h2 = boost::multiprecision::hash_value(r.denominator());
        return h ^ (h2 + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
};
