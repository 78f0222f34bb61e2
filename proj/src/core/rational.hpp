#pragma once

#include <cstdint>
#include <string>

namespace minpart {

// Exact rational with int64 numerator/denominator, always normalized
// (gcd 1, positive denominator). Arithmetic goes through __int128 and
// throws NumericalError on int64 overflow after reduction; the mode
// indices handled here keep values far below that range.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    // Canonical "p/q" form, denominator kept even when it is 1.
    std::string to_fraction_string() const;

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    // Accepts "3", "-3", "p/q", and decimal strings like "0.35".
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace minpart
