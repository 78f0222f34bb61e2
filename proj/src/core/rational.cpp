#include "rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "errors.hpp"

namespace minpart {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw NumericalError("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 n, i128 d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational(checked_narrow(n), checked_narrow(d));
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
}

std::string Rational::to_fraction_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
    return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw InvalidArgument("rational division by zero");
    return make(i128(num_) * o.den_, i128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty rational literal");

    auto parse_int = [](const std::string& t) -> std::int64_t {
        if (t.empty()) throw ParseError("empty integer in rational literal");
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad rational literal: " + t);
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                throw ParseError("bad rational literal: " + t);
            }
        }
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(t.c_str(), &end, 10);
        if (errno != 0 || end != t.c_str() + t.size()) {
            throw ParseError("bad rational literal: " + t);
        }
        return v;
    };

    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }

    std::size_t dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s));

    bool neg = s[0] == '-';
    if (s[0] == '-' || s[0] == '+') s.erase(0, 1);
    dot = s.find('.');
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (fp.size() > 18) throw ParseError("decimal literal too long: " + text);

    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    i128 n = i128(parse_int(ip)) * den + parse_int(fp);
    if (neg) n = -n;
    return make(n, den);
}

} // namespace minpart
