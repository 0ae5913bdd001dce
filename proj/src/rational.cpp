#include "arrbs/rational.hpp"

#include <ostream>

namespace arrbs {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational Rational::parse(const std::string& text) {
    auto bad = [&]() { return std::invalid_argument("bad rational literal: '" + text + "'"); };
    std::string s = text;
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        BigInt d(den);
        if (d == 0) throw bad();
        return Rational(BigInt(num), d);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

Rational gcd_rat(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    BigInt num = boost::multiprecision::gcd(a.numerator(), b.numerator());
    BigInt den = boost::multiprecision::lcm(a.denominator(), b.denominator());
    return Rational(num, den).abs();
}

} // namespace arrbs
