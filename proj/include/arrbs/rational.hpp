#ifndef ARRBS_RATIONAL_HPP
#define ARRBS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace arrbs {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational scalar. The underlying cpp_rational keeps
// gcd(|num|, den) = 1 and den >= 1 at all times.
class Rational {
public:
    using Rep = boost::multiprecision::cpp_rational;

    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
    }
    Rational(int num, int den) : Rational(BigInt(num), BigInt(den)) {}
    explicit Rational(const Rep& v) : v_(v) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }

    Rational operator-() const { return Rational(Rep(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? Rational(Rep(-v_)) : *this; }
    Rational inverse() const { return Rational(1) / *this; }

    // Serialized as "p" or "p/q", q > 1.
    std::string str() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

    // Accepts "p", "p/q", with optional sign.
    static Rational parse(const std::string& text);

    const Rep& rep() const { return v_; }

private:
    Rep v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// gcd of numerators over lcm of denominators; gcd_rat(0,0) = 0.
Rational gcd_rat(const Rational& a, const Rational& b);

} // namespace arrbs

#endif
