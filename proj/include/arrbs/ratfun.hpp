#ifndef ARRBS_RATFUN_HPP
#define ARRBS_RATFUN_HPP

#include <vector>

#include "arrbs/poly.hpp"

namespace arrbs {

// Rational function num / prod(form_i^exp_i). Denominators stay factored
// into monic linear forms, so cancellation is trial exact division per
// factor and never needs a general polynomial gcd.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Poly num) : num_(std::move(num)) {}

    static RatFun zero(int nvars) { return RatFun(Poly::zero(nvars)); }

    const Poly& num() const { return num_; }
    const std::vector<std::pair<Poly, int>>& den_factors() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }

    // Expanded monic denominator.
    Poly den() const;

    // Multiplies the denominator by form^exp; form is normalized monic.
    void mul_den(const Poly& form, int exp);
    void mul_num(const Poly& p) { num_ = num_ * p; normalize(); }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend bool operator==(const RatFun& a, const RatFun& b);
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun derivative(int var) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    Poly num_;
    std::vector<std::pair<Poly, int>> den_; // monic form -> exponent > 0, sorted

    void normalize();
};

} // namespace arrbs

#endif
