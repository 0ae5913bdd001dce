#ifndef ARRBS_WEYL_HPP
#define ARRBS_WEYL_HPP

#include <map>
#include <string>
#include <vector>

#include "arrbs/ratfun.hpp"

namespace arrbs {

// Element of the polynomial Weyl algebra A_n(Q) extended by r central
// s-variables. Canonical storage is the LEFT normal form
//     P = sum_u P_u(x, s) * del^u,
// with coefficients over n + r variables (x first, then s). The right
// normal form sum_u del^u P_u is derived on demand.
class WeylOperator {
public:
    using TermMap = std::map<ExpVec, Poly>; // derivative multi-index (size n) -> coeff

    WeylOperator() : n_(0), r_(0) {}
    WeylOperator(int n, int r) : n_(n), r_(r) {}

    static WeylOperator from_poly(int n, int r, const Poly& coeff);
    static WeylOperator partial(int n, int r, int i);
    static WeylOperator s_var(int n, int r, int k);
    // delta = sum_i coeffs[i] * del_i, coefficients over n + r vars.
    static WeylOperator derivation(int n, int r, const std::vector<Poly>& coeffs);

    int n() const { return n_; }
    int r() const { return r_; }
    int coeff_vars() const { return n_ + r_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const ExpVec& u, const Poly& coeff);

    WeylOperator operator-() const;
    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
    friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
        return a.n_ == b.n_ && a.r_ == b.r_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WeylOperator& a, const WeylOperator& b) { return !(a == b); }

    // P = sum_u del^u P_u, terms sorted by multi-index.
    std::vector<std::pair<ExpVec, Poly>> right_normal_form() const;
    Poly right_constant_term() const;

    // Max over terms of |u| + s-degree of the coefficient; error on zero.
    int total_order() const;

    // Anti-automorphism fixing x, s and sending del^b to (-del)^b.
    WeylOperator tau_transpose() const;

    // Ring substitution s_k -> images[k]; images are polynomials over the
    // same n + r variables, affine in the s block.
    WeylOperator substitute_s(const std::vector<Poly>& images) const;

    // Natural action on a polynomial in n + r variables.
    Poly apply(const Poly& p) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int n_, r_;
    TermMap terms_;
};

// Data needed to act on sections g * F^{+-S}: the distinct forms of the
// arrangement and the factorization exponents e_{k,t}.
struct SectionContext {
    int n = 0;
    int r = 0;
    std::vector<Poly> forms;              // q monic linear forms over n + r vars
    std::vector<std::vector<int>> blocks; // r rows of q exponents
};

// Coefficient of the formal symbol F^S (eps = +1) or F^{-S} (eps = -1).
struct Section {
    RatFun coeff;
    int eps = 1;

    bool is_zero() const { return coeff.is_zero(); }
};

Section act_on_section(const WeylOperator& op, const Section& sec, const SectionContext& ctx);

// Both sides of the cascade identity
//   prod_{j=0}^{t} (E + n + j) = sum_{|u| = t+1} multinomial(t+1; u) del^u x^u
// as operators with r = 0.
WeylOperator euler_cascade_product(int n, int t);
WeylOperator euler_cascade_sum(int n, int t);

} // namespace arrbs

#endif
