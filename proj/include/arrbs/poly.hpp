#ifndef ARRBS_POLY_HPP
#define ARRBS_POLY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrbs/rational.hpp"

namespace arrbs {

using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
    uint32_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

// Graded lexicographic, leading term first: higher total degree wins, ties
// broken lexicographically on the exponent vector.
struct GrlexGreater {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

struct NotDivisible : std::runtime_error {
    NotDivisible() : std::runtime_error("polynomial division is not exact") {}
};

// Sparse multivariate polynomial over Q with a fixed variable count. All
// terms are stored in graded-lex order with nonzero coefficients, so
// serialization and leading-term queries are canonical.
class Poly {
public:
    using TermMap = std::map<ExpVec, Rational, GrlexGreater>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int i, uint32_t power = 1);
    // Linear form c0*x0 + ... + c_{n-1}*x_{n-1} over the first coeffs.size() vars.
    static Poly linear_form(int nvars, const std::vector<Rational>& coeffs);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational constant_term() const;
    const ExpVec& leading_exponent() const;
    const Rational& leading_coefficient() const;
    uint32_t degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }
    // Max total degree over the variable range [lo, hi).
    uint32_t degree_in(int lo, int hi) const;
    bool is_homogeneous() const;

    void add_term(const ExpVec& e, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Rational& c);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    bool operator<(const Poly& o) const; // canonical total order, for set keys

    Poly pow(uint32_t k) const;
    Poly derivative(int var) const;

    // Substitute variable `var` by `value` (a polynomial over the same vars).
    Poly substitute(int var, const Poly& value) const;
    // Simultaneous substitution; images[i] replaces variable i.
    Poly substitute_all(const std::vector<Poly>& images) const;
    // Reinterpret over a wider variable set, mapping old var i to var_map[i].
    Poly embed(int new_nvars, const std::vector<int>& var_map) const;

    // The degree-d homogeneous component with respect to total degree over [lo, hi).
    Poly homogeneous_component_in(int lo, int hi, uint32_t d) const;

    // gcd of coefficients (nonnegative); zero for the zero polynomial.
    Rational content() const;

    std::string str(const std::vector<std::string>& names) const;

    friend std::optional<Poly> try_exact_divide(const Poly& p, const Poly& q);

private:
    int nvars_;
    TermMap terms_;
    static void promote(Poly& a, Poly& b);
};

// Returns h with p = q*h, or throws NotDivisible.
Poly poly_exact_divide(const Poly& p, const Poly& q);
std::optional<Poly> try_exact_divide(const Poly& p, const Poly& q);

using PolyMatrix = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;

// Exact determinant by fraction-free (Bareiss) elimination; all interior
// divisions are exact in the polynomial ring.
Poly det_fraction_free(const PolyMatrix& m);

} // namespace arrbs

namespace Eigen {

template <>
struct NumTraits<arrbs::Poly> {
    using Real = arrbs::Poly;
    using NonInteger = arrbs::Poly;
    using Nested = arrbs::Poly;
    using Literal = arrbs::Poly;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 64,
        MulCost = 64
    };
    static inline Real epsilon() { return arrbs::Poly(); }
    static inline Real dummy_precision() { return arrbs::Poly(); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

#endif
