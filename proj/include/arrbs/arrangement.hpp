#ifndef ARRBS_ARRANGEMENT_HPP
#define ARRBS_ARRANGEMENT_HPP

#include <string>
#include <vector>

#include "arrbs/poly.hpp"
#include "arrbs/qmatrix.hpp"
#include "arrbs/weyl.hpp"

namespace arrbs {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Central arrangement: a multiset of normalized linear forms. Normals are
// scaled so the first nonzero coordinate is 1; proportional input forms are
// merged into one slot with summed multiplicity.
struct Arrangement {
    int n = 0;                          // ambient dimension
    std::vector<std::string> vars;      // variable names, size n
    std::vector<QVector> normals;       // q distinct normals
    std::vector<int> mult;              // v_t >= 1
    bool assume_tame = false;
    bool assume_free = false;

    int num_forms() const { return static_cast<int>(normals.size()); }
    int degree() const;                 // d = sum v_t
    int degree_reduced() const { return num_forms(); }

    // The linear form l_t as a polynomial over n variables.
    Poly form(int t) const;
    // Same form over n + r variables (x block first).
    Poly form_embedded(int t, int r) const;
    // f with multiplicities; f_red without.
    Poly defining_poly() const;
    Poly reduced_poly() const;

    std::string serialize() const;
};

// Exponent data of a factorization F = (f_1..f_r) plus the divisor f':
// blocks[k][t] = e_{k,t} with sum_k e_{k,t} = v_t, fprime[t] = e'_t,
// 0 <= e'_t <= v_t. g = f / f' has exponents v_t - e'_t.
struct FactorizationSpec {
    std::vector<std::vector<int>> blocks;
    std::vector<int> fprime;

    int r() const { return static_cast<int>(blocks.size()); }
    int block_degree(int k) const;
    int fprime_degree() const;
    std::vector<int> g_exponents(const Arrangement& a) const;

    static FactorizationSpec trivial(const Arrangement& a);
    void validate(const Arrangement& a) const;
};

// delta = sum_i coeffs[i] del_i with polynomial coefficients over n vars.
struct Derivation {
    std::vector<Poly> coeffs;

    int nvars() const { return static_cast<int>(coeffs.size()); }
    bool is_zero() const;
    // delta . p
    Poly apply(const Poly& p) const;
    WeylOperator to_weyl(int r) const;
    friend bool operator==(const Derivation& a, const Derivation& b) { return a.coeffs == b.coeffs; }
};

Derivation euler_field(const Arrangement& a);

struct ParsedInput {
    Arrangement arrangement;
    FactorizationSpec spec;
};

// Line-oriented DSL:
//   vars <name>+
//   form <linear-expr> [^<mult>]
//   factor <e_1> ... <e_q>       (one line per block of F)
//   fprime <e'_1> ... <e'_q>
//   assume tame | assume free
// '#' starts a comment.
ParsedInput parse_arrangement(const std::string& text);

struct Essentialization {
    Arrangement arrangement;   // rewritten in rank many coordinates
    QMatrix coord_rows;        // rank x n; new coordinate i is row i applied to x
};

// Rewrites the forms over a rational basis of the span of the normals.
// Normals of the output are re-normalized; multiplicities are preserved.
Essentialization essentialize(const Arrangement& a);

int arrangement_rank(const Arrangement& a);

// Sub-arrangement of the forms listed in `keep` (indices into a.normals).
Arrangement restrict_to_forms(const Arrangement& a, const std::vector<int>& keep);

} // namespace arrbs

#endif
