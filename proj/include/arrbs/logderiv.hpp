#ifndef ARRBS_LOGDERIV_HPP
#define ARRBS_LOGDERIV_HPP

#include <optional>
#include <string>
#include <vector>

#include "arrbs/arrangement.hpp"

namespace arrbs {

struct GradedBasis {
    int degree = 0;
    std::vector<Derivation> basis; // canonical, linearly independent
};

// Degree-t slice of Der(-log f) (all coefficients homogeneous of degree t),
// or of Der(-log_0 f) when kill_f is set. One exact nullspace problem.
GradedBasis graded_logder_basis(const Arrangement& a, int t, bool kill_f);

struct MdrResult {
    bool above_cap = false;
    int value = 0; // valid when !above_cap
    int cap = 0;
};

// Least degree of a homogeneous Jacobian syzygy sum a_i del_i(f) = 0,
// searched up to cap = d_red. The arrangement must be essential.
MdrResult mdr(const Arrangement& a);

enum class FreenessStatus { Free, NotFree, Inconclusive };

struct FreenessCertificate {
    FreenessStatus status = FreenessStatus::Inconclusive;
    std::vector<Derivation> basis;  // n members when Free
    std::vector<int> exponents;     // their degrees
    Poly saito_det;
    std::string witness;            // explanation for NotFree / Inconclusive
    // Terao's necessary condition chi(A,t) = prod (t - e_i); advisory only.
    bool terao_factorization_ok = false;
};

// Greedy minimal homogeneous generators of Der(-log f_red) up to degree
// d_red, certified by Saito's criterion.
FreenessCertificate freeness_certificate(const Arrangement& a);

// Basis with delta_n = E/d_red and the first n-1 members killing f_red,
// rescaled so the coefficient determinant is exactly f_red.
std::vector<Derivation> preferred_basis(const FreenessCertificate& cert, const Arrangement& a);

// c[i][j][k] with [delta_i, delta_j] = sum_k c[i][j][k] delta_k.
struct StructureConstants {
    std::vector<std::vector<std::vector<Poly>>> c;

    Poly trace_ad(int i) const; // sum_j c[i][j][j]
};

Derivation commutator(const Derivation& a, const Derivation& b);

// Cramer solve against the basis coefficient matrix; every division exact.
StructureConstants structure_constants(const std::vector<Derivation>& basis, const Arrangement& a);

// residual_i = tr Ad_i + sum_k del_k . h_{k,i} - [i == n]; all zero on a
// preferred basis.
std::vector<Poly> verify_trace_formula(const std::vector<Derivation>& basis, const Arrangement& a);

// Generating set of Der(-log f): the free basis when the certificate is
// Free, otherwise the greedy minimal generators up to degree d_red.
std::vector<Derivation> logder_generators(const Arrangement& a);

// psi(delta) = delta - eps * sum_k (delta.f_k/f_k) s_k - delta.w/w, where
// the twist w = prod l_t^{twist_t} is given by integer exponents.
std::vector<WeylOperator> annihilator_generators(const Arrangement& a, const FactorizationSpec& spec,
                                                 int eps, const std::vector<int>& twist,
                                                 const std::vector<Derivation>& gens);

// Section w * F^{eps S} for an integer exponent vector w.
Section twist_section(const Arrangement& a, const FactorizationSpec& spec, int eps,
                      const std::vector<int>& twist);

SectionContext make_section_context(const Arrangement& a, const FactorizationSpec& spec);

struct DualityCheckReport {
    bool ok = false;
    std::vector<std::string> entries; // per-row outcome
};

// Builds the top differential row over a preferred basis, applies the
// transpose tau entrywise, and compares with the psi^{-S} generators of the
// (f' g f_red)^{-1} twist.
DualityCheckReport duality_top_row_check(const Arrangement& a, const FactorizationSpec& spec);

} // namespace arrbs

#endif
