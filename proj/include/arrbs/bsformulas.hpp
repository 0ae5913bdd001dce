#ifndef ARRBS_BSFORMULAS_HPP
#define ARRBS_BSFORMULAS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrbs/lattice.hpp"
#include "arrbs/logderiv.hpp"

namespace arrbs {

// A stated theorem hypothesis does not hold for the input.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Affine-linear polynomial a_1 s_1 + ... + a_r s_r + c, stored with cleared
// denominators, coprime integer entries, and first nonzero entry positive:
// the canonical representative of its zero hyperplane.
struct SLinear {
    std::vector<BigInt> coeffs;
    BigInt cst = 0;

    SLinear() = default;
    SLinear(const std::vector<Rational>& raw_coeffs, const Rational& raw_cst);

    int r() const { return static_cast<int>(coeffs.size()); }
    std::string str() const;

    friend bool operator==(const SLinear& a, const SLinear& b) { return a.coeffs == b.coeffs && a.cst == b.cst; }
    friend bool operator<(const SLinear& a, const SLinear& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return a.cst < b.cst;
    }
};

// Reduced (multiplicity-free) set of factors.
struct SLinearFactorSet {
    std::set<SLinear> factors;

    void insert(const SLinear& f) { factors.insert(f); }
    bool contains(const SLinear& f) const { return factors.count(f) > 0; }
    bool subset_of(const SLinearFactorSet& o) const;
    size_t size() const { return factors.size(); }
    friend bool operator==(const SLinearFactorSet& a, const SLinearFactorSet& b) { return a.factors == b.factors; }
};

// The involution s_k -> -s_k + shift_k.
struct PhiMap {
    std::vector<Rational> shift;

    SLinear apply(const SLinear& f) const;
    SLinearFactorSet apply(const SLinearFactorSet& fs) const;
};

struct UnmixedReport {
    bool factorization_unmixed = false;
    bool fprime_unmixed = false; // (f', F) unmixed pair
    bool g_unmixed = false;      // (g, F) unmixed pair
    std::vector<std::vector<int>> j_k; // per block: distinct form indices
    std::vector<int> d_k;              // uniform block exponent, when unmixed
    std::vector<int> m_k;              // repeated multiplicity, when unmixed
    std::vector<Rational> dprime_k;
    std::vector<Rational> dsecond_k;
    std::vector<std::string> notes;

    bool pair_unmixed() const { return factorization_unmixed && fprime_unmixed && g_unmixed; }
};

UnmixedReport unmixed_analysis(const Arrangement& a, const FactorizationSpec& spec);

// phi(s_k) = -s_k - 1/m_k - 2 d'_k/d_k - d''_k/d_k; requires unmixed pairs.
PhiMap symmetry_involution(const UnmixedReport& report);

enum class TameStatus { AutomaticLowRank, ImpliedByFree, Asserted, Unknown };

// Shared per-run data: the essentialized arrangement, its lattice and edge
// records, plus lazily computed certificates and per-edge mdr values.
class BsContext {
public:
    BsContext(const Arrangement& a, const FactorizationSpec& spec);

    const Arrangement& original() const { return original_; }
    const Arrangement& ess() const { return ess_; }
    const FactorizationSpec& spec() const { return spec_; }
    const std::vector<Flat>& lattice() const { return lattice_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }
    int rank() const { return ess_.n; }

    const FreenessCertificate& certificate() const;
    // mdr of the essentialized localization at the edge, searched up to the
    // Koszul bound d_X - 1 so a value always exists for rank >= 2 edges.
    int edge_mdr(const EdgeRecord& e) const;
    TameStatus tame_status() const;
    void require_tame() const;

private:
    Arrangement original_;
    Arrangement ess_;
    FactorizationSpec spec_;
    std::vector<Flat> lattice_;
    std::vector<EdgeRecord> edges_;
    mutable std::optional<FreenessCertificate> cert_;
    mutable std::map<int, int> edge_mdr_cache_;
};

SLinear edge_linear_polynomial(const EdgeRecord& e);

// Union over indecomposable edges of {P_X + j}: rank-one edges use
// j in [0, d_X - d'_X - 1], higher ranks [0, mdr(f_X) + d_X - d'_X - 3].
SLinearFactorSet upper_bound_product(const BsContext& ctx);

// Factors of the refined member: j in [0, d_{X,red} + d_X - 2 r(X) - d'_X].
SLinearFactorSet member_product(const BsContext& ctx);

struct ExactResult {
    bool applicable = false;
    std::string theorem; // which hypothesis fired
    SLinearFactorSet factors;
    std::vector<std::string> warnings;
};

// Exact zero-locus factor set when one of the hypotheses holds: rank <= 2;
// free + unmixed pair + d' <= 4; free + f' = 1 + f reduced.
ExactResult exact_variety_product(const BsContext& ctx);

struct BoundsResult {
    SLinearFactorSet lower;
    SLinearFactorSet upper;
    bool upper_valid = false; // needs (f', F) unmixed up to units
    std::vector<std::string> warnings;
};

BoundsResult bounds_free_product(const BsContext& ctx);

// j-values of the final-estimation upper set at one edge: the full interval
// [0, d_{X,red} + d_X - 2r - d'_X] for rank <= 2, and for rank >= 3 the
// union [0, d_X - d'_X - 1] with [d_{X,red} - 2r + 1, top].
std::vector<int> xi_range(const EdgeRecord& e);

// Roots in [-1, 0) for the trivial factorization: union over indecomposable
// edges of {-j/d_X : r(X) + d'_X <= j <= d_X}.
std::set<Rational> roots_unit_interval(const BsContext& ctx);

// Substitute s_i -> s_{block_of[i]} in every factor; renormalize, reduce.
SLinearFactorSet coarsen_product(const SLinearFactorSet& fs, const std::vector<int>& block_of, int target_r);

std::set<Rational> univariate_roots(const SLinearFactorSet& fs);

enum class FreeingMode { Coprime, PerEdge };

struct FreeingResult {
    bool feasible = false;
    int bound = 0;
    int v = 0;
    std::vector<std::string> notes;
};

// Lower bound for the freeing number of the reduced arrangement g from a
// Bernstein-Sato root -(2d - v)/d.
FreeingResult freeing_lower_bound(const Arrangement& g_arr, const Rational& root, FreeingMode mode);

} // namespace arrbs

#endif
