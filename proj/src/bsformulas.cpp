#include "arrbs/bsformulas.hpp"

#include <algorithm>
#include <sstream>

namespace arrbs {

SLinear::SLinear(const std::vector<Rational>& raw_coeffs, const Rational& raw_cst) {
    BigInt den = 1;
    for (const Rational& c : raw_coeffs) den = boost::multiprecision::lcm(den, c.denominator());
    den = boost::multiprecision::lcm(den, raw_cst.denominator());
    std::vector<BigInt> ints;
    for (const Rational& c : raw_coeffs) ints.push_back(c.numerator() * (den / c.denominator()));
    BigInt icst = raw_cst.numerator() * (den / raw_cst.denominator());
    BigInt g = 0;
    for (const BigInt& c : ints) g = boost::multiprecision::gcd(g, c);
    g = boost::multiprecision::gcd(g, icst);
    if (g == 0) g = 1;
    int sign = 0;
    for (const BigInt& c : ints) {
        if (c != 0) { sign = c > 0 ? 1 : -1; break; }
    }
    if (sign == 0 && icst != 0) sign = icst > 0 ? 1 : -1;
    if (sign == 0) sign = 1;
    if (sign < 0) g = -g;
    for (BigInt& c : ints) c /= g;
    coeffs = std::move(ints);
    cst = icst / g;
}

std::string SLinear::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        BigInt c = coeffs[k];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) os << c.str() << " ";
        os << "s" << (k + 1);
    }
    if (first) {
        os << cst.str();
    } else if (cst != 0) {
        BigInt c = cst;
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
        os << c.str();
    }
    return os.str();
}

bool SLinearFactorSet::subset_of(const SLinearFactorSet& o) const {
    return std::includes(o.factors.begin(), o.factors.end(), factors.begin(), factors.end());
}

SLinear PhiMap::apply(const SLinear& f) const {
    // sum a_k s_k + c  ->  -sum a_k s_k + (c + sum a_k shift_k)
    std::vector<Rational> coeffs;
    Rational cst(f.cst);
    for (size_t k = 0; k < f.coeffs.size(); ++k) {
        Rational a(f.coeffs[k]);
        coeffs.push_back(-a);
        cst += a * shift[k];
    }
    return SLinear(coeffs, cst);
}

SLinearFactorSet PhiMap::apply(const SLinearFactorSet& fs) const {
    SLinearFactorSet out;
    for (const SLinear& f : fs.factors) out.insert(apply(f));
    return out;
}

UnmixedReport unmixed_analysis(const Arrangement& a, const FactorizationSpec& spec) {
    UnmixedReport rep;
    const int r = spec.r(), q = a.num_forms();
    rep.factorization_unmixed = true;
    for (int k = 0; k < r; ++k) {
        std::vector<int> jk;
        int dk = -1, mk = -1;
        bool ok = true;
        for (int t = 0; t < q; ++t) {
            int e = spec.blocks[static_cast<size_t>(k)][static_cast<size_t>(t)];
            if (e == 0) continue;
            jk.push_back(t);
            if (dk < 0) dk = e;
            else if (dk != e) ok = false;
            if (mk < 0) mk = a.mult[static_cast<size_t>(t)];
            else if (mk != a.mult[static_cast<size_t>(t)]) ok = false;
        }
        rep.j_k.push_back(jk);
        rep.d_k.push_back(dk);
        rep.m_k.push_back(mk);
        if (!ok) {
            rep.factorization_unmixed = false;
            rep.notes.push_back("block " + std::to_string(k + 1) + " is not a uniform power of equal-multiplicity forms");
        }
    }
    if (!rep.factorization_unmixed) return rep;

    // d'_k / d''_k from e'_t = sum_{k: t in J_k} d'_k. When the exponents
    // are constant on each block the proportional solution d'_k = d_k e'/m_k
    // is taken; otherwise a particular rref solution with free variables
    // zero.
    auto solve_pair = [&](const std::vector<int>& exps, std::vector<Rational>& out, const char* label) {
        bool constant_per_block = true;
        std::vector<int> block_exp(static_cast<size_t>(r), 0);
        for (int k = 0; k < r && constant_per_block; ++k) {
            int e = -1;
            for (int t : rep.j_k[static_cast<size_t>(k)]) {
                if (e < 0) e = exps[static_cast<size_t>(t)];
                else if (e != exps[static_cast<size_t>(t)]) constant_per_block = false;
            }
            block_exp[static_cast<size_t>(k)] = e;
        }
        if (constant_per_block) {
            for (int k = 0; k < r; ++k)
                out.push_back(Rational(rep.d_k[static_cast<size_t>(k)] * block_exp[static_cast<size_t>(k)], rep.m_k[static_cast<size_t>(k)]));
        } else {
            QMatrix inc = QMatrix::Constant(q, r, Rational(0));
            for (int k = 0; k < r; ++k)
                for (int t : rep.j_k[static_cast<size_t>(k)]) inc(t, k) = Rational(1);
            QVector rhs(q);
            for (int t = 0; t < q; ++t) rhs(t) = Rational(exps[static_cast<size_t>(t)]);
            QVector sol;
            if (!solve_exact(inc, rhs, sol)) {
                rep.notes.push_back(std::string(label) + " exponents do not split along the blocks");
                return false;
            }
            for (int k = 0; k < r; ++k) out.push_back(sol(k));
        }
        for (int k = 0; k < r; ++k)
            if (!out[static_cast<size_t>(k)].is_integer())
                rep.notes.push_back(std::string(label) + " block exponent " + std::to_string(k + 1) + " is non-integral");
        return true;
    };
    rep.fprime_unmixed = solve_pair(spec.fprime, rep.dprime_k, "f'");
    rep.g_unmixed = solve_pair(spec.g_exponents(a), rep.dsecond_k, "g");
    return rep;
}

PhiMap symmetry_involution(const UnmixedReport& report) {
    if (!report.pair_unmixed()) throw HypothesisError("symmetry involution needs unmixed pairs (f', F) and (g, F)");
    PhiMap phi;
    for (size_t k = 0; k < report.d_k.size(); ++k) {
        Rational dk(report.d_k[k]);
        Rational shift = -(Rational(1, report.m_k[k]) + Rational(2) * report.dprime_k[k] / dk + report.dsecond_k[k] / dk);
        phi.shift.push_back(shift);
    }
    return phi;
}

BsContext::BsContext(const Arrangement& a, const FactorizationSpec& spec) : original_(a), spec_(spec) {
    spec_.validate(a);
    ess_ = essentialize(a).arrangement;
    lattice_ = build_lattice(ess_);
    edges_ = edge_records(ess_, lattice_, spec_);
}

const FreenessCertificate& BsContext::certificate() const {
    if (!cert_) cert_ = freeness_certificate(ess_);
    return *cert_;
}

int BsContext::edge_mdr(const EdgeRecord& e) const {
    auto it = edge_mdr_cache_.find(e.flat_id);
    if (it != edge_mdr_cache_.end()) return it->second;
    const Flat& flat = lattice_[static_cast<size_t>(e.flat_id)];
    Arrangement local = restrict_to_forms(ess_, flat.jset);
    Arrangement local_ess = essentialize(local).arrangement;
    // Koszul syzygy (del_2 f, -del_1 f, 0, ..) guarantees a value below d_X
    int cap = std::max(local_ess.degree() - 1, 0);
    int value = -1;
    for (int t = 0; t <= cap; ++t) {
        if (!graded_logder_basis(local_ess, t, true).basis.empty()) {
            value = t;
            break;
        }
    }
    if (value < 0) throw std::logic_error("edge mdr above the Koszul bound");
    edge_mdr_cache_.emplace(e.flat_id, value);
    return value;
}

TameStatus BsContext::tame_status() const {
    if (ess_.n <= 3) return TameStatus::AutomaticLowRank;
    if (original_.assume_free || (cert_ && cert_->status == FreenessStatus::Free)) return TameStatus::ImpliedByFree;
    if (original_.assume_tame) return TameStatus::Asserted;
    if (certificate().status == FreenessStatus::Free) return TameStatus::ImpliedByFree;
    return TameStatus::Unknown;
}

void BsContext::require_tame() const {
    if (tame_status() == TameStatus::Unknown)
        throw HypothesisError("tameness is unknown for rank > 3: pass 'assume tame' or establish freeness");
}

SLinear edge_linear_polynomial(const EdgeRecord& e) {
    if (!e.indecomposable) throw std::invalid_argument("edge polynomial of a decomposable edge");
    std::vector<Rational> coeffs;
    for (int d : e.d_x_k) coeffs.push_back(Rational(d));
    return SLinear(coeffs, Rational(e.rank + e.d_x_prime));
}

namespace {

void add_range(SLinearFactorSet& out, const EdgeRecord& e, int jmax) {
    if (jmax < 0) return;
    SLinear base = edge_linear_polynomial(e);
    std::vector<Rational> coeffs;
    for (int d : e.d_x_k) coeffs.push_back(Rational(d));
    for (int j = 0; j <= jmax; ++j) out.insert(SLinear(coeffs, Rational(e.rank + e.d_x_prime + j)));
}

} // namespace

SLinearFactorSet upper_bound_product(const BsContext& ctx) {
    ctx.require_tame();
    SLinearFactorSet out;
    for (const EdgeRecord& e : ctx.edges()) {
        if (!e.indecomposable) continue;
        int jmax = e.rank == 1 ? e.d_x - e.d_x_prime - 1
                               : ctx.edge_mdr(e) + e.d_x - e.d_x_prime - 3;
        add_range(out, e, jmax);
    }
    return out;
}

SLinearFactorSet member_product(const BsContext& ctx) {
    if (ctx.rank() > 2 && !ctx.original().assume_free && ctx.certificate().status != FreenessStatus::Free)
        throw HypothesisError("the member formula needs a free arrangement");
    SLinearFactorSet out;
    for (const EdgeRecord& e : ctx.edges()) {
        if (!e.indecomposable) continue;
        add_range(out, e, e.d_x_red + e.d_x - 2 * e.rank - e.d_x_prime);
    }
    return out;
}

ExactResult exact_variety_product(const BsContext& ctx) {
    ExactResult res;
    bool reduced = true;
    for (int m : ctx.ess().mult)
        if (m != 1) reduced = false;
    bool free_known = ctx.rank() <= 2 || ctx.original().assume_free || ctx.certificate().status == FreenessStatus::Free;
    UnmixedReport rep = unmixed_analysis(ctx.ess(), ctx.spec());
    int dprime = ctx.spec().fprime_degree();

    if (ctx.rank() <= 2) {
        res.theorem = "rank at most 2";
        res.applicable = true;
    } else if (free_known && rep.factorization_unmixed && rep.fprime_unmixed && dprime <= 4) {
        res.theorem = "free with unmixed pair (f', F) and deg f' <= 4";
        res.applicable = true;
    } else if (free_known && dprime == 0 && reduced) {
        res.theorem = "free, reduced, f' = 1";
        res.applicable = true;
    } else {
        res.applicable = false;
        if (!free_known) res.warnings.push_back("freeness not established");
        if (!(rep.factorization_unmixed && rep.fprime_unmixed)) res.warnings.push_back("(f', F) is not an unmixed pair up to units");
        if (dprime > 4) res.warnings.push_back("deg f' exceeds 4");
        res.warnings.push_back("exactness hypotheses not met; returning bounds instead");
        return res;
    }
    res.factors = member_product(ctx);
    return res;
}

BoundsResult bounds_free_product(const BsContext& ctx) {
    BoundsResult res;
    res.lower = member_product(ctx);
    UnmixedReport rep = unmixed_analysis(ctx.ess(), ctx.spec());
    if (!(rep.factorization_unmixed && rep.fprime_unmixed)) {
        res.upper_valid = false;
        res.warnings.push_back("upper set needs (f', F) unmixed up to units; only the lower set is reported");
        return res;
    }
    res.upper_valid = true;
    for (const EdgeRecord& e : ctx.edges()) {
        if (!e.indecomposable) continue;
        std::vector<Rational> coeffs;
        for (int d : e.d_x_k) coeffs.push_back(Rational(d));
        for (int j : xi_range(e)) res.upper.insert(SLinear(coeffs, Rational(e.rank + e.d_x_prime + j)));
    }
    return res;
}

std::vector<int> xi_range(const EdgeRecord& e) {
    std::vector<int> out;
    int top = e.d_x_red + e.d_x - 2 * e.rank - e.d_x_prime;
    for (int j = 0; j <= top; ++j) {
        bool keep = e.rank <= 2 || j <= e.d_x - e.d_x_prime - 1 || j >= e.d_x_red - 2 * e.rank + 1;
        if (keep) out.push_back(j);
    }
    return out;
}

std::set<Rational> roots_unit_interval(const BsContext& ctx) {
    ctx.require_tame();
    std::set<Rational> out;
    for (const EdgeRecord& e : ctx.edges()) {
        if (!e.indecomposable) continue;
        for (int j = e.rank + e.d_x_prime; j <= e.d_x; ++j) out.insert(Rational(-j, e.d_x));
    }
    return out;
}

SLinearFactorSet coarsen_product(const SLinearFactorSet& fs, const std::vector<int>& block_of, int target_r) {
    SLinearFactorSet out;
    for (const SLinear& f : fs.factors) {
        if (static_cast<size_t>(f.r()) != block_of.size())
            throw std::invalid_argument("coarsen: block map length mismatch");
        std::vector<Rational> coeffs(static_cast<size_t>(target_r), Rational(0));
        for (size_t i = 0; i < block_of.size(); ++i) {
            int b = block_of[i];
            if (b < 0 || b >= target_r) throw std::invalid_argument("coarsen: block index out of range");
            coeffs[static_cast<size_t>(b)] += Rational(f.coeffs[i]);
        }
        out.insert(SLinear(coeffs, Rational(f.cst)));
    }
    return out;
}

std::set<Rational> univariate_roots(const SLinearFactorSet& fs) {
    std::set<Rational> out;
    for (const SLinear& f : fs.factors) {
        if (f.r() != 1) throw std::invalid_argument("univariate roots need r = 1");
        if (f.coeffs[0] == 0) continue; // constant factor has no root
        out.insert(Rational(-f.cst, f.coeffs[0]));
    }
    return out;
}

FreeingResult freeing_lower_bound(const Arrangement& g_arr, const Rational& root, FreeingMode mode) {
    for (int m : g_arr.mult)
        if (m != 1) throw HypothesisError("freeing bound needs a reduced arrangement");
    Arrangement ess = essentialize(g_arr).arrangement;
    const int n = ess.n;
    const int d = ess.degree();
    // root = -(2d - v)/d  <=>  v = d(2 + root)
    Rational v_rat = Rational(d) * (Rational(2) + root);
    if (!v_rat.is_integer()) throw HypothesisError("root is not of the form -(2d - v)/d");
    if (v_rat < Rational(2) || v_rat > Rational(n - 1))
        throw HypothesisError("v = " + v_rat.str() + " is outside 1 < v <= n - 1");
    int v = static_cast<int>(v_rat.numerator());

    FreeingResult res;
    res.v = v;
    if (n > 3 && !g_arr.assume_tame && !g_arr.assume_free)
        res.notes.push_back("the bound assumes tameness of g, which is unverified at rank " + std::to_string(n));
    if (mode == FreeingMode::Coprime) {
        if (boost::multiprecision::gcd(BigInt(v), BigInt(d)) != 1)
            throw HypothesisError("deg(g) and v are not coprime; use per-edge mode");
        res.feasible = true;
        res.bound = n - v;
        res.notes.push_back("coprime mode: bound n - v");
        return res;
    }

    auto lattice = build_lattice(ess);
    std::optional<Rational> best;
    for (const Flat& x : lattice) {
        if (x.rank == 0) continue;
        int deg_gx = static_cast<int>(x.jset.size()); // reduced arrangement
        // j_X = -r(X) + deg(g_X)(2d - v)/d must be a nonnegative integer
        Rational j = Rational(deg_gx) * Rational(2 * d - v, d) - Rational(x.rank);
        if (!j.is_integer() || j < Rational(0)) continue;
        Rational bound = Rational(x.rank) - Rational(deg_gx) * Rational(v, d);
        if (!best || bound < *best) best = bound;
        res.notes.push_back("edge rank " + std::to_string(x.rank) + ", deg(g_X) = " + std::to_string(deg_gx) +
                            ": bound " + bound.str());
    }
    if (!best) {
        res.feasible = false;
        res.notes.push_back("no edge satisfies the integrality and range conditions; re-check the hypotheses");
        return res;
    }
    res.feasible = true;
    // ceil of the best rational bound
    BigInt num = best->numerator(), den = best->denominator();
    BigInt q = num / den;
    if (num % den != 0 && num > 0) q += 1;
    res.bound = static_cast<int>(q);
    return res;
}

} // namespace arrbs
