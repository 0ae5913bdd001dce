#include "arrbs/logderiv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "arrbs/lattice.hpp"

namespace arrbs {

namespace {

// all exponent vectors over n vars with total degree t, grlex order
std::vector<ExpVec> monomials_of_degree(int n, int t) {
    std::vector<ExpVec> out;
    ExpVec cur(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == n - 1) {
            cur[static_cast<size_t>(pos)] = static_cast<uint32_t>(rest);
            out.push_back(cur);
            return;
        }
        for (int k = rest; k >= 0; --k) {
            cur[static_cast<size_t>(pos)] = static_cast<uint32_t>(k);
            rec(pos + 1, rest - k);
        }
    };
    if (n == 0) {
        if (t == 0) out.push_back({});
        return out;
    }
    rec(0, t);
    return out;
}

struct MonomialIndex {
    std::map<ExpVec, int> index;
    int size = 0;
    int intern(const ExpVec& e) {
        auto [it, inserted] = index.emplace(e, size);
        if (inserted) ++size;
        return it->second;
    }
};

// Rows of linear constraints on the coefficients of (a_1..a_n), each a_i a
// degree-t form. Unknown layout: i * M + m over the degree-t monomial list.
struct ConstraintSystem {
    std::vector<ExpVec> monos;
    int n = 0;
    std::vector<std::map<int, Rational>> rows; // sparse rows over unknowns
    MonomialIndex row_index;

    int unknowns() const { return n * static_cast<int>(monos.size()); }

    QMatrix to_matrix() const {
        QMatrix m = QMatrix::Constant(static_cast<Eigen::Index>(rows.size()), unknowns(), Rational(0));
        for (size_t i = 0; i < rows.size(); ++i)
            for (const auto& [j, c] : rows[i]) m(static_cast<Eigen::Index>(i), j) = c;
        return m;
    }
};

// constraint: sum_i a_i * factors[i] == 0 as a polynomial identity
void add_poly_identity_rows(ConstraintSystem& sys, const std::vector<Poly>& factors) {
    std::map<int, std::map<int, Rational>> rows_by_target; // target monomial -> row
    for (int i = 0; i < sys.n; ++i) {
        const Poly& f = factors[static_cast<size_t>(i)];
        for (size_t m = 0; m < sys.monos.size(); ++m) {
            int unknown = i * static_cast<int>(sys.monos.size()) + static_cast<int>(m);
            for (const auto& [e, c] : f.terms()) {
                ExpVec prod(e);
                for (size_t k = 0; k < prod.size(); ++k) prod[k] += sys.monos[m][k];
                int target = sys.row_index.intern(prod);
                rows_by_target[target][unknown] += c;
            }
        }
    }
    for (auto& [target, row] : rows_by_target) {
        for (auto it = row.begin(); it != row.end();) {
            if (it->second.is_zero()) it = row.erase(it);
            else ++it;
        }
        if (!row.empty()) sys.rows.push_back(std::move(row));
    }
}

std::vector<Derivation> kernel_to_derivations(const ConstraintSystem& sys, int t) {
    std::vector<Derivation> out;
    for (const QVector& v : nullspace(sys.to_matrix())) {
        Derivation d;
        for (int i = 0; i < sys.n; ++i) {
            Poly p(sys.n);
            for (size_t m = 0; m < sys.monos.size(); ++m) {
                const Rational& c = v(static_cast<Eigen::Index>(i * static_cast<int>(sys.monos.size()) + static_cast<int>(m)));
                if (!c.is_zero()) p.add_term(sys.monos[m], c);
            }
            d.coeffs.push_back(std::move(p));
        }
        (void)t;
        out.push_back(std::move(d));
    }
    return out;
}

// substitution x_pivot -> x_pivot - l on the hyperplane l = 0, as a map on
// exponent vectors; returns the reduced polynomial of a monomial
Poly monomial_on_hyperplane(const ExpVec& mono, const Poly& form, int pivot, int n) {
    // x_pivot = x_pivot - form  (form has coefficient 1 at pivot)
    Poly sub = Poly::variable(n, pivot) - form;
    Poly out = Poly::constant(n, Rational(1));
    for (size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        Poly base = static_cast<int>(i) == pivot ? sub : Poly::variable(n, static_cast<int>(i));
        out = out * base.pow(mono[i]);
    }
    return out;
}

int pivot_var(const Poly& form, int n) {
    for (int i = 0; i < n; ++i)
        if (!form.derivative(i).is_zero()) return i;
    throw std::logic_error("constant form");
}

// coefficient vector of a degree-t derivation over the unknown layout
QVector derivation_coords(const Derivation& d, const std::vector<ExpVec>& monos, int n) {
    QVector v = QVector::Constant(static_cast<Eigen::Index>(n * static_cast<int>(monos.size())), Rational(0));
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, c] : d.coeffs[static_cast<size_t>(i)].terms()) {
            auto it = std::find(monos.begin(), monos.end(), e);
            if (it == monos.end()) throw std::logic_error("derivation not homogeneous of the expected degree");
            v(static_cast<Eigen::Index>(i * static_cast<int>(monos.size()) + static_cast<int>(it - monos.begin()))) = c;
        }
    }
    return v;
}

Arrangement reduced_arrangement(const Arrangement& a) {
    Arrangement red = a;
    std::fill(red.mult.begin(), red.mult.end(), 1);
    return red;
}

PolyMatrix coefficient_matrix(const std::vector<Derivation>& basis, int n) {
    PolyMatrix m(static_cast<Eigen::Index>(basis.size()), n);
    for (size_t i = 0; i < basis.size(); ++i)
        for (int k = 0; k < n; ++k) m(static_cast<Eigen::Index>(i), k) = basis[i].coeffs[static_cast<size_t>(k)];
    return m;
}

// incremental row-span tracker over Q: rows kept pivot-normalized
struct SpanTracker {
    std::vector<QVector> rows;
    std::vector<Eigen::Index> pivots;
    Eigen::Index cols;
    explicit SpanTracker(Eigen::Index c) : cols(c) {}
    size_t rank() const { return rows.size(); }
    bool add_if_new(QVector v) {
        for (size_t k = 0; k < rows.size(); ++k) {
            Rational c = v(pivots[k]);
            if (!c.is_zero()) v -= rows[k] * c;
        }
        Eigen::Index p = -1;
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!v(j).is_zero()) { p = j; break; }
        if (p < 0) return false;
        Rational inv = v(p).inverse();
        for (Eigen::Index j = p; j < cols; ++j) v(j) *= inv;
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

} // namespace

GradedBasis graded_logder_basis(const Arrangement& a, int t, bool kill_f) {
    if (t < 0) throw std::invalid_argument("negative degree");
    ConstraintSystem sys;
    sys.n = a.n;
    sys.monos = monomials_of_degree(a.n, t);
    if (kill_f) {
        // sum a_i del_i(f) = 0; solutions are automatically logarithmic
        std::vector<Poly> partials;
        Poly f = a.defining_poly();
        for (int i = 0; i < a.n; ++i) partials.push_back(f.derivative(i));
        add_poly_identity_rows(sys, partials);
    } else {
        // per distinct form: (sum_i alpha_{j,i} a_i) restricted to l_j = 0 vanishes
        for (int j = 0; j < a.num_forms(); ++j) {
            Poly l = a.form(j);
            int piv = pivot_var(l, a.n);
            std::map<int, std::map<int, Rational>> rows_by_target;
            for (int i = 0; i < a.n; ++i) {
                Rational alpha = a.normals[static_cast<size_t>(j)](i);
                if (alpha.is_zero()) continue;
                for (size_t m = 0; m < sys.monos.size(); ++m) {
                    int unknown = i * static_cast<int>(sys.monos.size()) + static_cast<int>(m);
                    Poly restricted = monomial_on_hyperplane(sys.monos[m], l, piv, a.n);
                    for (const auto& [e, c] : restricted.terms())
                        rows_by_target[sys.row_index.intern(e)][unknown] += alpha * c;
                }
            }
            for (auto& [target, row] : rows_by_target) {
                for (auto it = row.begin(); it != row.end();) {
                    if (it->second.is_zero()) it = row.erase(it);
                    else ++it;
                }
                if (!row.empty()) sys.rows.push_back(std::move(row));
            }
        }
    }
    GradedBasis out;
    out.degree = t;
    out.basis = kernel_to_derivations(sys, t);
    return out;
}

MdrResult mdr(const Arrangement& a) {
    MdrResult res;
    res.cap = a.degree_reduced();
    for (int t = 0; t <= res.cap; ++t) {
        if (!graded_logder_basis(a, t, true).basis.empty()) {
            res.value = t;
            return res;
        }
    }
    res.above_cap = true;
    return res;
}

FreenessCertificate freeness_certificate(const Arrangement& a) {
    FreenessCertificate cert;
    Arrangement red = reduced_arrangement(a);
    const int n = a.n;
    const int cap = a.degree_reduced();
    std::vector<Derivation> chosen;
    std::vector<int> degrees;

    for (int t = 0; t <= cap && static_cast<int>(chosen.size()) <= n; ++t) {
        GradedBasis dt = graded_logder_basis(red, t, false);
        if (dt.basis.empty()) continue;
        auto monos = monomials_of_degree(n, t);
        SpanTracker span(static_cast<Eigen::Index>(n * static_cast<int>(monos.size())));
        // degree-t slice of the submodule generated by the chosen elements
        for (size_t c = 0; c < chosen.size(); ++c) {
            int e = degrees[c];
            if (e > t) continue;
            for (const ExpVec& m : monomials_of_degree(n, t - e)) {
                Poly mono(n);
                mono.add_term(m, Rational(1));
                Derivation scaled;
                for (const Poly& p : chosen[c].coeffs) scaled.coeffs.push_back(p * mono);
                span.add_if_new(derivation_coords(scaled, monos, n));
            }
        }
        for (const Derivation& d : dt.basis) {
            if (span.add_if_new(derivation_coords(d, monos, n))) {
                chosen.push_back(d);
                degrees.push_back(t);
                if (static_cast<int>(chosen.size()) > n) break;
            }
        }
    }

    cert.basis = chosen;
    cert.exponents = degrees;
    if (static_cast<int>(chosen.size()) > n) {
        cert.status = FreenessStatus::NotFree;
        cert.witness = "more than " + std::to_string(n) + " minimal generators within degree cap " + std::to_string(cap);
        return cert;
    }
    if (static_cast<int>(chosen.size()) < n) {
        cert.status = FreenessStatus::NotFree;
        cert.witness = "only " + std::to_string(chosen.size()) + " minimal generators up to degree " + std::to_string(cap) +
                       "; a free module of rank " + std::to_string(n) + " would show all of them by then";
        return cert;
    }
    cert.saito_det = det_fraction_free(coefficient_matrix(chosen, n));
    Poly f_red = a.reduced_poly();
    auto quot = cert.saito_det.is_zero() ? std::nullopt : try_exact_divide(cert.saito_det, f_red);
    if (quot && quot->is_constant() && !quot->is_zero()) {
        cert.status = FreenessStatus::Free;
        // Terao necessary check: chi factors over the exponents of the
        // essentialized arrangement (non-essential directions shift by 0s).
        Essentialization ess = essentialize(a);
        auto lattice = build_lattice(ess.arrangement);
        Poly chi = characteristic_polynomial(ess.arrangement, lattice);
        Poly expected = Poly::constant(1, Rational(1));
        Poly tvar = Poly::variable(1, 0);
        std::vector<int> ess_exponents = cert.exponents;
        std::sort(ess_exponents.begin(), ess_exponents.end());
        ess_exponents.erase(ess_exponents.begin(), ess_exponents.begin() + (a.n - ess.arrangement.n));
        for (int e : ess_exponents) expected = expected * (tvar - Poly::constant(1, Rational(e)));
        cert.terao_factorization_ok = (chi == expected);
    } else {
        cert.status = FreenessStatus::NotFree;
        int sum = 0;
        for (int e : degrees) sum += e;
        cert.witness = sum == a.degree_reduced()
                           ? "n generators with degree sum d_red, but the Saito determinant is not a unit multiple of f_red"
                           : "n minimal generators found, but their degrees sum to " + std::to_string(sum) +
                                 " instead of " + std::to_string(a.degree_reduced());
    }
    return cert;
}

std::vector<Derivation> preferred_basis(const FreenessCertificate& cert, const Arrangement& a) {
    if (cert.status != FreenessStatus::Free) throw std::invalid_argument("preferred basis needs a Free certificate");
    const int n = a.n;
    Arrangement red = reduced_arrangement(a);
    Poly f_red = red.reduced_poly();
    Rational dred(a.degree_reduced());
    Derivation euler = euler_field(a);

    std::vector<Derivation> corrected;
    for (const Derivation& d : cert.basis) {
        Poly h = poly_exact_divide(d.apply(f_red), f_red);
        Derivation c;
        for (int i = 0; i < n; ++i)
            c.coeffs.push_back(d.coeffs[static_cast<size_t>(i)] * dred - h * euler.coeffs[static_cast<size_t>(i)]);
        corrected.push_back(std::move(c));
    }
    Derivation scaled_euler;
    for (int i = 0; i < n; ++i) scaled_euler.coeffs.push_back(euler.coeffs[static_cast<size_t>(i)] * dred.inverse());

    for (int drop = 0; drop < n; ++drop) {
        std::vector<Derivation> candidate;
        for (int i = 0; i < n; ++i)
            if (i != drop && !corrected[static_cast<size_t>(i)].is_zero()) candidate.push_back(corrected[static_cast<size_t>(i)]);
        if (static_cast<int>(candidate.size()) != n - 1) continue;
        candidate.push_back(scaled_euler);
        Poly det = det_fraction_free(coefficient_matrix(candidate, n));
        if (det.is_zero()) continue;
        auto c = try_exact_divide(det, f_red);
        if (!c || !c->is_constant()) continue;
        Rational scale = c->constant_term().inverse();
        for (Poly& p : candidate.front().coeffs) p *= scale;
        return candidate;
    }
    throw std::logic_error("no preferred basis found from the certificate");
}

Derivation commutator(const Derivation& x, const Derivation& y) {
    Derivation out;
    for (size_t e = 0; e < x.coeffs.size(); ++e) out.coeffs.push_back(x.apply(y.coeffs[e]) - y.apply(x.coeffs[e]));
    return out;
}

Poly StructureConstants::trace_ad(int i) const {
    Poly t;
    for (size_t j = 0; j < c[static_cast<size_t>(i)].size(); ++j) t += c[static_cast<size_t>(i)][j][j];
    return t;
}

StructureConstants structure_constants(const std::vector<Derivation>& basis, const Arrangement& a) {
    const int n = a.n;
    PolyMatrix mt(n, n); // column k = coefficients of delta_k
    for (int k = 0; k < n; ++k)
        for (int e = 0; e < n; ++e) mt(e, k) = basis[static_cast<size_t>(k)].coeffs[static_cast<size_t>(e)];
    Poly det = det_fraction_free(mt);
    if (det.is_zero()) throw std::invalid_argument("structure constants need a basis with nonzero determinant");

    StructureConstants sc;
    sc.c.assign(static_cast<size_t>(n), std::vector<std::vector<Poly>>(static_cast<size_t>(n), std::vector<Poly>(static_cast<size_t>(n), Poly(n))));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Derivation w = commutator(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
            for (int k = 0; k < n; ++k) {
                PolyMatrix rep = mt;
                for (int e = 0; e < n; ++e) rep(e, k) = w.coeffs[static_cast<size_t>(e)];
                Poly ck = poly_exact_divide(det_fraction_free(rep), det);
                sc.c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = ck;
                sc.c[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(k)] = -ck;
            }
        }
    }
    return sc;
}

std::vector<Poly> verify_trace_formula(const std::vector<Derivation>& basis, const Arrangement& a) {
    StructureConstants sc = structure_constants(basis, a);
    const int n = a.n;
    std::vector<Poly> residuals;
    for (int i = 0; i < n; ++i) {
        Poly res = sc.trace_ad(i);
        for (int k = 0; k < n; ++k) res += basis[static_cast<size_t>(i)].coeffs[static_cast<size_t>(k)].derivative(k);
        if (i == n - 1) res -= Poly::constant(n, Rational(1));
        residuals.push_back(res);
    }
    return residuals;
}

std::vector<Derivation> logder_generators(const Arrangement& a) {
    FreenessCertificate cert = freeness_certificate(a);
    if (cert.status == FreenessStatus::Free) return cert.basis;
    return cert.basis; // greedy minimal generators up to the cap
}

std::vector<WeylOperator> annihilator_generators(const Arrangement& a, const FactorizationSpec& spec,
                                                 int eps, const std::vector<int>& twist,
                                                 const std::vector<Derivation>& gens) {
    const int n = a.n, r = spec.r();
    std::vector<int> embed_map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) embed_map[static_cast<size_t>(i)] = i;
    std::vector<WeylOperator> out;
    for (const Derivation& d : gens) {
        // h_t = (delta . l_t) / l_t, exact by the logarithmic condition
        std::vector<Poly> h;
        for (int t = 0; t < a.num_forms(); ++t) h.push_back(poly_exact_divide(d.apply(a.form(t)), a.form(t)));
        WeylOperator psi = d.to_weyl(r);
        Poly constant_part(n + r);
        for (int t = 0; t < a.num_forms(); ++t) {
            if (twist[static_cast<size_t>(t)] == 0) continue;
            constant_part += h[static_cast<size_t>(t)].embed(n + r, embed_map) * Rational(twist[static_cast<size_t>(t)]);
        }
        Poly s_part(n + r);
        for (int k = 0; k < r; ++k) {
            Poly lam(n + r);
            for (int t = 0; t < a.num_forms(); ++t) {
                int e = spec.blocks[static_cast<size_t>(k)][static_cast<size_t>(t)];
                if (e) lam += h[static_cast<size_t>(t)].embed(n + r, embed_map) * Rational(e);
            }
            s_part += lam * Poly::variable(n + r, n + k);
        }
        psi -= WeylOperator::from_poly(n, r, s_part * Rational(eps) + constant_part);
        out.push_back(std::move(psi));
    }
    return out;
}

Section twist_section(const Arrangement& a, const FactorizationSpec& spec, int eps,
                      const std::vector<int>& twist) {
    const int n = a.n, r = spec.r();
    RatFun coeff(Poly::constant(n + r, Rational(1)));
    for (int t = 0; t < a.num_forms(); ++t) {
        int w = twist[static_cast<size_t>(t)];
        if (w > 0) coeff.mul_num(a.form_embedded(t, r).pow(static_cast<uint32_t>(w)));
        if (w < 0) coeff.mul_den(a.form_embedded(t, r), -w);
    }
    return Section{coeff, eps};
}

SectionContext make_section_context(const Arrangement& a, const FactorizationSpec& spec) {
    SectionContext ctx;
    ctx.n = a.n;
    ctx.r = spec.r();
    for (int t = 0; t < a.num_forms(); ++t) ctx.forms.push_back(a.form_embedded(t, ctx.r));
    ctx.blocks = spec.blocks;
    return ctx;
}

DualityCheckReport duality_top_row_check(const Arrangement& a, const FactorizationSpec& spec) {
    DualityCheckReport rep;
    FreenessCertificate cert = freeness_certificate(a);
    if (cert.status != FreenessStatus::Free)
        throw std::invalid_argument("duality check needs a free arrangement");
    std::vector<Derivation> basis = preferred_basis(cert, a);
    StructureConstants sc = structure_constants(basis, a);
    const int n = a.n, r = spec.r();
    std::vector<int> embed_map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) embed_map[static_cast<size_t>(i)] = i;

    std::vector<int> g_exp = spec.g_exponents(a);
    std::vector<int> dual_twist(static_cast<size_t>(a.num_forms()));
    for (int t = 0; t < a.num_forms(); ++t)
        dual_twist[static_cast<size_t>(t)] = -(a.mult[static_cast<size_t>(t)] + 1); // (f' g f_red)^{-1}

    std::vector<WeylOperator> psi_fprime = annihilator_generators(a, spec, +1, spec.fprime, basis);
    std::vector<WeylOperator> psi_dual = annihilator_generators(a, spec, -1, dual_twist, basis);

    rep.ok = true;
    for (int i = 0; i < n; ++i) {
        // row entry (-1)^i (psi_{f'F}(delta_i) - tr Ad_i - delta_i.g / g)
        Poly extra = sc.trace_ad(i).embed(n + r, embed_map);
        for (int t = 0; t < a.num_forms(); ++t) {
            if (g_exp[static_cast<size_t>(t)] == 0) continue;
            Poly h = poly_exact_divide(basis[static_cast<size_t>(i)].apply(a.form(t)), a.form(t));
            extra += h.embed(n + r, embed_map) * Rational(g_exp[static_cast<size_t>(t)]);
        }
        WeylOperator entry = psi_fprime[static_cast<size_t>(i)] - WeylOperator::from_poly(n, r, extra);
        if (i % 2 == 1) entry = -entry;
        WeylOperator expected = psi_dual[static_cast<size_t>(i)];
        if (i % 2 == 0) expected = -expected;
        bool match = entry.tau_transpose() == expected;
        rep.ok = rep.ok && match;
        rep.entries.push_back("row " + std::to_string(i + 1) + (match ? ": match" : ": MISMATCH"));
    }
    return rep;
}

} // namespace arrbs
