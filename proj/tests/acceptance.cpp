// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "arrbs/bsformulas.hpp"
#include "arrbs/report.hpp"

using namespace arrbs;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << what << "\n";
    if (!ok) ++failures;
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

SLinear lin(std::vector<int> coeffs, int cst) {
    std::vector<Rational> c;
    for (int v : coeffs) c.push_back(Rational(v));
    return SLinear(c, Rational(cst));
}

const std::string example_multivariate =
    "vars x y\n"
    "form x\n"
    "form y ^2\n"
    "form x + y ^2\n"
    "factor 1 1 0\n"
    "factor 0 1 1\n"
    "factor 0 0 1\n";

const std::string example_univariate = "vars x y\nform x\nform y ^2\nform x + y ^2\n";

const std::string nine_lines_a =
    "vars x y z\n"
    "form x\nform y\nform z\n"
    "form x + 3*z\n"
    "form x + y + z\n"
    "form x + 2*y + 3*z\n"
    "form 2*x + y + z\n"
    "form 2*x + 3*y + z\n"
    "form 2*x + 3*y + 4*z\n";

const std::string nine_lines_b =
    "vars x y z\n"
    "form x\nform y\nform z\n"
    "form x + 5*z\n"
    "form x + y + z\n"
    "form x + 3*y + 5*z\n"
    "form 2*x + y + z\n"
    "form 2*x + 3*y + z\n"
    "form 2*x + 3*y + 4*z\n";

// corpus for the property suites
const std::vector<std::string> corpus = {
    "vars x y\nform x\nform y\n",
    "vars x y\nform x\nform y\nform x + y\n",
    "vars x y\nform x\nform y ^2\nform x + y ^2\n",
    "vars x y\nform x ^2\nform y ^2\n",
    "vars x y z\nform x\nform y\nform z\n",
    "vars x y z\nform x\nform y\nform z\nform x + y + z\n",
    "vars x y z w\nform x - y\nform x - z\nform x - w\nform y - z\nform y - w\nform z - w\n",
    "vars x y z w\nform x\nform y\nform z\nform w\nform x + y + z\nform y - z + w\n",
    nine_lines_a,
    nine_lines_b,
};

std::mt19937 rng(424242);

WeylOperator random_op(int n, int r) {
    std::uniform_int_distribution<int> nterms(1, 3), coeff(-3, 3), deg(0, 2);
    WeylOperator w(n, r);
    for (int t = 0; t < nterms(rng); ++t) {
        ExpVec u(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = static_cast<uint32_t>(deg(rng) % 2);
        Poly p(n + r);
        ExpVec e(static_cast<size_t>(n + r));
        for (int i = 0; i < n + r; ++i) e[static_cast<size_t>(i)] = static_cast<uint32_t>(deg(rng));
        p.add_term(e, Rational(coeff(rng)));
        w.add_term(u, p);
    }
    return w;
}

std::string lattice_fingerprint(const Arrangement& a) {
    auto lattice = build_lattice(a);
    auto spec = FactorizationSpec::trivial(a);
    auto edges = edge_records(a, lattice, spec);
    std::ostringstream os;
    for (const EdgeRecord& e : edges)
        os << e.rank << "," << e.d_x << "," << e.d_x_red << "," << e.indecomposable << ";";
    Poly chi = characteristic_polynomial(a, lattice);
    os << "|chi=" << chi.str({"t"});
    for (const BigInt& mu : moebius_values(lattice)) os << "," << mu.str();
    return os.str();
}

} // namespace

int main() {
    // 1. multivariate running example, exact mode, exact arithmetic, < 1 s
    {
        auto t0 = std::chrono::steady_clock::now();
        auto in = parse_arrangement(example_multivariate);
        BsContext ctx(in.arrangement, in.spec);
        ExactResult res = exact_variety_product(ctx);
        double elapsed = ms_since(t0);
        SLinearFactorSet expected;
        expected.insert(lin({1, 0, 0}, 1));
        for (int j = 0; j <= 1; ++j) {
            expected.insert(lin({1, 1, 0}, 1 + j));
            expected.insert(lin({0, 1, 1}, 1 + j));
        }
        for (int m = 0; m <= 4; ++m) expected.insert(lin({2, 2, 1}, 2 + m));
        criterion(1, "multivariate factor set of x y^2 (x+y)^2 with F = (xy, y(x+y), x+y)",
                  res.applicable && res.factors == expected && elapsed < 1000.0);
    }

    // 2. univariate running example: root set
    std::set<Rational> expected_roots{Rational(-1),    Rational(-1, 2), Rational(-2, 5),
                                      Rational(-3, 5), Rational(-4, 5), Rational(-6, 5)};
    SLinearFactorSet univariate_set;
    {
        auto in = parse_arrangement(example_univariate);
        BsContext ctx(in.arrangement, in.spec);
        ExactResult res = exact_variety_product(ctx);
        bool ok = res.applicable;
        if (ok) {
            univariate_set = res.factors;
            ok = univariate_roots(res.factors) == expected_roots;
        }
        criterion(2, "roots of the Bernstein-Sato polynomial of x y^2 (x+y)^2", ok);
    }

    // 3. coarsening criterion 1 along s1 = s2 = s3 gives criterion 2's set
    {
        auto in = parse_arrangement(example_multivariate);
        BsContext ctx(in.arrangement, in.spec);
        SLinearFactorSet coarse = coarsen_product(exact_variety_product(ctx).factors, {0, 0, 0}, 1);
        criterion(3, "coarsened multivariate set equals the univariate factor set", coarse == univariate_set);
    }

    // 4. the two rank-3 nine-line arrangements with one lattice
    {
        auto t0 = std::chrono::steady_clock::now();
        auto f = parse_arrangement(nine_lines_a);
        std::string fp_f = lattice_fingerprint(f.arrangement);
        BsContext cf(f.arrangement, FactorizationSpec::trivial(f.arrangement));
        auto roots_f = roots_unit_interval(cf);
        double t_f = ms_since(t0);

        auto t1 = std::chrono::steady_clock::now();
        auto g = parse_arrangement(nine_lines_b);
        std::string fp_g = lattice_fingerprint(g.arrangement);
        BsContext cg(g.arrangement, FactorizationSpec::trivial(g.arrangement));
        auto roots_g = roots_unit_interval(cg);
        double t_g = ms_since(t1);

        criterion(4, "lattice-equivalent nine-line arrangements share their [-1,0) roots",
                  fp_f == fp_g && roots_f == roots_g && t_f < 10000.0 && t_g < 10000.0);
    }

    // 5. freeness certificates
    {
        bool ok = true;
        auto expect_free = [&](const std::string& text, std::vector<int> exponents) {
            Arrangement a = essentialize(parse_arrangement(text).arrangement).arrangement;
            FreenessCertificate cert = freeness_certificate(a);
            bool good = cert.status == FreenessStatus::Free && cert.exponents == exponents;
            if (good) {
                auto q = try_exact_divide(cert.saito_det, a.reduced_poly());
                good = q && q->is_constant() && !q->is_zero();
            }
            ok = ok && good;
        };
        expect_free("vars x y z\nform x\nform y\nform z\n", {1, 1, 1});
        expect_free("vars x y\nform x\nform y\nform x + y\n", {1, 2});
        expect_free("vars x y z w\nform x - y\nform x - z\nform x - w\nform y - z\nform y - w\nform z - w\n",
                    {1, 2, 3});
        FreenessCertificate notfree =
            freeness_certificate(parse_arrangement("vars x y z\nform x\nform y\nform z\nform x + y + z\n").arrangement);
        ok = ok && notfree.status == FreenessStatus::NotFree;
        criterion(5, "freeness certificates (Boolean, three lines, braid; generic 4 planes NotFree)", ok);
    }

    // 6. indecomposable <=> mdr >= 2 on every essentialized edge of rank >= 2
    {
        bool ok = true;
        int checked = 0;
        for (const std::string& text : corpus) {
            auto in = parse_arrangement(text);
            BsContext ctx(in.arrangement, FactorizationSpec::trivial(in.arrangement));
            for (const EdgeRecord& e : ctx.edges()) {
                if (e.rank < 2) continue;
                ++checked;
                bool mdr_ge_2 = ctx.edge_mdr(e) >= 2;
                if (mdr_ge_2 != e.indecomposable) ok = false;
            }
        }
        criterion(6, "mdr >= 2 matches matroid indecomposability on " + std::to_string(checked) + " edges",
                  ok && checked > 0);
    }

    // 7. operator identities
    {
        bool cascade = true;
        for (int n = 1; n <= 3; ++n)
            for (int t = 0; t <= 3; ++t) cascade = cascade && euler_cascade_product(n, t) == euler_cascade_sum(n, t);

        bool rct_ok = true;
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2, r = 1;
            WeylOperator p = random_op(n, r);
            std::vector<Poly> a;
            for (int i = 0; i < n; ++i) {
                Poly ai(n + r);
                ExpVec e(static_cast<size_t>(n + r), 0);
                e[static_cast<size_t>(trial % n)] = static_cast<uint32_t>(trial % 3);
                ai.add_term(e, Rational(coeff(rng)));
                a.push_back(ai);
            }
            WeylOperator delta = WeylOperator::derivation(n, r, a);
            Poly c = Poly::variable(n + r, n) * Rational(coeff(rng)) + Poly::constant(n + r, Rational(coeff(rng)));
            Poly p0 = p.right_constant_term();
            Poly expected(n + r);
            for (int i = 0; i < n; ++i) expected -= a[static_cast<size_t>(i)].derivative(i) * p0;
            for (int i = 0; i < n; ++i) expected -= a[static_cast<size_t>(i)] * p0.derivative(i);
            expected -= c * p0;
            rct_ok = rct_ok && (p * (delta - WeylOperator::from_poly(n, r, c))).right_constant_term() == expected;
        }

        bool trace_ok = true;
        for (const std::string& text : corpus) {
            Arrangement a = essentialize(parse_arrangement(text).arrangement).arrangement;
            FreenessCertificate cert = freeness_certificate(a);
            if (cert.status != FreenessStatus::Free) continue;
            auto basis = preferred_basis(cert, a);
            for (const Poly& res : verify_trace_formula(basis, a)) trace_ok = trace_ok && res.is_zero();
        }

        bool duality_ok = true;
        auto duality = [&](const std::string& text) {
            auto in = parse_arrangement(text);
            duality_ok = duality_ok && duality_top_row_check(in.arrangement, in.spec).ok;
        };
        duality("vars x y\nform x\nform y\nfactor 1 0\nfactor 0 1\n");
        duality("vars x y\nform x\nform y\nfactor 1 0\nfactor 0 1\nfprime 1 0\n");
        duality("vars x y\nform x\nform y\nform x + y\n");
        duality("vars x y\nform x\nform y\nform x + y\nfprime 1 0 0\n");
        duality("vars x y z\nform x\nform y\nform z\n");
        duality("vars x y z\nform x\nform y\nform z\nfprime 1 1 0\n");
        // non-reduced, two blocks, nontrivial f'
        duality("vars x y\nform x ^2\nform y\nfactor 1 1\nfactor 1 0\nfprime 1 0\n");
        criterion(7, "operator identities (cascade, 200 random constant terms, traces, duality)",
                  cascade && rct_ok && trace_ok && duality_ok);
    }

    // 8. symmetry suite
    {
        bool ok = true;
        for (const std::string& text : corpus) {
            auto parsed = parse_arrangement(text);
            // total factorization into linear forms: always unmixed with f' = 1
            FactorizationSpec total;
            total.fprime.assign(parsed.arrangement.mult.size(), 0);
            for (size_t t = 0; t < parsed.arrangement.mult.size(); ++t)
                for (int c = 0; c < parsed.arrangement.mult[t]; ++c) {
                    std::vector<int> row(parsed.arrangement.mult.size(), 0);
                    row[t] = 1;
                    total.blocks.push_back(row);
                }
            BsContext ctx(parsed.arrangement, total);
            UnmixedReport rep = unmixed_analysis(ctx.ess(), ctx.spec());
            if (!rep.pair_unmixed()) {
                ok = false;
                continue;
            }
            PhiMap phi = symmetry_involution(rep);
            // involution and per-edge lemma across all indecomposable edges
            SLinearFactorSet probe;
            for (const EdgeRecord& e : ctx.edges()) {
                if (!e.indecomposable) continue;
                SLinear px = edge_linear_polynomial(e);
                probe.insert(px);
                std::vector<Rational> coeffs;
                for (int d : e.d_x_k) coeffs.push_back(Rational(d));
                SLinear target(coeffs,
                               Rational(e.rank + e.d_x_prime + e.d_x_red + e.d_x - 2 * e.rank - e.d_x_prime));
                ok = ok && phi.apply(px) == target;
            }
            ok = ok && phi.apply(phi.apply(probe)) == probe;
            // member-set involution and phi-fixed exact sets, where produced
            bool free_known = ctx.rank() <= 2 || ctx.certificate().status == FreenessStatus::Free;
            if (free_known) {
                SLinearFactorSet member = member_product(ctx);
                ok = ok && phi.apply(phi.apply(member)) == member;
                ExactResult res = exact_variety_product(ctx);
                if (res.applicable) ok = ok && phi.apply(res.factors) == res.factors;
            }
        }
        criterion(8, "phi involution, per-edge symmetry lemma, phi-fixed exact sets", ok);
    }

    // 9. sandwich: upper subset of exact = member on free unmixed inputs with deg f' <= 4
    {
        bool ok = true;
        int applied = 0;
        std::vector<std::string> sandwich_corpus = corpus;
        // unmixed block factorizations of the non-reduced running example
        sandwich_corpus.push_back(
            "vars x y\nform x\nform y ^2\nform x + y ^2\nfactor 1 0 0\nfactor 0 2 2\n");
        sandwich_corpus.push_back(
            "vars x y\nform x\nform y ^2\nform x + y ^2\nfactor 1 0 0\nfactor 0 2 2\nfprime 1 0 0\n");
        sandwich_corpus.push_back("vars x y\nform x ^2\nform y ^2\nfactor 1 1\nfactor 1 1\nfprime 1 1\n");
        for (const std::string& text : sandwich_corpus) {
            auto parsed = parse_arrangement(text);
            BsContext ctx(parsed.arrangement, parsed.spec);
            UnmixedReport rep = unmixed_analysis(ctx.ess(), ctx.spec());
            bool free_known = ctx.rank() <= 2 || ctx.certificate().status == FreenessStatus::Free;
            if (!free_known || !rep.pair_unmixed() || ctx.spec().fprime_degree() > 4) continue;
            ++applied;
            ExactResult ex = exact_variety_product(ctx);
            SLinearFactorSet member = member_product(ctx);
            ok = ok && ex.applicable && ex.factors == member && upper_bound_product(ctx).subset_of(member);
        }
        criterion(9, "sandwich upper <= exact = member on " + std::to_string(applied) + " corpus members",
                  ok && applied > 0);
    }

    // 10. freeing bounds
    {
        auto g = parse_arrangement("vars x y z w\nform x\nform y\nform z\nform w\nform x + y + z\nform y - z + w\n");
        FreeingResult per = freeing_lower_bound(g.arrangement, Rational(-5, 3), FreeingMode::PerEdge);
        auto synth = parse_arrangement(
            "vars a b c d e\n"
            "form a\nform b\nform c\nform d\nform e\nform a + b + c + d + e\nform a + 2*b + 3*c + 4*d\n");
        FreeingResult cop = freeing_lower_bound(synth.arrangement, Rational(-11, 7), FreeingMode::Coprime);
        criterion(10, "freeing bounds: per-edge 2 for the six-plane rank-4 input, coprime n - v = 2",
                  per.feasible && per.bound == 2 && cop.feasible && cop.v == 3 && cop.bound == 2);
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
