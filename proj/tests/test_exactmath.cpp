#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "arrbs/poly.hpp"
#include "arrbs/qmatrix.hpp"
#include "arrbs/ratfun.hpp"

using namespace arrbs;

namespace {

bool mat_eq(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

QMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
    QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (int v : row) m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

Poly P(int nvars, std::initializer_list<std::pair<std::vector<uint32_t>, int>> terms) {
    Poly p(nvars);
    for (const auto& [e, c] : terms) p.add_term(ExpVec(e.begin(), e.end()), Rational(c));
    return p;
}

std::mt19937 rng(20240817);

Poly random_poly(int nvars, int maxdeg, int maxterms) {
    std::uniform_int_distribution<int> nterms(1, maxterms), coeff(-4, 4), deg(0, maxdeg);
    Poly p(nvars);
    for (int t = 0; t < nterms(rng); ++t) {
        ExpVec e(static_cast<size_t>(nvars));
        for (int i = 0; i < nvars; ++i) e[static_cast<size_t>(i)] = static_cast<uint32_t>(deg(rng));
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("rational arithmetic and parsing") {
    Rational a(3, 6);
    CHECK(a.numerator() == 1);
    CHECK(a.denominator() == 2);
    CHECK((a + Rational(1, 2)).is_one());
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational::parse("-7/3") == Rational(-7, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK(gcd_rat(Rational(4, 3), Rational(2, 9)) == Rational(2, 9));
}

TEST_CASE("rref identity and dependent rows") {
    auto r1 = rref(mat({{1, 0}, {0, 1}}));
    CHECK(r1.rank == 2);
    CHECK(mat_eq(r1.rref, mat({{1, 0}, {0, 1}})));

    auto r2 = rref(mat({{1, 1}, {2, 2}}));
    CHECK(r2.rank == 1);
    CHECK(mat_eq(r2.rref, mat({{1, 1}, {0, 0}})));
}

TEST_CASE("rref rank of a singular 3x3") {
    // hand row reduction of [[1,2,3],[4,5,6],[7,8,9]] leaves two pivots
    auto r = rref(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
    CHECK(r.rank == 2);
}

TEST_CASE("rref is idempotent") {
    auto r = rref(mat({{2, 4, 1}, {1, 2, 0}, {3, 6, 2}}));
    auto rr = rref(r.rref);
    CHECK(mat_eq(rr.rref, r.rref));
    CHECK(rr.rank == r.rank);
}

TEST_CASE("nullspace basics") {
    CHECK(nullspace(mat({{1, 0}, {0, 1}})).empty());

    auto b = nullspace(mat({{1, 1}}));
    REQUIRE(b.size() == 1);
    CHECK(b[0](0) == Rational(-1));
    CHECK(b[0](1) == Rational(1));

    QMatrix z = QMatrix::Constant(2, 3, Rational(0));
    CHECK(nullspace(z).size() == 3);
}

TEST_CASE("rank-nullity on random small matrices") {
    std::uniform_int_distribution<int> dim(1, 5), entry(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        QMatrix m(dim(rng), dim(rng));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Rational(entry(rng));
        auto r = rref(m);
        auto ns = nullspace(m);
        CHECK(r.rank + static_cast<Eigen::Index>(ns.size()) == m.cols());
        for (const auto& v : ns) {
            QVector image = m * v;
            for (Eigen::Index i = 0; i < image.size(); ++i) CHECK(image(i).is_zero());
        }
    }
}

TEST_CASE("polynomial exact division") {
    // (x^2 + x y) / x = x + y
    Poly p = P(2, {{{2, 0}, 1}, {{1, 1}, 1}});
    Poly q = P(2, {{{1, 0}, 1}});
    CHECK(poly_exact_divide(p, q) == P(2, {{{1, 0}, 1}, {{0, 1}, 1}}));

    // (x^2 + y^2) / (x + y) fails
    Poly p2 = P(2, {{{2, 0}, 1}, {{0, 2}, 1}});
    Poly q2 = P(2, {{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK_THROWS_AS(poly_exact_divide(p2, q2), NotDivisible);

    // (x + 2y)(3x - y) / (x + 2y) = 3x - y, expanded by hand
    Poly a = P(2, {{{1, 0}, 1}, {{0, 1}, 2}});
    Poly b = P(2, {{{1, 0}, 3}, {{0, 1}, -1}});
    CHECK(poly_exact_divide(a * b, a) == b);
}

TEST_CASE("exact division round-trips on random inputs") {
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = random_poly(3, 2, 4);
        Poly q = random_poly(3, 2, 3);
        if (q.is_zero()) continue;
        CHECK(poly_exact_divide(p * q, q) == p);
    }
}

TEST_CASE("fraction-free determinant") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    PolyMatrix d(2, 2);
    d << x, Poly::zero(2), Poly::zero(2), y;
    CHECK(det_fraction_free(d) == x * y);

    // coefficient matrix of {E, x(x+y) del_x} for xy(x+y)
    PolyMatrix m(2, 2);
    m << x, y, x * (x + y), Poly::zero(2);
    CHECK(det_fraction_free(m) == -(x * y * (x + y)));

    PolyMatrix s(2, 2);
    s << x, x, y, y;
    CHECK(det_fraction_free(s).is_zero());
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::function<Poly(const PolyMatrix&)> cofactor = [&](const PolyMatrix& m) -> Poly {
        if (m.rows() == 1) return m(0, 0);
        Poly acc;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            PolyMatrix minor(m.rows() - 1, m.cols() - 1);
            for (Eigen::Index i = 1; i < m.rows(); ++i) {
                Eigen::Index cj = 0;
                for (Eigen::Index k = 0; k < m.cols(); ++k) {
                    if (k == j) continue;
                    minor(i - 1, cj++) = m(i, k);
                }
            }
            Poly term = m(0, j) * cofactor(minor);
            if (j % 2 == 1) term = -term;
            acc += term;
        }
        return acc;
    };
    for (int size = 1; size <= 4; ++size) {
        PolyMatrix m(size, size);
        for (Eigen::Index i = 0; i < size; ++i)
            for (Eigen::Index j = 0; j < size; ++j) m(i, j) = random_poly(2, 2, 2);
        CHECK(det_fraction_free(m) == cofactor(m));
    }
}

TEST_CASE("poly ordering and serialization are canonical") {
    Poly p = P(2, {{{0, 1}, 1}, {{1, 0}, 1}, {{2, 0}, 3}});
    CHECK(p.str({"x", "y"}) == "3*x^2 + x + y");
    CHECK(p.leading_exponent() == ExpVec{2, 0});
    Poly q = P(2, {{{1, 1}, -2}});
    CHECK(q.str({"x", "y"}) == "-2*x*y");
}

TEST_CASE("ratfun keeps factored denominators reduced") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    RatFun f(x * x * y);
    f.mul_den(x, 1); // x^2 y / x -> x y
    CHECK(f.is_polynomial());
    CHECK(f.num() == x * y);

    RatFun g(Poly::constant(2, Rational(1)));
    g.mul_den(x + y, 2);
    g.mul_num(x + y);
    CHECK(g.den_factors().size() == 1);
    CHECK(g.den_factors()[0].second == 1);

    RatFun h = g + RatFun(Poly::constant(2, Rational(1)));
    // 1/(x+y) + 1 = (1 + x + y)/(x+y)
    CHECK(h.num() == Poly::constant(2, Rational(1)) + x + y);
    CHECK(h.den() == x + y);

    RatFun d = h.derivative(0);
    // d/dx (1/(x+y)) = -1/(x+y)^2
    CHECK(d.num() == Poly::constant(2, Rational(-1)));
    CHECK(d.den() == (x + y) * (x + y));
}
