#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "arrbs/lattice.hpp"

using namespace arrbs;

namespace {

ParsedInput parse(const std::string& s) { return parse_arrangement(s); }

int count_rank(const std::vector<Flat>& flats, int rank) {
    return static_cast<int>(std::count_if(flats.begin(), flats.end(), [&](const Flat& f) { return f.rank == rank; }));
}

} // namespace

TEST_CASE("boolean lattice in the plane") {
    auto in = parse("vars x y\nform x\nform y\n");
    auto flats = build_lattice(in.arrangement);
    REQUIRE(flats.size() == 4);
    CHECK(count_rank(flats, 0) == 1);
    CHECK(count_rank(flats, 1) == 2);
    CHECK(count_rank(flats, 2) == 1);
    // the origin sees both forms and splits the variables
    const Flat& origin = flats.back();
    CHECK(origin.rank == 2);
    CHECK(origin.jset == std::vector<int>{0, 1});
    CHECK(!is_indecomposable(in.arrangement, origin));
}

TEST_CASE("three concurrent lines") {
    auto in = parse("vars x y\nform x\nform y\nform x + y\n");
    auto flats = build_lattice(in.arrangement);
    CHECK(count_rank(flats, 1) == 3);
    CHECK(count_rank(flats, 2) == 1);
    const Flat& origin = flats.back();
    CHECK(origin.jset.size() == 3);
    CHECK(is_indecomposable(in.arrangement, origin));
}

TEST_CASE("boolean three-space") {
    auto in = parse("vars x y z\nform x\nform y\nform z\n");
    auto flats = build_lattice(in.arrangement);
    CHECK(count_rank(flats, 1) == 3);
    CHECK(count_rank(flats, 2) == 3);
    CHECK(count_rank(flats, 3) == 1);
    CHECK(flats.size() == 8);
}

TEST_CASE("flat keys are unique and J is monotone") {
    auto in = parse("vars x y z\nform x\nform y\nform z\nform x + y + z\n");
    auto flats = build_lattice(in.arrangement);
    for (size_t i = 0; i < flats.size(); ++i)
        for (size_t j = i + 1; j < flats.size(); ++j) CHECK(flats[i].key != flats[j].key);
    // covers imply J-containment
    for (const Flat& x : flats)
        for (int cid : x.covers) {
            const Flat& y = flats[static_cast<size_t>(cid)];
            CHECK(std::includes(y.jset.begin(), y.jset.end(), x.jset.begin(), x.jset.end()));
        }
}

TEST_CASE("edge records of the running example") {
    auto in = parse(
        "vars x y\n"
        "form x\n"
        "form y ^2\n"
        "form x + y ^2\n"
        "factor 1 1 0\n"
        "factor 0 1 1\n"
        "factor 0 0 1\n");
    auto flats = build_lattice(in.arrangement);
    auto edges = edge_records(in.arrangement, flats, in.spec);
    REQUIRE(edges.size() == 4); // 3 lines + origin

    // X = V(y): d = 2, d_red = 1, block degrees (1, 1, 0)
    bool found_vy = false, found_origin = false;
    for (const EdgeRecord& e : edges) {
        if (e.rank == 2) {
            found_origin = true;
            CHECK(e.d_x == 5);
            CHECK(e.d_x_red == 3);
            CHECK(e.d_x_k == std::vector<int>{2, 2, 1});
            CHECK(e.indecomposable);
        }
        if (e.rank == 1 && e.d_x == 2 && e.d_x_k == std::vector<int>{1, 1, 0}) {
            found_vy = true;
            CHECK(e.d_x_red == 1);
            CHECK(e.indecomposable);
        }
    }
    CHECK(found_vy);
    CHECK(found_origin);
}

TEST_CASE("fprime localizes to edges") {
    auto in = parse("vars x y\nform x\nform y\nform x + y\nfprime 1 0 0\n");
    auto flats = build_lattice(in.arrangement);
    auto edges = edge_records(in.arrangement, flats, in.spec);
    for (const EdgeRecord& e : edges) {
        const Flat& flat = flats[static_cast<size_t>(e.flat_id)];
        bool contains_x = std::find(flat.jset.begin(), flat.jset.end(), 0) != flat.jset.end();
        CHECK(e.d_x_prime == (contains_x ? 1 : 0));
        CHECK(e.d_x_prime + e.d_x_second == e.d_x);
    }
}

TEST_CASE("characteristic polynomials") {
    auto boolean2 = parse("vars x y\nform x\nform y\n");
    Poly chi = characteristic_polynomial(boolean2.arrangement, build_lattice(boolean2.arrangement));
    Poly t = Poly::variable(1, 0);
    CHECK(chi == (t - Poly::constant(1, Rational(1))) * (t - Poly::constant(1, Rational(1))));

    auto lines3 = parse("vars x y\nform x\nform y\nform x + y\n");
    chi = characteristic_polynomial(lines3.arrangement, build_lattice(lines3.arrangement));
    CHECK(chi == (t - Poly::constant(1, Rational(1))) * (t - Poly::constant(1, Rational(2))));

    // braid essentialized has the same lattice as three generic lines
    auto braid = parse("vars x y z\nform x - y\nform x - z\nform y - z\n");
    Arrangement ess = essentialize(braid.arrangement).arrangement;
    chi = characteristic_polynomial(ess, build_lattice(ess));
    CHECK(chi == (t - Poly::constant(1, Rational(1))) * (t - Poly::constant(1, Rational(2))));
}

TEST_CASE("chamber count sanity via |chi(-1)|") {
    // 3 concurrent lines cut the real plane into 6 chambers
    auto in = parse("vars x y\nform x\nform y\nform x + y\n");
    Poly chi = characteristic_polynomial(in.arrangement, build_lattice(in.arrangement));
    Poly at = chi.substitute(0, Poly::constant(1, Rational(-1)));
    CHECK(at.constant_term().abs() == Rational(6));
}

TEST_CASE("multiplicity does not change the lattice") {
    auto plain = parse("vars x y\nform x\nform y\nform x + y\n");
    auto fat = parse("vars x y\nform x\nform y ^2\nform x + y ^3\n");
    CHECK(build_lattice(plain.arrangement).size() == build_lattice(fat.arrangement).size());
}

TEST_CASE("rank-one flats of a repeated form are indecomposable") {
    auto in = parse("vars x y\nform y ^2\nform x\n");
    auto flats = build_lattice(in.arrangement);
    for (const Flat& f : flats)
        if (f.rank == 1) CHECK(is_indecomposable(in.arrangement, f));
}
