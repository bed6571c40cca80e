#include "helpers.hpp"

#include "divalg/errors.hpp"
#include "divalg/linalg.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace divalg;
using namespace testing;

namespace {

// Independent scan with machine integers; constraints are a.x >= -b.
std::vector<IntVector> scan_box(const std::vector<std::pair<std::vector<long long>, long long>>& cons, int dim,
                                int lo, int hi)
{
    std::vector<IntVector> out;
    std::vector<long long> x(static_cast<std::size_t>(dim), lo);
    while (true) {
        bool ok = true;
        for (const auto& [a, b] : cons) {
            long long s = 0;
            for (int k = 0; k < dim; ++k)
                s += a[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
            ok &= s >= -b;
        }
        if (ok)
            out.push_back(make_int_vector(x));
        int k = dim - 1;
        while (k >= 0 && x[static_cast<std::size_t>(k)] == hi)
            x[static_cast<std::size_t>(k--)] = lo;
        if (k < 0)
            break;
        ++x[static_cast<std::size_t>(k)];
    }
    std::sort(out.begin(), out.end());
    return out;
}

RationalPolyhedron simplex2(long long m)
{
    return RationalPolyhedron(2, {hs({1, 0}, 0), hs({0, 1}, 0), hs({-1, -1}, m)});
}

RationalPolyhedron unit_square()
{
    return RationalPolyhedron(2, {hs({1, 0}, 0), hs({0, 1}, 0), hs({-1, 0}, 1), hs({0, -1}, 1)});
}

// Irreducible elements of the lattice points of c with grading value <= bound,
// found by subtracting every smaller candidate.
std::vector<IntVector> brute_hilbert(const Cone& c, const std::vector<IntVector>& box_points)
{
    std::vector<IntVector> pts;
    for (const auto& x : box_points)
        if (!is_zero(x) && c.contains(x))
            pts.push_back(x);
    std::set<IntVector> in(pts.begin(), pts.end());
    std::vector<IntVector> out;
    for (const auto& x : pts) {
        bool reducible = false;
        for (const auto& y : pts)
            if (y != x && c.contains(sub(x, y)) && !is_zero(sub(x, y)))
                reducible = true;
        if (!reducible)
            out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVector> sorted_points(std::vector<IntVector> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("lattice points of small polytopes")
{
    CHECK(lattice_points(unit_square()).size() == 4);
    CHECK(lattice_points(dilate(unit_square(), 2)).size() == 9);
    CHECK(lattice_points(dilate(unit_square(), 3)).size() == 16);
    CHECK(lattice_points(simplex2(5)).size() == 21);
    auto oracle = scan_box({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 5}}, 2, -1, 6);
    CHECK(lattice_points(simplex2(5)) == oracle);
    for (long long m = 0; m <= 12; ++m)
        CHECK(static_cast<long long>(lattice_points(simplex2(m)).size()) == binom(m + 2, 2));
}

TEST_CASE("lattice points reject unbounded input")
{
    RationalPolyhedron half(2, {hs({1, 0}, 0)});
    CHECK_THROWS_AS(lattice_points(half), Error);
    RationalPolyhedron empty(1, {hs({1}, -2), hs({-1}, 1)});
    CHECK(empty.is_empty());
    CHECK(lattice_points(empty).empty());
}

TEST_CASE("projection tower agrees with the box scan on random polytopes")
{
    std::mt19937 rng(20261017);
    std::uniform_int_distribution<long long> coef(-3, 3), off(0, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 2 + trial % 2;
        std::vector<std::pair<std::vector<long long>, long long>> cons;
        std::vector<HalfSpace> hss;
        for (int k = 0; k < dim; ++k) {
            std::vector<long long> e(static_cast<std::size_t>(dim), 0), f(static_cast<std::size_t>(dim), 0);
            e[static_cast<std::size_t>(k)] = 1;
            f[static_cast<std::size_t>(k)] = -1;
            cons.push_back({e, 4});
            cons.push_back({f, 4});
        }
        for (int extra = 0; extra < 3; ++extra) {
            std::vector<long long> a(static_cast<std::size_t>(dim));
            for (auto& v : a)
                v = coef(rng);
            if (std::all_of(a.begin(), a.end(), [](long long v) { return v == 0; }))
                continue;
            cons.push_back({a, off(rng)});
        }
        for (const auto& [a, b] : cons)
            hss.push_back(HalfSpace::make(make_int_vector(a), Rational(b)));
        RationalPolyhedron p(static_cast<std::size_t>(dim), hss);
        auto oracle = scan_box(cons, dim, -4, 4);
        CHECK(lattice_points(p) == oracle);
        CHECK(lattice_points_box_scan(p) == oracle);
        CHECK(p.is_empty() == oracle.empty());
    }
}

TEST_CASE("rational vertices are handled exactly")
{
    // 0 <= x <= 3/2 after scaling by 2 holds the integers 0..3.
    RationalPolyhedron seg(1, {hs({1}, 0), HalfSpace::make(iv({-1}), Rational(3, 2))});
    CHECK(lattice_points(seg).size() == 2);
    auto twice = dilate(seg, 2);
    CHECK(lattice_points(twice).size() == 4);
    CHECK(lattice_points(dilate(seg, 0)) == std::vector<IntVector>{iv({0})});
    auto vs = vertices(twice);
    CHECK(vs.size() == 2);
}

TEST_CASE("recession cones")
{
    CHECK(recession_cone(unit_square()).is_zero());
    Cone half = recession_cone(RationalPolyhedron(1, {hs({1}, -1)}));
    CHECK(half.generators() == std::vector<IntVector>{iv({1})});

    RationalPolyhedron p(2, {hs({0, 1}, 0), hs({-1, 1}, 0)});
    Cone rec = recession_cone(p);
    // Oracle: extreme rays of {dy >= 0, dy >= dx}.
    CHECK(rec.generators() == sorted_points({iv({-1, 0}), iv({1, 1})}));
    // Every sampled integer direction satisfying the homogenized constraints lies in the cone.
    for (const auto& d : scan_box({{{0, 1}, 0}, {{-1, 1}, 0}}, 2, -5, 5))
        CHECK(rec.contains(d));
    for (const auto& d : scan_box({}, 2, -3, 3))
        if (!(d[1] >= 0 && d[1] >= d[0]))
            CHECK_FALSE(rec.contains(d));
}

TEST_CASE("Hilbert bases against a brute-force irreducibility scan")
{
    auto box2 = scan_box({}, 2, -1, 4);
    struct Case {
        Cone c;
        std::vector<IntVector> expect;
    };
    std::vector<Case> cases{
        {Cone(2, {iv({1, 0}), iv({0, 1})}), {iv({0, 1}), iv({1, 0})}},
        {Cone(2, {iv({1, 0}), iv({1, 2})}), {iv({1, 0}), iv({1, 1}), iv({1, 2})}},
        {Cone(2, {iv({1, 0}), iv({1, 3})}), {iv({1, 0}), iv({1, 1}), iv({1, 2}), iv({1, 3})}},
        {Cone(2, {iv({2, 3}), iv({1, 0})}), {}},
    };
    for (auto& cs : cases) {
        auto hb = hilbert_basis(cs.c);
        auto got = sorted_points(hb.elements);
        if (!cs.expect.empty())
            CHECK(got == cs.expect);
        CHECK(got == brute_hilbert(cs.c, box2));
    }
    // Cone over a lattice square and a dilated triangle at height one.
    auto box3 = scan_box({}, 3, -1, 3);
    Cone sq(3, {iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1}), iv({1, 1, 1})});
    CHECK(sorted_points(hilbert_basis(sq).elements) == brute_hilbert(sq, box3));
    CHECK(hilbert_basis(sq).elements.size() == 4);
    Cone tri(3, {iv({1, 0, 0}), iv({1, 2, 0}), iv({1, 0, 2})});
    CHECK(hilbert_basis(tri).elements.size() == 6);
    CHECK(sorted_points(hilbert_basis(tri).elements) == brute_hilbert(tri, box3));
    // Non-normal lattice triangle conv{(0,0),(1,0),(0,1/2)} homogenized.
    Cone half(3, {iv({1, 0, 0}), iv({1, 1, 0}), iv({2, 0, 1})});
    auto hb = hilbert_basis(half);
    CHECK(sorted_points(hb.elements) == sorted_points({iv({1, 0, 0}), iv({1, 1, 0}), iv({2, 0, 1})}));
    CHECK(hb.max_degree == 2);
}

TEST_CASE("cone containment")
{
    Cone pos(2, {iv({1, 0}), iv({0, 1})});
    Cone c(2, {iv({1, 0}), iv({1, 2})});
    CHECK(cone_contains(c, c));
    CHECK(cone_contains(pos, Cone(2, {iv({1, 1})})));
    CHECK_FALSE(cone_contains(c, Cone(2, {iv({0, 1})})));
    CHECK(cone_contains(pos, c));
    CHECK_FALSE(cone_contains(c, pos));
    // The facet normal (2,-1) separates (0,1) from c.
    CHECK(dot(iv({2, -1}), iv({0, 1})) < 0);
}

TEST_CASE("exact linear algebra")
{
    IntMatrix a{iv({1, 2, 3}), iv({2, 4, 6}), iv({1, 0, 1})};
    CHECK(divalg::rank(a, 3) == 2);
    auto ns = integer_nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    for (const auto& row : a)
        CHECK(dot(row, ns[0]) == 0);
    CHECK(determinant({iv({2, 1}), iv({1, 1})}) == 1);
    auto sol = solve_square({iv({2, 0}), iv({0, 3})}, {Rational(1), Rational(1)});
    REQUIRE(sol);
    CHECK((*sol)[1] == Rational(1, 3));
    CHECK(to_fraction_string(Rational(3)) == "3/1");
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
}
