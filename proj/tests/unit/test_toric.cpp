#include "helpers.hpp"

#include "divalg/counting.hpp"
#include "divalg/errors.hpp"

#include <doctest.h>

using namespace divalg;
using namespace testing;

namespace {

CartierDivisor div_of(const ToricVariety& x, std::initializer_list<long long> c)
{
    return CartierDivisor(x, iv(c));
}

// Independent h0 oracle for P^2: the polytope of aD0 + bD1 + cD2 is a simplex of size a+b+c.
long long h0_p2(long long deg)
{
    return deg < 0 ? 0 : binom(deg + 2, 2);
}

} // namespace

TEST_CASE("fan validation")
{
    CHECK(varieties::projective_space(2).smooth());
    CHECK(varieties::hirzebruch(2).smooth());
    Fan overlap{2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1})}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}}};
    CHECK_THROWS_AS(ToricVariety{overlap}, Error);
    Fan gap{2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}}};
    CHECK_THROWS_AS(ToricVariety{gap}, Error);
}

TEST_CASE("Cartier check on a singular fan")
{
    // Weighted plane P(1,1,2): rays (1,0), (0,1), (-1,-2). The cone {2,0} has index 2.
    ToricVariety x(Fan{2, {iv({1, 0}), iv({0, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {2, 0}}});
    CHECK_FALSE(x.smooth());
    CHECK_NOTHROW(div_of(x, {0, 1, 0}));
    CHECK_THROWS_AS(div_of(x, {0, 0, 1}), Error);
    CHECK_THROWS_AS(div_of(x, {1, 0, 0}), Error);
    CHECK_NOTHROW(div_of(x, {0, 0, 2}));
    CHECK_NOTHROW(div_of(x, {1, 0, 1}));
}

TEST_CASE("h0 on projective spaces matches binomials")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        auto x = varieties::projective_space(n);
        auto h = CartierDivisor::prime(x, 0);
        for (long long m = 0; m <= 20; ++m)
            CHECK(static_cast<long long>(h0(x, Integer(m) * h)) == binom(m + static_cast<long long>(n), n));
    }
    auto p1 = varieties::projective_space(1);
    CHECK(h0(p1, CartierDivisor::prime(p1, 0)) == 2);
    auto p2 = varieties::projective_space(2);
    CHECK(h0(p2, div_of(p2, {0, 0, 0})) == 1);
    CHECK(h0(p2, div_of(p2, {1, 2, 1})) == 15);
    CHECK(h0(p2, div_of(p2, {-1, 0, 0})) == 0);
    // Linear equivalence: the class is all that matters on P^2.
    for (long long a = -2; a <= 3; ++a)
        for (long long b = -2; b <= 3; ++b)
            CHECK(static_cast<long long>(h0(p2, div_of(p2, {a, b, 1}))) == h0_p2(a + b + 1));
}

TEST_CASE("translation preserves h0")
{
    auto x = varieties::blowup_p2();
    auto d = div_of(x, {1, 0, 2, 1});
    auto t = translate(x, d, iv({1, -2}));
    CHECK(h0(x, t) == h0(x, d));
}

TEST_CASE("divisorial algebras and modules on P^1")
{
    auto p1 = varieties::projective_space(1);
    auto d0 = CartierDivisor::prime(p1, 0);
    GradedAlgebra r = divisorial_algebra(p1, d0);
    CHECK(dims_of(r, 0, 4) == std::vector<std::size_t>{1, 2, 3, 4, 5});
    // Slice m holds u in [-m, 0]; labels multiply by addition.
    const auto& s1 = r.slice(1);
    const auto& s2 = r.slice(2);
    auto i = s1.index_of(iv({-1}));
    auto j = s2.index_of(iv({-2}));
    REQUIRE(i);
    REQUIRE(j);
    auto prod = r.product(1, SparseVector::unit(*i), 2, SparseVector::unit(*j));
    REQUIRE(prod.is_unit());
    CHECK(r.slice(3).label(prod.leading_index()) == iv({-3}));

    auto zero = divisorial_algebra(p1, CartierDivisor::zero(p1));
    CHECK(dims_of(zero, 0, 5) == std::vector<std::size_t>(6, 1));

    GradedModule m = divisorial_module(p1, Integer(2) * d0, d0, 0);
    CHECK(dims_of(m, 0, 3) == std::vector<std::size_t>{3, 4, 5, 6});
    GradedModule m2 = divisorial_module(p1, Integer(2) * d0, d0, 2);
    CHECK(dims_of(m2, 0, 3) == std::vector<std::size_t>{0, 0, 5, 6});
    GradedModule self = divisorial_module(p1, CartierDivisor::zero(p1), d0, 0);
    CHECK(dims_of(self, 0, 6) == dims_of(r, 0, 6));
}

TEST_CASE("Hilbert functions are superadditive for effective divisors")
{
    auto x = varieties::hirzebruch(1);
    for (const auto& l : {div_of(x, {1, 0, 0, 1}), div_of(x, {0, 1, 0, 1}), div_of(x, {0, 0, 1, 1})}) {
        auto t = h0_table(x, CartierDivisor::zero(x), l, 0, 10);
        CHECK(t.at(0) == 1);
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5; ++b)
                CHECK(t.at(a + b) >= t.at(a) + t.at(b) - 1);
    }
}

TEST_CASE("exact finite generation of algebras")
{
    auto p1 = varieties::projective_space(1);
    auto c1 = exact_fg_algebra(p1, CartierDivisor::prime(p1, 0));
    CHECK(c1.kind == CertificateKind::Exact);
    CHECK(c1.generators.degrees() == std::vector<int>{1, 1});

    auto p2 = varieties::projective_space(2);
    auto c2 = exact_fg_algebra(p2, CartierDivisor::prime(p2, 0));
    CHECK(c2.generators.degrees() == std::vector<int>{1, 1, 1});
    CHECK(c2.stabilization_degree == 1);
    CHECK_FALSE(c2.probe_bound.has_value());

    // F_2 with L = D2 + D3: polytope conv{(0,0),(1,0),(0,1/2)}.
    auto f2 = varieties::hirzebruch(2);
    auto l = div_of(f2, {0, 0, 1, 1});
    CHECK(lattice_points(section_polytope(f2, l)).size() == 2);
    auto c3 = exact_fg_algebra(f2, l);
    CHECK(sorted(c3.generators.degrees()) == std::vector<int>{1, 1, 2});
    CHECK(c3.stabilization_degree == 2);
    auto search = find_algebra_generators(divisorial_algebra(f2, l), 10);
    CHECK(sorted(search.generators.degrees()) == std::vector<int>{1, 1, 2});

    auto z = exact_fg_algebra(p2, CartierDivisor::zero(p2));
    CHECK(z.generators.degrees() == std::vector<int>{1});
}

TEST_CASE("exact finite generation of modules")
{
    auto p1 = varieties::projective_space(1);
    auto d0 = CartierDivisor::prime(p1, 0);
    auto self = exact_fg_module(p1, CartierDivisor::zero(p1), d0, 0);
    CHECK(self.generators.degrees() == std::vector<int>{0});
    auto two = exact_fg_module(p1, Integer(2) * d0, d0, 0);
    CHECK(two.generators.degrees() == std::vector<int>{0, 0, 0});

    auto p2 = varieties::projective_space(2);
    auto h = CartierDivisor::prime(p2, 0);
    auto ideal = exact_fg_module(p2, CartierDivisor::zero(p2) - h, h, 0);
    CHECK(ideal.generators.degrees() == std::vector<int>{1});

    // Over R(-D0) = k the module is finite dimensional and every basis element is needed:
    // degrees -3..0 carry 4, 3, 2, 1 sections.
    auto finite = exact_fg_module(p1, CartierDivisor::zero(p1), CartierDivisor::zero(p1) - d0, -3);
    CHECK(finite.kind == CertificateKind::Exact);
    CHECK(finite.generators.size() == 10);

    // Exact and bounded search agree across a grid of small cases on the blow-up.
    auto x = varieties::blowup_p2();
    auto l = div_of(x, {1, 0, 0, 1});
    for (const auto& d : {div_of(x, {0, 0, 0, 0}), div_of(x, {1, 1, 1, 1}), div_of(x, {0, 1, 0, 0})})
        for (int p : {0, 1}) {
            auto exact = exact_fg_module(x, d, l, p);
            auto search = find_module_generators(divisorial_module(x, d, l, p), p + 8);
            CHECK(sorted(exact.generators.degrees()) == sorted(search.generators.degrees()));
        }
}

TEST_CASE("Fix and Mov")
{
    auto x = varieties::blowup_p2();
    for (long long m = 1; m <= 30; ++m) {
        auto fm = fix_mov(x, div_of(x, {0, m, 0, 0}));
        CHECK(fm.fix.coeffs() == iv({0, m, 0, 0}));
        CHECK(fm.mov.is_zero());
    }
    // 2H - E with H = D3: 2 D3 - D1 is linearly equivalent to D0 + D3.
    auto d = div_of(x, {1, 0, 0, 1});
    CHECK(fix_mov(x, d).fix.is_zero());
    CHECK(is_base_point_free(x, d));
    auto g = div_of(x, {1, 1, 1, 1});
    CHECK(is_ample(x, g));
    CHECK_FALSE(is_ample(x, div_of(x, {0, 1, 0, 0})));
    auto p2 = varieties::projective_space(2);
    CHECK(fix_mov(p2, div_of(p2, {2, 0, 0})).fix.is_zero());
    CHECK_THROWS_AS(fix_mov(p2, div_of(p2, {-1, 0, 0})), Error);
    // Sections of D and of Mov D agree on a grid of divisors.
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; b <= 3; ++b)
            for (long long c = 0; c <= 2; ++c) {
                auto dd = div_of(x, {a, b, c, 0});
                if (h0(x, dd) == 0)
                    continue;
                CHECK(h0(x, fix_mov(x, dd).mov) == h0(x, dd));
            }
}

TEST_CASE("Fix stability and Supp Fix")
{
    auto x = varieties::blowup_p2();
    auto e = div_of(x, {0, 1, 0, 0});
    auto bpf = div_of(x, {1, 1, 1, 1});
    auto r1 = fix_stability_check(x, bpf, 1, 10);
    CHECK(r1.e.is_zero());
    CHECK(r1.holds);
    auto r2 = fix_stability_check(x, e, 1, 10);
    CHECK(r2.e.coeffs() == e.coeffs());
    CHECK(r2.f.is_zero());
    CHECK(r2.holds);
    CHECK_THROWS_AS(fix_stability_check(x, div_of(x, {0, -1, 0, 0}), 1, 5), Error);

    auto s = supp_fix_with_ample(x, e, 1, 0, bpf, 1, 20);
    REQUIRE(s.m0);
    CHECK(s.supp_e == std::set<std::size_t>{1});
    for (const auto& row : s.rows)
        if (row.m >= *s.m0)
            CHECK(row.support == std::set<std::size_t>{1});
    auto doubled = supp_fix_with_ample(x, e, 1, 0, bpf, 1, 40);
    CHECK(doubled.m0 == s.m0);
    auto shifted = supp_fix_with_ample(x, e, 1, 3, bpf, 1, 20);
    CHECK(shifted.m0 == s.m0);
    auto none = supp_fix_with_ample(x, bpf, 1, 0, bpf, 1, 10);
    for (const auto& row : none.rows)
        CHECK(row.support.empty());
    CHECK_THROWS_AS(supp_fix_with_ample(x, e, 1, 0, e, 1, 5), Error);
}

TEST_CASE("restriction sequences")
{
    auto p2 = varieties::projective_space(2);
    auto h = CartierDivisor::prime(p2, 0);
    GradedModule m = divisorial_module(p2, CartierDivisor::zero(p2), h, 0);
    GradedModule k0 = restriction_kernel(p2, h, CartierDivisor::zero(p2), 0);
    for (int d = 0; d <= 8; ++d)
        CHECK(k0.dimension(d) == m.dimension(d));
    GradedModule k = restriction_kernel(p2, h, h, 0);
    for (int d = 0; d <= 10; ++d)
        CHECK(static_cast<long long>(k.dimension(d)) == static_cast<long long>(d) * (d + 1) / 2);
    auto kg = find_module_generators(k, 8);
    CHECK(kg.generators.degrees() == std::vector<int>{1});
    GradedModule im = restriction_image(m, k);
    for (int d = 0; d <= 10; ++d)
        CHECK(static_cast<int>(im.dimension(d)) == d + 1);
    GradedModule all = restriction_image(m, m);
    for (int d = 0; d <= 5; ++d)
        CHECK(all.dimension(d) == 0);
    GradedModule none = restriction_image(m, divisorial_module(p2, CartierDivisor::zero(p2) - Integer(100) * h, h, 0));
    for (int d = 0; d <= 5; ++d)
        CHECK(none.dimension(d) == m.dimension(d));
    GradedAlgebra t = restricted_algebra(p2, h, h);
    CHECK(find_algebra_generators(t, 8).generators.degrees() == std::vector<int>{1, 1});
}
