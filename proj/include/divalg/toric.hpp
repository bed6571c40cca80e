#pragma once

#include "divalg/arith.hpp"
#include "divalg/counting.hpp"
#include "divalg/graded.hpp"
#include "divalg/lattice.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace divalg {

// Complete simplicial fan: every maximal cone has exactly dim linearly independent rays.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVector> rays;
    std::vector<std::vector<std::size_t>> max_cones;
};

class ToricVariety {
public:
    // Validates primitivity, distinctness, simpliciality and completeness (NotComplete).
    explicit ToricVariety(Fan fan);

    const Fan& fan() const { return fan_; }
    std::size_t dim() const { return fan_.dim; }
    std::size_t num_rays() const { return fan_.rays.size(); }
    const IntVector& ray(std::size_t i) const { return fan_.rays.at(i); }
    bool smooth() const { return smooth_; }

private:
    Fan fan_;
    bool smooth_ = false;
};

// Torus-invariant divisor sum a_i D_i over the rays of a fixed variety.
class CartierDivisor {
public:
    CartierDivisor() = default;
    // Checks that every maximal cone carries an integral linear functional m with <m, v_i> = -a_i (NotCartier).
    CartierDivisor(const ToricVariety& x, IntVector coeffs);

    const IntVector& coeffs() const { return coeffs_; }
    const Integer& operator[](std::size_t i) const { return coeffs_.at(i); }
    std::size_t size() const { return coeffs_.size(); }
    bool is_zero() const;
    bool is_effective() const;
    // Indices with a nonzero coefficient.
    std::set<std::size_t> support() const;

    friend CartierDivisor operator+(const CartierDivisor& a, const CartierDivisor& b);
    friend CartierDivisor operator-(const CartierDivisor& a, const CartierDivisor& b);
    friend CartierDivisor operator*(const Integer& k, const CartierDivisor& d);
    friend bool operator==(const CartierDivisor& a, const CartierDivisor& b) { return a.coeffs_ == b.coeffs_; }

    static CartierDivisor prime(const ToricVariety& x, std::size_t ray);
    static CartierDivisor zero(const ToricVariety& x);
    // No Cartier check; used for Fix and Mov, which may only be Weil on singular fans.
    static CartierDivisor weil(IntVector coeffs) { return CartierDivisor(std::move(coeffs)); }

private:
    explicit CartierDivisor(IntVector coeffs) : coeffs_(std::move(coeffs)) {}
    IntVector coeffs_;
};

// P_D = {u : <u, v_i> >= -a_i}.
RationalPolyhedron section_polytope(const ToricVariety& x, const CartierDivisor& d);
// Member m of the family P_{D + mL}; m may be negative.
RationalPolyhedron section_polytope(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int m);

std::vector<IntVector> sections(const ToricVariety& x, const CartierDivisor& d);
std::size_t h0(const ToricVariety& x, const CartierDivisor& d);

// Linearly equivalent divisor D + div(chi^u); its polytope is P_D - u.
CartierDivisor translate(const ToricVariety& x, const CartierDivisor& d, const IntVector& u);

// Graded pieces are lattice points; products and actions add them.
GradedAlgebra divisorial_algebra(const ToricVariety& x, const CartierDivisor& l);
GradedModule divisorial_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p);

// Cone over {1} x P_L in Z x M.
Cone algebra_cone(const ToricVariety& x, const CartierDivisor& l);

FGCertificate exact_fg_algebra(const ToricVariety& x, const CartierDivisor& l);
FGCertificate exact_fg_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p);

// Q is a polyhedron in Z x M with Q + C contained in Q. The points of Q form a finitely
// generated module over the semigroup of C iff rec(Q) lies in C; generators are the
// points x with x - h outside Q for every Hilbert basis element h. Degrees are first coordinates.
struct PolyhedralModuleResult {
    bool finitely_generated = false;
    std::vector<IntVector> generators; // sorted by (degree, lex)
    IntVector recession_direction;     // a ray of rec(Q) outside C when not finitely generated
    Integer degree_bound = 0;
};
PolyhedralModuleResult polyhedral_module_generators(const RationalPolyhedron& q, const Cone& c);

struct FixMov {
    CartierDivisor fix;
    CartierDivisor mov;
};
FixMov fix_mov(const ToricVariety& x, const CartierDivisor& d);

// Linear functional m_sigma with <m_sigma, v_i> = -a_i on the rays of each maximal cone.
std::vector<RatVector> local_functionals(const ToricVariety& x, const CartierDivisor& d);
bool is_base_point_free(const ToricVariety& x, const CartierDivisor& d);
bool is_ample(const ToricVariety& x, const CartierDivisor& d);

struct FixStabilityRow {
    int m = 0;
    CartierDivisor fix;
    CartierDivisor mov;
    bool fix_matches = false; // Fix(mJL) = m Fix(JL)
    bool mov_matches = false; // Mov(mJL) = m Mov(JL)
};

struct FixStabilityReport {
    CartierDivisor e; // Fix(JL)
    CartierDivisor f; // Mov(JL)
    bool f_base_point_free = false;
    std::vector<FixStabilityRow> rows;
    std::optional<int> first_failure;
    bool holds = false;
};
FixStabilityReport fix_stability_check(const ToricVariety& x, const CartierDivisor& l, int j, int m_max);

struct SuppFixRow {
    int m = 0;
    bool has_sections = false;
    std::set<std::size_t> support;
    bool equals_supp_e = false;
};

struct SuppFixReport {
    CartierDivisor e;
    CartierDivisor f;
    std::set<std::size_t> supp_e;
    std::vector<SuppFixRow> rows;
    // Least m from which every row through the end of the range has Supp Fix = Supp E.
    std::optional<int> m0;
};
SuppFixReport supp_fix_with_ample(const ToricVariety& x, const CartierDivisor& l, int j, int r,
                                  const CartierDivisor& g, int m_lo, int m_hi);

// M^p_{D-C}(L): sections of D - C + mL in degrees m >= p, a submodule of M^p_D(L) for effective C.
GradedModule restriction_kernel(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& c, int p,
                                const CartierDivisor& d);
GradedModule restriction_kernel(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& c, int p);
GradedModule restriction_image(const GradedModule& m, const GradedModule& k);
// R(L)|_S as the quotient of R(L) by sections vanishing on S.
GradedAlgebra restricted_algebra(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& s);

DimensionTable h0_table(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int lo, int hi);

// Reference varieties used by tests, configs and the acceptance suite.
namespace varieties {
ToricVariety projective_space(std::size_t n);
ToricVariety p1xp1();
// Rays (1,0), (1,1), (0,1), (-1,-1); ray 1 is the exceptional curve.
ToricVariety blowup_p2();
// Rays (1,0), (0,1), (-1,-a), (0,-1).
ToricVariety hirzebruch(long long a);
} // namespace varieties

} // namespace divalg
