#pragma once

#include "divalg/arith.hpp"

#include <cstddef>
#include <vector>

namespace divalg {

// <normal, x> >= -offset, with normal primitive and nonzero.
struct HalfSpace {
    IntVector normal;
    Rational offset;

    // Normalizes a nonzero integer normal to primitive form, rescaling the offset.
    static HalfSpace make(const IntVector& normal, const Rational& offset);

    bool satisfied_by(const IntVector& x) const;
    bool satisfied_by(const RatVector& x) const;
    bool tight_at(const RatVector& x) const;
};

class RationalPolyhedron {
public:
    RationalPolyhedron(std::size_t dim, std::vector<HalfSpace> constraints);

    std::size_t dim() const { return dim_; }
    const std::vector<HalfSpace>& constraints() const { return constraints_; }

    bool contains(const IntVector& x) const;
    bool contains(const RatVector& x) const;

    // Exact rational feasibility by Fourier-Motzkin elimination.
    bool is_empty() const;
    bool is_bounded() const;

    RationalPolyhedron with(const HalfSpace& extra) const;

private:
    std::size_t dim_;
    std::vector<HalfSpace> constraints_;
};

// Both descriptions of a polyhedral cone: {x : f.x >= 0 for f in facets, e.x = 0 for e in equations}.
struct ConeDual {
    std::vector<IntVector> facets;
    std::vector<IntVector> equations;
};

class Cone {
public:
    // Generators are made primitive, deduplicated and sorted; zero vectors are dropped.
    Cone(std::size_t dim, std::vector<IntVector> generators);

    // Ray form of {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}.
    static Cone from_constraints(std::size_t dim, const std::vector<IntVector>& inequalities,
                                 const std::vector<IntVector>& equations = {});

    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& generators() const { return generators_; }
    const ConeDual& dual() const { return dual_; }

    bool contains(const IntVector& x) const;
    bool is_pointed() const;
    bool is_zero() const { return generators_.empty(); }
    std::size_t span_rank() const;

    friend bool operator==(const Cone& a, const Cone& b) { return a.dim_ == b.dim_ && a.generators_ == b.generators_; }

private:
    std::size_t dim_;
    std::vector<IntVector> generators_;
    ConeDual dual_;
};

struct HilbertBasisResult {
    std::vector<IntVector> elements; // sorted by (degree, lex)
    IntVector grading;               // positive on the cone minus the apex
    bool graded_by_first_coordinate = false;
    Integer max_degree = 0;
    Integer degree_bound = 0;        // enumeration bound that was used

    Integer degree_of(const IntVector& x) const { return dot(grading, x); }
};

// Integer points of a bounded polyhedron, lexicographically sorted.
// Enumerates coordinate by coordinate along a Fourier-Motzkin projection tower.
std::vector<IntVector> lattice_points(const RationalPolyhedron& p);

// Reference path: bounding box from single-coordinate projections, then constraint filtering.
std::vector<IntVector> lattice_points_box_scan(const RationalPolyhedron& p);

RationalPolyhedron dilate(const RationalPolyhedron& p, const Rational& factor);

Cone recession_cone(const RationalPolyhedron& p);

HilbertBasisResult hilbert_basis(const Cone& c);

bool cone_contains(const Cone& outer, const Cone& inner);

// Vertices by brute-force choice of dim tight constraints. Desk-scale only.
std::vector<RatVector> vertices(const RationalPolyhedron& p);

} // namespace divalg
