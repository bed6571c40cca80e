#include "divalg/lattice.hpp"
#include "divalg/errors.hpp"
#include "divalg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace divalg {

namespace {

// a . x >= b
struct Inequality {
    RatVector a;
    Rational b;
};

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(idx);
        if (k == 0)
            return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Inequality> to_inequalities(const RationalPolyhedron& p)
{
    std::vector<Inequality> out;
    out.reserve(p.constraints().size());
    for (const auto& h : p.constraints())
        out.push_back({to_rational(h.normal), -h.offset});
    return out;
}

// Scales an inequality so its coefficient vector is a primitive integer vector.
Inequality normalized(const Inequality& in)
{
    IntVector a = clear_denominators(in.a);
    if (is_zero(a))
        return in;
    // a = in.a * s for a positive scalar s; find s from the first nonzero entry.
    std::size_t k = 0;
    while (in.a[k] == 0)
        ++k;
    Rational s = Rational(a[k]) / in.a[k];
    return {to_rational(a), in.b * s};
}

// Drops duplicates (keeping the tightest bound) and trivially satisfied rows.
// Returns false if some row reads 0 >= b with b > 0.
bool simplify(std::vector<Inequality>& rows)
{
    std::map<RatVector, Rational> tightest;
    for (const auto& r : rows) {
        Inequality n = normalized(r);
        bool zero = std::all_of(n.a.begin(), n.a.end(), [](const Rational& x) { return x == 0; });
        if (zero) {
            if (n.b > 0)
                return false;
            continue;
        }
        auto it = tightest.find(n.a);
        if (it == tightest.end() || it->second < n.b)
            tightest[n.a] = n.b;
    }
    rows.clear();
    for (auto& [a, b] : tightest)
        rows.push_back({a, b});
    return true;
}

// Eliminates variable k. Returns false when infeasibility is detected.
bool eliminate(std::vector<Inequality>& rows, std::size_t k)
{
    std::vector<Inequality> pos, neg, out;
    for (auto& r : rows) {
        if (r.a[k] > 0)
            pos.push_back(r);
        else if (r.a[k] < 0)
            neg.push_back(r);
        else
            out.push_back(r);
    }
    for (const auto& p : pos) {
        for (const auto& n : neg) {
            Rational wp = -n.a[k];
            Rational wn = p.a[k];
            Inequality c{RatVector(p.a.size()), wp * p.b + wn * n.b};
            for (std::size_t i = 0; i < p.a.size(); ++i)
                c.a[i] = wp * p.a[i] + wn * n.a[i];
            c.a[k] = 0;
            out.push_back(std::move(c));
        }
    }
    rows = std::move(out);
    return simplify(rows);
}

struct ProjectionTower {
    // levels[k] constrains only x_0 .. x_{k-1}; levels[dim] is the original system.
    std::vector<std::vector<Inequality>> levels;
    bool infeasible = false;
};

ProjectionTower build_tower(const RationalPolyhedron& p)
{
    const std::size_t n = p.dim();
    ProjectionTower t;
    t.levels.resize(n + 1);
    auto rows = to_inequalities(p);
    if (!simplify(rows)) {
        t.infeasible = true;
        return t;
    }
    t.levels[n] = rows;
    for (std::size_t k = n; k-- > 0;) {
        if (!eliminate(rows, k)) {
            t.infeasible = true;
            return t;
        }
        t.levels[k] = rows;
    }
    return t;
}

struct Interval {
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
};

// Bounds on x_k given fixed x_0..x_{k-1}; returns false if a k-free row is violated.
bool bounds_for(const std::vector<Inequality>& rows, std::size_t k, const IntVector& prefix, Interval& out)
{
    for (const auto& r : rows) {
        Rational rhs = r.b;
        for (std::size_t i = 0; i < k; ++i)
            if (r.a[i] != 0)
                rhs -= r.a[i] * prefix[i];
        const Rational& c = r.a[k];
        if (c == 0) {
            if (rhs > 0)
                return false;
            continue;
        }
        Rational bound = rhs / c;
        if (c > 0) {
            if (!out.has_lo || bound > out.lo)
                out.lo = bound;
            out.has_lo = true;
        } else {
            if (!out.has_hi || bound < out.hi)
                out.hi = bound;
            out.has_hi = true;
        }
    }
    return true;
}

void enumerate(const ProjectionTower& t, std::size_t k, IntVector& prefix, std::vector<IntVector>& out)
{
    const std::size_t n = t.levels.size() - 1;
    if (k == n) {
        out.push_back(prefix);
        return;
    }
    Interval iv;
    if (!bounds_for(t.levels[k + 1], k, prefix, iv))
        return;
    if (!iv.has_lo || !iv.has_hi)
        throw Error(ErrorCode::UnboundedPolyhedron, "coordinate " + std::to_string(k) + " is unbounded");
    Integer lo = ceil_of(iv.lo), hi = floor_of(iv.hi);
    for (Integer x = lo; x <= hi; ++x) {
        prefix[k] = x;
        enumerate(t, k + 1, prefix, out);
    }
}

} // namespace

HalfSpace HalfSpace::make(const IntVector& normal, const Rational& offset)
{
    Integer g = gcd_of(normal);
    if (g == 0)
        throw Error(ErrorCode::InvalidArgument, "half-space normal must be nonzero");
    IntVector n(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i)
        n[i] = normal[i] / g;
    return {std::move(n), offset / g};
}

bool HalfSpace::satisfied_by(const IntVector& x) const
{
    return Rational(dot(normal, x)) >= -offset;
}

bool HalfSpace::satisfied_by(const RatVector& x) const
{
    return dot(normal, x) >= -offset;
}

bool HalfSpace::tight_at(const RatVector& x) const
{
    return dot(normal, x) == -offset;
}

RationalPolyhedron::RationalPolyhedron(std::size_t dim, std::vector<HalfSpace> constraints)
    : dim_(dim), constraints_(std::move(constraints))
{
    if (dim_ == 0)
        throw Error(ErrorCode::InvalidArgument, "polyhedron dimension must be positive");
    for (const auto& h : constraints_) {
        if (h.normal.size() != dim_)
            throw Error(ErrorCode::DimensionMismatch, "constraint of wrong dimension");
        if (!is_primitive(h.normal))
            throw Error(ErrorCode::InvalidArgument, "constraint normal must be primitive: " + to_string(h.normal));
    }
}

bool RationalPolyhedron::contains(const IntVector& x) const
{
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const HalfSpace& h) { return h.satisfied_by(x); });
}

bool RationalPolyhedron::contains(const RatVector& x) const
{
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const HalfSpace& h) { return h.satisfied_by(x); });
}

bool RationalPolyhedron::is_empty() const
{
    return build_tower(*this).infeasible;
}

bool RationalPolyhedron::is_bounded() const
{
    if (is_empty())
        return true;
    return recession_cone(*this).is_zero();
}

RationalPolyhedron RationalPolyhedron::with(const HalfSpace& extra) const
{
    auto cs = constraints_;
    cs.push_back(extra);
    return RationalPolyhedron(dim_, std::move(cs));
}

std::vector<IntVector> lattice_points(const RationalPolyhedron& p)
{
    auto tower = build_tower(p);
    if (tower.infeasible)
        return {};
    if (!recession_cone(p).is_zero())
        throw Error(ErrorCode::UnboundedPolyhedron, "polyhedron has a recession direction");
    std::vector<IntVector> out;
    IntVector prefix(p.dim());
    enumerate(tower, 0, prefix, out);
    return out; // lexicographic by construction
}

std::vector<IntVector> lattice_points_box_scan(const RationalPolyhedron& p)
{
    if (p.is_empty())
        return {};
    if (!recession_cone(p).is_zero())
        throw Error(ErrorCode::UnboundedPolyhedron, "polyhedron has a recession direction");
    const std::size_t n = p.dim();
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto rows = to_inequalities(p);
        simplify(rows);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i)
                eliminate(rows, k);
        Interval iv;
        bounds_for(rows, i, IntVector(n), iv);
        lo[i] = ceil_of(iv.lo);
        hi[i] = floor_of(iv.hi);
        if (lo[i] > hi[i])
            return {};
    }
    std::vector<IntVector> out;
    IntVector x = lo;
    while (true) {
        if (p.contains(x))
            out.push_back(x);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (x[k] < hi[k]) {
                ++x[k];
                break;
            }
            x[k] = lo[k];
            if (k == 0)
                return out;
        }
    }
}

RationalPolyhedron dilate(const RationalPolyhedron& p, const Rational& factor)
{
    if (factor < 0)
        throw Error(ErrorCode::InvalidArgument, "dilation factor must be nonnegative");
    auto cs = p.constraints();
    for (auto& h : cs)
        h.offset *= factor;
    return RationalPolyhedron(p.dim(), std::move(cs));
}

Cone recession_cone(const RationalPolyhedron& p)
{
    if (p.is_empty())
        throw Error(ErrorCode::EmptyPolyhedron, "recession cone of an empty polyhedron");
    std::vector<IntVector> normals;
    for (const auto& h : p.constraints())
        normals.push_back(h.normal);
    return Cone::from_constraints(p.dim(), normals);
}

Cone::Cone(std::size_t dim, std::vector<IntVector> generators) : dim_(dim)
{
    std::set<IntVector> uniq;
    for (auto& g : generators) {
        if (g.size() != dim)
            throw Error(ErrorCode::DimensionMismatch, "cone generator of wrong dimension");
        if (!divalg::is_zero(g))
            uniq.insert(primitive(g));
    }
    generators_.assign(uniq.begin(), uniq.end());

    // Dual description: equations cut out the linear span, facets come from
    // (rank-1)-subsets of generators whose orthogonal hyperplane supports the cone.
    dual_.equations = integer_nullspace(generators_, dim_);
    const std::size_t r = dim_ - dual_.equations.size();
    if (r == 0)
        return;
    std::set<IntVector> facets;
    for_each_combination(generators_.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
        IntMatrix rows = dual_.equations;
        for (auto i : idx)
            rows.push_back(generators_[i]);
        auto ns = integer_nullspace(rows, dim_);
        if (ns.size() != 1)
            return;
        IntVector a = ns[0];
        bool all_pos = true, all_neg = true;
        for (const auto& g : generators_) {
            Integer v = dot(a, g);
            if (v < 0)
                all_pos = false;
            if (v > 0)
                all_neg = false;
        }
        if (all_pos)
            facets.insert(a);
        else if (all_neg)
            facets.insert(scale(a, -1));
    });
    dual_.facets.assign(facets.begin(), facets.end());
}

Cone Cone::from_constraints(std::size_t dim, const std::vector<IntVector>& inequalities,
                            const std::vector<IntVector>& equations)
{
    IntMatrix all = inequalities;
    all.insert(all.end(), equations.begin(), equations.end());
    IntMatrix lineality = all.empty() ? IntMatrix{} : integer_nullspace(all, dim);
    if (all.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            IntVector e(dim, 0);
            e[i] = 1;
            lineality.push_back(e);
        }
    }
    std::vector<IntVector> gens;
    for (const auto& l : lineality) {
        gens.push_back(l);
        gens.push_back(scale(l, -1));
    }
    IntMatrix base = equations;
    base.insert(base.end(), lineality.begin(), lineality.end());
    const std::size_t r0 = base.empty() ? 0 : rank(base, dim);
    if (r0 < dim) {
        const std::size_t need = dim - r0 - 1;
        std::set<IntVector> rays;
        for_each_combination(inequalities.size(), need, [&](const std::vector<std::size_t>& idx) {
            IntMatrix rows = base;
            for (auto i : idx)
                rows.push_back(inequalities[i]);
            auto ns = integer_nullspace(rows, dim);
            if (ns.size() != 1)
                return;
            for (int sign : {1, -1}) {
                IntVector d = scale(ns[0], sign);
                bool ok = std::all_of(inequalities.begin(), inequalities.end(),
                                      [&](const IntVector& a) { return dot(a, d) >= 0; });
                if (ok) {
                    rays.insert(d);
                    break;
                }
            }
        });
        gens.insert(gens.end(), rays.begin(), rays.end());
    }
    return Cone(dim, std::move(gens));
}

bool Cone::contains(const IntVector& x) const
{
    if (x.size() != dim_)
        throw Error(ErrorCode::DimensionMismatch, "cone membership of wrong dimension");
    for (const auto& e : dual_.equations)
        if (dot(e, x) != 0)
            return false;
    for (const auto& f : dual_.facets)
        if (dot(f, x) < 0)
            return false;
    return true;
}

std::size_t Cone::span_rank() const
{
    return dim_ - dual_.equations.size();
}

bool Cone::is_pointed() const
{
    IntMatrix rows = dual_.equations;
    rows.insert(rows.end(), dual_.facets.begin(), dual_.facets.end());
    return integer_nullspace(rows, dim_).empty();
}

HilbertBasisResult hilbert_basis(const Cone& c)
{
    if (!c.is_pointed())
        throw Error(ErrorCode::NotPointed, "Hilbert basis needs a pointed cone");
    HilbertBasisResult res;
    const std::size_t n = c.dim();
    if (c.is_zero()) {
        res.grading = IntVector(n, 0);
        return res;
    }

    bool first = std::all_of(c.generators().begin(), c.generators().end(),
                             [](const IntVector& g) { return g[0] > 0; });
    if (first) {
        res.grading = IntVector(n, 0);
        res.grading[0] = 1;
        res.graded_by_first_coordinate = true;
    } else {
        // The facet normals all vanish only at the apex of a pointed cone.
        res.grading = IntVector(n, 0);
        for (const auto& f : c.dual().facets)
            res.grading = add(res.grading, f);
    }

    // Every irreducible lies in the half-open parallelepiped of some simplicial
    // subcone, so its degree is below the sum of the r largest generator degrees.
    std::vector<Integer> degs;
    for (const auto& g : c.generators())
        degs.push_back(dot(res.grading, g));
    std::sort(degs.rbegin(), degs.rend());
    Integer bound = 0;
    for (std::size_t i = 0; i < std::min(c.span_rank(), degs.size()); ++i)
        bound += degs[i];
    res.degree_bound = bound;

    std::vector<HalfSpace> cs;
    for (const auto& f : c.dual().facets)
        cs.push_back(HalfSpace::make(f, 0));
    for (const auto& e : c.dual().equations) {
        cs.push_back(HalfSpace::make(e, 0));
        cs.push_back(HalfSpace::make(scale(e, -1), 0));
    }
    cs.push_back(HalfSpace::make(scale(res.grading, -1), Rational(bound)));
    auto pts = lattice_points(RationalPolyhedron(n, std::move(cs)));

    std::vector<std::pair<Integer, IntVector>> graded;
    for (auto& p : pts) {
        Integer d = dot(res.grading, p);
        if (d > 0)
            graded.emplace_back(d, std::move(p));
    }
    std::sort(graded.begin(), graded.end());
    for (const auto& [d, x] : graded) {
        bool reducible = false;
        for (const auto& h : res.elements) {
            if (dot(res.grading, h) >= d)
                break;
            if (c.contains(sub(x, h))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) {
            res.elements.push_back(x);
            res.max_degree = d;
        }
    }
    return res;
}

bool cone_contains(const Cone& outer, const Cone& inner)
{
    if (outer.dim() != inner.dim())
        throw Error(ErrorCode::DimensionMismatch, "cone_contains on different ambient dimensions");
    return std::all_of(inner.generators().begin(), inner.generators().end(),
                       [&](const IntVector& g) { return outer.contains(g); });
}

std::vector<RatVector> vertices(const RationalPolyhedron& p)
{
    const std::size_t n = p.dim();
    const auto& cs = p.constraints();
    std::set<RatVector> out;
    for_each_combination(cs.size(), n, [&](const std::vector<std::size_t>& idx) {
        IntMatrix a;
        RatVector b;
        for (auto i : idx) {
            a.push_back(cs[i].normal);
            b.push_back(-cs[i].offset);
        }
        auto x = solve_square(a, b);
        if (x && p.contains(*x))
            out.insert(*x);
    });
    return {out.begin(), out.end()};
}

} // namespace divalg
