#include "divalg/toric.hpp"
#include "divalg/errors.hpp"
#include "divalg/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace divalg {

namespace {

IntMatrix cone_rows(const Fan& f, const std::vector<std::size_t>& cone)
{
    IntMatrix rows;
    for (std::size_t i : cone)
        rows.push_back(f.rays.at(i));
    return rows;
}

// Coordinates of x in the ray basis of a full-dimensional simplicial cone.
RatVector cone_coordinates(const Fan& f, const std::vector<std::size_t>& cone, const RatVector& x)
{
    const std::size_t n = f.dim;
    IntMatrix a(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            a[i][k] = f.rays[cone[k]][i];
    auto sol = solve_square(a, x);
    if (!sol)
        throw Error(ErrorCode::NotComplete, "degenerate maximal cone");
    return *sol;
}

template <class Fn>
void for_each_box_point(std::size_t n, long long r, Fn&& fn)
{
    IntVector x(n, Integer(-r));
    while (true) {
        fn(x);
        std::size_t i = 0;
        while (i < n && x[i] == r) {
            x[i] = -r;
            ++i;
        }
        if (i == n)
            return;
        ++x[i];
    }
}

void validate_fan(const Fan& f, bool& smooth)
{
    const std::size_t n = f.dim;
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "fan dimension must be positive");
    std::set<IntVector> seen;
    for (const auto& v : f.rays) {
        if (v.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "ray " + to_string(v) + " has the wrong dimension");
        if (!is_primitive(v))
            throw Error(ErrorCode::InvalidArgument, "ray " + to_string(v) + " is not primitive");
        if (!seen.insert(v).second)
            throw Error(ErrorCode::InvalidArgument, "ray " + to_string(v) + " is repeated");
    }
    if (f.max_cones.empty())
        throw Error(ErrorCode::NotComplete, "fan has no maximal cones");

    smooth = true;
    for (const auto& c : f.max_cones) {
        if (c.size() != n)
            throw Error(ErrorCode::NotComplete, "maximal cone with " + std::to_string(c.size()) +
                                                    " rays in dimension " + std::to_string(n));
        std::set<std::size_t> ids(c.begin(), c.end());
        if (ids.size() != c.size() || *ids.rbegin() >= f.rays.size())
            throw Error(ErrorCode::InvalidArgument, "maximal cone has repeated or unknown ray indices");
        Integer det = determinant(cone_rows(f, c));
        if (det == 0)
            throw Error(ErrorCode::InvalidArgument, "maximal cone rays are linearly dependent");
        if (abs(det) != 1)
            smooth = false;
    }

    // Facet pairing: every codimension-one face lies in exactly two maximal
    // cones, which sit on opposite sides of its hyperplane.
    std::map<std::vector<std::size_t>, std::vector<int>> facet_sides;
    for (const auto& c : f.max_cones) {
        std::vector<std::size_t> sorted(c.begin(), c.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t drop = 0; drop < n; ++drop) {
            std::vector<std::size_t> facet;
            for (std::size_t k = 0; k < n; ++k)
                if (k != drop)
                    facet.push_back(sorted[k]);
            IntMatrix ns = integer_nullspace(cone_rows(f, facet), n);
            Integer side = dot(ns.front(), f.rays[sorted[drop]]);
            facet_sides[facet].push_back(side > 0 ? 1 : -1);
        }
    }
    for (const auto& [facet, sides] : facet_sides)
        if (sides.size() != 2 || sides[0] == sides[1])
            throw Error(ErrorCode::NotComplete, "a codimension-one face is not shared by two opposite maximal cones");

    // Sampling: points of a small box are covered, and no cone's barycenter
    // is interior to another cone.
    for_each_box_point(n, 2, [&](const IntVector& x) {
        RatVector xr = to_rational(x);
        bool covered = false;
        for (const auto& c : f.max_cones) {
            auto lam = cone_coordinates(f, c, xr);
            if (std::all_of(lam.begin(), lam.end(), [](const Rational& q) { return q >= 0; })) {
                covered = true;
                break;
            }
        }
        if (!covered)
            throw Error(ErrorCode::NotComplete, "point " + to_string(x) + " lies in no maximal cone");
    });
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        IntVector bary(n, 0);
        for (std::size_t r : f.max_cones[i])
            bary = add(bary, f.rays[r]);
        for (std::size_t j = 0; j < f.max_cones.size(); ++j) {
            if (j == i)
                continue;
            auto lam = cone_coordinates(f, f.max_cones[j], to_rational(bary));
            if (std::all_of(lam.begin(), lam.end(), [](const Rational& q) { return q > 0; }))
                throw Error(ErrorCode::NotComplete, "maximal cones overlap");
        }
    }
}

// Lattice points of P_{D + mL}, cached per degree.
class PolytopeSlices {
public:
    PolytopeSlices(ToricVariety x, CartierDivisor d, CartierDivisor l)
        : x_(std::move(x)), d_(std::move(d)), l_(std::move(l))
    {
    }

    const DegreeSlice& get(int m) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(m);
            if (it != cache_.end())
                return *it->second;
        }
        auto s = std::make_unique<DegreeSlice>(m, lattice_points(section_polytope(x_, d_, l_, m)));
        std::lock_guard<std::mutex> lock(mu_);
        return *cache_.emplace(m, std::move(s)).first->second;
    }

private:
    ToricVariety x_;
    CartierDivisor d_, l_;
    mutable std::mutex mu_;
    mutable std::map<int, std::unique_ptr<DegreeSlice>> cache_;
};

SparseVector add_labels(const PolytopeSlices& left, int a, std::size_t i, const PolytopeSlices& right, int b,
                        std::size_t j, const PolytopeSlices& target)
{
    IntVector u = add(left.get(a).label(i), right.get(b).label(j));
    auto k = target.get(a + b).index_of(u);
    if (!k)
        throw Error(ErrorCode::OracleFailure, "sum " + to_string(u) + " missing from degree " + std::to_string(a + b));
    return SparseVector::unit(*k);
}

IntVector lift(Integer first, const IntVector& rest)
{
    IntVector out{std::move(first)};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

} // namespace

ToricVariety::ToricVariety(Fan fan) : fan_(std::move(fan))
{
    validate_fan(fan_, smooth_);
}

CartierDivisor::CartierDivisor(const ToricVariety& x, IntVector coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != x.num_rays())
        throw Error(ErrorCode::DimensionMismatch, "divisor has " + std::to_string(coeffs_.size()) +
                                                      " coefficients for " + std::to_string(x.num_rays()) + " rays");
    if (x.smooth())
        return;
    for (const auto& m : local_functionals(x, *this))
        for (const auto& q : m)
            if (!is_integral(q))
                throw Error(ErrorCode::NotCartier, "divisor " + to_string(coeffs_) + " is only Q-Cartier");
}

bool CartierDivisor::is_zero() const
{
    return divalg::is_zero(coeffs_);
}

bool CartierDivisor::is_effective() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& a) { return a >= 0; });
}

std::set<std::size_t> CartierDivisor::support() const
{
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out.insert(i);
    return out;
}

CartierDivisor operator+(const CartierDivisor& a, const CartierDivisor& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "divisors on different varieties");
    return CartierDivisor(add(a.coeffs_, b.coeffs_));
}

CartierDivisor operator-(const CartierDivisor& a, const CartierDivisor& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "divisors on different varieties");
    return CartierDivisor(sub(a.coeffs_, b.coeffs_));
}

CartierDivisor operator*(const Integer& k, const CartierDivisor& d)
{
    return CartierDivisor(scale(d.coeffs_, k));
}

CartierDivisor CartierDivisor::prime(const ToricVariety& x, std::size_t ray)
{
    IntVector c(x.num_rays(), 0);
    c.at(ray) = 1;
    return CartierDivisor(x, std::move(c));
}

CartierDivisor CartierDivisor::zero(const ToricVariety& x)
{
    return CartierDivisor(IntVector(x.num_rays(), 0));
}

RationalPolyhedron section_polytope(const ToricVariety& x, const CartierDivisor& d)
{
    if (d.size() != x.num_rays())
        throw Error(ErrorCode::DimensionMismatch, "divisor does not match the fan");
    std::vector<HalfSpace> cs;
    for (std::size_t i = 0; i < x.num_rays(); ++i)
        cs.push_back(HalfSpace::make(x.ray(i), Rational(d[i])));
    return RationalPolyhedron(x.dim(), std::move(cs));
}

RationalPolyhedron section_polytope(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int m)
{
    return section_polytope(x, d + Integer(m) * l);
}

std::vector<IntVector> sections(const ToricVariety& x, const CartierDivisor& d)
{
    return lattice_points(section_polytope(x, d));
}

std::size_t h0(const ToricVariety& x, const CartierDivisor& d)
{
    return sections(x, d).size();
}

CartierDivisor translate(const ToricVariety& x, const CartierDivisor& d, const IntVector& u)
{
    if (u.size() != x.dim())
        throw Error(ErrorCode::DimensionMismatch, "translation vector has the wrong dimension");
    IntVector c = d.coeffs();
    for (std::size_t i = 0; i < x.num_rays(); ++i)
        c[i] += dot(u, x.ray(i));
    return CartierDivisor::weil(std::move(c));
}

GradedAlgebra divisorial_algebra(const ToricVariety& x, const CartierDivisor& l)
{
    auto slices = std::make_shared<PolytopeSlices>(x, CartierDivisor::zero(x), l);
    PairingOracle product = [slices](int a, std::size_t i, int b, std::size_t j) {
        return add_labels(*slices, a, i, *slices, b, j, *slices);
    };
    // P_0 = {0} on a complete fan, so the unit is the only degree-0 label.
    return GradedAlgebra([slices](int m) { return slices->get(m).basis(); }, product, 0,
                         "toric R(L), L = " + to_string(l.coeffs()));
}

GradedModule divisorial_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p)
{
    auto ring_slices = std::make_shared<PolytopeSlices>(x, CartierDivisor::zero(x), l);
    auto mod_slices = std::make_shared<PolytopeSlices>(x, d, l);
    PairingOracle action = [ring_slices, mod_slices](int a, std::size_t i, int b, std::size_t j) {
        return add_labels(*ring_slices, a, i, *mod_slices, b, j, *mod_slices);
    };
    return GradedModule(divisorial_algebra(x, l), p, [mod_slices](int m) { return mod_slices->get(m).basis(); },
                        action);
}

Cone algebra_cone(const ToricVariety& x, const CartierDivisor& l)
{
    const std::size_t n = x.dim();
    std::vector<IntVector> ineqs;
    IntVector t(n + 1, 0);
    t[0] = 1;
    ineqs.push_back(t);
    for (std::size_t i = 0; i < x.num_rays(); ++i)
        ineqs.push_back(lift(l[i], x.ray(i)));
    return Cone::from_constraints(n + 1, ineqs);
}

namespace {

GeneratorSet generators_from_points(const std::vector<IntVector>& pts,
                                    const std::function<const DegreeSlice&(int)>& slice)
{
    GeneratorSet gens;
    for (const auto& x : pts) {
        int t = static_cast<int>(x[0]);
        IntVector u(x.begin() + 1, x.end());
        auto idx = slice(t).index_of(u);
        if (!idx)
            throw Error(ErrorCode::OracleFailure, "generator " + to_string(x) + " missing from its slice");
        gens.entries.push_back({t, SparseVector::unit(*idx)});
    }
    return gens;
}

} // namespace

FGCertificate exact_fg_algebra(const ToricVariety& x, const CartierDivisor& l)
{
    Cone c = algebra_cone(x, l);
    HilbertBasisResult hb = hilbert_basis(c);
    GradedAlgebra r = divisorial_algebra(x, l);
    FGCertificate cert;
    cert.kind = CertificateKind::Exact;
    cert.generators = generators_from_points(hb.elements, [&r](int m) -> const DegreeSlice& { return r.slice(m); });
    cert.stabilization_degree = static_cast<int>(hb.max_degree);
    cert.stabilized = true;
    cert.note = hb.elements.empty() ? "P_L has no rational points; R(L) is the base field"
                                    : "Hilbert basis of the cone over {1} x P_L";
    return cert;
}

PolyhedralModuleResult polyhedral_module_generators(const RationalPolyhedron& q, const Cone& c)
{
    if (q.dim() != c.dim())
        throw Error(ErrorCode::DimensionMismatch, "module polyhedron and algebra cone differ in dimension");
    PolyhedralModuleResult res;
    if (q.is_empty()) {
        res.finitely_generated = true;
        return res;
    }
    Cone rec = recession_cone(q);
    if (!cone_contains(c, rec)) {
        for (const auto& g : rec.generators())
            if (!c.contains(g)) {
                res.recession_direction = g;
                break;
            }
        return res;
    }
    for (const auto& g : c.generators())
        if (g[0] <= 0)
            throw Error(ErrorCode::InvalidArgument, "algebra cone is not graded by its first coordinate");
    HilbertBasisResult hb = hilbert_basis(c);

    // x = vertex part + sum mu_i r_i; stripping floor(mu_i) r_i stays in Q.
    Rational top = 0;
    bool first = true;
    for (const auto& v : vertices(q)) {
        if (first || v[0] > top)
            top = v[0];
        first = false;
    }
    std::vector<Integer> ray_degrees;
    for (const auto& g : rec.generators())
        ray_degrees.push_back(g[0]);
    std::sort(ray_degrees.rbegin(), ray_degrees.rend());
    Integer bound = floor_of(top);
    for (std::size_t i = 0; i < std::min(rec.span_rank(), ray_degrees.size()); ++i)
        bound += ray_degrees[i];
    res.degree_bound = bound;

    IntVector cap(q.dim(), 0);
    cap[0] = -1;
    for (const auto& pt : lattice_points(q.with(HalfSpace::make(cap, Rational(bound))))) {
        bool reducible = std::any_of(hb.elements.begin(), hb.elements.end(),
                                     [&](const IntVector& h) { return q.contains(sub(pt, h)); });
        if (!reducible)
            res.generators.push_back(pt);
    }
    res.finitely_generated = true;
    return res;
}

FGCertificate exact_fg_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p)
{
    const std::size_t n = x.dim();
    std::vector<HalfSpace> cs;
    IntVector t(n + 1, 0);
    t[0] = 1;
    cs.push_back(HalfSpace::make(t, Rational(-p)));
    for (std::size_t i = 0; i < x.num_rays(); ++i)
        cs.push_back(HalfSpace::make(lift(l[i], x.ray(i)), Rational(d[i])));
    RationalPolyhedron q(n + 1, std::move(cs));
    PolyhedralModuleResult res = polyhedral_module_generators(q, algebra_cone(x, l));

    FGCertificate cert;
    if (!res.finitely_generated) {
        cert.kind = CertificateKind::NonFGWitness;
        NonFGWitness w;
        w.recession_direction = res.recession_direction;
        w.summary = "recession direction " + to_string(res.recession_direction) + " escapes the algebra cone";
        cert.witness = w;
        cert.note = w.summary;
        return cert;
    }
    GradedModule m = divisorial_module(x, d, l, p);
    cert.kind = CertificateKind::Exact;
    cert.generators =
        generators_from_points(res.generators, [&m](int k) -> const DegreeSlice& { return m.slice(k); });
    cert.stabilization_degree = cert.generators.max_degree().value_or(p);
    cert.stabilized = true;
    cert.note = "lattice points of the module polyhedron not reachable from lower degrees";
    return cert;
}

FixMov fix_mov(const ToricVariety& x, const CartierDivisor& d)
{
    auto pts = sections(x, d);
    if (pts.empty())
        throw Error(ErrorCode::NoSections, "divisor " + to_string(d.coeffs()) + " has no sections");
    IntVector fix(x.num_rays());
    for (std::size_t i = 0; i < x.num_rays(); ++i) {
        Integer best = dot(pts.front(), x.ray(i)) + d[i];
        for (const auto& u : pts)
            best = std::min<Integer>(best, dot(u, x.ray(i)) + d[i]);
        fix[i] = best;
    }
    CartierDivisor f = CartierDivisor::weil(fix);
    return {f, CartierDivisor::weil(sub(d.coeffs(), fix))};
}

std::vector<RatVector> local_functionals(const ToricVariety& x, const CartierDivisor& d)
{
    std::vector<RatVector> out;
    for (const auto& c : x.fan().max_cones) {
        RatVector rhs;
        for (std::size_t i : c)
            rhs.push_back(-Rational(d[i]));
        auto m = solve_square(cone_rows(x.fan(), c), rhs);
        if (!m)
            throw Error(ErrorCode::NotComplete, "degenerate maximal cone");
        out.push_back(*m);
    }
    return out;
}

bool is_base_point_free(const ToricVariety& x, const CartierDivisor& d)
{
    RationalPolyhedron p = section_polytope(x, d);
    for (const auto& m : local_functionals(x, d)) {
        if (!std::all_of(m.begin(), m.end(), [](const Rational& q) { return is_integral(q); }))
            return false;
        if (!p.contains(m))
            return false;
    }
    return true;
}

bool is_ample(const ToricVariety& x, const CartierDivisor& d)
{
    auto ms = local_functionals(x, d);
    const auto& cones = x.fan().max_cones;
    for (std::size_t k = 0; k < cones.size(); ++k) {
        std::set<std::size_t> in(cones[k].begin(), cones[k].end());
        for (std::size_t i = 0; i < x.num_rays(); ++i)
            if (!in.count(i) && dot(x.ray(i), ms[k]) <= -Rational(d[i]))
                return false;
    }
    return true;
}

FixStabilityReport fix_stability_check(const ToricVariety& x, const CartierDivisor& l, int j, int m_max)
{
    if (!x.smooth())
        throw Error(ErrorCode::NotSmooth, "Fix stability is checked on smooth fans only");
    if (j < 1 || m_max < 1)
        throw Error(ErrorCode::InvalidArgument, "J and m_max must be positive");
    bool any = false;
    for (int n = 1; n <= j && !any; ++n)
        any = h0(x, Integer(n) * l) > 0;
    if (!any)
        throw Error(ErrorCode::NoSections, "no multiple nL with n <= J has sections");

    FixStabilityReport rep;
    FixMov base = fix_mov(x, Integer(j) * l);
    rep.e = base.fix;
    rep.f = base.mov;
    rep.f_base_point_free = is_base_point_free(x, rep.f);
    bool all = true;
    for (int m = 1; m <= m_max; ++m) {
        FixMov fm = fix_mov(x, Integer(m * j) * l);
        FixStabilityRow row{m, fm.fix, fm.mov, fm.fix == Integer(m) * rep.e, fm.mov == Integer(m) * rep.f};
        if (!(row.fix_matches && row.mov_matches)) {
            all = false;
            if (!rep.first_failure)
                rep.first_failure = m;
        }
        rep.rows.push_back(std::move(row));
    }
    rep.holds = all && rep.f_base_point_free;
    return rep;
}

SuppFixReport supp_fix_with_ample(const ToricVariety& x, const CartierDivisor& l, int j, int r,
                                  const CartierDivisor& g, int m_lo, int m_hi)
{
    if (r < 0 || j < 1 || m_lo > m_hi)
        throw Error(ErrorCode::InvalidArgument, "need r >= 0, J >= 1 and a nonempty m range");
    if (!is_ample(x, g))
        throw Error(ErrorCode::NotAmple, "G = " + to_string(g.coeffs()) + " is not ample");
    SuppFixReport rep;
    FixMov base = fix_mov(x, Integer(j) * l);
    rep.e = base.fix;
    rep.f = base.mov;
    rep.supp_e = rep.e.support();
    const CartierDivisor step = Integer(j) * l + Integer(r) * rep.f;
    for (int m = m_lo; m <= m_hi; ++m) {
        CartierDivisor dm = Integer(m) * step + g;
        SuppFixRow row;
        row.m = m;
        row.has_sections = h0(x, dm) > 0;
        if (row.has_sections) {
            row.support = fix_mov(x, dm).fix.support();
            row.equals_supp_e = row.support == rep.supp_e;
        }
        rep.rows.push_back(std::move(row));
    }
    for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->equals_supp_e; ++it)
        rep.m0 = it->m;
    return rep;
}

GradedModule restriction_kernel(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& c, int p,
                                const CartierDivisor& d)
{
    if (!c.is_effective())
        throw Error(ErrorCode::InvalidArgument, "restriction divisor must be effective");
    return divisorial_module(x, d - c, l, p);
}

GradedModule restriction_kernel(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& c, int p)
{
    return restriction_kernel(x, l, c, p, CartierDivisor::zero(x));
}

GradedModule restriction_image(const GradedModule& m, const GradedModule& k)
{
    return quotient_module(m, k);
}

GradedAlgebra restricted_algebra(const ToricVariety& x, const CartierDivisor& l, const CartierDivisor& s)
{
    return quotient_algebra(divisorial_algebra(x, l), restriction_kernel(x, l, s, 0));
}

DimensionTable h0_table(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int lo, int hi)
{
    return DimensionTable::from_function(lo, hi, [&](int m) {
        return static_cast<std::int64_t>(lattice_points(section_polytope(x, d, l, m)).size());
    });
}

namespace varieties {

ToricVariety projective_space(std::size_t n)
{
    Fan f;
    f.dim = n;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        f.rays.push_back(e);
    }
    f.rays.push_back(IntVector(n, -1));
    for (std::size_t skip = 0; skip <= n; ++skip) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip)
                c.push_back(i);
        f.max_cones.push_back(c);
    }
    return ToricVariety(f);
}

ToricVariety p1xp1()
{
    Fan f;
    f.dim = 2;
    f.rays = {make_int_vector({1, 0}), make_int_vector({-1, 0}), make_int_vector({0, 1}), make_int_vector({0, -1})};
    f.max_cones = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    return ToricVariety(f);
}

ToricVariety blowup_p2()
{
    Fan f;
    f.dim = 2;
    f.rays = {make_int_vector({1, 0}), make_int_vector({1, 1}), make_int_vector({0, 1}), make_int_vector({-1, -1})};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return ToricVariety(f);
}

ToricVariety hirzebruch(long long a)
{
    Fan f;
    f.dim = 2;
    f.rays = {make_int_vector({1, 0}), make_int_vector({0, 1}), make_int_vector({-1, -a}), make_int_vector({0, -1})};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return ToricVariety(f);
}

} // namespace varieties

} // namespace divalg
