#include "divalg/counting.hpp"
#include "divalg/errors.hpp"

#include <algorithm>

namespace divalg {

std::int64_t DimensionTable::at(int m) const
{
    if (m < first_degree)
        return 0;
    if (m > last_degree())
        throw Error(ErrorCode::InsufficientRange,
                    "degree " + std::to_string(m) + " beyond table end " + std::to_string(last_degree()));
    return dims[static_cast<std::size_t>(m - first_degree)];
}

DimensionTable DimensionTable::from_function(int lo, int hi, const std::function<std::int64_t(int)>& h)
{
    DimensionTable t;
    t.first_degree = lo;
    for (int m = lo; m <= hi; ++m)
        t.dims.push_back(h(m));
    return t;
}

DimensionTable DimensionTable::of_algebra(const GradedAlgebra& r, int hi)
{
    return from_function(0, hi, [&r](int m) { return static_cast<std::int64_t>(r.dimension(m)); });
}

DimensionTable DimensionTable::of_module(const GradedModule& m, int hi)
{
    return from_function(m.offset(), hi, [&m](int d) { return static_cast<std::int64_t>(m.dimension(d)); });
}

namespace {

void require_range(const DimensionTable& t, int lo, int hi, const char* what)
{
    if (lo > hi)
        throw Error(ErrorCode::InsufficientRange, "empty degree range");
    if (!t.covers(lo, hi))
        throw Error(ErrorCode::InsufficientRange, std::string(what) + " table ends at degree " +
                                                      std::to_string(t.last_degree()) + ", need " +
                                                      std::to_string(hi));
}

} // namespace

CountingVerdict counting_bound_check(const std::vector<int>& gen_degrees, const DimensionTable& h_alg,
                                     const DimensionTable& h_mod, int lo, int hi)
{
    require_range(h_alg, lo, hi, "algebra");
    require_range(h_mod, lo, hi, "module");
    CountingVerdict v;
    for (int m = lo; m <= hi; ++m) {
        CountingRow row;
        row.degree = m;
        for (int n : gen_degrees)
            if (m - n >= 0)
                row.lhs += h_alg.at(m - n);
        row.rhs = h_mod.at(m);
        row.holds = row.lhs >= row.rhs;
        if (!row.holds && !v.first_failure) {
            v.holds = false;
            v.first_failure = m;
        }
        v.rows.push_back(std::move(row));
    }
    return v;
}

std::optional<int> growth_degree(const DimensionTable& h, int lo, int hi)
{
    if (hi - lo + 1 < 8)
        throw Error(ErrorCode::InsufficientRange, "growth estimate needs at least 8 sample degrees");
    require_range(h, lo, hi, "dimension");

    const int mid = lo + (hi - lo) / 2;
    Integer cum_lo = 0, cum_hi = 0;
    for (int m = lo; m <= hi; ++m) {
        cum_hi += h.at(m);
        if (m <= mid)
            cum_lo += h.at(m);
    }
    if (cum_hi == cum_lo)
        return std::nullopt;
    if (cum_lo == 0)
        cum_lo = 1; // support starts in the upper half; treat as the slowest positive growth there

    const Integer t_lo = mid - lo + 1;
    const Integer t_hi = hi - lo + 1;
    // H(t) ~ c t^(k+1): the first d with H_hi/H_lo < (t_hi/t_lo)^(d + 1/2) is k + 1.
    const Integer lhs_base = cum_hi * cum_hi;
    const Integer rhs_base = cum_lo * cum_lo;
    Integer pow_lo = t_lo, pow_hi = t_hi; // t^(2d+1) at d = 0
    for (int d = 0; d <= 64; ++d) {
        if (lhs_base * pow_lo < rhs_base * pow_hi)
            return d - 1 < 0 ? 0 : d - 1;
        pow_lo *= t_lo * t_lo;
        pow_hi *= t_hi * t_hi;
    }
    throw Error(ErrorCode::InsufficientRange, "growth exponent exceeds the supported maximum");
}

std::optional<NonFGWitness> search_nonfg_witness(const DimensionTable& h_alg, const DimensionTable& h_mod, int lo,
                                                 int hi, const NonFGSearchLimits& limits)
{
    require_range(h_alg, 0, hi, "algebra");
    require_range(h_mod, lo, hi, "module");
    const int first = std::max(lo, h_mod.first_degree);
    const int span = hi - first;
    if (span < 7)
        throw Error(ErrorCode::InsufficientRange, "non-finite-generation search needs at least 8 degrees");

    NonFGWitness w;
    w.algebra_growth = growth_degree(h_alg, std::max(0, first), hi);
    w.module_growth = growth_degree(h_mod, first, hi);
    const int e_max = limits.max_generator_degree.value_or(first + span / 4);
    const int s = limits.max_generators.value_or(std::max(1, span / 4));

    const bool outgrows = w.module_growth && (!w.algebra_growth || *w.module_growth > *w.algebra_growth);
    if (!outgrows)
        return std::nullopt;

    for (int e = first; e <= e_max; ++e) {
        std::optional<CountingFailure> hit;
        for (int m = first; m <= hi && !hit; ++m) {
            std::int64_t best = 0;
            for (int n = first; n <= std::min(e, m); ++n)
                best = std::max(best, h_alg.at(m - n));
            Integer capacity = Integer(s) * best;
            Integer required = h_mod.at(m);
            if (capacity < required) {
                CountingFailure f;
                f.max_generator_degree = e;
                f.max_generators = s;
                f.degree = m;
                f.capacity = capacity;
                f.required = required;
                for (int d = first; d <= std::min(e, m); ++d)
                    f.span_cap += Integer(h_mod.at(d)) * h_alg.at(m - d);
                hit = f;
            }
        }
        if (!hit)
            return std::nullopt;
        w.failures.push_back(*hit);
    }
    w.summary = "every multiset of at most " + std::to_string(s) + " generators in degrees " + std::to_string(first) +
                ".." + std::to_string(e_max) + " violates the counting inequality inside " + std::to_string(first) +
                ".." + std::to_string(hi);
    return w;
}

} // namespace divalg
