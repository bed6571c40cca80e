#pragma once

#include "divalg/graded.hpp"
#include "divalg/lattice.hpp"
#include "divalg/toric.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace testing {

using namespace divalg;

inline IntVector iv(std::initializer_list<long long> xs)
{
    return make_int_vector(std::vector<long long>(xs));
}

inline HalfSpace hs(std::initializer_list<long long> normal, long long offset)
{
    return HalfSpace::make(iv(normal), Rational(offset));
}

// Oracle binomial coefficient on machine integers.
inline long long binom(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

// k[x]: one basis label {m} in each degree, product by label addition.
inline GradedAlgebra polynomial_one_var()
{
    return GradedAlgebra([](int m) { return std::vector<Label>{iv({m})}; },
                         PairingOracle([](int, std::size_t, int, std::size_t) { return SparseVector::unit(0); }), 0,
                         "k[x]");
}

// Free module over r with generators in the given degrees, modeled as sums of shifted copies.
// Labels are (generator index, ring-label...).
inline GradedModule shifted_free_module(const GradedAlgebra& r, std::vector<int> degrees)
{
    const int offset = *std::min_element(degrees.begin(), degrees.end());
    auto slices = [r, degrees](int m) {
        std::vector<Label> out;
        for (std::size_t g = 0; g < degrees.size(); ++g) {
            if (m < degrees[g])
                continue;
            for (const auto& l : r.slice(m - degrees[g]).basis()) {
                Label x{Integer(static_cast<long long>(g))};
                x.insert(x.end(), l.begin(), l.end());
                out.push_back(x);
            }
        }
        return out;
    };
    auto slice_of = [slices](int m) { return DegreeSlice(m, slices(m)); };
    auto action = [r, degrees, slice_of](int a, std::size_t i, int b, std::size_t j) {
        DegreeSlice src = slice_of(b);
        const Label& x = src.label(j);
        auto g = static_cast<std::size_t>(static_cast<long long>(x[0]));
        Label inner(x.begin() + 1, x.end());
        const int inner_deg = b - degrees[g];
        auto ri = r.slice(inner_deg).index_of(inner);
        SparseVector prod = r.product(a, SparseVector::unit(i), inner_deg, SparseVector::unit(*ri));
        DegreeSlice dst = slice_of(a + b);
        const DegreeSlice& rs = r.slice(a + inner_deg);
        std::vector<SparseVector::Entry> e;
        for (const auto& [k, c] : prod.entries()) {
            Label y{x[0]};
            const Label& l = rs.label(k);
            y.insert(y.end(), l.begin(), l.end());
            e.emplace_back(*dst.index_of(y), c);
        }
        return SparseVector::from_entries(std::move(e));
    };
    return GradedModule(r, offset, slices, PairingOracle(action));
}

inline std::vector<std::size_t> dims_of(const GradedModule& m, int lo, int hi)
{
    std::vector<std::size_t> out;
    for (int d = lo; d <= hi; ++d)
        out.push_back(m.dimension(d));
    return out;
}

inline std::vector<std::size_t> dims_of(const GradedAlgebra& r, int lo, int hi)
{
    std::vector<std::size_t> out;
    for (int d = lo; d <= hi; ++d)
        out.push_back(r.dimension(d));
    return out;
}

} // namespace testing
