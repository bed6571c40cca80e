#pragma once

#include "divalg/arith.hpp"
#include "divalg/graded.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace divalg {

// Degree -> dimension data for degrees first_degree .. first_degree + dims.size() - 1.
// Degrees below the table read as zero; degrees above it are an error.
struct DimensionTable {
    int first_degree = 0;
    std::vector<std::int64_t> dims;

    int last_degree() const { return first_degree + static_cast<int>(dims.size()) - 1; }
    bool covers(int lo, int hi) const { return lo <= hi && hi <= last_degree(); }
    std::int64_t at(int m) const;

    static DimensionTable from_function(int lo, int hi, const std::function<std::int64_t(int)>& h);
    static DimensionTable of_algebra(const GradedAlgebra& r, int hi);
    static DimensionTable of_module(const GradedModule& m, int hi);
};

struct CountingRow {
    int degree = 0;
    Integer lhs; // sum over generators of h_alg(m - n_i)
    Integer rhs; // h_mod(m)
    bool holds = false;
};

struct CountingVerdict {
    bool holds = true;
    std::optional<int> first_failure;
    std::vector<CountingRow> rows;
};

// Checks sum_i h_alg(m - n_i) >= h_mod(m) for every m in [lo, hi].
CountingVerdict counting_bound_check(const std::vector<int>& gen_degrees, const DimensionTable& h_alg,
                                     const DimensionTable& h_mod, int lo, int hi);

// Growth exponent of h over [lo, hi]; nullopt when the tail vanishes.
// Fit on cumulative sums H between the midpoint and the end of the range.
std::optional<int> growth_degree(const DimensionTable& h, int lo, int hi);

struct NonFGSearchLimits {
    std::optional<int> max_generator_degree; // e ranges over [first degree, this]
    std::optional<int> max_generators;       // s
};

// Refutes finite generation when, for every generator-degree bound e and
// generator count s within the limits, the counting inequality fails somewhere
// in [lo, hi] for every multiset, and the module outgrows the algebra.
std::optional<NonFGWitness> search_nonfg_witness(const DimensionTable& h_alg, const DimensionTable& h_mod, int lo,
                                                 int hi, const NonFGSearchLimits& limits = {});

} // namespace divalg
