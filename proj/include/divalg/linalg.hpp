#pragma once

#include "divalg/arith.hpp"

#include <optional>
#include <vector>

namespace divalg {

// Dense exact linear algebra over Q. Matrices are row lists.
using RatMatrix = std::vector<RatVector>;
using IntMatrix = std::vector<IntVector>;

RatMatrix to_rational(const IntMatrix& m);

// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t ncols);

std::size_t rank(const IntMatrix& rows, std::size_t ncols);

// Basis of {x : row . x = 0 for all rows}, each scaled to a primitive integer vector.
IntMatrix integer_nullspace(const IntMatrix& rows, std::size_t ncols);

// Unique solution of a square system, or nullopt if singular.
std::optional<RatVector> solve_square(const IntMatrix& a, const RatVector& b);

Integer determinant(const IntMatrix& square);

} // namespace divalg
