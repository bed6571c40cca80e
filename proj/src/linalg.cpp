#include "divalg/linalg.hpp"
#include "divalg/errors.hpp"

namespace divalg {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out;
    out.reserve(m.size());
    for (const auto& row : m)
        out.push_back(to_rational(row));
    return out;
}

std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (std::size_t k = c; k < ncols; ++k)
            m[r][k] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < ncols; ++k)
                m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

std::size_t rank(const IntMatrix& rows, std::size_t ncols)
{
    RatMatrix m = to_rational(rows);
    return row_reduce(m, ncols).size();
}

IntMatrix integer_nullspace(const IntMatrix& rows, std::size_t ncols)
{
    for (const auto& r : rows)
        if (r.size() != ncols)
            throw Error(ErrorCode::DimensionMismatch, "nullspace row length");
    RatMatrix m = to_rational(rows);
    auto pivots = row_reduce(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    IntMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        RatVector v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m[i][free];
        basis.push_back(clear_denominators(v));
    }
    return basis;
}

std::optional<RatVector> solve_square(const IntMatrix& a, const RatVector& b)
{
    const std::size_t n = a.size();
    RatMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n)
            throw Error(ErrorCode::DimensionMismatch, "solve_square needs a square matrix");
        m[i] = to_rational(a[i]);
        m[i].push_back(b[i]);
    }
    auto pivots = row_reduce(m, n + 1);
    if (pivots.size() != n || pivots.back() != n - 1)
        return std::nullopt;
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m[i][n];
    return x;
}

Integer determinant(const IntMatrix& square)
{
    const std::size_t n = square.size();
    RatMatrix m = to_rational(square);
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k)
                m[i][k] -= f * m[c][k];
        }
    }
    return boost::multiprecision::numerator(det);
}

} // namespace divalg
