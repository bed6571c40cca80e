#pragma once

#include "divalg/arith.hpp"

#include <map>
#include <utility>
#include <vector>

namespace divalg {

// Linear combination of the basis elements of one degree slice, sorted by index.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;
    static SparseVector unit(std::size_t index);
    static SparseVector from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t leading_index() const { return entries_.front().first; }
    Rational coefficient(std::size_t index) const;

    // this += factor * other
    void add_scaled(const SparseVector& other, const Rational& factor);
    SparseVector scaled(const Rational& factor) const;

    // Single basis element with coefficient one, if that is what this is.
    bool is_unit() const { return entries_.size() == 1 && entries_.front().second == 1; }

    friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Entry> entries_;
};

// Incrementally maintained row echelon basis of a subspace of Q^ambient.
// Every stored row has coefficient 1 at its (smallest-index) pivot.
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t ambient = 0) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_full() const { return rows_.size() == ambient_; }

    SparseVector reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }
    // Returns true if v enlarged the span.
    bool insert(const SparseVector& v);

    std::vector<std::size_t> non_pivots() const;
    std::vector<SparseVector> basis() const;

private:
    std::size_t ambient_;
    std::map<std::size_t, SparseVector> rows_;
};

} // namespace divalg
