#include "divalg/sparse.hpp"
#include "divalg/errors.hpp"

#include <algorithm>

namespace divalg {

SparseVector SparseVector::unit(std::size_t index)
{
    SparseVector v;
    v.entries_.emplace_back(index, Rational(1));
    return v;
}

SparseVector SparseVector::from_entries(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& e : entries) {
        if (!v.entries_.empty() && v.entries_.back().first == e.first)
            v.entries_.back().second += e.second;
        else
            v.entries_.push_back(std::move(e));
        if (v.entries_.back().second == 0)
            v.entries_.pop_back();
    }
    return v;
}

Rational SparseVector::coefficient(std::size_t index) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index)
        return it->second;
    return 0;
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& factor)
{
    if (factor == 0 || other.is_zero())
        return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->first < a->first) {
            merged.emplace_back(b->first, b->second * factor);
            ++b;
        } else {
            Rational c = a->second + b->second * factor;
            if (c != 0)
                merged.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

SparseVector SparseVector::scaled(const Rational& factor) const
{
    if (factor == 0)
        return {};
    SparseVector v = *this;
    for (auto& e : v.entries_)
        e.second *= factor;
    return v;
}

SparseVector EchelonSpan::reduce(SparseVector v) const
{
    std::size_t pos = 0;
    while (pos < v.entries().size()) {
        const auto& [idx, coeff] = v.entries()[pos];
        auto it = rows_.find(idx);
        if (it == rows_.end()) {
            ++pos;
            continue;
        }
        // Subtracting the pivot row clears idx and only touches larger indices.
        v.add_scaled(it->second, -coeff);
    }
    return v;
}

bool EchelonSpan::insert(const SparseVector& v)
{
    for (const auto& e : v.entries())
        if (e.first >= ambient_)
            throw Error(ErrorCode::OracleFailure, "vector index outside its slice");
    SparseVector r = reduce(v);
    if (r.is_zero())
        return false;
    Rational lead = r.entries().front().second;
    r = r.scaled(1 / lead);
    rows_.emplace(r.leading_index(), std::move(r));
    return true;
}

std::vector<std::size_t> EchelonSpan::non_pivots() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
        if (!rows_.count(i))
            out.push_back(i);
    return out;
}

std::vector<SparseVector> EchelonSpan::basis() const
{
    std::vector<SparseVector> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_)
        out.push_back(row);
    return out;
}

} // namespace divalg
