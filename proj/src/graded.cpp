#include "divalg/graded.hpp"
#include "divalg/errors.hpp"

#include <algorithm>
#include <mutex>

namespace divalg {

namespace {

// Lazily filled, internally synchronized degree -> slice cache. Entries are never
// erased, so references handed out stay valid for the owner's lifetime.
class SliceCache {
public:
    template <class Make>
    const DegreeSlice& get(int m, Make&& make) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = slices_.find(m);
            if (it != slices_.end())
                return *it->second;
        }
        auto fresh = std::make_unique<DegreeSlice>(m, make());
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = slices_.emplace(m, std::move(fresh));
        return *it->second;
    }

private:
    mutable std::mutex mu_;
    mutable std::map<int, std::unique_ptr<DegreeSlice>> slices_;
};

int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

int ceil_div(int a, int b)
{
    return -floor_div(-a, b);
}

std::optional<int> top_nonzero_degree(int lo, int hi, const std::function<std::size_t(int)>& dim)
{
    for (int m = hi; m >= lo; --m)
        if (dim(m) > 0)
            return m;
    return std::nullopt;
}

// Keeps multiplying the span by the degree-0 elements until it stops growing.
template <class Mult>
void close_under_degree_zero(EchelonSpan& span, const std::vector<SparseVector>& degree_zero, Mult&& mult)
{
    if (degree_zero.empty())
        return;
    bool grew = true;
    while (grew && !span.is_full()) {
        grew = false;
        for (const auto& row : span.basis())
            for (const auto& z : degree_zero)
                grew |= span.insert(mult(z, row));
    }
}

std::vector<SparseVector> basis_rows(const EchelonSpan& span)
{
    if (span.is_full()) {
        std::vector<SparseVector> units;
        units.reserve(span.ambient());
        for (std::size_t i = 0; i < span.ambient(); ++i)
            units.push_back(SparseVector::unit(i));
        return units;
    }
    return span.basis();
}

} // namespace

const char* certificate_kind_name(CertificateKind k)
{
    switch (k) {
    case CertificateKind::Exact: return "exact";
    case CertificateKind::BoundedSearch: return "bounded-search";
    case CertificateKind::NonFGWitness: return "non-fg-witness";
    case CertificateKind::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DegreeSlice::DegreeSlice(int degree, std::vector<Label> basis) : degree_(degree), basis_(std::move(basis))
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!index_.emplace(basis_[i], i).second)
            throw Error(ErrorCode::OracleFailure,
                        "duplicate basis label " + to_string(basis_[i]) + " in degree " + std::to_string(degree));
}

std::optional<std::size_t> DegreeSlice::index_of(const Label& label) const
{
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------- algebra

struct GradedAlgebra::Impl {
    SliceOracle slices;
    std::optional<PairingOracle> product;
    std::size_t unit_index;
    std::string tag;
    std::optional<int> max_degree;
    SliceCache cache;
};

GradedAlgebra::GradedAlgebra(SliceOracle slices, std::optional<PairingOracle> product, std::size_t unit_index,
                             std::string base_ring_tag, std::optional<int> max_degree)
    : impl_(std::make_shared<Impl>())
{
    impl_->slices = std::move(slices);
    impl_->product = std::move(product);
    impl_->unit_index = unit_index;
    impl_->tag = std::move(base_ring_tag);
    impl_->max_degree = max_degree;
}

const DegreeSlice& GradedAlgebra::slice(int m) const
{
    if (impl_->max_degree && m > *impl_->max_degree)
        throw Error(ErrorCode::OracleRangeExceeded,
                    "algebra slice " + std::to_string(m) + " beyond oracle range " + std::to_string(*impl_->max_degree));
    return impl_->cache.get(m, [&] { return m < 0 ? std::vector<Label>{} : impl_->slices(m); });
}

bool GradedAlgebra::has_structure() const
{
    return impl_->product.has_value();
}

std::optional<int> GradedAlgebra::max_degree() const
{
    return impl_->max_degree;
}

SparseVector GradedAlgebra::product(int a, const SparseVector& x, int b, const SparseVector& y) const
{
    if (!impl_->product)
        throw Error(ErrorCode::StructureUnavailable, "algebra has no multiplication table");
    if (a < 0 || b < 0)
        throw Error(ErrorCode::InvalidArgument, "algebra degrees are nonnegative");
    SparseVector out;
    for (const auto& [i, ci] : x.entries())
        for (const auto& [j, cj] : y.entries())
            out.add_scaled((*impl_->product)(a, i, b, j), ci * cj);
    return out;
}

SparseVector GradedAlgebra::unit() const
{
    if (slice(0).dimension() == 0)
        return {};
    return SparseVector::unit(impl_->unit_index);
}

const std::string& GradedAlgebra::base_ring_tag() const
{
    return impl_->tag;
}

// ---------------------------------------------------------------- module

struct GradedModule::Impl {
    Impl(GradedAlgebra r, SliceOracle s, std::optional<PairingOracle> a, DegreeRange d)
        : ring(std::move(r)), source(std::move(s)), action(std::move(a)), range(d)
    {
    }

    GradedAlgebra ring;
    SliceOracle source;
    std::optional<PairingOracle> action;
    DegreeRange range;
    SliceCache cache;
    SliceCache empties;
};

GradedModule::GradedModule(GradedAlgebra ring, int offset, SliceOracle source, std::optional<PairingOracle> action,
                           DegreeRange source_range)
    : impl_(std::make_shared<Impl>(std::move(ring), std::move(source), std::move(action), source_range)), offset_(offset)
{
}

const GradedAlgebra& GradedModule::ring() const
{
    return impl_->ring;
}

DegreeRange GradedModule::source_range() const
{
    return impl_->range;
}

const DegreeSlice& GradedModule::source_slice(int m) const
{
    if (!impl_->range.contains(m))
        throw Error(ErrorCode::OracleRangeExceeded, "module slice " + std::to_string(m) + " outside oracle range");
    return impl_->cache.get(m, [&] { return impl_->source(m); });
}

const DegreeSlice& GradedModule::slice(int m) const
{
    if (m < offset_)
        return impl_->empties.get(m, [] { return std::vector<Label>{}; });
    return source_slice(m);
}

bool GradedModule::has_structure() const
{
    return impl_->action.has_value();
}

SparseVector GradedModule::act(int a, const SparseVector& r, int b, const SparseVector& x) const
{
    if (!impl_->action)
        throw Error(ErrorCode::StructureUnavailable, "module has no action table");
    SparseVector out;
    for (const auto& [i, ci] : r.entries())
        for (const auto& [j, cj] : x.entries())
            out.add_scaled((*impl_->action)(a, i, b, j), ci * cj);
    return out;
}

GradedModule GradedModule::with_offset(int q) const
{
    if (q < offset_ && impl_->range.min && q < *impl_->range.min)
        throw Error(ErrorCode::OracleRangeExceeded,
                    "oracle cannot produce slices down to degree " + std::to_string(q));
    GradedModule out = *this;
    out.offset_ = q;
    return out;
}

// ---------------------------------------------------------------- generators

std::vector<int> GeneratorSet::degrees() const
{
    std::vector<int> out;
    for (const auto& e : entries)
        out.push_back(e.degree);
    return out;
}

std::size_t GeneratorSet::count_in_degree(int d) const
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [d](const GeneratorEntry& e) { return e.degree == d; }));
}

std::optional<int> GeneratorSet::max_degree() const
{
    if (entries.empty())
        return std::nullopt;
    int m = entries.front().degree;
    for (const auto& e : entries)
        m = std::max(m, e.degree);
    return m;
}

std::optional<int> SpanProfile::first_deficient_degree() const
{
    for (std::size_t k = 0; k < ranks.size(); ++k)
        if (ranks[k] != dimensions[k])
            return first_degree + static_cast<int>(k);
    return std::nullopt;
}

// ---------------------------------------------------------------- constructions

GradedAlgebra truncate(const GradedAlgebra& r, int period)
{
    if (period < 1)
        throw Error(ErrorCode::InvalidArgument, "truncation period must be positive");
    std::optional<PairingOracle> product;
    if (r.has_structure())
        product = [r](int a, std::size_t i, int b, std::size_t j) {
            return r.product(a, SparseVector::unit(i), b, SparseVector::unit(j));
        };
    return GradedAlgebra(
        [r, period](int m) { return m % period == 0 ? r.slice(m).basis() : std::vector<Label>{}; }, product,
        0, r.base_ring_tag(), r.max_degree());
}

GradedAlgebra reindex_algebra(const GradedAlgebra& r, int period)
{
    if (period < 1)
        throw Error(ErrorCode::InvalidArgument, "reindexing period must be positive");
    std::optional<PairingOracle> product;
    if (r.has_structure())
        product = [r, period](int a, std::size_t i, int b, std::size_t j) {
            return r.product(a * period, SparseVector::unit(i), b * period, SparseVector::unit(j));
        };
    std::optional<int> max;
    if (r.max_degree())
        max = floor_div(*r.max_degree(), period);
    std::size_t unit_index = 0;
    if (!r.unit().is_zero())
        unit_index = r.unit().leading_index();
    return GradedAlgebra([r, period](int n) { return r.slice(n * period).basis(); }, product, unit_index,
                         r.base_ring_tag(), max);
}

GradedModule as_module(const GradedAlgebra& r)
{
    std::optional<PairingOracle> action;
    if (r.has_structure())
        action = [r](int a, std::size_t i, int b, std::size_t j) {
            return r.product(a, SparseVector::unit(i), b, SparseVector::unit(j));
        };
    DegreeRange range;
    range.max = r.max_degree();
    return GradedModule(r, 0, [r](int m) { return r.slice(m).basis(); }, action, range);
}

std::vector<GradedModule> decompose(const GradedModule& m, int period)
{
    if (period < 1)
        throw Error(ErrorCode::InvalidArgument, "decomposition period must be positive");
    GradedAlgebra ring = truncate(m.ring(), period);
    std::vector<GradedModule> out;
    for (int residue = 0; residue < period; ++residue) {
        auto in_class = [period, residue](int d) { return ((d % period) + period) % period == residue; };
        std::optional<PairingOracle> action;
        if (m.has_structure())
            action = [m](int a, std::size_t i, int b, std::size_t j) {
                return m.act(a, SparseVector::unit(i), b, SparseVector::unit(j));
            };
        out.emplace_back(
            ring, m.offset(),
            [m, in_class](int d) { return in_class(d) ? m.source_slice(d).basis() : std::vector<Label>{}; }, action,
            m.source_range());
    }
    return out;
}

int reindexed_offset(int period, int residue, int offset)
{
    if (period < 1 || residue < 0 || residue >= period)
        throw Error(ErrorCode::InvalidArgument, "need 0 <= residue < period");
    return ceil_div(offset - residue, period);
}

GradedModule reindex_component(const GradedModule& n_i, int period, int residue, int offset)
{
    const int q = reindexed_offset(period, residue, offset);
    GradedAlgebra ring = reindex_algebra(n_i.ring(), period);
    std::optional<PairingOracle> action;
    if (n_i.has_structure())
        action = [n_i, period, residue](int a, std::size_t i, int b, std::size_t j) {
            return n_i.act(a * period, SparseVector::unit(i), b * period + residue, SparseVector::unit(j));
        };
    DegreeRange src = n_i.source_range();
    DegreeRange range;
    if (src.min)
        range.min = ceil_div(*src.min - residue, period);
    if (src.max)
        range.max = floor_div(*src.max - residue, period);
    return GradedModule(
        ring, q, [n_i, period, residue](int n) { return n_i.source_slice(n * period + residue).basis(); }, action,
        range);
}

GradedModule change_offset(const GradedModule& m, int q)
{
    return m.with_offset(q);
}

// ---------------------------------------------------------------- searches

namespace {

FGCertificate bounded_certificate(const GeneratorSet& gens, const std::vector<std::size_t>& counts, int first,
                                  int bound, std::optional<int> top)
{
    FGCertificate c;
    c.kind = CertificateKind::BoundedSearch;
    c.generators = gens;
    c.probe_bound = bound;
    int stab = first;
    bool any = false;
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k] > 0) {
            stab = first + static_cast<int>(k);
            any = true;
        }
    c.stabilization_degree = stab;
    c.stabilized = !any || !top || stab < *top;
    c.note = c.stabilized ? "no new generators in degrees " + std::to_string(stab + 1) + ".." + std::to_string(bound)
                          : "new generators still appear at the top probed degree";
    return c;
}

} // namespace

AlgebraSearch find_algebra_generators(const GradedAlgebra& r, int bound, const GeneratorSet& seeds)
{
    if (bound < 1)
        throw Error(ErrorCode::InvalidArgument, "probe bound must be at least 1");
    if (!r.has_structure())
        throw Error(ErrorCode::StructureUnavailable, "generator search needs a multiplication table");

    AlgebraSearch out;
    out.generators = seeds;
    std::vector<EchelonSpan> spans;
    auto mult = [&r](int a, const SparseVector& x, int b, const SparseVector& y) { return r.product(a, x, b, y); };

    for (int m = 0; m <= bound; ++m) {
        const auto& sl = r.slice(m);
        EchelonSpan span(sl.dimension());
        std::size_t found = 0;
        if (sl.dimension() > 0) {
            if (m == 0) {
                span.insert(r.unit());
            } else {
                for (const auto& g : out.generators.entries) {
                    if (g.degree < 1 || g.degree >= m)
                        continue;
                    for (const auto& row : basis_rows(spans[m - g.degree]))
                        span.insert(mult(g.degree, g.element, m - g.degree, row));
                }
            }
            for (const auto& s : seeds.entries)
                if (s.degree == m)
                    span.insert(s.element);
            std::vector<SparseVector> zero_gens;
            for (const auto& g : out.generators.entries)
                if (g.degree == 0)
                    zero_gens.push_back(g.element);
            close_under_degree_zero(span, zero_gens,
                                    [&](const SparseVector& z, const SparseVector& y) { return mult(0, z, m, y); });
            for (std::size_t idx : span.non_pivots()) {
                out.generators.entries.push_back({m, SparseVector::unit(idx)});
                span.insert(SparseVector::unit(idx));
                ++found;
            }
        }
        out.new_counts.push_back(found);
        spans.push_back(std::move(span));
    }
    auto top = top_nonzero_degree(1, bound, [&r](int m) { return r.dimension(m); });
    out.certificate = bounded_certificate(out.generators, out.new_counts, 0, bound, top);
    if (!top)
        out.certificate.note = "all positive-degree slices vanish; trivially finitely generated";
    return out;
}

ModuleSearch find_module_generators(const GradedModule& m, int bound, const GeneratorSet& seeds)
{
    const int p = m.offset();
    if (bound < p)
        throw Error(ErrorCode::InvalidArgument, "probe bound is below the module offset");
    if (!m.has_structure())
        throw Error(ErrorCode::StructureUnavailable, "generator search needs an action table");

    const GradedAlgebra& r = m.ring();
    ModuleSearch out;
    out.first_degree = p;
    out.generators = seeds;
    std::vector<SparseVector> ring_zero;
    if (r.dimension(0) > 1)
        for (std::size_t i = 0; i < r.dimension(0); ++i)
            ring_zero.push_back(SparseVector::unit(i));

    for (int d = p; d <= bound; ++d) {
        const auto& sl = m.slice(d);
        EchelonSpan span(sl.dimension());
        std::size_t found = 0;
        if (sl.dimension() > 0) {
            for (const auto& g : out.generators.entries) {
                if (g.degree > d)
                    continue;
                if (g.degree == d) {
                    span.insert(g.element);
                    continue;
                }
                const int k = d - g.degree;
                for (std::size_t b = 0; b < r.dimension(k); ++b)
                    span.insert(m.act(k, SparseVector::unit(b), g.degree, g.element));
                if (span.is_full())
                    break;
            }
            close_under_degree_zero(span, ring_zero,
                                    [&](const SparseVector& z, const SparseVector& y) { return m.act(0, z, d, y); });
            for (std::size_t idx : span.non_pivots()) {
                out.generators.entries.push_back({d, SparseVector::unit(idx)});
                span.insert(SparseVector::unit(idx));
                ++found;
            }
        }
        out.new_counts.push_back(found);
    }
    auto top = top_nonzero_degree(p, bound, [&m](int d) { return m.dimension(d); });
    out.certificate = bounded_certificate(out.generators, out.new_counts, p, bound, top);
    return out;
}

SpanProfile generated_subalgebra(const GradedAlgebra& r, const GeneratorSet& gens, int bound)
{
    SpanProfile prof;
    std::vector<EchelonSpan> spans;
    std::vector<SparseVector> zero_gens;
    for (const auto& g : gens.entries)
        if (g.degree == 0)
            zero_gens.push_back(g.element);
    for (int m = 0; m <= bound; ++m) {
        EchelonSpan span(r.dimension(m));
        if (span.ambient() > 0) {
            if (m == 0)
                span.insert(r.unit());
            for (const auto& g : gens.entries) {
                if (g.degree == m) {
                    span.insert(g.element);
                } else if (g.degree >= 1 && g.degree < m) {
                    for (const auto& row : basis_rows(spans[m - g.degree]))
                        span.insert(r.product(g.degree, g.element, m - g.degree, row));
                }
            }
            close_under_degree_zero(span, zero_gens, [&](const SparseVector& z, const SparseVector& y) {
                return r.product(0, z, m, y);
            });
        }
        prof.ranks.push_back(span.rank());
        prof.dimensions.push_back(span.ambient());
        spans.push_back(std::move(span));
    }
    return prof;
}

SpanProfile generated_submodule(const GradedModule& m, const GeneratorSet& gens, int bound)
{
    SpanProfile prof;
    prof.first_degree = m.offset();
    const GradedAlgebra& r = m.ring();
    std::vector<SparseVector> ring_zero;
    if (r.dimension(0) > 1)
        for (std::size_t i = 0; i < r.dimension(0); ++i)
            ring_zero.push_back(SparseVector::unit(i));
    for (int d = m.offset(); d <= bound; ++d) {
        EchelonSpan span(m.dimension(d));
        if (span.ambient() > 0) {
            for (const auto& g : gens.entries) {
                if (g.degree == d) {
                    span.insert(g.element);
                } else if (g.degree < d) {
                    const int k = d - g.degree;
                    for (std::size_t b = 0; b < r.dimension(k) && !span.is_full(); ++b)
                        span.insert(m.act(k, SparseVector::unit(b), g.degree, g.element));
                }
            }
            close_under_degree_zero(span, ring_zero,
                                    [&](const SparseVector& z, const SparseVector& y) { return m.act(0, z, d, y); });
        }
        prof.ranks.push_back(span.rank());
        prof.dimensions.push_back(span.ambient());
    }
    return prof;
}

namespace {

template <class Profile>
GeneratorSet prune(GeneratorSet gens, Profile&& profile)
{
    for (std::size_t i = gens.entries.size(); i-- > 0;) {
        GeneratorSet rest = gens;
        rest.entries.erase(rest.entries.begin() + static_cast<std::ptrdiff_t>(i));
        SpanProfile prof = profile(rest, gens.entries[i].degree);
        if (!prof.ranks.empty() && prof.ranks.back() == prof.dimensions.back())
            gens = std::move(rest);
    }
    return gens;
}

} // namespace

GeneratorSet prune_algebra_generators(const GradedAlgebra& r, const GeneratorSet& gens)
{
    return prune(gens, [&r](const GeneratorSet& rest, int d) { return generated_subalgebra(r, rest, d); });
}

GeneratorSet prune_module_generators(const GradedModule& m, const GeneratorSet& gens)
{
    return prune(gens, [&m](const GeneratorSet& rest, int d) {
        return d < m.offset() ? SpanProfile{} : generated_submodule(m, rest, d);
    });
}

// ---------------------------------------------------------------- quotients

SparseVector relabel(const DegreeSlice& from, const DegreeSlice& to, const SparseVector& v)
{
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, c] : v.entries()) {
        auto j = to.index_of(from.label(i));
        if (!j)
            throw Error(ErrorCode::NotASubmodule, "label " + to_string(from.label(i)) + " missing in degree " +
                                                      std::to_string(to.degree()));
        entries.emplace_back(*j, c);
    }
    return SparseVector::from_entries(std::move(entries));
}

namespace {

std::vector<Label> complement_labels(const DegreeSlice& whole, const DegreeSlice& part)
{
    for (const auto& l : part.basis())
        if (!whole.index_of(l))
            throw Error(ErrorCode::NotASubmodule,
                        "label " + to_string(l) + " of degree " + std::to_string(part.degree()) + " not in the module");
    std::vector<Label> out;
    for (const auto& l : whole.basis())
        if (!part.index_of(l))
            out.push_back(l);
    return out;
}

// Drops the components along K's labels and renumbers the rest into the quotient slice.
SparseVector project(const SparseVector& v, const DegreeSlice& whole, const DegreeSlice& kernel,
                     const DegreeSlice& quotient)
{
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, c] : v.entries()) {
        const Label& l = whole.label(i);
        if (kernel.index_of(l))
            continue;
        entries.emplace_back(*quotient.index_of(l), c);
    }
    return SparseVector::from_entries(std::move(entries));
}

} // namespace

GradedModule quotient_module(const GradedModule& m, const GradedModule& k)
{
    // The action closure needs the quotient's own slices; a module over the same
    // oracle (built first, without action) supplies them.
    SliceOracle labels = [m, k](int d) { return complement_labels(m.slice(d), k.slice(d)); };
    GradedModule bare(m.ring(), m.offset(), labels, std::nullopt, m.source_range());
    std::optional<PairingOracle> action;
    if (m.has_structure())
        action = [m, k, bare](int a, std::size_t i, int b, std::size_t j) {
            const auto& qb = bare.slice(b);
            auto lifted = relabel(qb, m.slice(b), SparseVector::unit(j));
            auto v = m.act(a, SparseVector::unit(i), b, lifted);
            return project(v, m.slice(a + b), k.slice(a + b), bare.slice(a + b));
        };
    return GradedModule(m.ring(), m.offset(), labels, action, m.source_range());
}

GradedAlgebra quotient_algebra(const GradedAlgebra& r, const GradedModule& k)
{
    SliceOracle labels = [r, k](int d) { return complement_labels(r.slice(d), k.slice(d)); };
    GradedAlgebra bare(labels, std::nullopt, 0, r.base_ring_tag(), r.max_degree());
    std::size_t unit_index = 0;
    SparseVector u = r.unit();
    if (!u.is_zero()) {
        if (!u.is_unit())
            throw Error(ErrorCode::InvalidArgument, "quotient algebra needs the unit to be a basis label");
        if (auto idx = bare.slice(0).index_of(r.slice(0).label(u.leading_index())))
            unit_index = *idx;
    }
    std::optional<PairingOracle> product;
    if (r.has_structure())
        product = [r, k, bare](int a, std::size_t i, int b, std::size_t j) {
            auto x = relabel(bare.slice(a), r.slice(a), SparseVector::unit(i));
            auto y = relabel(bare.slice(b), r.slice(b), SparseVector::unit(j));
            auto v = r.product(a, x, b, y);
            return project(v, r.slice(a + b), k.slice(a + b), bare.slice(a + b));
        };
    return GradedAlgebra(labels, product, unit_index, r.base_ring_tag() + " / ideal", r.max_degree());
}

} // namespace divalg
