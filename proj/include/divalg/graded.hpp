#pragma once

#include "divalg/arith.hpp"
#include "divalg/sparse.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace divalg {

// Opaque basis label. The toric backend uses lattice points; tables use (index).
using Label = IntVector;

class DegreeSlice {
public:
    DegreeSlice() = default;
    DegreeSlice(int degree, std::vector<Label> basis);

    int degree() const { return degree_; }
    const std::vector<Label>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    std::optional<std::size_t> index_of(const Label& label) const;
    const Label& label(std::size_t i) const { return basis_.at(i); }

private:
    int degree_ = 0;
    std::vector<Label> basis_;
    std::map<Label, std::size_t> index_;
};

struct DegreeRange {
    std::optional<int> min;
    std::optional<int> max;

    bool contains(int m) const { return (!min || m >= *min) && (!max || m <= *max); }
};

using SliceOracle = std::function<std::vector<Label>(int degree)>;
// Product (or action) of basis element i of slice a with basis element j of slice b.
using PairingOracle = std::function<SparseVector(int a, std::size_t i, int b, std::size_t j)>;

// Graded algebra R = (+)_{m >= 0} R_m over a field, given by oracles.
// Copies share the slice cache; the cache is internally synchronized.
class GradedAlgebra {
public:
    GradedAlgebra(SliceOracle slices, std::optional<PairingOracle> product, std::size_t unit_index,
                  std::string base_ring_tag, std::optional<int> max_degree = std::nullopt);

    const DegreeSlice& slice(int m) const;
    std::size_t dimension(int m) const { return slice(m).dimension(); }
    bool has_structure() const;
    std::optional<int> max_degree() const;

    SparseVector product(int a, const SparseVector& x, int b, const SparseVector& y) const;
    SparseVector unit() const;
    const std::string& base_ring_tag() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Graded module M = (+)_m M_m with M_m = 0 below the offset. The source oracle
// may supply slices below the offset, which is what change_offset draws on.
class GradedModule {
public:
    GradedModule(GradedAlgebra ring, int offset, SliceOracle source, std::optional<PairingOracle> action,
                 DegreeRange source_range = {});

    const GradedAlgebra& ring() const;
    int offset() const { return offset_; }
    DegreeRange source_range() const;

    const DegreeSlice& slice(int m) const;
    // Slice of the backing oracle, ignoring the offset; still range-checked.
    const DegreeSlice& source_slice(int m) const;
    std::size_t dimension(int m) const { return slice(m).dimension(); }
    bool has_structure() const;

    // Action of ring element r (degree a) on module element x (degree b).
    SparseVector act(int a, const SparseVector& r, int b, const SparseVector& x) const;

    GradedModule with_offset(int q) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    int offset_;
};

enum class CertificateKind { Exact, BoundedSearch, NonFGWitness, Inconclusive };
const char* certificate_kind_name(CertificateKind k);

struct GeneratorEntry {
    int degree = 0;
    SparseVector element;
};

struct GeneratorSet {
    std::vector<GeneratorEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    std::vector<int> degrees() const;
    std::size_t count_in_degree(int d) const;
    std::optional<int> max_degree() const;
};

struct CountingFailure {
    int max_generator_degree = 0;
    int max_generators = 0;
    int degree = 0;   // first m where every candidate multiset falls short
    Integer capacity; // largest achievable sum of h_alg(m - n_i)
    Integer required; // h_mod(m)
    Integer span_cap; // h_mod(p) h_alg(m-p) + ... + h_mod(e) h_alg(m-e)
};

struct NonFGWitness {
    std::vector<CountingFailure> failures;
    std::optional<int> algebra_growth;
    std::optional<int> module_growth;
    IntVector recession_direction; // set by exact polyhedral refutations
    std::string summary;
};

struct FGCertificate {
    CertificateKind kind = CertificateKind::Inconclusive;
    GeneratorSet generators;
    int stabilization_degree = 0;
    std::optional<int> probe_bound; // always set for bounded-search
    bool stabilized = false;        // no new generators in the probed tail
    std::optional<NonFGWitness> witness;
    std::string note;
};

struct AlgebraSearch {
    GeneratorSet generators;              // seeds first, then discovered ones
    std::vector<std::size_t> new_counts;  // index = degree, 0..bound
    FGCertificate certificate;
};

struct ModuleSearch {
    GeneratorSet generators;
    int first_degree = 0;                 // new_counts[k] is for degree first_degree + k
    std::vector<std::size_t> new_counts;
    FGCertificate certificate;
};

// Rank of the generated sub-object against the full slice dimension, per degree.
struct SpanProfile {
    int first_degree = 0;
    std::vector<std::size_t> ranks;
    std::vector<std::size_t> dimensions;

    std::optional<int> first_deficient_degree() const;
    bool is_full() const { return !first_deficient_degree(); }
};

GradedAlgebra truncate(const GradedAlgebra& r, int period);
// Degree n of the result is degree n*period of r; realizes R(IL) from R(L).
GradedAlgebra reindex_algebra(const GradedAlgebra& r, int period);

GradedModule as_module(const GradedAlgebra& r);

// Components N_0..N_{I-1} over truncate(M.ring(), I).
std::vector<GradedModule> decompose(const GradedModule& m, int period);

// Smallest q with q*period + residue >= offset.
int reindexed_offset(int period, int residue, int offset);

// N_i' with slice n equal to slice n*period + residue of n_i, over reindex_algebra.
GradedModule reindex_component(const GradedModule& n_i, int period, int residue, int offset);

GradedModule change_offset(const GradedModule& m, int q);

AlgebraSearch find_algebra_generators(const GradedAlgebra& r, int bound, const GeneratorSet& seeds = {});
ModuleSearch find_module_generators(const GradedModule& m, int bound, const GeneratorSet& seeds = {});

SpanProfile generated_subalgebra(const GradedAlgebra& r, const GeneratorSet& gens, int bound);
SpanProfile generated_submodule(const GradedModule& m, const GeneratorSet& gens, int bound);

// Drops generators already spanned by the others in their own degree, last first.
// With a one-dimensional degree-0 ring piece the surviving degree multiset is an invariant.
GeneratorSet prune_algebra_generators(const GradedAlgebra& r, const GeneratorSet& gens);
GeneratorSet prune_module_generators(const GradedModule& m, const GeneratorSet& gens);

// Quotient by a submodule whose slices are spanned by a subset of M's basis labels.
GradedModule quotient_module(const GradedModule& m, const GradedModule& k);
// Quotient ring R/K for an ideal K given as a label-subset submodule of R.
GradedAlgebra quotient_algebra(const GradedAlgebra& r, const GradedModule& k);

// Moves a vector between two slices whose labels overlap, matching by label.
SparseVector relabel(const DegreeSlice& from, const DegreeSlice& to, const SparseVector& v);

} // namespace divalg
