#pragma once

#include "divalg/graded.hpp"
#include "divalg/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divalg {

// Lifts quotient generators through T = R/K (labels of T are labels of R) and adds
// the kernel generators; the result is span-checked against R up to bound.
// Throws DegreeZeroKernel if K_0 != 0 and SpanFailure at the first deficient degree.
GeneratorSet lemma32_reconstruct(const GradedAlgebra& r, const GradedAlgebra& t, const GradedModule& k,
                                 const GeneratorSet& t_gens, const GeneratorSet& k_gens, int bound);

// Middle term of 0 -> K -> M -> M/K -> 0 from generators of both ends.
// Throws ExactnessFailure if dimensions do not add up, SpanFailure if the union does not generate.
GeneratorSet lemma33_extend(const GradedModule& m, const GradedModule& k, const GradedModule& q,
                            const GeneratorSet& k_gens, const GeneratorSet& q_gens, int bound);

// Carries generators of a label-subset submodule into the ambient module's coordinates.
GeneratorSet embed_generators(const GradedModule& from, const GradedModule& into, const GeneratorSet& gens);

struct ExactnessRow {
    int degree = 0;
    std::size_t middle = 0;
    std::size_t kernel = 0;
    std::size_t image = 0;
    bool exact() const { return middle == kernel + image; }
};

// Effective divisor L = sum l_i L_i with the components kept apart.
struct Decomposition {
    std::vector<CartierDivisor> components;
    std::vector<int> multiplicities;

    CartierDivisor total(const ToricVariety& x) const;
    CartierDivisor partial(const ToricVariety& x, const std::vector<int>& c) const;
};

struct RestrictionStep {
    std::vector<int> c;          // accumulated multiplicities before the step
    std::size_t s = 0;           // component restricted to
    GeneratorSet image_gens;     // generators of the image, in the image's coordinates
    GeneratorSet kernel_gens;    // filled when the chain is unwound from the top kernel down
    std::vector<ExactnessRow> exactness;
    FGCertificate image_certificate;
};

struct DescentStats {
    int checked_degree_max = 0;
    std::size_t elements_checked = 0;
    int max_alpha_steps = 0;   // never exceeds m - p for an element of degree m
    bool all_terminated = true;
};

struct PipelineTrace {
    std::vector<RestrictionStep> steps;
    GeneratorSet final_generators;
    GeneratorSet minimal_generators; // final_generators with redundant members pruned
    GeneratorSet offset_generators; // basis of the last kernel in the bottom degree
    SparseVector alpha;             // degree-1 section of L in R(L)
    IntVector translation;          // lattice translation applied to the components
    std::vector<std::size_t> order; // component order used
    bool verified_all_c = false;    // every C in the box, not only the visited chain
    DescentStats descent;
    SpanProfile span;               // final generators against the module, up to bound
    std::string note;
};

struct PipelineOptions {
    int bound = 12;
    std::optional<std::vector<std::size_t>> order; // component indices, may repeat; default smallest index first
    bool verify_all_c = false;
    int descent_degree = -1; // run explicit descent on every basis element up to this degree; < 0 picks p + 3
};

// Module generators of M^p_D(L) by restriction-induction along one chain of C's and alpha-descent.
PipelineTrace theorem34_pipeline(const ToricVariety& x, const Decomposition& l, const CartierDivisor& d, int p,
                                 const PipelineOptions& opts = {});

struct AlgebraPipelineResult {
    FGCertificate certificate; // bounded-search generators of R(L)
    PipelineTrace trace;       // kernel chain from C = L_1 up to C = L
    GeneratorSet quotient_gens;
    GeneratorSet kernel_gens;
    std::vector<std::string> reductions;
};

AlgebraPipelineResult theorem35_pipeline(const ToricVariety& x, const Decomposition& l, std::size_t j1,
                                   const PipelineOptions& opts = {});

struct TwistedModuleEntry {
    int l = 0;
    int p = 0;
    PipelineTrace trace;
    FGCertificate certificate;
};

struct TwistPipelineResult {
    AlgebraPipelineResult algebra;
    std::vector<TwistedModuleEntry> modules;
};

TwistPipelineResult theorem36_pipeline(const ToricVariety& x, const Decomposition& l, std::size_t j1,
                                   const CartierDivisor& ample, const std::vector<int>& l_values,
                                   const std::vector<int>& p_values, const PipelineOptions& opts = {});

} // namespace divalg
