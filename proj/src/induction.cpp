#include "divalg/induction.hpp"
#include "divalg/errors.hpp"
#include "divalg/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace divalg {

namespace {

std::string vec_string(const std::vector<int>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void require_full(const SpanProfile& prof, const std::string& what)
{
    if (auto d = prof.first_deficient_degree())
        throw Error(ErrorCode::SpanFailure, what + " fails to span degree " + std::to_string(*d));
}

// Drops labels absent from the quotient slice (they belong to the kernel).
SparseVector project_onto(const DegreeSlice& from, const DegreeSlice& quotient, const SparseVector& v)
{
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, c] : v.entries())
        if (auto j = quotient.index_of(from.label(i)))
            entries.emplace_back(*j, c);
    return SparseVector::from_entries(std::move(entries));
}

// Coefficients expressing target as a combination of columns, or nullopt.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<SparseVector>& cols, const SparseVector& target,
                                                   std::size_t dim)
{
    const std::size_t n = cols.size();
    RatMatrix a(dim, RatVector(n + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [i, c] : cols[j].entries())
            a[i][j] = c;
    for (const auto& [i, c] : target.entries())
        a[i][n] = c;
    auto pivots = row_reduce(a, n + 1);
    std::vector<Rational> coef(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == n)
            return std::nullopt;
        coef[pivots[r]] = a[r][n];
    }
    return coef;
}

void validate_decomposition(const Decomposition& l)
{
    if (l.components.size() != l.multiplicities.size())
        throw Error(ErrorCode::InvalidArgument, "components and multiplicities differ in length");
    for (std::size_t i = 0; i < l.components.size(); ++i) {
        if (l.multiplicities[i] <= 0)
            throw Error(ErrorCode::InvalidArgument, "multiplicities must be positive");
        if (!l.components[i].is_effective() || l.components[i].is_zero())
            throw Error(ErrorCode::InvalidArgument, "components must be effective and nonzero");
    }
}

// Sequence of component indices, one per step, taking C from start to the full multiplicities.
std::vector<std::size_t> step_sequence(const Decomposition& l, std::vector<int> c,
                                       const std::optional<std::vector<std::size_t>>& order)
{
    std::vector<std::size_t> seq;
    if (!order) {
        for (std::size_t j = 0; j < c.size(); ++j)
            while (c[j] < l.multiplicities[j]) {
                seq.push_back(j);
                ++c[j];
            }
        return seq;
    }
    // A permutation of the components is expanded component by component;
    // any other list is taken literally.
    std::vector<std::size_t> sorted = *order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(c.size());
    std::iota(iota.begin(), iota.end(), 0);
    if (sorted == iota) {
        for (std::size_t j : *order)
            while (c[j] < l.multiplicities[j]) {
                seq.push_back(j);
                ++c[j];
            }
        return seq;
    }
    for (std::size_t j : *order) {
        if (j >= c.size() || c[j] >= l.multiplicities[j])
            throw Error(ErrorCode::InvalidArgument, "restriction order overshoots component " + std::to_string(j));
        seq.push_back(j);
        ++c[j];
    }
    if (c != l.multiplicities)
        throw Error(ErrorCode::InvalidArgument, "restriction order does not reach L");
    return seq;
}

struct Stage {
    GradedModule whole;  // N_C
    GradedModule kernel; // N_{C+S}
    GradedModule image;  // N_C / N_{C+S}
    GeneratorSet image_gens;
};

Stage make_stage(const ToricVariety& x, const Decomposition& l, const CartierDivisor& total, const CartierDivisor& d,
                 int p, const std::vector<int>& c, std::size_t s)
{
    std::vector<int> next = c;
    ++next[s];
    GradedModule whole = divisorial_module(x, d - l.partial(x, c), total, p);
    GradedModule kernel = divisorial_module(x, d - l.partial(x, next), total, p);
    GradedModule image = quotient_module(whole, kernel);
    return {whole, kernel, image, {}};
}

RestrictionStep run_step(Stage& st, const std::vector<int>& c, std::size_t s, int p, int bound)
{
    RestrictionStep step;
    step.c = c;
    step.s = s;
    for (int m = p; m <= bound; ++m) {
        ExactnessRow row{m, st.whole.dimension(m), st.kernel.dimension(m), st.image.dimension(m)};
        if (!row.exact())
            throw Error(ErrorCode::ExactnessFailure, "restriction at C = " + vec_string(c) + " is not exact in degree " +
                                                         std::to_string(m));
        step.exactness.push_back(row);
    }
    ModuleSearch search = find_module_generators(st.image, bound);
    if (!search.certificate.stabilized)
        throw Error(ErrorCode::StepNotFG, "restriction at C = " + vec_string(c) + ", S = L_" + std::to_string(s) +
                                              " still produces generators at the bound");
    step.image_gens = search.generators;
    step.image_certificate = search.certificate;
    st.image_gens = search.generators;
    return step;
}

// Splits an element of M_m along the chain and divides the remainder by alpha,
// returning the number of alpha applications.
int alpha_descent(const GradedModule& m, const std::vector<Stage>& chain, const GradedModule& last,
                  const SparseVector& alpha, SparseVector x, int deg)
{
    const int p = m.offset();
    const GradedAlgebra& r = m.ring();
    int steps = 0;
    while (true) {
        for (const Stage& st : chain) {
            SparseVector local = relabel(m.slice(deg), st.whole.slice(deg), x);
            std::vector<SparseVector> cols;
            for (const auto& g : st.image_gens.entries) {
                if (g.degree > deg)
                    continue;
                SparseVector lifted = relabel(st.image.slice(g.degree), st.whole.slice(g.degree), g.element);
                const int k = deg - g.degree;
                for (std::size_t b = 0; b < r.dimension(k); ++b)
                    cols.push_back(st.whole.act(k, SparseVector::unit(b), g.degree, lifted));
            }
            std::vector<SparseVector> projected;
            for (const auto& w : cols)
                projected.push_back(project_onto(st.whole.slice(deg), st.image.slice(deg), w));
            auto coef = solve_in_span(projected, project_onto(st.whole.slice(deg), st.image.slice(deg), local),
                                      st.image.dimension(deg));
            if (!coef)
                throw Error(ErrorCode::SpanFailure, "image generators miss an element of degree " + std::to_string(deg));
            for (std::size_t j = 0; j < cols.size(); ++j)
                local.add_scaled(cols[j], -(*coef)[j]);
            // local now lies in the kernel; move it back to M's coordinates.
            x = relabel(st.whole.slice(deg), m.slice(deg), local);
        }
        if (deg == p || x.is_zero())
            return steps; // bottom slice of the last kernel is spanned by the offset generators
        SparseVector y = relabel(last.slice(deg), m.slice(deg - 1), relabel(m.slice(deg), last.slice(deg), x));
        if (!(m.act(1, alpha, deg - 1, y) == x))
            throw Error(ErrorCode::SpanFailure, "alpha does not divide the remainder in degree " + std::to_string(deg));
        x = y;
        --deg;
        ++steps;
    }
}

std::size_t origin_index(const DegreeSlice& s, std::size_t dim)
{
    auto idx = s.index_of(IntVector(dim, 0));
    if (!idx)
        throw Error(ErrorCode::HypothesisFailure, "L has no torus-invariant section of degree one");
    return *idx;
}

bool image_stabilizes(const ToricVariety& x, const Decomposition& l, const CartierDivisor& total,
                      const CartierDivisor& d, int p, const std::vector<int>& c, std::size_t s, int bound)
{
    Stage st = make_stage(x, l, total, d, p, c, s);
    return find_module_generators(st.image, bound).certificate.stabilized;
}

} // namespace

GeneratorSet embed_generators(const GradedModule& from, const GradedModule& into, const GeneratorSet& gens)
{
    GeneratorSet out;
    for (const auto& g : gens.entries)
        out.entries.push_back({g.degree, relabel(from.slice(g.degree), into.slice(g.degree), g.element)});
    return out;
}

GeneratorSet lemma32_reconstruct(const GradedAlgebra& r, const GradedAlgebra& t, const GradedModule& k,
                                 const GeneratorSet& t_gens, const GeneratorSet& k_gens, int bound)
{
    if (k.offset() <= 0 && k.dimension(0) != 0)
        throw Error(ErrorCode::DegreeZeroKernel, "kernel is nonzero in degree 0");
    if (t.dimension(0) != r.dimension(0))
        throw Error(ErrorCode::DegreeZeroKernel, "R_0 -> T_0 is not an isomorphism");
    GeneratorSet out;
    for (const auto& g : t_gens.entries)
        out.entries.push_back({g.degree, relabel(t.slice(g.degree), r.slice(g.degree), g.element)});
    for (const auto& g : k_gens.entries) {
        if (g.degree <= 0)
            throw Error(ErrorCode::DegreeZeroKernel, "kernel generator in degree " + std::to_string(g.degree));
        out.entries.push_back({g.degree, relabel(k.slice(g.degree), r.slice(g.degree), g.element)});
    }
    require_full(generated_subalgebra(r, out, bound), "lifted quotient and kernel generators");
    return out;
}

GeneratorSet lemma33_extend(const GradedModule& m, const GradedModule& k, const GradedModule& q,
                            const GeneratorSet& k_gens, const GeneratorSet& q_gens, int bound)
{
    for (int d = m.offset(); d <= bound; ++d)
        if (m.dimension(d) != k.dimension(d) + q.dimension(d))
            throw Error(ErrorCode::ExactnessFailure, "dimensions do not add up in degree " + std::to_string(d));
    GeneratorSet out = embed_generators(q, m, q_gens);
    for (auto& e : embed_generators(k, m, k_gens).entries)
        out.entries.push_back(std::move(e));
    require_full(generated_submodule(m, out, bound), "submodule and lifted quotient generators");
    return out;
}

CartierDivisor Decomposition::total(const ToricVariety& x) const
{
    return partial(x, multiplicities);
}

CartierDivisor Decomposition::partial(const ToricVariety& x, const std::vector<int>& c) const
{
    CartierDivisor out = CartierDivisor::zero(x);
    for (std::size_t i = 0; i < components.size(); ++i)
        out = out + Integer(c.at(i)) * components[i];
    return out;
}

PipelineTrace theorem34_pipeline(const ToricVariety& x, const Decomposition& l, const CartierDivisor& d, int p,
                                 const PipelineOptions& opts)
{
    validate_decomposition(l);
    if (l.components.empty())
        throw Error(ErrorCode::InvalidArgument, "restriction-induction needs at least one component");
    if (opts.bound < p + 1)
        throw Error(ErrorCode::InvalidArgument, "bound must exceed the offset");
    const CartierDivisor total = l.total(x);
    GradedModule m = divisorial_module(x, d, total, p);
    GradedAlgebra r = m.ring();

    PipelineTrace trace;
    trace.translation = IntVector(x.dim(), 0);
    trace.alpha = SparseVector::unit(origin_index(r.slice(1), x.dim()));
    std::vector<int> c(l.components.size(), 0);
    trace.order = step_sequence(l, c, opts.order);

    std::vector<Stage> chain;
    for (std::size_t s : trace.order) {
        chain.push_back(make_stage(x, l, total, d, p, c, s));
        trace.steps.push_back(run_step(chain.back(), c, s, p, opts.bound));
        for (auto& e : embed_generators(chain.back().image, m, chain.back().image_gens).entries)
            trace.final_generators.entries.push_back(std::move(e));
        ++c[s];
    }

    GradedModule last = divisorial_module(x, d - total, total, p);
    const auto& bottom = last.slice(p);
    for (std::size_t i = 0; i < bottom.dimension(); ++i)
        trace.offset_generators.entries.push_back({p, relabel(bottom, m.slice(p), SparseVector::unit(i))});
    for (const auto& e : trace.offset_generators.entries)
        trace.final_generators.entries.push_back(e);

    trace.span = generated_submodule(m, trace.final_generators, opts.bound);
    require_full(trace.span, "pipeline generators");
    trace.minimal_generators = prune_module_generators(m, trace.final_generators);

    const int top = std::min(opts.bound, opts.descent_degree < 0 ? p + 3 : opts.descent_degree);
    trace.descent.checked_degree_max = top;
    for (int deg = p; deg <= top; ++deg)
        for (std::size_t i = 0; i < m.dimension(deg); ++i) {
            int steps = alpha_descent(m, chain, last, trace.alpha, SparseVector::unit(i), deg);
            trace.descent.max_alpha_steps = std::max(trace.descent.max_alpha_steps, steps);
            trace.descent.all_terminated &= steps <= deg - p;
            ++trace.descent.elements_checked;
        }

    if (opts.verify_all_c) {
        std::vector<int> box(l.components.size(), 0);
        while (true) {
            for (std::size_t j = 0; j < box.size(); ++j)
                if (box[j] < l.multiplicities[j] && !image_stabilizes(x, l, total, d, p, box, j, opts.bound))
                    throw Error(ErrorCode::StepNotFG,
                                "restriction at C = " + vec_string(box) + ", S = L_" + std::to_string(j) +
                                    " still produces generators at the bound");
            std::size_t i = 0;
            while (i < box.size() && box[i] == l.multiplicities[i])
                box[i++] = 0;
            if (i == box.size())
                break;
            ++box[i];
        }
        trace.verified_all_c = true;
    }
    trace.note = trace.verified_all_c ? "restriction hypothesis verified for every C in the box"
                                      : "restriction hypothesis verified on the visited chain of C only";
    return trace;
}

AlgebraPipelineResult theorem35_pipeline(const ToricVariety& x, const Decomposition& l, std::size_t j1,
                                   const PipelineOptions& opts)
{
    validate_decomposition(l);
    const int bound = opts.bound;
    AlgebraPipelineResult res;
    res.trace.translation = IntVector(x.dim(), 0);

    if (l.components.empty()) {
        GradedAlgebra r = divisorial_algebra(x, CartierDivisor::zero(x));
        AlgebraSearch s = find_algebra_generators(r, bound);
        res.certificate = s.certificate;
        res.trace.final_generators = s.generators;
        res.trace.minimal_generators = s.generators;
        res.reductions.push_back("L = 0: every slice is one-dimensional and the degree-1 section generates");
        return res;
    }
    if (j1 >= l.components.size())
        throw Error(ErrorCode::InvalidArgument, "no component with index " + std::to_string(j1));
    const CartierDivisor& l1 = l.components[j1];
    if (h0(x, CartierDivisor::zero(x) - l1) != 0)
        throw Error(ErrorCode::HypothesisFailure, "H^0(X, -L_1) is nonzero");

    const CartierDivisor total = l.total(x);
    const CartierDivisor zero = CartierDivisor::zero(x);
    GradedAlgebra r = divisorial_algebra(x, total);
    GradedModule k = restriction_kernel(x, total, l1, 0);
    GradedAlgebra t = quotient_algebra(r, k);
    res.trace.alpha = SparseVector::unit(origin_index(r.slice(1), x.dim()));

    AlgebraSearch ts = find_algebra_generators(t, bound);
    if (!ts.certificate.stabilized)
        throw Error(ErrorCode::StepNotFG, "restricted algebra R(L)|_{L_1} still produces generators at the bound");
    res.quotient_gens = ts.generators;

    std::vector<int> c(l.components.size(), 0);
    c[j1] = 1;
    res.trace.order = step_sequence(l, c, std::nullopt);
    std::vector<Stage> chain;
    for (std::size_t s : res.trace.order) {
        chain.push_back(make_stage(x, l, total, zero, 0, c, s));
        res.trace.steps.push_back(run_step(chain.back(), c, s, 0, bound));
        ++c[s];
    }

    // M^0_{-L}(L) is generated by the section 1 placed in degree 1.
    GradedModule last = divisorial_module(x, zero - total, total, 0);
    GeneratorSet gens;
    for (std::size_t i = 0; i < last.dimension(0); ++i)
        gens.entries.push_back({0, SparseVector::unit(i)});
    gens.entries.push_back({1, SparseVector::unit(origin_index(last.slice(1), x.dim()))});
    res.trace.offset_generators = gens;
    require_full(generated_submodule(last, gens, bound), "the degree-1 section of M^0_{-L}(L)");

    for (std::size_t i = chain.size(); i-- > 0;) {
        res.trace.steps[i].kernel_gens = gens;
        gens = lemma33_extend(chain[i].whole, chain[i].kernel, chain[i].image, gens, chain[i].image_gens, bound);
    }
    res.kernel_gens = gens;

    GeneratorSet all = lemma32_reconstruct(r, t, k, res.quotient_gens, res.kernel_gens, bound);
    res.trace.final_generators = all;
    res.trace.span = generated_subalgebra(r, all, bound);
    res.trace.minimal_generators = prune_algebra_generators(r, all);
    res.trace.note = "restriction hypothesis verified on the visited chain of C only";

    res.certificate.kind = CertificateKind::BoundedSearch;
    res.certificate.generators = all;
    res.certificate.probe_bound = bound;
    res.certificate.stabilization_degree = all.max_degree().value_or(0);
    res.certificate.stabilized = true;
    res.certificate.note = "assembled from restriction-induction; verified up to degree " + std::to_string(bound);

    res.reductions.push_back("R(L) is finitely generated iff R(L)|_{L_1} is and M^0_{-L_1}(L) is a finitely "
                             "generated R(L)-module");
    for (const auto& st : res.trace.steps)
        res.reductions.push_back("M^0_{-C}(L) with C = " + vec_string(st.c) + " reduces to its restriction to L_" +
                                 std::to_string(st.s) + " and the next kernel");
    res.reductions.push_back("M^0_{-L}(L) is generated by 1 in degree 1");
    return res;
}

TwistPipelineResult theorem36_pipeline(const ToricVariety& x, const Decomposition& l, std::size_t j1,
                                   const CartierDivisor& ample, const std::vector<int>& l_values,
                                   const std::vector<int>& p_values, const PipelineOptions& opts)
{
    if (!is_ample(x, ample))
        throw Error(ErrorCode::NotAmple, "twisting divisor is not ample");
    TwistPipelineResult res;
    res.algebra = theorem35_pipeline(x, l, j1, opts);
    if (l.components.empty()) {
        // R(0)-modules: each slice of O(lA) is reached from the bottom one by the unit section.
        for (int lv : l_values)
            for (int p : p_values) {
                TwistedModuleEntry e;
                e.l = lv;
                e.p = p;
                e.certificate = exact_fg_module(x, Integer(lv) * ample, CartierDivisor::zero(x), p);
                e.trace.final_generators = e.certificate.generators;
                res.modules.push_back(std::move(e));
            }
        return res;
    }
    for (int lv : l_values)
        for (int p : p_values) {
            TwistedModuleEntry e;
            e.l = lv;
            e.p = p;
            e.trace = theorem34_pipeline(x, l, Integer(lv) * ample, p, opts);
            e.certificate.kind = CertificateKind::BoundedSearch;
            e.certificate.generators = e.trace.final_generators;
            e.certificate.probe_bound = opts.bound;
            e.certificate.stabilization_degree = e.trace.final_generators.max_degree().value_or(p);
            e.certificate.stabilized = true;
            e.certificate.note = "restriction-induction with alpha-descent";
            res.modules.push_back(std::move(e));
        }
    return res;
}

} // namespace divalg
