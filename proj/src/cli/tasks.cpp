#include "tasks.hpp"

#include "divalg/errors.hpp"
#include "divalg/induction.hpp"

#include <algorithm>

namespace divalg::cli {

namespace {

class Params {
public:
    Params(const JobConfig& cfg, const TaskSpec& t, const Overrides& ov) : cfg_(cfg), name_(t.name)
    {
        node_ = YAML::Clone(t.params);
        node_.remove("name");
        if (ov.divisor)
            node_["divisor"] = *ov.divisor;
        if (ov.max_degree)
            node_["max-degree"] = *ov.max_degree;
        if (ov.bound)
            node_["bound"] = *ov.bound;
        if (ov.probe)
            node_["probe"] = *ov.probe;
        if (node_["divisor"] && !cfg.divisors.count(node_["divisor"].as<std::string>()) &&
            cfg.backend == Backend::Toric)
            fail("undefined divisor '" + node_["divisor"].as<std::string>() + "'");
    }

    const YAML::Node& node() const { return node_; }

    bool has(const char* key) const { return static_cast<bool>(node_[key]); }

    int integer(const char* key, int def) const { return has(key) ? as_int(node_[key], key) : def; }

    std::optional<int> opt_integer(const char* key) const
    {
        if (!has(key))
            return std::nullopt;
        return as_int(node_[key], key);
    }

    bool flag(const char* key, bool def) const
    {
        if (!has(key))
            return def;
        try {
            return node_[key].as<bool>();
        } catch (const YAML::Exception&) {
            fail(std::string("'") + key + "' must be true or false");
        }
    }

    std::string text(const char* key, const std::string& def) const
    {
        return has(key) ? node_[key].as<std::string>() : def;
    }

    std::vector<int> int_list(const char* key, std::vector<int> def) const
    {
        if (!has(key))
            return def;
        if (!node_[key].IsSequence())
            fail(std::string("'") + key + "' must be a list of integers");
        std::vector<int> out;
        for (const auto& x : node_[key])
            out.push_back(as_int(x, key));
        return out;
    }

    const CartierDivisor& divisor(const char* key) const
    {
        if (!has(key))
            fail(std::string("missing required parameter '") + key + "'");
        return cfg_.divisor(node_[key].as<std::string>());
    }

    CartierDivisor divisor_or_zero(const char* key) const
    {
        return has(key) ? divisor(key) : CartierDivisor::zero(*cfg_.variety);
    }

    Decomposition components() const
    {
        if (!has("components"))
            fail("missing required parameter 'components'");
        Decomposition dec;
        for (const auto& c : node_["components"]) {
            if (c.IsSequence()) {
                dec.components.push_back(cfg_.divisor(c[0].as<std::string>()));
                dec.multiplicities.push_back(as_int(c[1], "components"));
            } else {
                dec.components.push_back(cfg_.divisor(c.as<std::string>()));
                dec.multiplicities.push_back(1);
            }
        }
        return dec;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::SchemaError, cfg_.path + ": task '" + name_ + "': " + what);
    }

private:
    int as_int(const YAML::Node& n, const char* key) const
    {
        try {
            return n.as<int>();
        } catch (const YAML::Exception&) {
            fail(std::string("'") + key + "' must be an integer");
        }
    }

    const JobConfig& cfg_;
    std::string name_;
    YAML::Node node_;
};

Json degree_list(const GeneratorSet& g)
{
    Json a = Json::array();
    for (int d : g.degrees())
        a.push_back(d);
    return a;
}

std::vector<int> sorted_degrees(const GeneratorSet& g)
{
    auto d = g.degrees();
    std::sort(d.begin(), d.end());
    return d;
}

SliceLookup algebra_slices(const GradedAlgebra& r)
{
    return [r](int m) -> const DegreeSlice& { return r.slice(m); };
}

SliceLookup module_slices(const GradedModule& m)
{
    return [m](int d) -> const DegreeSlice& { return m.slice(d); };
}

Json set_json(const std::set<std::size_t>& s)
{
    Json a = Json::array();
    for (auto i : s)
        a.push_back(i);
    return a;
}

// ------------------------------------------------------------------ toric tasks

void task_hilbert(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const int n = p.integer("max-degree", 10);
    DimensionTable t;
    if (cfg.backend == Backend::Tabulated) {
        const HilbertTable& h = cfg.table(p.text("module", p.text("algebra", cfg.table_order.front())));
        t = h.dims;
        out.report["table"] = h.label;
        out.report["synthetic"] = h.synthetic;
    } else {
        const auto& x = *cfg.variety;
        const CartierDivisor& l = p.divisor("divisor");
        if (p.has("module-divisor")) {
            int off = p.integer("offset", 0);
            t = h0_table(x, p.divisor("module-divisor"), l, off, n);
        } else {
            t = h0_table(x, CartierDivisor::zero(x), l, 0, n);
        }
    }
    out.report["verdict"] = "dimension table";
    out.report["dimensions"] = dims_json(t);
    out.csv = to_csv(t);
    out.passed = true;
    out.summary = std::to_string(t.dims.size()) + " dims ending " + std::to_string(t.dims.back());
}

void task_fg_algebra(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    GradedAlgebra r = divisorial_algebra(x, l);
    FGCertificate exact = exact_fg_algebra(x, l);
    const int bound = p.integer("bound", std::max(10, 2 * exact.stabilization_degree + 2));
    AlgebraSearch search = find_algebra_generators(r, bound);
    const bool agrees = sorted_degrees(search.generators) == sorted_degrees(exact.generators);
    out.report["verdict"] = "finitely generated";
    out.report["certificate"] = certificate_json(exact, algebra_slices(r));
    out.report["bounded_search"] = certificate_json(search.certificate, nullptr);
    out.report["bounded_search_agrees"] = agrees;
    out.passed = agrees && search.certificate.stabilized;
    out.summary = "exact, " + std::to_string(exact.generators.size()) + " generators, stabilization " +
                  std::to_string(exact.stabilization_degree);
}

void task_fg_module(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const CartierDivisor d = p.divisor_or_zero("module-divisor");
    const int off = p.integer("offset", 0);
    FGCertificate exact = exact_fg_module(x, d, l, off);
    GradedModule m = divisorial_module(x, d, l, off);
    out.report["certificate"] = certificate_json(exact, module_slices(m));
    if (exact.kind != CertificateKind::Exact) {
        out.report["verdict"] = "not finitely generated";
        out.summary = "non-fg witness";
        return;
    }
    const int bound = p.integer("bound", std::max(off + 10, 2 * exact.stabilization_degree + 2));
    ModuleSearch search = find_module_generators(m, bound);
    const bool agrees = sorted_degrees(search.generators) == sorted_degrees(exact.generators);
    out.report["verdict"] = "finitely generated";
    out.report["bounded_search"] = certificate_json(search.certificate, nullptr);
    out.report["bounded_search_agrees"] = agrees;
    out.passed = agrees && search.certificate.stabilized;
    out.summary = "exact, " + std::to_string(exact.generators.size()) + " generators";
}

void task_truncate(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const int period = p.integer("period", 2);
    GradedAlgebra r = divisorial_algebra(x, l);
    const int s0 = exact_fg_algebra(x, l).stabilization_degree;
    const int bound = p.integer("bound", std::max(10, period * (s0 + 1) + period));
    AlgebraSearch direct = find_algebra_generators(r, bound);
    AlgebraSearch trunc = find_algebra_generators(truncate(r, period), bound);
    const int limit = period * direct.certificate.stabilization_degree + period;
    const bool within = trunc.certificate.stabilization_degree <= limit;
    out.report["period"] = period;
    out.report["direct"] = certificate_json(direct.certificate, nullptr);
    out.report["truncated"] = certificate_json(trunc.certificate, nullptr);
    out.report["truncated_limit"] = limit;
    out.report["within_limit"] = within;
    out.passed = direct.certificate.stabilized && trunc.certificate.stabilized && within;
    out.report["verdict"] = out.passed ? "both stabilize" : "stabilization not observed";
    out.summary = "R stabilizes at " + std::to_string(direct.certificate.stabilization_degree) + ", R^[" +
                  std::to_string(period) + "] at " + std::to_string(trunc.certificate.stabilization_degree);
}

void task_decompose(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const CartierDivisor d = p.divisor_or_zero("module-divisor");
    const int off = p.integer("offset", 0);
    const int period = p.integer("period", 2);
    const int n = p.integer("max-degree", 30);
    const int bound = p.integer("bound", 8);
    GradedModule m = divisorial_module(x, d, l, off);
    auto parts = decompose(m, period);

    bool sums = true;
    Json rows = Json::array();
    for (int deg = off; deg <= n; ++deg) {
        Json row = Json::array({deg, m.dimension(deg)});
        std::size_t total = 0;
        for (const auto& part : parts) {
            row.push_back(part.dimension(deg));
            total += part.dimension(deg);
        }
        sums &= total == m.dimension(deg);
        rows.push_back(row);
    }
    Json comps = Json::array();
    bool all_stable = true;
    for (int i = 0; i < period; ++i) {
        GradedModule ni = reindex_component(parts[static_cast<std::size_t>(i)], period, i, off);
        ModuleSearch s = find_module_generators(ni, std::max(bound, ni.offset() + 1));
        all_stable &= s.certificate.stabilized;
        comps.push_back(Json{{"residue", i},
                             {"offset", reindexed_offset(period, i, off)},
                             {"certificate", certificate_json(s.certificate, nullptr)}});
    }
    out.report["period"] = period;
    out.report["dimensions"] = rows;
    out.report["dimension_sums_match"] = sums;
    out.report["components"] = comps;
    out.passed = sums && all_stable;
    out.report["verdict"] = out.passed ? "decomposition consistent" : "decomposition check failed";
    out.summary = std::to_string(period) + " components, sums " + (sums ? "match" : "differ");
}

void task_restrict(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const CartierDivisor& s = p.divisor("restrict-to");
    const CartierDivisor d = p.divisor_or_zero("module-divisor");
    const int off = p.integer("offset", 0);
    const int n = p.integer("max-degree", 12);
    GradedModule m = divisorial_module(x, d, l, off);
    GradedModule k = restriction_kernel(x, l, s, off, d);
    GradedModule im = restriction_image(m, k);
    bool exact = true;
    Json rows = Json::array();
    for (int deg = off; deg <= n; ++deg) {
        exact &= m.dimension(deg) == k.dimension(deg) + im.dimension(deg);
        rows.push_back(Json::array({deg, m.dimension(deg), k.dimension(deg), im.dimension(deg)}));
    }
    ModuleSearch search = find_module_generators(im, n);
    out.report["columns"] = Json::array({"degree", "module", "kernel", "image"});
    out.report["dimensions"] = rows;
    out.report["exact"] = exact;
    out.report["image_certificate"] = certificate_json(search.certificate, module_slices(im));
    out.passed = exact && search.certificate.stabilized;
    out.report["verdict"] = out.passed ? "exact; image stabilizes" : "check failed";
    out.summary = std::string("exactness ") + (exact ? "holds" : "fails") + ", image generators " +
                  std::to_string(search.generators.size());
}

Json trace_json(const PipelineTrace& t, const GradedModule* m)
{
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        bool exact = std::all_of(s.exactness.begin(), s.exactness.end(), [](const ExactnessRow& r) { return r.exact(); });
        Json c = Json::array();
        for (int v : s.c)
            c.push_back(v);
        steps.push_back(Json{{"c", c},
                             {"s", s.s},
                             {"exact", exact},
                             {"image_generator_degrees", degree_list(s.image_gens)},
                             {"kernel_generator_degrees", degree_list(s.kernel_gens)},
                             {"image_certificate", certificate_json(s.image_certificate, nullptr)}});
    }
    Json j;
    j["steps"] = steps;
    Json order = Json::array();
    for (auto o : t.order)
        order.push_back(o);
    j["order"] = order;
    j["translation"] = int_vector_json(t.translation);
    j["final_generator_degrees"] = degree_list(t.final_generators);
    j["minimal_generator_degrees"] = degree_list(t.minimal_generators);
    if (m)
        j["minimal_generators"] = generators_json(t.minimal_generators, module_slices(*m));
    j["offset_generator_count"] = t.offset_generators.size();
    j["descent"] = Json{{"checked_up_to_degree", t.descent.checked_degree_max},
                        {"elements", t.descent.elements_checked},
                        {"max_alpha_steps", t.descent.max_alpha_steps},
                        {"terminated_within_bound", t.descent.all_terminated}};
    j["verified_all_c"] = t.verified_all_c;
    j["note"] = t.note;
    return j;
}

void task_induct34(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    Decomposition dec = p.components();
    const CartierDivisor d = p.divisor_or_zero("module-divisor");
    const int off = p.integer("offset", 0);
    PipelineOptions opts;
    opts.bound = p.integer("bound", 12);
    opts.verify_all_c = p.flag("verify-all-c", false);
    opts.descent_degree = p.integer("descent-degree", -1);
    if (p.has("order")) {
        std::vector<std::size_t> order;
        for (int v : p.int_list("order", {}))
            order.push_back(static_cast<std::size_t>(v));
        opts.order = order;
    }
    PipelineTrace t = theorem34_pipeline(x, dec, d, off, opts);
    GradedModule m = divisorial_module(x, d, dec.total(x), off);
    FGCertificate exact = exact_fg_module(x, d, dec.total(x), off);
    ModuleSearch direct = find_module_generators(m, opts.bound);
    const bool match = sorted_degrees(t.minimal_generators) == sorted_degrees(exact.generators) &&
                       sorted_degrees(direct.generators) == sorted_degrees(exact.generators);
    out.report["trace"] = trace_json(t, &m);
    out.report["exact_generator_degrees"] = degree_list(exact.generators);
    out.report["direct_search"] = certificate_json(direct.certificate, nullptr);
    out.report["matches_direct"] = match;
    out.passed = match && t.descent.all_terminated;
    out.report["verdict"] = out.passed ? "generated; pipeline agrees with direct computation" : "mismatch";
    out.summary = std::to_string(t.steps.size()) + " steps, " + std::to_string(t.minimal_generators.size()) +
                  " minimal generators";
}

Json algebra_pipeline_json(const AlgebraPipelineResult& r, const GradedAlgebra& alg)
{
    Json j;
    j["certificate"] = certificate_json(r.certificate, nullptr);
    j["quotient_generator_degrees"] = degree_list(r.quotient_gens);
    j["kernel_generator_degrees"] = degree_list(r.kernel_gens);
    j["minimal_generator_degrees"] = degree_list(r.trace.minimal_generators);
    j["minimal_generators"] = generators_json(r.trace.minimal_generators, algebra_slices(alg));
    Json steps = Json::array();
    for (const auto& s : r.trace.steps) {
        Json c = Json::array();
        for (int v : s.c)
            c.push_back(v);
        steps.push_back(Json{{"c", c},
                             {"s", s.s},
                             {"image_generator_degrees", degree_list(s.image_gens)},
                             {"kernel_generator_degrees", degree_list(s.kernel_gens)}});
    }
    j["kernel_chain"] = steps;
    Json red = Json::array();
    for (const auto& s : r.reductions)
        red.push_back(s);
    j["reductions"] = red;
    j["note"] = r.trace.note;
    return j;
}

void task_induct35(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    Decomposition dec = p.components();
    PipelineOptions opts;
    opts.bound = p.integer("bound", 12);
    auto j1 = static_cast<std::size_t>(p.integer("first-component", 0));
    AlgebraPipelineResult r = theorem35_pipeline(x, dec, j1, opts);
    const CartierDivisor total = dec.components.empty() ? CartierDivisor::zero(x) : dec.total(x);
    FGCertificate exact = exact_fg_algebra(x, total);
    const bool match = sorted_degrees(r.trace.minimal_generators) == sorted_degrees(exact.generators);
    out.report["pipeline"] = algebra_pipeline_json(r, divisorial_algebra(x, total));
    out.report["exact_generator_degrees"] = degree_list(exact.generators);
    out.report["matches_exact"] = match;
    out.passed = match;
    out.report["verdict"] = match ? "generated; pipeline agrees with the exact decision" : "mismatch";
    out.summary = std::to_string(r.trace.minimal_generators.size()) + " minimal algebra generators";
}

void task_induct36(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    Decomposition dec = p.components();
    PipelineOptions opts;
    opts.bound = p.integer("bound", 12);
    auto j1 = static_cast<std::size_t>(p.integer("first-component", 0));
    const CartierDivisor& a = p.divisor("ample");
    auto ls = p.int_list("l-values", {1, 2, 3});
    auto ps = p.int_list("p-values", {0});
    TwistPipelineResult r = theorem36_pipeline(x, dec, j1, a, ls, ps, opts);
    const CartierDivisor total = dec.components.empty() ? CartierDivisor::zero(x) : dec.total(x);
    bool ok = sorted_degrees(r.algebra.trace.minimal_generators) ==
              sorted_degrees(exact_fg_algebra(x, total).generators);
    out.report["algebra"] = algebra_pipeline_json(r.algebra, divisorial_algebra(x, total));
    Json mods = Json::array();
    for (const auto& e : r.modules) {
        FGCertificate exact = exact_fg_module(x, Integer(e.l) * a, total, e.p);
        const GeneratorSet& found =
            dec.components.empty() ? e.certificate.generators : e.trace.minimal_generators;
        bool match = sorted_degrees(found) == sorted_degrees(exact.generators);
        ok &= match;
        mods.push_back(Json{{"l", e.l},
                            {"p", e.p},
                            {"certificate", certificate_json(e.certificate, nullptr)},
                            {"minimal_generator_degrees", degree_list(found)},
                            {"exact_generator_degrees", degree_list(exact.generators)},
                            {"matches_exact", match}});
    }
    out.report["modules"] = mods;
    out.passed = ok;
    out.report["verdict"] = ok ? "all certificates positive" : "mismatch";
    out.summary = std::to_string(r.modules.size()) + " twisted modules";
}

void task_fixmov(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& d = p.divisor("divisor");
    FixMov fm = fix_mov(x, d);
    const std::size_t h_d = h0(x, d);
    const std::size_t h_mov = h0(x, fm.mov);
    out.report["fix"] = divisor_json(fm.fix);
    out.report["mov"] = divisor_json(fm.mov);
    out.report["h0_divisor"] = h_d;
    out.report["h0_mov"] = h_mov;
    out.report["base_point_free"] = is_base_point_free(x, d);
    out.passed = h_d == h_mov;
    out.report["verdict"] = out.passed ? "h0(Mov D) = h0(D)" : "h0 mismatch";
    out.summary = "Fix " + to_string(fm.fix.coeffs()) + ", Mov " + to_string(fm.mov.coeffs());
}

void task_fix_stability(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const int j = p.integer("J", 1);
    FixStabilityReport r = fix_stability_check(x, l, j, p.integer("m-max", 10));
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"m", row.m},
                            {"fix", divisor_json(row.fix)},
                            {"mov", divisor_json(row.mov)},
                            {"fix_matches", row.fix_matches},
                            {"mov_matches", row.mov_matches}});
    out.report["J"] = j;
    out.report["E"] = divisor_json(r.e);
    out.report["F"] = divisor_json(r.f);
    out.report["F_base_point_free"] = r.f_base_point_free;
    out.report["rows"] = rows;
    out.report["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
    out.passed = r.holds;
    out.report["verdict"] = r.holds ? "stable" : "unstable";
    out.summary = std::string("stability ") + (r.holds ? "holds" : "fails");
}

void task_supp_fix(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    const auto& x = *cfg.variety;
    const CartierDivisor& l = p.divisor("divisor");
    const CartierDivisor& g = p.divisor("ample");
    const int j = p.integer("J", 1);
    const int r = p.integer("r", 0);
    auto range = p.int_list("m-range", {1, 20});
    if (range.size() != 2 || range[0] > range[1])
        p.fail("'m-range' must be [lo, hi] with lo <= hi");
    SuppFixReport rep = supp_fix_with_ample(x, l, j, r, g, range[0], range[1]);
    SuppFixReport doubled = supp_fix_with_ample(x, l, j, r, g, range[0], 2 * range[1]);
    Json rows = Json::array();
    for (const auto& row : rep.rows)
        rows.push_back(Json{{"m", row.m},
                            {"has_sections", row.has_sections},
                            {"supp_fix", set_json(row.support)},
                            {"equals_supp_e", row.equals_supp_e}});
    out.report["E"] = divisor_json(rep.e);
    out.report["F"] = divisor_json(rep.f);
    out.report["supp_E"] = set_json(rep.supp_e);
    out.report["rows"] = rows;
    out.report["m0"] = rep.m0 ? Json(*rep.m0) : Json(nullptr);
    out.report["m0_doubled_range"] = doubled.m0 ? Json(*doubled.m0) : Json(nullptr);
    out.passed = rep.m0 && doubled.m0 && *rep.m0 == *doubled.m0;
    out.report["verdict"] = out.passed ? "Supp Fix stabilizes at Supp E" : "no stable m0 in range";
    out.summary = rep.m0 ? "m0 = " + std::to_string(*rep.m0) : std::string("no m0");
}

// ------------------------------------------------------------------ shared tasks

void task_kappa(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    DimensionTable t;
    if (cfg.backend == Backend::Tabulated) {
        const HilbertTable& h = cfg.table(p.text("module", p.text("algebra", "module")));
        t = h.dims;
        out.report["table"] = h.label;
        out.report["synthetic"] = h.synthetic;
    } else {
        const auto& x = *cfg.variety;
        const int n = p.integer("max-degree", 30);
        if (p.has("module-divisor"))
            t = h0_table(x, p.divisor("module-divisor"), p.divisor("divisor"), p.integer("offset", 0), n);
        else
            t = h0_table(x, CartierDivisor::zero(x), p.divisor("divisor"), 0, n);
    }
    const int lo = std::max(0, t.first_degree);
    auto k = growth_degree(t, lo, t.last_degree());
    out.report["range"] = Json::array({lo, t.last_degree()});
    out.report["growth_degree"] = k ? Json(*k) : Json(nullptr);
    out.report["estimate"] = true;
    out.report["verdict"] = k ? "growth exponent " + std::to_string(*k) : std::string("eventually zero");
    out.passed = true;
    out.summary = k ? "kappa ~ " + std::to_string(*k) : std::string("kappa = -infinity");
}

void task_nonfg(const JobConfig& cfg, const Params& p, TaskOutcome& out)
{
    NonFGSearchLimits limits;
    limits.max_generator_degree = p.opt_integer("max-generator-degree");
    limits.max_generators = p.opt_integer("max-generators");
    HilbertTable alg, mod;
    bool exact_fg = false;
    if (cfg.backend == Backend::Tabulated) {
        alg = cfg.table(p.text("algebra", "algebra"));
        mod = cfg.table(p.text("module", "module"));
    } else {
        const auto& x = *cfg.variety;
        const CartierDivisor& l = p.divisor("divisor");
        const CartierDivisor d = p.divisor_or_zero("module-divisor");
        const int off = p.integer("offset", 0);
        const int hi = p.integer("probe", 30);
        alg = export_toric_algebra(x, l, hi, "toric-algebra");
        mod = export_toric_module(x, d, l, off, hi, "toric-module");
        exact_fg = exact_fg_module(x, d, l, off).kind == CertificateKind::Exact;
        out.report["exact_verdict"] = exact_fg ? "finitely generated" : "not finitely generated";
    }
    const int probe = p.integer("probe", std::min(alg.dims.last_degree(), mod.dims.last_degree()));
    FGCertificate c = nonfg_witness(alg, mod, probe, limits);
    out.report["algebra_table"] = alg.label;
    out.report["module_table"] = mod.label;
    out.report["synthetic"] = alg.synthetic || mod.synthetic;
    out.report["probe"] = probe;
    out.report["certificate"] = certificate_json(c, nullptr);
    const bool fired = c.kind == CertificateKind::NonFGWitness;
    out.report["verdict"] = fired ? "not finitely generated (counting witness)" : "inconclusive";
    out.passed = cfg.backend == Backend::Tabulated ? fired : (fired != exact_fg);
    out.summary = fired ? "non-fg witness" : "no witness";
}

} // namespace

TaskOutcome run_task(const JobConfig& cfg, const TaskSpec& task, const Overrides& ov)
{
    TaskOutcome out;
    Params p(cfg, task, ov);
    out.report["schema"] = kSchemaVersion;
    out.report["task"] = Json{{"name", task.name}, {"params", yaml_to_json(p.node())}};
    out.report["backend"] = cfg.backend == Backend::Toric ? "toric" : "tabulated";
    try {
        if (task.name == "hilbert")
            task_hilbert(cfg, p, out);
        else if (task.name == "fg-algebra")
            task_fg_algebra(cfg, p, out);
        else if (task.name == "fg-module")
            task_fg_module(cfg, p, out);
        else if (task.name == "truncate")
            task_truncate(cfg, p, out);
        else if (task.name == "decompose")
            task_decompose(cfg, p, out);
        else if (task.name == "restrict")
            task_restrict(cfg, p, out);
        else if (task.name == "induct-34")
            task_induct34(cfg, p, out);
        else if (task.name == "induct-35")
            task_induct35(cfg, p, out);
        else if (task.name == "induct-36")
            task_induct36(cfg, p, out);
        else if (task.name == "fixmov")
            task_fixmov(cfg, p, out);
        else if (task.name == "fix-stability")
            task_fix_stability(cfg, p, out);
        else if (task.name == "supp-fix")
            task_supp_fix(cfg, p, out);
        else if (task.name == "kappa")
            task_kappa(cfg, p, out);
        else if (task.name == "nonfg")
            task_nonfg(cfg, p, out);
        else
            p.fail("unknown task");
        out.report["status"] = "ok";
        out.report["passed"] = out.passed;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError)
            throw;
        out.error = true;
        out.passed = false;
        out.report["status"] = "error";
        out.report["error"] = Json{{"code", error_code_name(e.code())}, {"message", e.what()}};
        out.summary = std::string("error ") + error_code_name(e.code());
    }
    return out;
}

} // namespace divalg::cli
