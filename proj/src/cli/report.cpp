#include "report.hpp"

#include <limits>

namespace divalg::cli {

Json integer_json(const Integer& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Json int_vector_json(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(integer_json(x));
    return a;
}

Json divisor_json(const CartierDivisor& d)
{
    return int_vector_json(d.coeffs());
}

Json dims_json(const DimensionTable& t)
{
    Json rows = Json::array();
    for (std::size_t k = 0; k < t.dims.size(); ++k)
        rows.push_back(Json::array({t.first_degree + static_cast<int>(k), t.dims[k]}));
    return rows;
}

Json generators_json(const GeneratorSet& g, const SliceLookup& slices)
{
    Json out = Json::array();
    for (const auto& e : g.entries) {
        Json terms = Json::array();
        const DegreeSlice& s = slices(e.degree);
        for (const auto& [i, c] : e.element.entries())
            terms.push_back(Json{{"label", int_vector_json(s.label(i))}, {"coeff", to_fraction_string(c)}});
        out.push_back(Json{{"degree", e.degree}, {"terms", terms}});
    }
    return out;
}

Json witness_json(const NonFGWitness& w)
{
    Json j;
    j["summary"] = w.summary;
    j["algebra_growth"] = w.algebra_growth ? Json(*w.algebra_growth) : Json(nullptr);
    j["module_growth"] = w.module_growth ? Json(*w.module_growth) : Json(nullptr);
    if (!w.recession_direction.empty())
        j["recession_direction"] = int_vector_json(w.recession_direction);
    Json fails = Json::array();
    for (const auto& f : w.failures)
        fails.push_back(Json{{"max_generator_degree", f.max_generator_degree},
                             {"max_generators", f.max_generators},
                             {"failing_degree", f.degree},
                             {"capacity", integer_json(f.capacity)},
                             {"required", integer_json(f.required)},
                             {"span_cap", integer_json(f.span_cap)}});
    j["counting_failures"] = fails;
    return j;
}

Json certificate_json(const FGCertificate& c, const SliceLookup& slices)
{
    Json j;
    j["kind"] = certificate_kind_name(c.kind);
    if (c.kind == CertificateKind::BoundedSearch || c.probe_bound)
        j["probe_bound"] = c.probe_bound ? Json(*c.probe_bound) : Json(nullptr);
    j["stabilized"] = c.stabilized;
    j["stabilization_degree"] = c.stabilization_degree;
    j["generator_count"] = c.generators.size();
    Json degs = Json::array();
    for (int d : c.generators.degrees())
        degs.push_back(d);
    j["generator_degrees"] = degs;
    if (slices && !c.generators.empty())
        j["generators"] = generators_json(c.generators, slices);
    if (c.witness)
        j["witness"] = witness_json(*c.witness);
    j["note"] = c.note;
    return j;
}

Json yaml_to_json(const YAML::Node& n)
{
    switch (n.Type()) {
    case YAML::NodeType::Map: {
        Json o = Json::object();
        for (const auto& kv : n)
            o[kv.first.as<std::string>()] = yaml_to_json(kv.second);
        return o;
    }
    case YAML::NodeType::Sequence: {
        Json a = Json::array();
        for (const auto& x : n)
            a.push_back(yaml_to_json(x));
        return a;
    }
    case YAML::NodeType::Scalar: {
        const std::string s = n.Scalar();
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos == s.size())
                return v;
        } catch (const std::exception&) {
        }
        if (s == "true")
            return true;
        if (s == "false")
            return false;
        return s;
    }
    default:
        return nullptr;
    }
}

std::string render(const Json& report)
{
    return report.dump(2) + "\n";
}

} // namespace divalg::cli
