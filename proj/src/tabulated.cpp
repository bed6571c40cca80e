#include "divalg/tabulated.hpp"
#include "divalg/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace divalg {

namespace {

[[noreturn]] void schema_error(const std::string& source, const YAML::Node& node, const std::string& what)
{
    std::string where = source;
    if (node.IsDefined() && node.Mark().line >= 0)
        where += ":" + std::to_string(node.Mark().line + 1) + ":" + std::to_string(node.Mark().column + 1);
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

template <class T>
T scalar_as(const std::string& source, const YAML::Node& node, const std::string& what)
{
    if (!node.IsScalar())
        schema_error(source, node, what + " must be a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        schema_error(source, node, what + " has the wrong type");
    }
}

SparseVector parse_combination(const std::string& source, const YAML::Node& node, std::size_t dim)
{
    if (!node.IsSequence())
        schema_error(source, node, "linear combination must be a list of [index, coefficient] pairs");
    std::vector<SparseVector::Entry> entries;
    for (const auto& term : node) {
        if (!term.IsSequence() || term.size() != 2)
            schema_error(source, term, "term must be [index, coefficient]");
        auto k = scalar_as<long long>(source, term[0], "basis index");
        if (k < 0 || static_cast<std::size_t>(k) >= dim)
            schema_error(source, term[0], "basis index out of range for the target degree");
        Rational c;
        try {
            c = parse_rational(scalar_as<std::string>(source, term[1], "coefficient"));
        } catch (const Error&) {
            schema_error(source, term[1], "coefficient is not a rational number");
        }
        entries.emplace_back(static_cast<std::size_t>(k), c);
    }
    return SparseVector::from_entries(std::move(entries));
}

const char* role_name(TableRole r)
{
    return r == TableRole::Algebra ? "algebra" : "module";
}

std::vector<Label> index_labels(std::int64_t n)
{
    std::vector<Label> out;
    for (std::int64_t i = 0; i < n; ++i)
        out.push_back(IntVector{Integer(i)});
    return out;
}

SparseVector lookup(const StructureTable& s, int a, std::size_t i, int b, std::size_t j)
{
    auto it = s.entries.find({a, i, b, j});
    if (it == s.entries.end())
        throw Error(ErrorCode::OracleFailure, "structure table has no entry for (" + std::to_string(a) + "," +
                                                  std::to_string(i) + ")*(" + std::to_string(b) + "," +
                                                  std::to_string(j) + ")");
    return it->second;
}

} // namespace

HilbertTable load_table(const std::string& text, const std::string& source)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::SchemaError, source + ":" + std::to_string(e.mark.line + 1) + ":" +
                                                std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap())
        schema_error(source, root, "table document must be a mapping");

    static const std::set<std::string> known{"label", "provenance", "role", "synthetic", "offset", "entries",
                                             "structure"};
    for (const auto& kv : root) {
        auto key = kv.first.as<std::string>();
        if (!known.count(key))
            schema_error(source, kv.first, "unknown key '" + key + "'");
    }

    HilbertTable t;
    if (!root["label"])
        schema_error(source, root, "missing 'label'");
    t.label = scalar_as<std::string>(source, root["label"], "label");
    if (root["provenance"])
        t.provenance = scalar_as<std::string>(source, root["provenance"], "provenance");
    if (root["role"]) {
        auto role = scalar_as<std::string>(source, root["role"], "role");
        if (role == "algebra")
            t.role = TableRole::Algebra;
        else if (role == "module")
            t.role = TableRole::Module;
        else
            schema_error(source, root["role"], "role must be 'algebra' or 'module'");
    }
    if (root["synthetic"])
        t.synthetic = scalar_as<bool>(source, root["synthetic"], "synthetic");
    if (root["offset"])
        t.offset = scalar_as<int>(source, root["offset"], "offset");

    const YAML::Node entries = root["entries"];
    if (!entries || !entries.IsMap() || entries.size() == 0)
        schema_error(source, entries ? entries : root, "'entries' must be a nonempty degree: dimension mapping");
    std::map<int, std::int64_t> dims;
    for (const auto& kv : entries) {
        int deg = scalar_as<int>(source, kv.first, "degree");
        auto dim = scalar_as<long long>(source, kv.second, "dimension");
        if (dim < 0)
            schema_error(source, kv.second, "negative dimension in degree " + std::to_string(deg));
        if (!dims.emplace(deg, dim).second)
            schema_error(source, kv.first, "degree " + std::to_string(deg) + " listed twice");
    }
    t.dims.first_degree = dims.begin()->first;
    int expect = t.dims.first_degree;
    for (const auto& [deg, dim] : dims) {
        if (deg != expect)
            schema_error(source, entries, "degree " + std::to_string(expect) + " is missing");
        t.dims.dims.push_back(dim);
        ++expect;
    }
    if (t.role == TableRole::Algebra && t.dims.first_degree != 0)
        schema_error(source, entries, "algebra tables start at degree 0");

    if (const YAML::Node st = root["structure"]) {
        if (!st.IsMap())
            schema_error(source, st, "'structure' must be a mapping");
        StructureTable s;
        if (st["unit"])
            s.unit_index = scalar_as<std::size_t>(source, st["unit"], "unit");
        const char* key = t.role == TableRole::Algebra ? "products" : "actions";
        const YAML::Node rows = st[key];
        if (!rows || !rows.IsSequence())
            schema_error(source, st, std::string("structure needs a '") + key + "' list");
        for (const auto& row : rows) {
            if (!row.IsSequence() || row.size() != 5)
                schema_error(source, row, "structure row must be [a, i, b, j, combination]");
            int a = scalar_as<int>(source, row[0], "degree a");
            auto i = scalar_as<std::size_t>(source, row[1], "index i");
            int b = scalar_as<int>(source, row[2], "degree b");
            auto j = scalar_as<std::size_t>(source, row[3], "index j");
            if (a < 0 || a + b > t.dims.last_degree() || b < t.dims.first_degree)
                schema_error(source, row, "structure row outside the tabulated degrees");
            if (t.role == TableRole::Algebra && (i >= static_cast<std::size_t>(t.dims.at(a))))
                schema_error(source, row[1], "index i exceeds the slice dimension");
            if (j >= static_cast<std::size_t>(t.dims.at(b)))
                schema_error(source, row[3], "index j exceeds the slice dimension");
            auto target = static_cast<std::size_t>(t.dims.at(a + b));
            if (!s.entries.emplace(StructureKey{a, i, b, j}, parse_combination(source, row[4], target)).second)
                schema_error(source, row, "structure row repeated");
        }
        if (t.role == TableRole::Algebra && t.dims.at(0) > 0 &&
            s.unit_index >= static_cast<std::size_t>(t.dims.at(0)))
            schema_error(source, st["unit"], "unit index exceeds the degree-0 dimension");
        t.structure = std::move(s);
    }
    return t;
}

HilbertTable load_table_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::SchemaError, path + ": cannot open table file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_table(ss.str(), path);
}

std::string dump_table(const HilbertTable& t)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "label" << YAML::Value << t.label;
    out << YAML::Key << "role" << YAML::Value << role_name(t.role);
    out << YAML::Key << "provenance" << YAML::Value << t.provenance;
    out << YAML::Key << "synthetic" << YAML::Value << t.synthetic;
    out << YAML::Key << "offset" << YAML::Value << t.offset;
    out << YAML::Key << "entries" << YAML::Value << YAML::BeginMap;
    for (std::size_t k = 0; k < t.dims.dims.size(); ++k)
        out << YAML::Key << t.dims.first_degree + static_cast<int>(k) << YAML::Value << t.dims.dims[k];
    out << YAML::EndMap;
    if (t.structure) {
        out << YAML::Key << "structure" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "unit" << YAML::Value << t.structure->unit_index;
        out << YAML::Key << (t.role == TableRole::Algebra ? "products" : "actions") << YAML::Value << YAML::BeginSeq;
        for (const auto& [key, v] : t.structure->entries) {
            out << YAML::Flow << YAML::BeginSeq << std::get<0>(key) << std::get<1>(key) << std::get<2>(key)
                << std::get<3>(key) << YAML::BeginSeq;
            for (const auto& [idx, c] : v.entries())
                out << YAML::BeginSeq << idx << to_fraction_string(c) << YAML::EndSeq;
            out << YAML::EndSeq << YAML::EndSeq;
        }
        out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string to_csv(const DimensionTable& t)
{
    std::string s = "degree,dimension\n";
    for (std::size_t k = 0; k < t.dims.size(); ++k)
        s += std::to_string(t.first_degree + static_cast<int>(k)) + "," + std::to_string(t.dims[k]) + "\n";
    return s;
}

Example26Tables example26_dataset(int n, int degrees)
{
    if (n < 2)
        throw Error(ErrorCode::InvalidArgument, "example dataset needs ambient dimension n >= 2");
    if (degrees < 1)
        throw Error(ErrorCode::InvalidArgument, "example dataset needs at least one degree");
    Example26Tables out;
    out.algebra.label = "ex26-algebra-n" + std::to_string(n);
    out.algebra.role = TableRole::Algebra;
    out.algebra.synthetic = true;
    out.algebra.provenance = "synthetic stand-in: constant algebra, one section in every degree";
    out.algebra.dims = DimensionTable::from_function(0, degrees - 1, [](int) { return std::int64_t{1}; });

    // x_i >= 0, sum x_i <= m in dimension n - 1.
    const std::size_t k = static_cast<std::size_t>(n - 1);
    std::vector<HalfSpace> base;
    for (std::size_t i = 0; i < k; ++i) {
        IntVector e(k, 0);
        e[i] = 1;
        base.push_back(HalfSpace::make(e, 0));
    }
    out.module.label = "ex26-module-n" + std::to_string(n);
    out.module.role = TableRole::Module;
    out.module.synthetic = true;
    out.module.provenance = "synthetic stand-in: lattice points of m times the standard " + std::to_string(n - 1) +
                            "-simplex, growth of order m^" + std::to_string(n - 1);
    out.module.dims = DimensionTable::from_function(0, degrees - 1, [&](int m) {
        auto cs = base;
        cs.push_back(HalfSpace::make(IntVector(k, -1), Rational(m)));
        return static_cast<std::int64_t>(lattice_points(RationalPolyhedron(k, std::move(cs))).size());
    });
    return out;
}

FGCertificate nonfg_witness(const HilbertTable& alg, const HilbertTable& mod, int probe_bound,
                            const NonFGSearchLimits& limits)
{
    if (alg.role != TableRole::Algebra || mod.role != TableRole::Module)
        throw Error(ErrorCode::InvalidArgument, "need an algebra table and a module table");
    if (!alg.dims.covers(0, probe_bound) || !mod.dims.covers(mod.offset, probe_bound))
        throw Error(ErrorCode::InsufficientRange, "tables stop before degree " + std::to_string(probe_bound));
    const int lo = std::max(mod.offset, mod.dims.first_degree);

    FGCertificate cert;
    cert.probe_bound = probe_bound;
    auto w = search_nonfg_witness(alg.dims, mod.dims, lo, probe_bound, limits);
    const std::string tag = (alg.synthetic || mod.synthetic) ? " (synthetic stand-in data)" : "";
    if (w) {
        cert.kind = CertificateKind::NonFGWitness;
        cert.witness = w;
        cert.note = w->summary + tag;
    } else {
        cert.kind = CertificateKind::Inconclusive;
        cert.note = "counting inequality cannot be refuted within degree " + std::to_string(probe_bound) + tag;
    }
    return cert;
}

HilbertTable export_toric_algebra(const ToricVariety& x, const CartierDivisor& l, int hi, const std::string& label)
{
    HilbertTable t;
    t.label = label;
    t.role = TableRole::Algebra;
    t.provenance = "exported from the toric backend, L = " + to_string(l.coeffs());
    t.dims = h0_table(x, CartierDivisor::zero(x), l, 0, hi);
    return t;
}

HilbertTable export_toric_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p,
                                 int hi, const std::string& label)
{
    HilbertTable t;
    t.label = label;
    t.role = TableRole::Module;
    t.offset = p;
    t.provenance = "exported from the toric backend, D = " + to_string(d.coeffs()) + ", L = " + to_string(l.coeffs()) +
                   ", p = " + std::to_string(p);
    t.dims = h0_table(x, d, l, p, hi);
    return t;
}

GradedAlgebra table_algebra(const HilbertTable& t)
{
    if (t.role != TableRole::Algebra)
        throw Error(ErrorCode::InvalidArgument, "table '" + t.label + "' is not an algebra table");
    const DimensionTable dims = t.dims;
    std::optional<PairingOracle> product;
    if (t.structure)
        product = [s = *t.structure](int a, std::size_t i, int b, std::size_t j) { return lookup(s, a, i, b, j); };
    return GradedAlgebra([dims](int m) { return index_labels(dims.at(m)); }, product,
                         t.structure ? t.structure->unit_index : 0, "table " + t.label, dims.last_degree());
}

GradedModule table_module(const HilbertTable& t, const GradedAlgebra& ring)
{
    if (t.role != TableRole::Module)
        throw Error(ErrorCode::InvalidArgument, "table '" + t.label + "' is not a module table");
    const DimensionTable dims = t.dims;
    std::optional<PairingOracle> action;
    if (t.structure)
        action = [s = *t.structure](int a, std::size_t i, int b, std::size_t j) { return lookup(s, a, i, b, j); };
    DegreeRange range;
    range.max = dims.last_degree();
    return GradedModule(ring, t.offset, [dims](int m) { return index_labels(dims.at(m)); }, action, range);
}

} // namespace divalg
