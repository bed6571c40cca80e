#include "config.hpp"

#include "divalg/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace divalg::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const YAML::Node& node, const std::string& what)
{
    std::string where = path;
    if (node.IsDefined() && node.Mark().line >= 0)
        where += ":" + std::to_string(node.Mark().line + 1) + ":" + std::to_string(node.Mark().column + 1);
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

long long as_int(const std::string& path, const YAML::Node& n, const std::string& what)
{
    if (!n.IsScalar())
        fail(path, n, what + " must be an integer");
    try {
        return n.as<long long>();
    } catch (const YAML::Exception&) {
        fail(path, n, what + " must be an integer");
    }
}

IntVector int_list(const std::string& path, const YAML::Node& n, const std::string& what)
{
    if (!n.IsSequence())
        fail(path, n, what + " must be a list of integers");
    IntVector out;
    for (const auto& x : n)
        out.push_back(Integer(as_int(path, x, what)));
    return out;
}

const std::set<std::string>& task_keys()
{
    static const std::set<std::string> keys{
        "name",          "divisor",  "module-divisor", "offset",      "period",     "bound",
        "max-degree",    "probe",    "components",     "first-component", "order",  "ample",
        "l-values",      "p-values", "J",              "r",           "m-range",    "m-max",
        "restrict-to",   "algebra",  "module",         "verify-all-c", "descent-degree",
        "max-generator-degree",      "max-generators"};
    return keys;
}

void parse_geometry_toric(JobConfig& cfg, const YAML::Node& geo)
{
    if (!geo || !geo.IsMap())
        fail(cfg.path, geo ? geo : YAML::Node(), "toric backend needs a 'geometry' mapping with rays and cones");
    const YAML::Node rays = geo["rays"];
    const YAML::Node cones = geo["cones"];
    if (!rays || !rays.IsSequence() || rays.size() == 0)
        fail(cfg.path, geo, "'geometry.rays' must be a nonempty list");
    if (!cones || !cones.IsSequence() || cones.size() == 0)
        fail(cfg.path, geo, "'geometry.cones' must be a nonempty list");
    Fan f;
    for (const auto& r : rays)
        f.rays.push_back(int_list(cfg.path, r, "ray"));
    f.dim = f.rays.front().size();
    for (const auto& c : cones) {
        std::vector<std::size_t> idx;
        for (const auto& v : int_list(cfg.path, c, "cone"))
            idx.push_back(static_cast<std::size_t>(v < 0 ? f.rays.size() : static_cast<long long>(v)));
        f.max_cones.push_back(idx);
    }
    try {
        cfg.variety.emplace(f);
    } catch (const Error& e) {
        fail(cfg.path, geo, std::string("invalid fan: ") + e.what());
    }
}

void parse_divisors(JobConfig& cfg, const YAML::Node& divs)
{
    if (!divs)
        return;
    if (!divs.IsMap())
        fail(cfg.path, divs, "'divisors' must map names to coefficient lists");
    for (const auto& kv : divs) {
        auto name = kv.first.as<std::string>();
        const std::size_t n = cfg.variety->num_rays();
        IntVector coeffs(n, 0);
        if (kv.second.IsSequence()) {
            coeffs = int_list(cfg.path, kv.second, "divisor '" + name + "'");
        } else if (kv.second.IsMap()) {
            for (const auto& e : kv.second) {
                auto ray = as_int(cfg.path, e.first, "ray index");
                if (ray < 0 || static_cast<std::size_t>(ray) >= n)
                    fail(cfg.path, e.first, "ray index out of range in divisor '" + name + "'");
                coeffs[static_cast<std::size_t>(ray)] = as_int(cfg.path, e.second, "coefficient");
            }
        } else {
            fail(cfg.path, kv.second, "divisor '" + name + "' must be a list or a ray: coefficient mapping");
        }
        try {
            cfg.divisors.emplace(name, CartierDivisor(*cfg.variety, coeffs));
        } catch (const Error& e) {
            fail(cfg.path, kv.second, "divisor '" + name + "': " + e.what());
        }
        cfg.divisor_order.push_back(name);
    }
}

void parse_geometry_tabulated(JobConfig& cfg, const YAML::Node& geo, const std::string& base_dir)
{
    if (!geo || !geo.IsMap())
        fail(cfg.path, geo ? geo : YAML::Node(), "tabulated backend needs a 'geometry' mapping");
    if (const YAML::Node tabs = geo["tables"]) {
        if (!tabs.IsMap())
            fail(cfg.path, tabs, "'geometry.tables' must map names to file paths");
        for (const auto& kv : tabs) {
            auto name = kv.first.as<std::string>();
            std::filesystem::path p = kv.second.as<std::string>();
            if (p.is_relative())
                p = std::filesystem::path(base_dir) / p;
            cfg.tables.emplace(name, load_table_file(p.string()));
            cfg.table_order.push_back(name);
        }
    }
    if (const YAML::Node ex = geo["example26"]) {
        if (!ex.IsMap() || !ex["n"] || !ex["degrees"])
            fail(cfg.path, ex, "'example26' needs n and degrees");
        auto n = static_cast<int>(as_int(cfg.path, ex["n"], "n"));
        auto degrees = static_cast<int>(as_int(cfg.path, ex["degrees"], "degrees"));
        if (n < 2 || degrees < 8)
            fail(cfg.path, ex, "'example26' needs n >= 2 and at least 8 degrees");
        auto data = example26_dataset(n, degrees);
        cfg.tables.emplace("algebra", data.algebra);
        cfg.tables.emplace("module", data.module);
        cfg.table_order.push_back("algebra");
        cfg.table_order.push_back("module");
    }
    if (cfg.tables.empty())
        fail(cfg.path, geo, "tabulated geometry defines no tables");
}

} // namespace

const CartierDivisor& JobConfig::divisor(const std::string& name) const
{
    auto it = divisors.find(name);
    if (it == divisors.end())
        throw Error(ErrorCode::SchemaError, path + ": unknown divisor '" + name + "'");
    return it->second;
}

const HilbertTable& JobConfig::table(const std::string& name) const
{
    auto it = tables.find(name);
    if (it == tables.end())
        throw Error(ErrorCode::SchemaError, path + ": unknown table '" + name + "'");
    return it->second;
}

const std::vector<std::string>& known_tasks()
{
    static const std::vector<std::string> names{"hilbert",   "fg-algebra", "fg-module",     "truncate",  "decompose",
                                                "restrict",  "induct-34",  "induct-35",     "induct-36", "fixmov",
                                                "fix-stability", "supp-fix", "kappa",       "nonfg"};
    return names;
}

bool is_toric_only(const std::string& task)
{
    return task != "kappa" && task != "nonfg" && task != "hilbert";
}

JobConfig parse_config(const std::string& text, const std::string& path, const std::string& base_dir)
{
    JobConfig cfg;
    cfg.path = path;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::SchemaError, path + ":" + std::to_string(e.mark.line + 1) + ":" +
                                                std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap())
        fail(path, root, "config must be a mapping");
    static const std::set<std::string> top{"backend", "geometry", "divisors", "tasks"};
    for (const auto& kv : root)
        if (!top.count(kv.first.as<std::string>()))
            fail(path, kv.first, "unknown key '" + kv.first.as<std::string>() + "'");

    if (!root["backend"])
        fail(path, root, "missing 'backend'");
    auto backend = root["backend"].as<std::string>();
    if (backend == "toric") {
        cfg.backend = Backend::Toric;
        parse_geometry_toric(cfg, root["geometry"]);
        parse_divisors(cfg, root["divisors"]);
    } else if (backend == "tabulated") {
        cfg.backend = Backend::Tabulated;
        parse_geometry_tabulated(cfg, root["geometry"], base_dir);
        if (root["divisors"])
            fail(path, root["divisors"], "divisors need the toric backend");
    } else {
        fail(path, root["backend"], "backend must be 'toric' or 'tabulated'");
    }

    if (const YAML::Node tasks = root["tasks"]) {
        if (!tasks.IsSequence())
            fail(path, tasks, "'tasks' must be a list");
        for (const auto& t : tasks) {
            TaskSpec spec;
            if (t.IsScalar()) {
                spec.name = t.as<std::string>();
                spec.params = YAML::Node(YAML::NodeType::Map);
            } else if (t.IsMap() && t["name"]) {
                spec.name = t["name"].as<std::string>();
                spec.params = YAML::Node(t); // keeps source marks for error locations; 'name' is skipped downstream
            } else {
                fail(path, t, "task must be a name or a mapping with 'name'");
            }
            validate_task(cfg, spec);
            cfg.tasks.push_back(std::move(spec));
        }
    }
    return cfg;
}

JobConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::SchemaError, path + ": cannot open config");
    std::stringstream ss;
    ss << in.rdbuf();
    auto base = std::filesystem::path(path).parent_path().string();
    return parse_config(ss.str(), path, base.empty() ? "." : base);
}

void validate_task(const JobConfig& cfg, const TaskSpec& task)
{
    const auto& names = known_tasks();
    if (std::find(names.begin(), names.end(), task.name) == names.end())
        throw Error(ErrorCode::SchemaError, cfg.path + ": unknown task '" + task.name + "'");
    if (cfg.backend == Backend::Tabulated && is_toric_only(task.name))
        throw Error(ErrorCode::SchemaError, cfg.path + ": task '" + task.name + "' needs the toric backend");
    for (const auto& kv : task.params) {
        auto key = kv.first.as<std::string>();
        if (!task_keys().count(key))
            fail(cfg.path, kv.first, "unknown parameter '" + key + "' in task '" + task.name + "'");
    }
    auto check_divisor = [&](const char* key) {
        if (task.params[key] && !cfg.divisors.count(task.params[key].as<std::string>()))
            fail(cfg.path, task.params[key], "task '" + task.name + "' references undefined divisor '" +
                                                 task.params[key].as<std::string>() + "'");
    };
    for (const char* key : {"divisor", "module-divisor", "ample", "restrict-to"})
        check_divisor(key);
    if (const YAML::Node comps = task.params["components"]) {
        if (!comps.IsSequence())
            fail(cfg.path, comps, "'components' must be a list");
        for (const auto& c : comps) {
            std::string name = c.IsSequence() && c.size() == 2 ? c[0].as<std::string>() : c.as<std::string>();
            if (!cfg.divisors.count(name))
                fail(cfg.path, c, "task '" + task.name + "' references undefined divisor '" + name + "'");
        }
    }
    for (const char* key : {"algebra", "module"})
        if (task.params[key] && cfg.backend == Backend::Tabulated &&
            !cfg.tables.count(task.params[key].as<std::string>()))
            fail(cfg.path, task.params[key], "task '" + task.name + "' references undefined table '" +
                                                 task.params[key].as<std::string>() + "'");
}

} // namespace divalg::cli
