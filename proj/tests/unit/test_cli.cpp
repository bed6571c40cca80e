#include "config.hpp"
#include "report.hpp"
#include "tasks.hpp"

#include "divalg/errors.hpp"

#include <doctest.h>

using namespace divalg;
using namespace divalg::cli;

namespace {

const char* kPlane = R"(backend: toric
geometry:
  rays: [[1, 0], [0, 1], [-1, -1]]
  cones: [[0, 1], [1, 2], [2, 0]]
divisors:
  H: [1, 0, 0]
  L2: {1: 1}
tasks:
  - {name: hilbert, divisor: H, max-degree: 10}
  - {name: fg-algebra, divisor: H}
)";

ErrorCode code_of(const std::string& text)
{
    try {
        parse_config(text, "c.cfg", ".");
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("config parsing")
{
    JobConfig cfg = parse_config(kPlane, "c.cfg", ".");
    CHECK(cfg.backend == Backend::Toric);
    CHECK(cfg.divisor_order == std::vector<std::string>{"H", "L2"});
    CHECK(cfg.divisor("L2").coeffs()[1] == 1);
    REQUIRE(cfg.tasks.size() == 2);
    CHECK(cfg.tasks[1].name == "fg-algebra");
}

TEST_CASE("config errors are schema errors")
{
    std::string base = kPlane;
    CHECK(code_of(base + "  - {name: fixmov, divisor: Q}\n") == ErrorCode::SchemaError);
    CHECK(code_of(base + "  - {name: nosuch}\n") == ErrorCode::SchemaError);
    CHECK(code_of(base + "  - {name: hilbert, colour: red}\n") == ErrorCode::SchemaError);
    CHECK(code_of("backend: other\n") == ErrorCode::SchemaError);
    CHECK(code_of("backend: tabulated\ngeometry: {example26: {n: 3, degrees: 20}}\ntasks: [fixmov]\n") ==
          ErrorCode::SchemaError);
    CHECK(code_of("backend: toric\ngeometry: {rays: [[1, 0], [0, 1]], cones: [[0, 1]]}\n") ==
          ErrorCode::SchemaError);
}

TEST_CASE("task reports")
{
    JobConfig cfg = parse_config(kPlane, "c.cfg", ".");
    TaskOutcome h = run_task(cfg, cfg.tasks[0], {});
    CHECK(h.passed);
    CHECK(h.report["schema"] == kSchemaVersion);
    CHECK(h.report["dimensions"].size() == 11);
    CHECK(h.report["dimensions"][10][1] == 66);
    REQUIRE(h.csv);
    CHECK(h.csv->rfind("degree,dimension\n", 0) == 0);

    TaskOutcome f = run_task(cfg, cfg.tasks[1], {});
    CHECK(f.report["certificate"]["kind"] == "exact");
    CHECK(f.report["certificate"]["generator_count"] == 3);
    CHECK(f.report["certificate"]["stabilization_degree"] == 1);
    CHECK(f.report["bounded_search"]["kind"] == "bounded-search");
    CHECK(f.report["bounded_search"].contains("probe_bound"));
    // Coordinates render as exact fractions.
    CHECK(f.report["certificate"]["generators"][0]["terms"][0]["coeff"] == "1/1");

    Overrides ov;
    ov.max_degree = 4;
    TaskOutcome short_table = run_task(cfg, cfg.tasks[0], ov);
    CHECK(short_table.report["dimensions"].size() == 5);
    CHECK(short_table.report["task"]["params"]["max-degree"] == 4);
}

TEST_CASE("backend errors are embedded in the report")
{
    JobConfig cfg = parse_config(std::string(kPlane) + "  - {name: fixmov, divisor: H}\n", "c.cfg", ".");
    TaskSpec neg{"fixmov", YAML::Load("{divisor: H}")};
    cfg.divisors.erase("H");
    cfg.divisors.emplace("H", CartierDivisor(*cfg.variety, {Integer(-1), Integer(0), Integer(0)}));
    TaskOutcome o = run_task(cfg, neg, {});
    CHECK(o.error);
    CHECK(o.report["status"] == "error");
    CHECK(o.report["error"]["code"] == "NoSections");
}

TEST_CASE("tabulated tasks")
{
    JobConfig cfg = parse_config("backend: tabulated\ngeometry: {example26: {n: 3, degrees: 41}}\n"
                                 "tasks: [{name: nonfg, probe: 40}, kappa]\n",
                                 "c.cfg", ".");
    TaskOutcome w = run_task(cfg, cfg.tasks[0], {});
    CHECK(w.passed);
    CHECK(w.report["certificate"]["kind"] == "non-fg-witness");
    CHECK(w.report["synthetic"] == true);
    TaskOutcome k = run_task(cfg, cfg.tasks[1], {});
    CHECK(k.report["growth_degree"] == 2);
    CHECK(k.report["estimate"] == true);
}
