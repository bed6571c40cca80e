#include "helpers.hpp"

#include "divalg/counting.hpp"
#include "divalg/errors.hpp"
#include "divalg/tabulated.hpp"

#include <doctest.h>

#include <string>

using namespace divalg;
using namespace testing;

namespace {

std::string schema_error_of(const std::string& text)
{
    try {
        load_table(text, "t.yaml");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError)
            return e.what();
        return "wrong code";
    }
    return "";
}

} // namespace

TEST_CASE("table loading")
{
    auto t = load_table("label: small\nentries: {0: 1, 1: 2, 2: 3}\n");
    CHECK(t.label == "small");
    CHECK(t.dims.first_degree == 0);
    CHECK(t.dims.dims == std::vector<std::int64_t>{1, 2, 3});
    CHECK(t.role == TableRole::Algebra);
    CHECK_FALSE(t.synthetic);

    // Comments are allowed; module tables may start below zero.
    auto m = load_table("# shifted\nlabel: m\nrole: module\noffset: -1\nentries: {-1: 1, 0: 2}\n");
    CHECK(m.dims.first_degree == -1);
    CHECK(m.offset == -1);
}

TEST_CASE("table schema errors carry a location")
{
    CHECK(schema_error_of("label: x\nentries: {0: 1, 1: -2}\n").find("t.yaml:2:") != std::string::npos);
    CHECK(schema_error_of("label: x\nentries: {0: 1, 2: 3}\n").find("degree 1 is missing") != std::string::npos);
    CHECK(schema_error_of("label: x\ncolour: red\nentries: {0: 1}\n").find("t.yaml:2:1") != std::string::npos);
    CHECK_FALSE(schema_error_of("entries: {0: 1}\n").empty());
    CHECK_FALSE(schema_error_of("label: x\nrole: algebra\nentries: {1: 1}\n").empty());
    CHECK_FALSE(schema_error_of("label: x\nentries: [1, 2]\n").empty());
    CHECK_FALSE(schema_error_of("label: [x\n").empty());
}

TEST_CASE("tables round-trip through the emitter")
{
    auto data = example26_dataset(3, 12);
    auto again = load_table(dump_table(data.module));
    CHECK(again.label == data.module.label);
    CHECK(again.dims.dims == data.module.dims.dims);
    CHECK(again.synthetic);
    CHECK(again.role == TableRole::Module);
    CHECK(to_csv(again.dims).rfind("degree,dimension\n0,1\n1,3\n", 0) == 0);
}

TEST_CASE("tables with structure constants")
{
    const char* text = R"(label: k[x] up to 3
entries: {0: 1, 1: 1, 2: 1, 3: 1}
structure:
  unit: 0
  products:
    - [0, 0, 0, 0, [[0, "1"]]]
    - [0, 0, 1, 0, [[0, "1"]]]
    - [0, 0, 2, 0, [[0, "1"]]]
    - [0, 0, 3, 0, [[0, "1"]]]
    - [1, 0, 0, 0, [[0, "1"]]]
    - [1, 0, 1, 0, [[0, "1"]]]
    - [1, 0, 2, 0, [[0, "1"]]]
    - [2, 0, 0, 0, [[0, "1"]]]
    - [2, 0, 1, 0, [[0, "1"]]]
    - [3, 0, 0, 0, [[0, "1"]]]
)";
    auto t = load_table(text);
    GradedAlgebra r = table_algebra(t);
    CHECK(r.has_structure());
    auto s = find_algebra_generators(r, 3);
    CHECK(s.generators.degrees() == std::vector<int>{1});

    auto bare = table_algebra(load_table("label: bare\nentries: {0: 1, 1: 2}\n"));
    CHECK_FALSE(bare.has_structure());
    CHECK_THROWS_AS(find_algebra_generators(bare, 1), Error);
}

TEST_CASE("synthetic non-finitely-generated dataset")
{
    for (int n : {2, 3, 4}) {
        auto data = example26_dataset(n, 40);
        CHECK(data.algebra.synthetic);
        CHECK(data.module.dims.dims.size() == 40);
        for (int m = 0; m < 40; ++m) {
            CHECK(data.algebra.dims.at(m) == 1);
            CHECK(data.module.dims.at(m) == binom(m + n - 1, n - 1));
        }
        CHECK(growth_degree(data.module.dims, 0, 39) == std::optional<int>(n - 1));
        auto c = nonfg_witness(data.algebra, data.module, 39);
        CHECK(c.kind == CertificateKind::NonFGWitness);
        REQUIRE(c.witness);
        CHECK_FALSE(c.witness->failures.empty());
        for (const auto& f : c.witness->failures)
            CHECK(f.capacity < f.required);
    }
    auto data = example26_dataset(3, 40);
    auto self = data.algebra;
    self.role = TableRole::Module;
    CHECK(nonfg_witness(data.algebra, self, 39).kind == CertificateKind::Inconclusive);
}

TEST_CASE("exported toric tables never produce a witness")
{
    auto p2 = varieties::projective_space(2);
    auto h = CartierDivisor::prime(p2, 0);
    auto alg = export_toric_algebra(p2, h, 30, "p2");
    auto mod = export_toric_module(p2, Integer(2) * h, h, 0, 30, "p2-mod");
    CHECK_FALSE(alg.synthetic);
    CHECK(alg.dims.at(10) == 66);
    CHECK(nonfg_witness(alg, mod, 30).kind == CertificateKind::Inconclusive);
}
