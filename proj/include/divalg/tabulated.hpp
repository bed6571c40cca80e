#pragma once

#include "divalg/counting.hpp"
#include "divalg/graded.hpp"
#include "divalg/toric.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace divalg {

// Key (a, i, b, j): basis element i of degree a times basis element j of degree b.
using StructureKey = std::tuple<int, std::size_t, int, std::size_t>;

struct StructureTable {
    std::size_t unit_index = 0;
    std::map<StructureKey, SparseVector> entries; // products (algebra) or actions (module)
};

enum class TableRole { Algebra, Module };

struct HilbertTable {
    std::string label;
    std::string provenance;
    TableRole role = TableRole::Algebra;
    bool synthetic = false; // a stand-in with the right growth, not computed data
    int offset = 0;         // module offset p; slices below it are zero
    DimensionTable dims;
    std::optional<StructureTable> structure;
};

// YAML document; errors are SchemaError with "name:line:col".
HilbertTable load_table(const std::string& text, const std::string& source_name = "<table>");
HilbertTable load_table_file(const std::string& path);
std::string dump_table(const HilbertTable& t);
// Header row "degree,dimension".
std::string to_csv(const DimensionTable& t);

struct Example26Tables {
    HilbertTable algebra; // dimension 1 in every degree
    HilbertTable module;  // lattice points of m times the standard (n-1)-simplex
};
// Degrees 0 .. degrees-1.
Example26Tables example26_dataset(int n, int degrees);

// Dimension-only refutation: kind is non-fg-witness or inconclusive, never a positive verdict.
FGCertificate nonfg_witness(const HilbertTable& alg, const HilbertTable& mod, int probe_bound,
                            const NonFGSearchLimits& limits = {});

HilbertTable export_toric_algebra(const ToricVariety& x, const CartierDivisor& l, int hi, const std::string& label);
HilbertTable export_toric_module(const ToricVariety& x, const CartierDivisor& d, const CartierDivisor& l, int p,
                                 int hi, const std::string& label);

// Oracle-backed views of tables carrying structure constants (StructureUnavailable otherwise).
GradedAlgebra table_algebra(const HilbertTable& t);
GradedModule table_module(const HilbertTable& t, const GradedAlgebra& ring);

} // namespace divalg
