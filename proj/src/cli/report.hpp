#pragma once

#include "divalg/counting.hpp"
#include "divalg/graded.hpp"
#include "divalg/toric.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <functional>
#include <string>

namespace divalg::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "divalg-report/1";

// Integers stay JSON numbers while they fit in 64 bits, strings otherwise.
Json integer_json(const Integer& v);
Json int_vector_json(const IntVector& v);
Json divisor_json(const CartierDivisor& d);
Json dims_json(const DimensionTable& t);

using SliceLookup = std::function<const DegreeSlice&(int)>;
Json generators_json(const GeneratorSet& g, const SliceLookup& slices);
Json certificate_json(const FGCertificate& c, const SliceLookup& slices);
Json witness_json(const NonFGWitness& w);

// Echoes a task's YAML parameters with their original order and scalar spelling.
Json yaml_to_json(const YAML::Node& n);

std::string render(const Json& report);

} // namespace divalg::cli
