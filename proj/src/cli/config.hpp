#pragma once

#include "divalg/tabulated.hpp"
#include "divalg/toric.hpp"

#include <yaml-cpp/yaml.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace divalg::cli {

enum class Backend { Toric, Tabulated };

// One task: its name plus the raw parameter mapping, kept in document order for the report echo.
struct TaskSpec {
    std::string name;
    YAML::Node params; // mapping, never null; may still hold the 'name' key
};

struct JobConfig {
    std::string path;
    Backend backend = Backend::Toric;
    std::optional<ToricVariety> variety;
    std::vector<std::string> divisor_order; // names as written
    std::map<std::string, CartierDivisor> divisors;
    std::map<std::string, HilbertTable> tables;
    std::vector<std::string> table_order;
    std::vector<TaskSpec> tasks;

    const CartierDivisor& divisor(const std::string& name) const;
    const HilbertTable& table(const std::string& name) const;
};

const std::vector<std::string>& known_tasks();
bool is_toric_only(const std::string& task);

JobConfig load_config(const std::string& path);
JobConfig parse_config(const std::string& text, const std::string& path, const std::string& base_dir);

// Throws SchemaError if the task references unknown divisors/tables or unknown keys.
void validate_task(const JobConfig& cfg, const TaskSpec& task);

} // namespace divalg::cli
