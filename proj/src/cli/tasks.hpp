#pragma once

#include "config.hpp"
#include "report.hpp"

#include <optional>
#include <string>

namespace divalg::cli {

// Command-line values that replace the corresponding task parameters.
struct Overrides {
    std::optional<std::string> divisor;
    std::optional<int> max_degree;
    std::optional<int> bound;
    std::optional<int> probe;
};

struct TaskOutcome {
    Json report;
    bool passed = false; // verdict consistent with what the task set out to show
    bool error = false;  // backend error embedded in the report
    std::optional<std::string> csv;
    std::string summary;
};

TaskOutcome run_task(const JobConfig& cfg, const TaskSpec& task, const Overrides& ov);

} // namespace divalg::cli
