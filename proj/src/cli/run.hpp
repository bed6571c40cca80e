#pragma once

namespace divalg::cli {

// Entry point of the `divalg` executable. Returns the process exit code:
// 0 when every task completed, 1 when --strict and some verdict failed or a task
// errored, 2 on configuration or schema errors.
int main_entry(int argc, char** argv);

} // namespace divalg::cli
