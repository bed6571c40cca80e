#include "run.hpp"

#include "config.hpp"
#include "report.hpp"
#include "tasks.hpp"

#include "divalg/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace divalg::cli {

namespace {

struct RunFlags {
    std::string config;
    std::vector<std::string> tasks;
    Overrides overrides;
    bool strict = false;
    bool parallel = false;
    bool timing = false;
    std::string out_dir = "divalg-out";
};

std::vector<TaskSpec> select_tasks(const JobConfig& cfg, const std::vector<std::string>& names)
{
    if (names.empty())
        return cfg.tasks;
    std::vector<TaskSpec> out;
    for (const auto& n : names) {
        auto it = std::find_if(cfg.tasks.begin(), cfg.tasks.end(), [&](const TaskSpec& t) { return t.name == n; });
        TaskSpec t;
        if (it != cfg.tasks.end()) {
            t = *it;
        } else {
            t.name = n;
            t.params = YAML::Node(YAML::NodeType::Map);
        }
        validate_task(cfg, t);
        out.push_back(std::move(t));
    }
    return out;
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::SchemaError, "cannot write " + p.string());
    f << text;
}

// Human-readable dimension table; reports keep the exact integers.
void print_dimensions(const Json& dims)
{
    if (!dims.is_array() || dims.empty() || dims.front().size() != 2)
        return;
    std::ostringstream line;
    line << "    m   :";
    std::ostringstream vals;
    vals << "    dim :";
    for (const auto& row : dims) {
        std::ostringstream cell;
        cell << row[1];
        const auto w = std::max<std::size_t>(cell.str().size(), std::to_string(row[0].get<int>()).size()) + 1;
        line << std::setw(static_cast<int>(w)) << row[0].get<int>();
        vals << std::setw(static_cast<int>(w)) << cell.str();
    }
    std::cout << line.str() << "\n" << vals.str() << "\n";
}

int run(const RunFlags& flags)
{
    JobConfig cfg;
    std::vector<TaskSpec> tasks;
    try {
        cfg = load_config(flags.config);
        tasks = select_tasks(cfg, flags.tasks);
        if (flags.overrides.divisor && cfg.backend == Backend::Toric)
            cfg.divisor(*flags.overrides.divisor);
    } catch (const std::exception& e) {
        std::cerr << "divalg: " << e.what() << "\n";
        return 2;
    }
    if (tasks.empty()) {
        std::cerr << "divalg: no tasks to run\n";
        return 2;
    }

    struct Timed {
        TaskOutcome outcome;
        double seconds = 0;
    };
    auto run_one = [&](const TaskSpec& t) {
        auto start = std::chrono::steady_clock::now();
        Timed r{run_task(cfg, t, flags.overrides)};
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    };

    std::vector<Timed> results;
    try {
        if (flags.parallel) {
            std::vector<std::future<Timed>> futs;
            for (const auto& t : tasks)
                futs.push_back(std::async(std::launch::async, run_one, std::cref(t)));
            for (auto& f : futs)
                results.push_back(f.get());
        } else {
            for (const auto& t : tasks)
                results.push_back(run_one(t));
        }
    } catch (const std::exception& e) {
        std::cerr << "divalg: " << e.what() << "\n";
        return 2;
    }

    std::filesystem::create_directories(flags.out_dir);
    bool all_passed = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        auto& [outcome, seconds] = results[i];
        if (flags.timing)
            outcome.report["timing"] = Json{{"seconds", seconds}, {"display_only", true}};
        std::ostringstream stem;
        stem << std::setw(2) << std::setfill('0') << i + 1 << "-" << tasks[i].name;
        write_file(std::filesystem::path(flags.out_dir) / (stem.str() + ".json"), render(outcome.report));
        if (outcome.csv)
            write_file(std::filesystem::path(flags.out_dir) / (stem.str() + ".csv"), *outcome.csv);

        const char* tag = outcome.error ? "ERROR" : outcome.passed ? "ok" : "FAIL";
        std::cout << "[" << stem.str() << "] " << tag << "  " << outcome.summary;
        if (flags.timing)
            std::cout << "  (" << std::fixed << std::setprecision(3) << seconds << " s)";
        std::cout << "\n";
        if (outcome.report.contains("verdict"))
            std::cout << "    verdict: " << outcome.report["verdict"].get<std::string>() << "\n";
        if (outcome.report.contains("certificate") && outcome.report["certificate"].contains("kind"))
            std::cout << "    certificate: " << outcome.report["certificate"]["kind"].get<std::string>() << ", "
                      << outcome.report["certificate"]["generator_count"] << " generators\n";
        if (tasks[i].name == "hilbert" && outcome.report.contains("dimensions"))
            print_dimensions(outcome.report["dimensions"]);
        all_passed &= outcome.passed && !outcome.error;
    }
    std::cout << "reports written to " << flags.out_dir << "\n";
    return flags.strict && !all_passed ? 1 : 0;
}

} // namespace

int main_entry(int argc, char** argv)
{
    CLI::App app{"divalg: divisorial algebras and modules with finite-generation certificates"};
    app.require_subcommand(0, 1);
    bool schema = false;
    app.add_flag("--schema-version", schema, "Print the report schema version and exit");

    RunFlags flags;
    auto* run_cmd = app.add_subcommand("run", "Run the tasks of a config document");
    run_cmd->add_option("config", flags.config, "Config document")->required();
    run_cmd->add_option("--task", flags.tasks, "Task to run (repeatable); replaces the config task list");
    run_cmd->add_option("--divisor", flags.overrides.divisor, "Divisor name for the 'divisor' parameter");
    run_cmd->add_option("--max-degree", flags.overrides.max_degree, "Largest degree to tabulate");
    run_cmd->add_option("--bound", flags.overrides.bound, "Bounded-search degree bound");
    run_cmd->add_option("--probe", flags.overrides.probe, "Probe bound for counting witnesses");
    run_cmd->add_flag("--strict", flags.strict, "Exit 1 when a verdict fails or a task errors");
    run_cmd->add_flag("--parallel", flags.parallel, "Run tasks concurrently; output order is unchanged");
    run_cmd->add_flag("--timing", flags.timing, "Record wall time in reports (breaks byte stability)");
    run_cmd->add_option("--out", flags.out_dir, "Report directory")->capture_default_str();
    run_cmd->add_flag("--schema-version", schema, "Print the report schema version and exit");

    auto* list_cmd = app.add_subcommand("tasks", "List task names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (schema) {
        std::cout << kSchemaVersion << "\n";
        return 0;
    }
    if (list_cmd->parsed()) {
        for (const auto& n : known_tasks())
            std::cout << n << (is_toric_only(n) ? "  (toric)" : "") << "\n";
        return 0;
    }
    if (!run_cmd->parsed()) {
        std::cout << app.help();
        return 2;
    }
    return run(flags);
}

} // namespace divalg::cli
