#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bankledger/scenario.hpp"

namespace fs = std::filesystem;
using namespace bankledger;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void apply_param_overrides(Scenario& scenario,
                           const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--params expects key=value, got: " + kv);
        std::string key = kv.substr(0, eq);
        std::string value = kv.substr(eq + 1);
        if (key == "reserve_ratio")
            scenario.params.reserve_ratio = Ratio::parse(value);
        else if (key == "capital_ratio")
            scenario.params.capital_ratio = Ratio::parse(value);
        else
            throw std::runtime_error("unknown param: " + key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic double-entry banking system simulator"};
    app.require_subcommand(1);

    std::string file;
    std::string snapshots_dir;
    std::vector<std::string> param_overrides;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("file", file, "scenario file (.scn)")->required();
    run->add_option("--snapshots-dir", snapshots_dir,
                    "write snapshots as files instead of stdout");
    run->add_option("--params", param_overrides, "override k=v (repeatable)");

    auto* check = app.add_subcommand("check", "Parse and validate genesis only");
    check->add_option("file", file, "scenario file (.scn)")->required();
    check->add_option("--params", param_overrides, "override k=v (repeatable)");

    std::string expected_path, actual_path;
    auto* diff = app.add_subcommand("diff", "Compare two snapshot files");
    diff->add_option("expected", expected_path)->required();
    diff->add_option("actual", actual_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (diff->parsed()) {
            std::string report =
                diff_snapshot(slurp(expected_path), slurp(actual_path));
            if (report.empty()) return 0;
            std::cout << report;
            return 2;
        }

        Scenario scenario = parse_scenario(slurp(file));
        apply_param_overrides(scenario, param_overrides);

        if (check->parsed()) {
            std::cout << "ok: " << scenario.banks.size() << " banks, "
                      << scenario.accounts.size() << " accounts, "
                      << scenario.instructions.size() << " instructions\n";
            return 0;
        }

        int snapshot_index = 0;
        SnapshotSink sink;
        if (!snapshots_dir.empty()) {
            fs::create_directories(snapshots_dir);
            sink = [&](const std::string& name, const std::string& text) {
                char prefix[16];
                std::snprintf(prefix, sizeof prefix, "%03d", ++snapshot_index);
                fs::path out = fs::path(snapshots_dir) /
                               (std::string(prefix) + "_" + name + ".snap");
                std::ofstream(out, std::ios::binary) << text;
            };
        } else {
            sink = [](const std::string& name, const std::string& text) {
                std::cout << "# snapshot " << name << "\n" << text;
            };
        }
        RunResult result = run_scenario(scenario, sink);
        for (const auto& warning : result.warnings)
            std::cerr << "warning: " << warning << "\n";
        return 0;
    } catch (const AssertionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
