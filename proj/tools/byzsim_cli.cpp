#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "byzsim/config.hpp"
#include "byzsim/run.hpp"
#include "byzsim/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw byzsim::ConfigError("config error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_values(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        out.push_back(csv.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int print_report(const byzsim::VerifyReport& rep) {
    for (const auto& c : rep.checks) {
        std::printf("[%s] %-48s %s (measured %.9g, bound %.9g)\n", rep.suite.c_str(),
                    c.name.c_str(), c.pass ? "PASS" : "FAIL", c.measured, c.bound);
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Byzantine-robust distributed optimization simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, summary_path, axis, suite = "all";
    std::uint64_t seeds = 1;

    CLI::App* cmd_run = app.add_subcommand("run", "execute one configured run");
    cmd_run->add_option("--config", config_path, "JSON config file")->required();
    cmd_run->add_option("--out", out_path, "per-round CSV output")->required();
    cmd_run->add_option("--summary-out", summary_path, "per-run summary CSV");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "grid of runs over an axis and seeds");
    cmd_sweep->add_option("--config", config_path, "JSON config file")->required();
    cmd_sweep->add_option("--axis", axis, "dotted.path=v1,v2,... (optional)");
    cmd_sweep->add_option("--seeds", seeds, "seeds per axis value");
    cmd_sweep->add_option("--out", out_path, "per-round CSV output")->required();
    cmd_sweep->add_option("--summary-out", summary_path, "per-run summary CSV");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a property suite");
    cmd_verify->add_option("--suite", suite, "suite name or 'all'");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            byzsim::RunConfig cfg = byzsim::parse_config(read_file(config_path));
            byzsim::RunTrace trace = byzsim::run(cfg);
            byzsim::export_csv({trace}, out_path);
            if (!summary_path.empty()) byzsim::export_summary_csv({trace}, summary_path);
            return 0;
        }
        if (cmd_sweep->parsed()) {
            std::string base = read_file(config_path);
            std::string axis_path;
            std::vector<std::string> values;
            if (!axis.empty()) {
                std::size_t eq = axis.find('=');
                if (eq == std::string::npos)
                    throw byzsim::ConfigError("config error: --axis expects path=v1,v2,...");
                axis_path = axis.substr(0, eq);
                values = split_values(axis.substr(eq + 1));
            }
            byzsim::SweepResult result = byzsim::sweep(base, axis_path, values, seeds);
            byzsim::export_csv(result.traces, out_path);
            if (!summary_path.empty())
                byzsim::export_summary_csv(result.traces, summary_path);
            return 0;
        }
        // verify
        int status = 0;
        if (suite == "all") {
            for (const std::string& name : byzsim::verify_suite_names())
                status |= print_report(byzsim::verify_suite(name));
        } else {
            status = print_report(byzsim::verify_suite(suite));
        }
        return status;
    } catch (const byzsim::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
