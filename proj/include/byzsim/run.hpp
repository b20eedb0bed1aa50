#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "byzsim/config.hpp"
#include "byzsim/estimators.hpp"

namespace byzsim {

struct RoundRecord {
    std::uint64_t t = 1;
    double gap = 0.0;           // f(x_t) - f*
    double grad_norm_sq = 0.0;  // ||grad f(x_t)||^2
    double byz_fraction = 0.0;  // max over computation indices in round t
    std::uint64_t cost = 1;     // per-worker gradient evaluations
    int level = 0;              // sampled J; 0 for non-MLMC methods
    bool failsafe = false;
    bool dynamic_round = false;  // Byzantine set changed within the round
};

struct RunTrace {
    std::uint64_t run_id = 0;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> rounds;
    Vector final_iterate;
    double final_gap = 0.0;
    double min_gap = 0.0;
    double avg_grad_norm_sq = 0.0;
    std::uint64_t total_cost = 0;    // sum of per-worker costs
    std::uint64_t oracle_calls = 0;  // charged evaluations across all workers
};

RunTrace run(const RunConfig& config);

struct SweepPoint {
    std::string axis_path;  // empty when no axis
    std::string axis_value;
};

struct SweepResult {
    std::vector<SweepPoint> points;   // one per run, aligned with traces
    std::vector<RunTrace> traces;     // ordered by run_id
};

/// Cross product of axis values x seed indices; run i uses seed
/// splitmix(master, i). Runs may execute in parallel (BYZSIM_THREADS caps
/// the worker count); results are identical to sequential execution.
SweepResult sweep(const std::string& base_config_json, const std::string& axis_path,
                  const std::vector<std::string>& axis_values, std::uint64_t seeds);

std::string trace_csv(const std::vector<RunTrace>& traces);
std::string summary_csv(const std::vector<RunTrace>& traces);
void export_csv(const std::vector<RunTrace>& traces, const std::string& path);
void export_summary_csv(const std::vector<RunTrace>& traces, const std::string& path);

}  // namespace byzsim
