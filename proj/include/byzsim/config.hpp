#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "byzsim/adversary.hpp"
#include "byzsim/aggregators.hpp"
#include "byzsim/objectives.hpp"
#include "byzsim/optimize.hpp"

namespace byzsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MethodSpec {
    enum class Kind { Alg1Mlmc, Alg2Opt1, Alg2Opt2, Momentum, Sgd };
    Kind kind = Kind::Sgd;
    double beta = 0.9;  // momentum
};

struct LrSpec {
    enum class Kind { Fixed, AdagradNorm, Theoretical };
    Kind kind = Kind::Fixed;
    double eta = 1e-2;   // fixed
    double eta0 = 1.0;   // adagrad_norm
    LrKind formula = LrKind::StaticNonconvex;  // theoretical
    double sigma = 0.0;  // theoretical
    double gamma = 0.0;
    double cv = 0.0;
};

struct RunConfig {
    Objective objective = Objective::quadratic({2.0, 1.0, 1.0, 2.0});
    NoiseModel noise = NoiseModel::gaussian(0.0);
    Vector start;
    std::size_t m = 1;
    MethodSpec method;
    AggregatorSpec aggregator;
    AttackSpec attack;
    SwitchingSpec switching;
    LrSpec lr;
    std::uint64_t horizon = 1;
    Domain domain;
    std::uint64_t seed = 0;
    std::uint64_t seeds_count = 1;
    std::optional<int> jmax_override;
    bool coupled_batches = true;
    double noise_bound_v = 0.0;  // V in fail-safe thresholds; defaults from noise
    double kappa_delta = 0.0;    // option-1 gamma
};

/// Parses and validates a JSON document; throws ConfigError with the failing
/// field path in the message.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Re-parses the document with the dotted path (e.g. "attack.lambda") set to
/// the given JSON literal; used by sweeps.
std::string set_json_path(const std::string& json_text, const std::string& dotted_path,
                          const std::string& value_literal);

}  // namespace byzsim
