#include "byzsim/config.hpp"

#include <json.hpp>

#include <cmath>

namespace byzsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at '" + path + "': " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected number");
    return j.get<double>();
}

std::uint64_t uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(path, "expected nonnegative integer");
    return j.get<std::uint64_t>();
}

std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected string");
    return j.get<std::string>();
}

Vector vec(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected nonempty number array");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(num(j[i], path));
    return v;
}

Objective parse_objective(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    if (kind == "quadratic") {
        Vector a = vec(field(j, path, "a"), path + ".a");
        if (a.size() != 4) fail(path + ".a", "expected 4 entries (row-major 2x2)");
        return Objective::quadratic({a[0], a[1], a[2], a[3]});
    }
    if (kind == "least_squares") {
        const json& rows_j = field(j, path, "rows");
        if (!rows_j.is_array() || rows_j.empty()) fail(path + ".rows", "expected array of rows");
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < rows_j.size(); ++i)
            rows.push_back(vec(rows_j[i], path + ".rows"));
        Vector targets = vec(field(j, path, "targets"), path + ".targets");
        return Objective::least_squares(std::move(rows), std::move(targets));
    }
    if (kind == "logistic") return Objective::logistic_synthetic();
    fail(path + ".kind", "unknown objective kind '" + kind + "'");
}

NoiseModel parse_noise(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    if (kind == "gaussian") return NoiseModel::gaussian(num(field(j, path, "sigma"), path + ".sigma"));
    if (kind == "bounded_ball") return NoiseModel::bounded_ball(num(field(j, path, "v"), path + ".v"));
    if (kind == "drift")
        return NoiseModel::drift(num(field(j, path, "c"), path + ".c"),
                                 vec(field(j, path, "direction"), path + ".direction"));
    fail(path + ".kind", "unknown noise kind '" + kind + "'");
}

MethodSpec parse_method(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    MethodSpec m;
    if (kind == "alg1_mlmc") {
        m.kind = MethodSpec::Kind::Alg1Mlmc;
    } else if (kind == "alg2_opt1") {
        m.kind = MethodSpec::Kind::Alg2Opt1;
    } else if (kind == "alg2_opt2") {
        m.kind = MethodSpec::Kind::Alg2Opt2;
    } else if (kind == "momentum") {
        m.kind = MethodSpec::Kind::Momentum;
        m.beta = num(field(j, path, "beta"), path + ".beta");
        if (m.beta < 0.0 || m.beta >= 1.0) fail(path + ".beta", "expected beta in [0,1)");
    } else if (kind == "sgd") {
        m.kind = MethodSpec::Kind::Sgd;
    } else {
        fail(path + ".kind", "unknown method kind '" + kind + "'");
    }
    return m;
}

AggregatorSpec parse_aggregator(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    if (kind == "mean") return AggregatorSpec::mean();
    if (kind == "cwmed") return AggregatorSpec::cwmed();
    if (kind == "cwtm")
        return AggregatorSpec::cwtm(
            (std::size_t)uint(field(j, path, "trim_k"), path + ".trim_k"));
    if (kind == "geomed") {
        double tol = j.contains("tol") ? num(j["tol"], path + ".tol") : 1e-9;
        int max_iter = j.contains("max_iter") ? (int)uint(j["max_iter"], path + ".max_iter") : 10000;
        return AggregatorSpec::geomed(tol, max_iter);
    }
    if (kind == "mfm")
        return AggregatorSpec::mfm(num(field(j, path, "threshold"), path + ".threshold"));
    fail(path + ".kind", "unknown aggregator kind '" + kind + "'");
}

AttackSpec parse_attack(const json& j, const std::string& path, std::size_t dim) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    if (kind == "none") return AttackSpec::none();
    if (kind == "sign_flip") return AttackSpec::sign_flip();
    if (kind == "ipm") {
        double eps = j.contains("epsilon") ? num(j["epsilon"], path + ".epsilon") : 0.1;
        return AttackSpec::ipm(eps);
    }
    if (kind == "alie") {
        std::optional<double> z;
        if (j.contains("z") && !j["z"].is_null()) z = num(j["z"], path + ".z");
        return AttackSpec::alie(z);
    }
    auto shift_vector = [&]() -> Vector {
        if (j.contains("v")) return vec(j["v"], path + ".v");
        if (j.contains("lambda")) {
            double lambda = num(j["lambda"], path + ".lambda");
            Vector dir(dim, 1.0);
            if (j.contains("direction")) dir = vec(j["direction"], path + ".direction");
            return vecmath::scale(dir, lambda);
        }
        fail(path, "expected 'v' or 'lambda' for the attack vector");
    };
    if (kind == "fixed_shift") return AttackSpec::fixed_shift(shift_vector());
    if (kind == "momentum_dynamic") {
        double alpha = num(field(j, path, "alpha"), path + ".alpha");
        try {
            return AttackSpec::momentum_dynamic(alpha, shift_vector());
        } catch (const std::invalid_argument& e) {
            fail(path + ".alpha", e.what());
        }
    }
    fail(path + ".kind", "unknown attack kind '" + kind + "'");
}

SwitchingSpec parse_switching(const json& j, const std::string& path, std::size_t m) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    try {
        if (kind == "none") return SwitchingSpec::static_set({});
        if (kind == "static") {
            std::vector<std::size_t> idx;
            const json& arr = field(j, path, "byz_indices");
            if (!arr.is_array()) fail(path + ".byz_indices", "expected array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                std::size_t w = (std::size_t)uint(arr[i], path + ".byz_indices");
                if (w >= m) fail(path + ".byz_indices", "worker index out of range");
                idx.push_back(w);
            }
            return SwitchingSpec::static_set(std::move(idx));
        }
        if (kind == "periodic")
            return SwitchingSpec::periodic(uint(field(j, path, "k"), path + ".k"),
                                           num(field(j, path, "delta"), path + ".delta"));
        if (kind == "bernoulli")
            return SwitchingSpec::bernoulli(
                num(field(j, path, "p"), path + ".p"),
                uint(field(j, path, "duration"), path + ".duration"),
                num(field(j, path, "delta_max"), path + ".delta_max"));
        if (kind == "within_round")
            return SwitchingSpec::within_round(
                parse_switching(field(j, path, "base"), path + ".base", m),
                num(field(j, path, "flip_probability"), path + ".flip_probability"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown switching kind '" + kind + "'");
}

LrSpec parse_lr(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    LrSpec lr;
    if (kind == "fixed") {
        lr.kind = LrSpec::Kind::Fixed;
        lr.eta = num(field(j, path, "eta"), path + ".eta");
        if (lr.eta <= 0.0) fail(path + ".eta", "expected eta > 0");
    } else if (kind == "adagrad_norm") {
        lr.kind = LrSpec::Kind::AdagradNorm;
        lr.eta0 = num(field(j, path, "eta0"), path + ".eta0");
        if (lr.eta0 <= 0.0) fail(path + ".eta0", "expected eta0 > 0");
    } else if (kind == "theoretical") {
        lr.kind = LrSpec::Kind::Theoretical;
        std::string f = str(field(j, path, "formula"), path + ".formula");
        if (f == "static_nonconvex")
            lr.formula = LrKind::StaticNonconvex;
        else if (f == "static_convex")
            lr.formula = LrKind::StaticConvex;
        else if (f == "dynamic_nonconvex_opt1")
            lr.formula = LrKind::DynamicNonconvexOpt1;
        else if (f == "dynamic_convex_opt1")
            lr.formula = LrKind::DynamicConvexOpt1;
        else
            fail(path + ".formula", "unknown formula '" + f + "'");
        lr.sigma = num(field(j, path, "sigma"), path + ".sigma");
        lr.gamma = num(field(j, path, "gamma"), path + ".gamma");
        if (j.contains("cv")) lr.cv = num(j["cv"], path + ".cv");
    } else {
        fail(path + ".kind", "unknown lr kind '" + kind + "'");
    }
    return lr;
}

Domain parse_domain(const json& j, const std::string& path) {
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    try {
        if (kind == "unconstrained") return Domain::unconstrained();
        if (kind == "l2_ball")
            return Domain::l2_ball(vec(field(j, path, "center"), path + ".center"),
                                   num(field(j, path, "radius"), path + ".radius"));
        if (kind == "box")
            return Domain::box(vec(field(j, path, "lo"), path + ".lo"),
                               vec(field(j, path, "hi"), path + ".hi"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown domain kind '" + kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    RunConfig cfg;
    cfg.objective = parse_objective(field(j, "", "objective"), "objective");
    cfg.noise = parse_noise(field(j, "", "noise"), "noise");
    cfg.start = vec(field(j, "", "start"), "start");
    if (cfg.start.size() != cfg.objective.dim())
        fail("start", "dimension does not match objective");
    cfg.m = (std::size_t)uint(field(j, "", "m"), "m");
    if (cfg.m < 1) fail("m", "expected m >= 1");
    cfg.method = parse_method(field(j, "", "method"), "method");
    if (j.contains("aggregator"))
        cfg.aggregator = parse_aggregator(j["aggregator"], "aggregator");
    else if (cfg.method.kind != MethodSpec::Kind::Alg2Opt2)
        fail("aggregator", "missing required field");
    cfg.attack = parse_attack(field(j, "", "attack"), "attack", cfg.objective.dim());
    cfg.switching = parse_switching(field(j, "", "switching"), "switching", cfg.m);
    cfg.lr = parse_lr(field(j, "", "lr"), "lr");
    cfg.horizon = uint(field(j, "", "T"), "T");
    if (cfg.horizon < 1) fail("T", "expected T >= 1");
    cfg.domain = j.contains("domain") ? parse_domain(j["domain"], "domain")
                                      : Domain::unconstrained();
    cfg.seed = uint(field(j, "", "seed"), "seed");
    if (j.contains("seeds_count")) cfg.seeds_count = uint(j["seeds_count"], "seeds_count");
    if (j.contains("jmax_override")) {
        std::uint64_t v = uint(j["jmax_override"], "jmax_override");
        if (v < 1) fail("jmax_override", "expected >= 1");
        cfg.jmax_override = (int)v;
    }
    if (j.contains("coupled_batches")) {
        if (!j["coupled_batches"].is_boolean()) fail("coupled_batches", "expected boolean");
        cfg.coupled_batches = j["coupled_batches"].get<bool>();
    }
    if (j.contains("V")) cfg.noise_bound_v = num(j["V"], "V");
    switch (cfg.noise.kind) {
        case NoiseModel::Kind::BoundedBall:
            if (cfg.noise_bound_v == 0.0) cfg.noise_bound_v = cfg.noise.bound;
            break;
        case NoiseModel::Kind::Gaussian:
            if (cfg.noise_bound_v == 0.0) cfg.noise_bound_v = cfg.noise.sigma;
            break;
        case NoiseModel::Kind::Drift:
            if (cfg.noise_bound_v == 0.0) cfg.noise_bound_v = cfg.noise.drift_c;
            break;
    }
    if (j.contains("kappa_delta")) cfg.kappa_delta = num(j["kappa_delta"], "kappa_delta");

    // method-level validation; alg2_opt2 forces mfm with per-level thresholds
    if (cfg.method.kind == MethodSpec::Kind::Alg2Opt2)
        cfg.aggregator = AggregatorSpec::mfm(1.0);  // threshold replaced per level
    if (cfg.attack.kind == AttackSpec::Kind::MomentumDynamic && cfg.m != 3)
        fail("m", "momentum_dynamic attack requires m = 3");
    if (cfg.switching.kind == SwitchingSpec::Kind::Static ||
        cfg.switching.kind == SwitchingSpec::Kind::Periodic) {
        double delta = cfg.switching.kind == SwitchingSpec::Kind::Static
                           ? (double)cfg.switching.byz_indices.size() / (double)cfg.m
                           : cfg.switching.delta;
        if (delta >= 0.5) fail("switching", "Byzantine fraction must be < 1/2");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw ConfigError("config error: cannot open '" + path + "'");
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
    std::fclose(f);
    return parse_config(text);
}

std::string set_json_path(const std::string& json_text, const std::string& dotted_path,
                          const std::string& value_literal) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    json value;
    try {
        value = json::parse(value_literal);
    } catch (const json::parse_error&) {
        value = value_literal;  // bare strings allowed
    }
    json* cur = &j;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = dotted_path.find('.', pos);
        std::string key = dotted_path.substr(pos, dot - pos);
        if (key.empty()) throw ConfigError("config error: empty path segment in axis");
        if (dot == std::string::npos) {
            (*cur)[key] = value;
            break;
        }
        if (!cur->contains(key) || !(*cur)[key].is_object()) (*cur)[key] = json::object();
        cur = &(*cur)[key];
        pos = dot + 1;
    }
    return j.dump();
}

}  // namespace byzsim
