#include "overlapq/config.hpp"

#include <fstream>
#include <sstream>

#include "overlapq/errors.hpp"

namespace overlapq {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ValidationError("config field '" + field + "': " + why);
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) fail(field, "number required");
    return j[field].get<double>();
}

double optional_number(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) fail(field, "number required");
    return j[field].get<double>();
}

}  // namespace

DistributionSpec service_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(where + ".kind", "one of exponential|erlang|hyperexponential required");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "exponential")
            return DistributionSpec::exponential(require_number(j, "rate"));
        if (kind == "erlang")
            return DistributionSpec::erlang(static_cast<int>(require_number(j, "shape")),
                                            require_number(j, "rate"));
        if (kind == "hyperexponential") {
            if (!j.contains("weights") || !j.contains("rates"))
                fail(where, "hyperexponential needs weights[] and rates[]");
            return DistributionSpec::hyperexponential(
                j["weights"].get<std::vector<double>>(),
                j["rates"].get<std::vector<double>>());
        }
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown kind '" + kind + "'");
}

QueueModel model_from_json(const json& j) {
    if (!j.is_object()) fail("model", "object required");
    if (!j.contains("family") || !j["family"].is_string())
        fail("model.family", "one of mg1|erlang|proportional required");
    const std::string family = j["family"].get<std::string>();
    const double lambda = require_number(j, "lambda");
    const double theta = optional_number(j, "theta", 0.0);
    if (!(theta >= -1.0 && theta <= 1.0)) fail("model.theta", "must lie in [-1, 1]");
    if (!j.contains("service")) fail("model.service", "required");
    DistributionSpec service = service_from_json(j["service"], "model.service");

    try {
        if (family == "mg1") return QueueModel::mg1(lambda, theta, std::move(service));
        if (family == "erlang") {
            const int n = static_cast<int>(optional_number(j, "n", 1.0));
            return QueueModel::erlang_arrivals(n, lambda, theta, std::move(service));
        }
        if (family == "proportional") {
            if (!j.contains("omega") || !j["omega"].is_object() ||
                !j["omega"].contains("atoms"))
                fail("model.omega.atoms", "required for the proportional family");
            std::vector<OmegaAtom> atoms;
            for (const auto& a : j["omega"]["atoms"]) {
                if (!a.is_object() || !a.contains("a") || !a.contains("p"))
                    fail("model.omega.atoms", "each atom needs {a, p}");
                atoms.push_back({a["a"].get<double>(), a["p"].get<double>()});
            }
            return QueueModel::proportional(lambda, theta, std::move(service),
                                            std::move(atoms));
        }
    } catch (const ValidationError& e) {
        if (std::string(e.what()).rfind("config field", 0) == 0) throw;
        fail("model", e.what());
    }
    fail("model.family", "unknown family '" + family + "'");
}

RunConfig config_from_json(json j) {
    if (!j.is_object()) throw ValidationError("config root must be a JSON object");
    if (!j.contains("model")) throw ValidationError("config field 'model': required");

    RunConfig cfg{model_from_json(j["model"]), "", {}, false, {}, 0.0, 200, {}};
    if (j.contains("action")) {
        if (!j["action"].is_string()) fail("action", "string required");
        cfg.action = j["action"].get<std::string>();
    }
    if (j.contains("sim")) {
        const json& s = j["sim"];
        if (!s.is_object()) fail("sim", "object required");
        cfg.has_sim = true;
        cfg.sim.customers =
            static_cast<std::uint64_t>(optional_number(s, "customers", 1e6));
        cfg.sim.warmup = static_cast<std::uint64_t>(optional_number(s, "warmup", 1e5));
        cfg.sim.replications = static_cast<int>(optional_number(s, "replications", 10));
        cfg.sim.seed = static_cast<std::uint64_t>(optional_number(s, "seed", 24601));
        cfg.sim.threads = static_cast<int>(optional_number(s, "threads", 1));
        if (s.contains("cdf_grid")) {
            if (!s["cdf_grid"].is_array()) fail("sim.cdf_grid", "array of times required");
            cfg.sim.cdf_grid = s["cdf_grid"].get<std::vector<double>>();
        }
        if (cfg.sim.replications < 1) fail("sim.replications", "must be >= 1");
        if (cfg.sim.customers == 0) fail("sim.customers", "must be positive");
        if (cfg.sim.warmup >= cfg.sim.customers)
            fail("sim.warmup", "must be smaller than customers");
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        cfg.sweep.theta_min = optional_number(s, "theta_min", -1.0);
        cfg.sweep.theta_max = optional_number(s, "theta_max", 1.0);
        cfg.sweep.steps = static_cast<int>(optional_number(s, "steps", 41));
        if (cfg.sweep.steps < 2) fail("sweep.steps", "must be >= 2");
        if (!(cfg.sweep.theta_min >= -1.0 && cfg.sweep.theta_max <= 1.0 &&
              cfg.sweep.theta_min < cfg.sweep.theta_max))
            fail("sweep", "need -1 <= theta_min < theta_max <= 1");
    }
    if (j.contains("invert")) {
        const json& s = j["invert"];
        cfg.invert_t_max = optional_number(s, "t_max", 0.0);
        cfg.invert_points = static_cast<int>(optional_number(s, "points", 200));
        if (cfg.invert_points < 2) fail("invert.points", "must be >= 2");
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("report")) cfg.output.report = o["report"].get<std::string>();
        if (o.contains("csv")) cfg.output.csv = o["csv"].get<std::string>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }

    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ValidationError("override must look like path=value: " + ov);
        const std::string path_part = ov.substr(0, eq);
        const std::string value_part = ov.substr(eq + 1);
        json value;
        try {
            value = json::parse(value_part);
        } catch (const json::parse_error&) {
            value = value_part;  // plain string
        }
        json* node = &j;
        std::istringstream keys(path_part);
        std::string key, next;
        if (!std::getline(keys, key, '.'))
            throw ValidationError("empty override path: " + ov);
        while (std::getline(keys, next, '.')) {
            node = &((*node)[key]);
            key = next;
        }
        (*node)[key] = value;
    }
    return config_from_json(std::move(j));
}

}  // namespace overlapq
