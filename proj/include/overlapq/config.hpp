#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "overlapq/queue_model.hpp"
#include "overlapq/simulate.hpp"

namespace overlapq {

struct SweepSpec {
    double theta_min = -1.0;
    double theta_max = 1.0;
    int steps = 41;
};

struct OutputSpec {
    std::string report;  // json report path ("" = stdout only)
    std::string csv;     // csv path for sweep/compare/invert ("" = stdout)
};

// Parsed run configuration.  The config file is JSON with nested blocks:
//
//   {
//     "model": { "family": "mg1", "lambda": 0.5, "theta": 0.5,
//                "service": { "kind": "exponential", "rate": 1.0 } },
//     "action": "analyze",
//     "sim": { "customers": 1000000, "warmup": 100000, "replications": 10,
//              "seed": 42, "threads": 1 },
//     "sweep": { "theta_min": -1, "theta_max": 1, "steps": 41 },
//     "invert": { "t_max": 10.0, "points": 200 },
//     "output": { "report": "out.json", "csv": "out.csv" }
//   }
//
// Scalar keys can be overridden on the command line with
// --set dotted.path=value.
struct RunConfig {
    QueueModel model;
    std::string action;  // empty when the file does not pin one
    SimConfig sim;
    bool has_sim = false;
    SweepSpec sweep;
    double invert_t_max = 0.0;  // 0 = derived from analytic means
    int invert_points = 200;
    OutputSpec output;
};

DistributionSpec service_from_json(const nlohmann::json& j, const std::string& where);
QueueModel model_from_json(const nlohmann::json& j);

// Parse a config file and apply overrides ("model.theta=0.25").  Override
// values are parsed as JSON scalars when possible, else taken as strings.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);
RunConfig config_from_json(nlohmann::json j);

}  // namespace overlapq
