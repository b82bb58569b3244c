#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "overlapq/queue_model.hpp"
#include "overlapq/rng.hpp"

namespace overlapq {

struct SimConfig {
    std::uint64_t customers = 10'000'000;  // measured customers per replication
    std::uint64_t warmup = 100'000;        // doubled automatically when rho > 0.8
    int replications = 10;
    std::uint64_t seed = 0x5EED;
    std::vector<double> cdf_grid;  // when nonempty, empirical cdfs are accumulated
    int threads = 1;               // replication-level workers; 0 = hardware count
};

struct StatSummary {
    double mean = 0.0;
    double se = 0.0;  // batch-means standard error across replications
};

struct SimResult {
    StatSummary waiting, max_overlap, min_overlap, p_s_gt_a;
    std::uint64_t customers = 0;  // per replication, after warmup
    std::uint64_t warmup = 0;     // effective warmup actually applied
    int replications = 0;
    std::uint64_t seed = 0;
    bool divergence_suspected = false;
    std::vector<double> cdf_grid;
    std::vector<double> cdf_wait, cdf_max, cdf_min;
};

// One (service, interarrival) pair.  Renewal families consume two uniforms
// (copula pair through the marginal quantiles); the proportional family
// consumes three (S, J, and the atom pick) and returns A = Omega S + J.
std::pair<double, double> sample_sa(const QueueModel& model, RngStream& rng);

// Lindley-recursion Monte Carlo with counter-based streams keyed by
// (seed, replication, customer): results are bit-identical for a given
// config regardless of the number of worker threads.
SimResult run(const QueueModel& model, const SimConfig& cfg);

}  // namespace overlapq
