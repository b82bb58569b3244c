#pragma once

#include <vector>

#include "overlapq/distribution.hpp"

namespace overlapq {

// One atom of the random proportion: P(Omega = a) = p.
struct OmegaAtom {
    double a;
    double p;
};

// |theta| below this is treated as exact independence; the boundary systems
// degenerate there and the classical branch takes over.
inline bool theta_is_zero(double theta) { return theta > -1e-12 && theta < 1e-12; }

// Single-server queue with FGM-dependent service and interarrival times.
//
// Families:
//   Mg1          -- interarrival ~ exponential(lambda), (S, A) FGM-coupled.
//   Erlang       -- interarrival ~ Erlang(n, lambda), (S, A) FGM-coupled.
//   Proportional -- A = Omega * S + J with J ~ exponential(lambda),
//                   Omega discrete on {a_i} with a_i < 1, and (S, J)
//                   FGM-coupled.  Note the defining relation is
//                   A = Omega S + J, so S - A = (1 - Omega) S - J.
class QueueModel {
public:
    enum class Family { Mg1, Erlang, Proportional };

    static QueueModel mg1(double lambda, double theta, DistributionSpec service);
    static QueueModel erlang_arrivals(int n, double lambda, double theta,
                                      DistributionSpec service);
    static QueueModel proportional(double lambda, double theta, DistributionSpec service,
                                   std::vector<OmegaAtom> atoms);

    Family family() const { return family_; }
    double lambda() const { return lambda_; }
    int stages() const { return n_; }
    double theta() const { return theta_; }
    const DistributionSpec& service() const { return service_; }
    const std::vector<OmegaAtom>& atoms() const { return atoms_; }

    // Mean fraction of time the server is busy; < 1 is the stability
    // condition for every family.
    double utilization() const;
    double mean_interarrival() const;

    // Throws StabilityError when utilization() >= 1.
    void require_stable() const;

    // Interarrival marginal for the renewal families (Mg1 / Erlang).
    DistributionSpec arrival_marginal() const;

    std::string describe() const;

private:
    QueueModel(Family f, double lambda, int n, double theta, DistributionSpec service,
               std::vector<OmegaAtom> atoms);

    Family family_;
    double lambda_;
    int n_;
    double theta_;
    DistributionSpec service_;
    std::vector<OmegaAtom> atoms_;
};

}  // namespace overlapq
