#include "overlapq/queue_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "overlapq/copula.hpp"
#include "overlapq/errors.hpp"

namespace overlapq {

QueueModel::QueueModel(Family f, double lambda, int n, double theta,
                       DistributionSpec service, std::vector<OmegaAtom> atoms)
    : family_(f), lambda_(lambda), n_(n), theta_(theta), service_(std::move(service)),
      atoms_(std::move(atoms)) {
    if (!(lambda_ > 0.0)) throw ValidationError("lambda must be positive");
    Theta check(theta_);  // range check
    (void)check;
}

QueueModel QueueModel::mg1(double lambda, double theta, DistributionSpec service) {
    return QueueModel(Family::Mg1, lambda, 1, theta, std::move(service), {});
}

QueueModel QueueModel::erlang_arrivals(int n, double lambda, double theta,
                                       DistributionSpec service) {
    if (n < 1) throw ValidationError("erlang arrivals: n must be >= 1");
    if (n > 8) throw ValidationError("erlang arrivals: n > 8 not supported (system size cap)");
    return QueueModel(Family::Erlang, lambda, n, theta, std::move(service), {});
}

QueueModel QueueModel::proportional(double lambda, double theta, DistributionSpec service,
                                    std::vector<OmegaAtom> atoms) {
    if (atoms.empty()) throw ValidationError("proportional: at least one atom required");
    std::sort(atoms.begin(), atoms.end(),
              [](const OmegaAtom& x, const OmegaAtom& y) { return x.a < y.a; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].a > 0.0 && atoms[i].a < 1.0))
            throw ValidationError("proportional: atoms a_i must lie in (0, 1)");
        if (i > 0 && !(atoms[i].a > atoms[i - 1].a))
            throw ValidationError("proportional: atom values must be distinct");
        if (!(atoms[i].p >= 0.0)) throw ValidationError("proportional: atom weights >= 0");
        total += atoms[i].p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("proportional: atom weights must sum to 1");
    return QueueModel(Family::Proportional, lambda, 1, theta, std::move(service),
                      std::move(atoms));
}

double QueueModel::mean_interarrival() const {
    switch (family_) {
        case Family::Mg1:
            return 1.0 / lambda_;
        case Family::Erlang:
            return n_ / lambda_;
        case Family::Proportional: {
            double mean_omega = 0.0;
            for (const auto& at : atoms_) mean_omega += at.p * at.a;
            return mean_omega * service_.mean() + 1.0 / lambda_;
        }
    }
    return 0.0;
}

double QueueModel::utilization() const {
    switch (family_) {
        case Family::Mg1:
            return lambda_ * service_.mean();
        case Family::Erlang:
            return lambda_ * service_.mean() / n_;
        case Family::Proportional: {
            double mean_abar = 0.0;
            for (const auto& at : atoms_) mean_abar += at.p * (1.0 - at.a);
            // E(S - A) < 0  <=>  lambda E(S) sum p_i (1 - a_i) < 1.
            return lambda_ * service_.mean() * mean_abar;
        }
    }
    return 0.0;
}

void QueueModel::require_stable() const {
    const double rho = utilization();
    if (!(rho < 1.0)) {
        std::ostringstream os;
        os << "model is unstable: utilization " << rho << " >= 1";
        throw StabilityError(os.str());
    }
}

DistributionSpec QueueModel::arrival_marginal() const {
    switch (family_) {
        case Family::Mg1:
            return DistributionSpec::exponential(lambda_);
        case Family::Erlang:
            return DistributionSpec::erlang(n_, lambda_);
        case Family::Proportional:
            throw ValidationError(
                "proportional family has no renewal interarrival marginal");
    }
    throw ValidationError("unknown family");
}

std::string QueueModel::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::Mg1:
            os << "M/G/1";
            break;
        case Family::Erlang:
            os << "E(" << n_ << ")/G/1";
            break;
        case Family::Proportional:
            os << "proportional(" << atoms_.size() << " atoms)";
            break;
    }
    os << " lambda=" << lambda_ << " theta=" << theta_ << " service=" << service_.describe();
    return os.str();
}

}  // namespace overlapq
