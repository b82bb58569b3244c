#include "overlapq/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "overlapq/copula.hpp"
#include "overlapq/errors.hpp"

namespace overlapq {

namespace {

// Inverse-cdf sampler: closed form for exponential, otherwise a quantile
// table seeding one or two guarded Newton steps on the closed-form cdf.
// Accuracy target |F(y) - u| <= 1e-12, same contract as the slow quantile.
class QuantileSampler {
public:
    explicit QuantileSampler(const DistributionSpec& d)
        : kind_(d.kind()), shape_(d.shape()), rate_(d.rate()), weights_(d.weights()),
          rates_(d.rates()) {
        if (kind_ == DistributionSpec::Kind::Exponential) return;
        table_.resize(kTable + 1);
        for (int i = 0; i < kTable; ++i)
            table_[i] = d.quantile(static_cast<double>(i) / kTable);
        // One extra node covering the start of the direct-solve tail region.
        table_[kTable] = d.quantile(1.0 - 1.0 / kTable);
    }

    double draw(double u) const {
        if (kind_ == DistributionSpec::Kind::Exponential) return -std::log1p(-u) / rate_;
        const double scaled = u * kTable;
        const int idx = static_cast<int>(scaled);
        if (idx >= kTable - 1) return solve_tail(u);
        const double frac = scaled - idx;
        double y = table_[idx] + frac * (table_[idx + 1] - table_[idx]);
        // Two Newton corrections keep |F-u| well under 1e-12 everywhere the
        // quantile is smooth; the bisection fallback covers the flat-density
        // corner near zero.
        for (int it = 0; it < 8; ++it) {
            const auto [f, d] = cdf_pdf(y);
            const double err = f - u;
            if (std::abs(err) <= 1e-12) return y;
            if (d > 0.0) {
                const double next = y - err / d;
                if (next > 0.0) {
                    y = next;
                    continue;
                }
            }
            return bisect(u, idx);
        }
        return y;
    }

private:
    static constexpr int kTable = 4096;

    std::pair<double, double> cdf_pdf(double y) const {
        if (kind_ == DistributionSpec::Kind::Erlang) {
            const double x = rate_ * y;
            const double e = std::exp(-x);
            double term = 1.0, sum = 1.0;
            for (int j = 1; j < shape_; ++j) {
                term *= x / j;
                sum += term;
            }
            // term now holds x^(shape-1)/(shape-1)!
            return {1.0 - e * sum, rate_ * term * e};
        }
        double f = 0.0, d = 0.0;
        for (std::size_t i = 0; i < rates_.size(); ++i) {
            const double e = std::exp(-rates_[i] * y);
            f += weights_[i] * (1.0 - e);
            d += weights_[i] * rates_[i] * e;
        }
        return {f, d};
    }

    double solve_tail(double u) const {
        double lo = table_[kTable];
        double hi = lo + 1.0;
        while (cdf_pdf(hi).first < u) {
            lo = hi;
            hi *= 2.0;
        }
        double y = std::min(hi, lo - std::log1p(-u));
        for (int it = 0; it < 100; ++it) {
            const auto [f, d] = cdf_pdf(y);
            const double err = f - u;
            if (std::abs(err) <= 1e-12) return y;
            if (err > 0.0) hi = y; else lo = y;
            const double next = d > 0.0 ? y - err / d : 0.5 * (lo + hi);
            y = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
        }
        return y;
    }

    double bisect(double u, int idx) const {
        double lo = idx > 0 ? table_[idx - 1] : 0.0;
        double hi = table_[idx + 2 <= kTable ? idx + 2 : kTable];
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto [f, d] = cdf_pdf(mid);
            const double err = f - u;
            if (std::abs(err) <= 1e-12) return mid;
            if (d > 0.0) {
                const double next = mid - err / d;
                if (next > lo && next < hi) {
                    if (err > 0.0) hi = mid; else lo = mid;
                    lo = std::max(lo, std::min(next, hi));
                    continue;
                }
            }
            if (err > 0.0) hi = mid; else lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    DistributionSpec::Kind kind_;
    int shape_;
    double rate_;
    std::vector<double> weights_;
    std::vector<double> rates_;
    std::vector<double> table_;
};

struct PairSampler {
    explicit PairSampler(const QueueModel& model)
        : family(model.family()), theta(model.theta()), lambda(model.lambda()),
          service(model.service()) {
        if (family != QueueModel::Family::Proportional)
            arrival.emplace(model.arrival_marginal());
        else
            for (const auto& at : model.atoms()) {
                cum_p.push_back((cum_p.empty() ? 0.0 : cum_p.back()) + at.p);
                omega.push_back(at.a);
            }
    }

    // u3 is consumed only by the proportional family.
    std::pair<double, double> draw(double u1, double v, double u3) const {
        const double u2 = fgm_conditional_inverse(u1, v, Theta(theta));
        const double s = service.draw(u1);
        if (family != QueueModel::Family::Proportional) return {s, arrival->draw(u2)};
        const double j = -std::log1p(-u2) / lambda;
        std::size_t i = 0;
        while (i + 1 < cum_p.size() && u3 > cum_p[i]) ++i;
        return {s, omega[i] * s + j};
    }

    QueueModel::Family family;
    double theta;
    double lambda;
    QuantileSampler service;
    std::optional<QuantileSampler> arrival;
    std::vector<double> cum_p;
    std::vector<double> omega;
};

struct RepStats {
    double sum_w = 0.0, sum_m = 0.0, sum_v = 0.0;
    std::uint64_t count_sgta = 0;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> cdf_w, cdf_m, cdf_v;
    double block_front = 0.0, block_back = 0.0;  // first/last block means of W
};

RepStats run_replication(const PairSampler& sampler, const SimConfig& cfg,
                         std::uint64_t warmup, int rep, const std::vector<double>& grid) {
    RngStream stream(cfg.seed, static_cast<std::uint64_t>(rep));
    RepStats st;
    if (!grid.empty()) {
        // One histogram bin per grid point; prefix sums at merge time turn
        // the counts into empirical cdf values.
        st.cdf_w.assign(grid.size(), 0);
        st.cdf_m.assign(grid.size(), 0);
        st.cdf_v.assign(grid.size(), 0);
    }
    auto bump = [&grid](std::vector<std::uint64_t>& bins, double value) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), value);
        if (it != grid.end()) ++bins[static_cast<std::size_t>(it - grid.begin())];
    };

    const std::uint64_t total = warmup + cfg.customers;
    const std::uint64_t block = std::max<std::uint64_t>(cfg.customers / 10, 1);
    double w = 0.0;
    double block_sum = 0.0;
    std::uint64_t block_n = 0;

    for (std::uint64_t k = 0; k < total; ++k) {
        const double u1 = stream.at(k, 0);
        const double v = stream.at(k, 1);
        const double u3 =
            sampler.family == QueueModel::Family::Proportional ? stream.at(k, 2) : 0.0;
        const auto [s, a] = sampler.draw(u1, v, u3);
        const double drift = s - a;
        if (k >= warmup) {
            const double over = drift > 0.0 ? drift : 0.0;
            const double m = w + over;
            const double shifted = w + drift;
            const double v_overlap = std::min(w, shifted > 0.0 ? shifted : 0.0);
            st.sum_w += w;
            st.sum_m += m;
            st.sum_v += v_overlap;
            st.count_sgta += drift > 0.0 ? 1 : 0;
            ++st.n;
            if (!grid.empty()) {
                bump(st.cdf_w, w);
                bump(st.cdf_m, m);
                bump(st.cdf_v, v_overlap);
            }
            block_sum += w;
            if (++block_n == block) {
                const double bm = block_sum / block_n;
                if (st.n <= block) st.block_front = bm;
                st.block_back = bm;
                block_sum = 0.0;
                block_n = 0;
            }
        }
        const double next = w + drift;
        w = next > 0.0 ? next : 0.0;
    }
    return st;
}

}  // namespace

std::pair<double, double> sample_sa(const QueueModel& model, RngStream& rng) {
    const PairSampler sampler(model);
    const double u1 = rng.next();
    const double v = rng.next();
    const double u3 =
        model.family() == QueueModel::Family::Proportional ? rng.next() : 0.0;
    return sampler.draw(u1, v, u3);
}

SimResult run(const QueueModel& model, const SimConfig& cfg) {
    if (cfg.replications < 1) throw ValidationError("replications must be >= 1");
    if (cfg.customers == 0) throw ValidationError("customers must be positive");

    if (cfg.warmup >= cfg.customers)
        throw ValidationError("warmup must be smaller than customers");
    const PairSampler sampler(model);
    const double rho = model.utilization();
    const std::uint64_t warmup = rho > 0.8 ? 2 * cfg.warmup : cfg.warmup;

    const int reps = cfg.replications;
    std::vector<RepStats> stats(reps);
    int workers = cfg.threads == 0
                      ? static_cast<int>(std::thread::hardware_concurrency())
                      : cfg.threads;
    workers = std::max(1, std::min(workers, reps));

    if (workers == 1) {
        for (int r = 0; r < reps; ++r)
            stats[r] = run_replication(sampler, cfg, warmup, r, cfg.cdf_grid);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next_rep{0};
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&]() {
                for (int r = next_rep.fetch_add(1); r < reps; r = next_rep.fetch_add(1))
                    stats[r] = run_replication(sampler, cfg, warmup, r, cfg.cdf_grid);
            });
        for (auto& th : pool) th.join();
    }

    SimResult out;
    out.customers = cfg.customers;
    out.warmup = warmup;
    out.replications = reps;
    out.seed = cfg.seed;
    out.cdf_grid = cfg.cdf_grid;

    auto summarize = [&](auto pick) {
        StatSummary s;
        std::vector<double> means(reps);
        for (int r = 0; r < reps; ++r) means[r] = pick(stats[r]);
        for (double m : means) s.mean += m;
        s.mean /= reps;
        if (reps > 1) {
            double ss = 0.0;
            for (double m : means) ss += (m - s.mean) * (m - s.mean);
            s.se = std::sqrt(ss / (reps - 1) / reps);
        }
        return s;
    };
    out.waiting = summarize([](const RepStats& s) { return s.sum_w / s.n; });
    out.max_overlap = summarize([](const RepStats& s) { return s.sum_m / s.n; });
    out.min_overlap = summarize([](const RepStats& s) { return s.sum_v / s.n; });
    out.p_s_gt_a =
        summarize([](const RepStats& s) { return static_cast<double>(s.count_sgta) / s.n; });

    int diverging = 0;
    for (const auto& s : stats)
        if (s.block_back > 2.0 * s.block_front + 0.5 * std::sqrt(s.block_front + 1.0))
            ++diverging;
    out.divergence_suspected = diverging > reps / 2;

    if (!cfg.cdf_grid.empty()) {
        const std::size_t gsz = cfg.cdf_grid.size();
        out.cdf_wait.assign(gsz, 0.0);
        out.cdf_max.assign(gsz, 0.0);
        out.cdf_min.assign(gsz, 0.0);
        double total_n = 0.0;
        for (const auto& s : stats) total_n += static_cast<double>(s.n);
        for (const auto& s : stats)
            for (std::size_t i = 0; i < gsz; ++i) {
                out.cdf_wait[i] += static_cast<double>(s.cdf_w[i]);
                out.cdf_max[i] += static_cast<double>(s.cdf_m[i]);
                out.cdf_min[i] += static_cast<double>(s.cdf_v[i]);
            }
        double acc_w = 0.0, acc_m = 0.0, acc_v = 0.0;
        for (std::size_t i = 0; i < gsz; ++i) {
            acc_w += out.cdf_wait[i];
            acc_m += out.cdf_max[i];
            acc_v += out.cdf_min[i];
            out.cdf_wait[i] = acc_w / total_n;
            out.cdf_max[i] = acc_m / total_n;
            out.cdf_min[i] = acc_v / total_n;
        }
    }
    return out;
}

}  // namespace overlapq
