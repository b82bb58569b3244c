#include "overlapq/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "overlapq/errors.hpp"

namespace overlapq {

using nlohmann::ordered_json;

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string format_complex(Complex z) {
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z))) return format_value(z.real());
    std::ostringstream os;
    os << format_value(z.real()) << (z.imag() >= 0 ? "+" : "") << format_value(z.imag())
       << "i";
    return os.str();
}

}  // namespace

ordered_json model_to_json(const QueueModel& model) {
    ordered_json j;
    switch (model.family()) {
        case QueueModel::Family::Mg1: j["family"] = "mg1"; break;
        case QueueModel::Family::Erlang: j["family"] = "erlang"; break;
        case QueueModel::Family::Proportional: j["family"] = "proportional"; break;
    }
    j["lambda"] = model.lambda();
    if (model.family() == QueueModel::Family::Erlang) j["n"] = model.stages();
    j["theta"] = model.theta();
    const DistributionSpec& s = model.service();
    ordered_json sj;
    switch (s.kind()) {
        case DistributionSpec::Kind::Exponential:
            sj["kind"] = "exponential";
            sj["rate"] = s.rate();
            break;
        case DistributionSpec::Kind::Erlang:
            sj["kind"] = "erlang";
            sj["shape"] = s.shape();
            sj["rate"] = s.rate();
            break;
        case DistributionSpec::Kind::Hyperexponential:
            sj["kind"] = "hyperexponential";
            sj["weights"] = s.weights();
            sj["rates"] = s.rates();
            break;
    }
    j["service"] = sj;
    if (model.family() == QueueModel::Family::Proportional) {
        ordered_json atoms = ordered_json::array();
        for (const auto& at : model.atoms()) atoms.push_back({{"a", at.a}, {"p", at.p}});
        j["omega"]["atoms"] = atoms;
    }
    return j;
}

ordered_json analysis_report(const Analysis& a) {
    ordered_json j;
    j["model"] = model_to_json(a.model);
    j["rho"] = a.rho;

    ordered_json roots = ordered_json::array();
    for (std::size_t i = 0; i < a.waiting.roots.roots.size(); ++i) {
        const Complex r = a.waiting.roots.roots[i];
        roots.push_back({{"re", r.real()},
                         {"im", r.imag()},
                         {"multiplicity", a.waiting.roots.multiplicities[i]},
                         {"residual", a.waiting.roots.residuals[i]}});
    }
    j["tau1"] = format_complex(a.waiting.tau1());
    j["roots"] = roots;
    j["root_count_verified"] = a.waiting.roots.verified_count;

    ordered_json boundary = ordered_json::array();
    for (double b : a.waiting.boundary) boundary.push_back(b);
    j["boundary"] = boundary;

    j["means"] = {{"waiting", a.waiting.mean},
                  {"max_overlap", a.max_law.mean},
                  {"min_overlap", a.min_law.mean},
                  {"splus_part", a.splus_mean}};
    j["prob_s_gt_a"] = a.p_s_gt_a;

    if (a.formula_diagnostic) {
        j["mean_max_formula_diagnostic"] = {
            {"formula_value", a.formula_diagnostic->formula_value},
            {"derivative_value", a.formula_diagnostic->derivative_value},
            {"discrepancy", a.formula_diagnostic->discrepancy}};
    }
    if (a.sign_resolution) {
        j["splus_sign_resolution"] = {{"chosen_sign", a.sign_resolution->chosen_sign},
                                      {"err_minus", a.sign_resolution->err_minus},
                                      {"err_plus", a.sign_resolution->err_plus},
                                      {"ambiguous", a.sign_resolution->ambiguous}};
    }
    j["diagnostics"] = {{"system_residual", a.waiting.system_residual},
                        {"condition_number", a.waiting.condition_number}};
    return j;
}

ordered_json sim_report(const SimResult& r) {
    auto stat = [](const StatSummary& s) {
        return ordered_json{{"mean", s.mean}, {"se", s.se}};
    };
    ordered_json j;
    j["waiting"] = stat(r.waiting);
    j["max_overlap"] = stat(r.max_overlap);
    j["min_overlap"] = stat(r.min_overlap);
    j["prob_s_gt_a"] = stat(r.p_s_gt_a);
    j["customers"] = r.customers;
    j["warmup"] = r.warmup;
    j["replications"] = r.replications;
    j["seed"] = r.seed;
    j["divergence_suspected"] = r.divergence_suspected;
    return j;
}

std::vector<SweepRow> sweep_rows(const QueueModel& base, const SweepSpec& sweep) {
    std::vector<SweepRow> rows;
    for (int i = 0; i < sweep.steps; ++i) {
        // Exact endpoint arithmetic so theta = 0 lands on the independence
        // branch when it is a grid point.
        const double theta = (sweep.theta_min * (sweep.steps - 1 - i) +
                              sweep.theta_max * i) /
                             (sweep.steps - 1);
        QueueModel m = [&]() {
            switch (base.family()) {
                case QueueModel::Family::Mg1:
                    return QueueModel::mg1(base.lambda(), theta, base.service());
                case QueueModel::Family::Erlang:
                    return QueueModel::erlang_arrivals(base.stages(), base.lambda(), theta,
                                                       base.service());
                case QueueModel::Family::Proportional:
                    return QueueModel::proportional(base.lambda(), theta, base.service(),
                                                    base.atoms());
            }
            throw ValidationError("unknown family");
        }();
        const Analysis a = analyze(m);
        rows.push_back({theta, a.rho, a.waiting.mean, a.max_law.mean, a.min_law.mean,
                        a.waiting.tau1()});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "theta,rho,mean_wait,mean_max_overlap,mean_min_overlap,tau1\n";
    for (const auto& r : rows)
        os << format_value(r.theta) << ',' << format_value(r.rho) << ','
           << format_value(r.mean_wait) << ',' << format_value(r.mean_max_overlap) << ','
           << format_value(r.mean_min_overlap) << ',' << format_complex(r.tau1) << '\n';
    return os.str();
}

std::vector<CompareRow> compare_rows(const Analysis& a, const SimResult& r) {
    auto row = [](std::string name, double analytic, const StatSummary& s) {
        const double se = std::max(s.se, 1e-12);
        return CompareRow{std::move(name), analytic, s.mean, s.se,
                          (analytic - s.mean) / se};
    };
    return {row("waiting", a.waiting.mean, r.waiting),
            row("max_overlap", a.max_law.mean, r.max_overlap),
            row("min_overlap", a.min_law.mean, r.min_overlap),
            row("prob_s_gt_a", a.p_s_gt_a, r.p_s_gt_a)};
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream os;
    os << "statistic,analytic,sim_mean,sim_se,z_score\n";
    for (const auto& r : rows)
        os << r.statistic << ',' << format_value(r.analytic) << ','
           << format_value(r.sim_mean) << ',' << format_value(r.sim_se) << ','
           << format_value(r.z_score) << '\n';
    return os.str();
}

double max_abs_z(const std::vector<CompareRow>& rows) {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.z_score));
    return m;
}

InvertTable invert_table(const Analysis& a, double t_max, int points, const SimResult* sim) {
    InvertTable table;
    double tmax = t_max;
    if (!(tmax > 0.0))
        tmax = 10.0 * std::max({a.max_law.mean, a.waiting.mean, 0.5 / a.model.lambda()});
    for (int i = 1; i <= points; ++i)
        table.t.push_back(tmax * static_cast<double>(i) / points);

    const double scale = std::max(1.0, a.model.lambda());
    table.wait = invert_cdf(a.waiting.lst, table.t, scale);
    table.max = invert_cdf(a.max_law.lst, table.t, scale);
    table.min = invert_cdf(a.min_law.lst, table.t, scale);

    if (sim != nullptr && !sim->cdf_grid.empty()) {
        table.has_empirical = true;
        table.emp_wait = sim->cdf_wait;
        table.emp_max = sim->cdf_max;
        table.emp_min = sim->cdf_min;
    }
    return table;
}

std::string invert_csv(const InvertTable& table) {
    std::ostringstream os;
    os << "t,F_wait,F_max,F_min";
    if (table.has_empirical) os << ",F_wait_empirical,F_max_empirical,F_min_empirical";
    os << '\n';
    for (std::size_t i = 0; i < table.t.size(); ++i) {
        os << format_value(table.t[i]) << ',' << format_value(table.wait.f[i]) << ','
           << format_value(table.max.f[i]) << ',' << format_value(table.min.f[i]);
        if (table.has_empirical)
            os << ',' << format_value(table.emp_wait[i]) << ','
               << format_value(table.emp_max[i]) << ',' << format_value(table.emp_min[i]);
        os << '\n';
    }
    return os.str();
}

}  // namespace overlapq
