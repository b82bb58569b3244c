#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "overlapq/analysis.hpp"
#include "overlapq/copula.hpp"
#include "overlapq/laplace.hpp"
#include "overlapq/report.hpp"
#include "overlapq/simulate.hpp"

namespace py = pybind11;
using namespace overlapq;

namespace {

py::dict stat_dict(const StatSummary& s) {
    py::dict d;
    d["mean"] = s.mean;
    d["se"] = s.se;
    return d;
}

py::dict analysis_dict(const Analysis& a) {
    py::dict d;
    d["rho"] = a.rho;
    d["tau1"] = a.waiting.tau1();
    d["boundary"] = a.waiting.boundary;
    d["mean_wait"] = a.waiting.mean;
    d["mean_max_overlap"] = a.max_law.mean;
    d["mean_min_overlap"] = a.min_law.mean;
    d["prob_s_gt_a"] = a.p_s_gt_a;
    d["system_residual"] = a.waiting.system_residual;
    d["condition_number"] = a.waiting.condition_number;
    std::vector<Complex> roots = a.waiting.roots.roots;
    d["roots"] = roots;
    d["root_count_verified"] = a.waiting.roots.verified_count;
    if (a.formula_diagnostic) {
        py::dict f;
        f["formula_value"] = a.formula_diagnostic->formula_value;
        f["derivative_value"] = a.formula_diagnostic->derivative_value;
        f["discrepancy"] = a.formula_diagnostic->discrepancy;
        d["mean_max_formula_diagnostic"] = f;
    }
    if (a.sign_resolution) {
        py::dict s;
        s["chosen_sign"] = a.sign_resolution->chosen_sign;
        s["err_minus"] = a.sign_resolution->err_minus;
        s["err_plus"] = a.sign_resolution->err_plus;
        d["splus_sign_resolution"] = s;
    }
    return d;
}

SimConfig sim_config(std::uint64_t customers, std::uint64_t warmup, int replications,
                     std::uint64_t seed, int threads, std::vector<double> cdf_grid) {
    SimConfig cfg;
    cfg.customers = customers;
    cfg.warmup = warmup;
    cfg.replications = replications;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.cdf_grid = std::move(cdf_grid);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Waiting and overlap times in single-server queues with FGM-dependent "
              "service and interarrival times";

    py::class_<DistributionSpec>(m, "DistributionSpec")
        .def("pdf", &DistributionSpec::pdf)
        .def("cdf", &DistributionSpec::cdf)
        .def("quantile", &DistributionSpec::quantile)
        .def("moment", &DistributionSpec::moment)
        .def("__repr__", &DistributionSpec::describe);
    m.def("exponential", &DistributionSpec::exponential, py::arg("rate"));
    m.def("erlang", &DistributionSpec::erlang, py::arg("shape"), py::arg("rate"));
    m.def("hyperexponential", &DistributionSpec::hyperexponential, py::arg("weights"),
          py::arg("rates"));

    py::class_<QueueModel>(m, "QueueModel")
        .def_property_readonly("lambda_", &QueueModel::lambda)
        .def_property_readonly("theta", &QueueModel::theta)
        .def_property_readonly("utilization", &QueueModel::utilization)
        .def("__repr__", &QueueModel::describe);
    m.def("mg1", &QueueModel::mg1, py::arg("lambda_"), py::arg("theta"),
          py::arg("service"));
    m.def("erlang_arrivals", &QueueModel::erlang_arrivals, py::arg("n"),
          py::arg("lambda_"), py::arg("theta"), py::arg("service"));
    m.def(
        "proportional",
        [](double lambda, double theta, const DistributionSpec& service,
           const std::vector<std::pair<double, double>>& atoms) {
            std::vector<OmegaAtom> a;
            for (const auto& [x, p] : atoms) a.push_back({x, p});
            return QueueModel::proportional(lambda, theta, service, a);
        },
        py::arg("lambda_"), py::arg("theta"), py::arg("service"), py::arg("atoms"));

    m.def("fgm_cdf", [](double u1, double u2, double theta) {
        return fgm_cdf({u1, u2}, Theta(theta));
    });
    m.def("fgm_density", [](double u1, double u2, double theta) {
        return fgm_density({u1, u2}, Theta(theta));
    });
    m.def("rank_correlations",
          [](double theta) { return rank_correlations(Theta(theta)); });
    m.def(
        "fgm_sample",
        [](double theta, std::size_t count, std::uint64_t seed) {
            RngStream rng(seed);
            std::vector<std::pair<double, double>> out;
            out.reserve(count);
            for (std::size_t i = 0; i < count; ++i) {
                const UnitPair p = sample_pair(Theta(theta), rng);
                out.emplace_back(p.u1, p.u2);
            }
            return out;
        },
        py::arg("theta"), py::arg("count"), py::arg("seed") = 1u);

    m.def(
        "analyze", [](const QueueModel& model) { return analysis_dict(analyze(model)); },
        py::arg("model"));

    m.def(
        "waiting_lst",
        [](const QueueModel& model, Complex s) { return analyze(model).waiting.lst(s); },
        py::arg("model"), py::arg("s"));

    m.def(
        "simulate",
        [](const QueueModel& model, std::uint64_t customers, std::uint64_t warmup,
           int replications, std::uint64_t seed, int threads,
           std::vector<double> cdf_grid) {
            const SimResult r = run(model, sim_config(customers, warmup, replications,
                                                      seed, threads, std::move(cdf_grid)));
            py::dict d;
            d["waiting"] = stat_dict(r.waiting);
            d["max_overlap"] = stat_dict(r.max_overlap);
            d["min_overlap"] = stat_dict(r.min_overlap);
            d["prob_s_gt_a"] = stat_dict(r.p_s_gt_a);
            d["divergence_suspected"] = r.divergence_suspected;
            d["warmup"] = r.warmup;
            if (!r.cdf_grid.empty()) {
                d["cdf_grid"] = r.cdf_grid;
                d["cdf_wait"] = r.cdf_wait;
                d["cdf_max"] = r.cdf_max;
                d["cdf_min"] = r.cdf_min;
            }
            return d;
        },
        py::arg("model"), py::arg("customers") = 1000000, py::arg("warmup") = 100000,
        py::arg("replications") = 10, py::arg("seed") = 24601, py::arg("threads") = 1,
        py::arg("cdf_grid") = std::vector<double>{});

    m.def(
        "sweep",
        [](const QueueModel& model, double theta_min, double theta_max, int steps) {
            SweepSpec spec{theta_min, theta_max, steps};
            std::vector<py::dict> rows;
            for (const auto& r : sweep_rows(model, spec)) {
                py::dict d;
                d["theta"] = r.theta;
                d["rho"] = r.rho;
                d["mean_wait"] = r.mean_wait;
                d["mean_max_overlap"] = r.mean_max_overlap;
                d["mean_min_overlap"] = r.mean_min_overlap;
                d["tau1"] = r.tau1;
                rows.push_back(d);
            }
            return rows;
        },
        py::arg("model"), py::arg("theta_min") = -1.0, py::arg("theta_max") = 1.0,
        py::arg("steps") = 41);

    m.def(
        "invert_cdf",
        [](const QueueModel& model, const std::string& which,
           const std::vector<double>& t_grid) {
            const Analysis a = analyze(model);
            const LstEvaluator& lst = which == "waiting"     ? a.waiting.lst
                                      : which == "max"       ? a.max_law.lst
                                      : which == "min"       ? a.min_law.lst
                                                             : throw ValidationError(
                                                                   "which must be "
                                                                   "waiting|max|min");
            const CdfGrid g = invert_cdf(lst, t_grid, std::max(1.0, model.lambda()));
            py::dict d;
            d["t"] = g.t;
            d["f"] = g.f;
            d["atom_at_zero"] = g.atom_at_zero;
            return d;
        },
        py::arg("model"), py::arg("which"), py::arg("t_grid"));

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<StabilityError>(m, "StabilityError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
