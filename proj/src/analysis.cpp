#include "overlapq/analysis.hpp"

#include <cmath>

#include "overlapq/errors.hpp"
#include "overlapq/numeric.hpp"

namespace overlapq {

namespace {

double lst_mean(const LstEvaluator& f, double lambda) {
    const double h = 1e-3 * std::max(1.0, lambda);
    return -richardson_derivative([&f](double s) { return f(Complex(s)).real(); }, 0.0, h);
}

}  // namespace

Analysis analyze(const QueueModel& model) {
    model.require_stable();
    std::optional<SignResolution> sign;
    LstEvaluator splus;
    double p = 0.0;

    SolvedWaiting waiting = [&]() -> SolvedWaiting {
        switch (model.family()) {
            case QueueModel::Family::Mg1:
                splus = make_splus_mg1(model);
                p = prob_s_gt_a(model);
                return solve_waiting(model);
            case QueueModel::Family::Erlang: {
                ErlangSplus sp(model);
                sign = sp.resolution();
                splus = [sp](Complex s) { return sp(s); };
                p = prob_s_gt_a_erlang(model);
                return solve_waiting_erlang(model);
            }
            case QueueModel::Family::Proportional:
                splus = make_splus_prop(model);
                p = prob_s_gt_a_prop(model);
                return solve_waiting_prop(model);
        }
        throw ValidationError("unknown family");
    }();

    const double splus_mean = lst_mean(splus, model.lambda());
    auto w = waiting.lst;
    auto sp = splus;
    OverlapLaw max_law{OverlapKind::MaxOverlap,
                       [w, sp](Complex s) { return w(s) * sp(s); },
                       waiting.mean + splus_mean};
    auto min_lst = [w, sp](Complex s) { return w(s) * (2.0 - sp(s)); };
    OverlapLaw min_law{OverlapKind::MinOverlap, min_lst,
                       lst_mean(min_lst, model.lambda())};

    Analysis out{model,   model.utilization(), waiting, max_law, min_law,
                 splus,   splus_mean,          p,       {},      sign};
    if (model.family() == QueueModel::Family::Mg1)
        out.formula_diagnostic =
            mean_max_formula_diagnostic(model, waiting, max_law.mean);
    return out;
}

}  // namespace overlapq
