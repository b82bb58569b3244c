#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "overlapq/errors.hpp"
#include "overlapq/report.hpp"

namespace {

using namespace overlapq;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitComparison = 4;

void write_file(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file: " + path);
    out << content;
}

void emit_report(const RunConfig& cfg, const nlohmann::ordered_json& j) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    write_file(cfg.output.report, text);
}

void emit_csv(const RunConfig& cfg, const std::string& csv) {
    if (cfg.output.csv.empty())
        std::cout << csv;
    else
        write_file(cfg.output.csv, csv);
}

int run_action(const std::string& action, const RunConfig& cfg, bool corrupt_analytic) {
    if (!cfg.action.empty() && cfg.action != action)
        throw ValidationError("config field 'action': '" + cfg.action +
                              "' does not match subcommand '" + action + "'");

    if (action == "analyze") {
        const Analysis a = analyze(cfg.model);
        emit_report(cfg, analysis_report(a));
        return kExitOk;
    }
    if (action == "simulate") {
        const SimResult r = run(cfg.model, cfg.sim);
        nlohmann::ordered_json j;
        j["model"] = model_to_json(cfg.model);
        j["sim"] = sim_report(r);
        emit_report(cfg, j);
        return kExitOk;
    }
    if (action == "compare") {
        if (!cfg.has_sim) throw ValidationError("config field 'sim': required for compare");
        Analysis a = analyze(cfg.model);
        if (corrupt_analytic) a.waiting.mean += 1.0;  // test hook
        const SimResult r = run(cfg.model, cfg.sim);
        auto rows = compare_rows(a, r);
        emit_csv(cfg, compare_csv(rows));
        nlohmann::ordered_json j;
        j["model"] = model_to_json(cfg.model);
        j["sim"] = sim_report(r);
        j["max_abs_z"] = max_abs_z(rows);
        if (!cfg.output.report.empty()) write_file(cfg.output.report, j.dump(2) + "\n");
        std::cerr << "seed " << r.seed << ", max |z| = " << max_abs_z(rows) << "\n";
        return max_abs_z(rows) > 4.0 ? kExitComparison : kExitOk;
    }
    if (action == "sweep") {
        const auto rows = sweep_rows(cfg.model, cfg.sweep);
        emit_csv(cfg, sweep_csv(rows));
        return kExitOk;
    }
    if (action == "invert") {
        const Analysis a = analyze(cfg.model);
        InvertTable table;
        if (cfg.has_sim) {
            // Share the analytic grid with the empirical accumulation.
            InvertTable probe = invert_table(a, cfg.invert_t_max, cfg.invert_points, nullptr);
            SimConfig sim = cfg.sim;
            sim.cdf_grid = probe.t;
            const SimResult r = run(cfg.model, sim);
            table = invert_table(a, cfg.invert_t_max, cfg.invert_points, &r);
        } else {
            table = invert_table(a, cfg.invert_t_max, cfg.invert_points, nullptr);
        }
        emit_csv(cfg, invert_csv(table));
        return kExitOk;
    }
    throw ValidationError("unknown action: " + action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waiting and overlap times in single-server queues with "
                 "FGM-dependent service and interarrival times"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    bool corrupt_analytic = false;

    const std::vector<std::string> actions{"analyze", "simulate", "compare", "sweep",
                                           "invert"};
    for (const auto& name : actions) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("-c,--config", config_path, "JSON config file")->required();
        sub->add_option("--set", overrides,
                        "override a config key, e.g. --set model.theta=0.25");
        if (name == "compare")
            sub->add_flag("--test-corrupt", corrupt_analytic,
                          "perturb analytic values (test hook)")
                ->group("");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string action = app.get_subcommands().front()->get_name();
    try {
        const RunConfig cfg = load_config(config_path, overrides);
        return run_action(action, cfg, corrupt_analytic);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const StabilityError& e) {
        std::cerr << "stability error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
