#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "overlapq/analysis.hpp"
#include "overlapq/config.hpp"
#include "overlapq/laplace.hpp"
#include "overlapq/simulate.hpp"

namespace overlapq {

// Fixed 12-significant-digit, locale-independent formatting used for every
// CSV artifact so repeated runs are byte-identical.
std::string format_value(double v);

nlohmann::ordered_json model_to_json(const QueueModel& model);
nlohmann::ordered_json analysis_report(const Analysis& a);
nlohmann::ordered_json sim_report(const SimResult& r);

struct SweepRow {
    double theta;
    double rho;
    double mean_wait;
    double mean_max_overlap;
    double mean_min_overlap;
    Complex tau1;
};

// Analytic theta sweep on a model template (its theta field is replaced by
// the grid point; endpoints hit exactly).
std::vector<SweepRow> sweep_rows(const QueueModel& base, const SweepSpec& sweep);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct CompareRow {
    std::string statistic;
    double analytic;
    double sim_mean;
    double sim_se;
    double z_score;
};

std::vector<CompareRow> compare_rows(const Analysis& a, const SimResult& r);
std::string compare_csv(const std::vector<CompareRow>& rows);
double max_abs_z(const std::vector<CompareRow>& rows);

struct InvertTable {
    std::vector<double> t;
    CdfGrid wait, max, min;
    bool has_empirical = false;
    std::vector<double> emp_wait, emp_max, emp_min;
};

// Default grid: `points` equal steps up to t_max (derived from the analytic
// means when t_max is 0).
InvertTable invert_table(const Analysis& a, double t_max, int points,
                         const SimResult* sim);
std::string invert_csv(const InvertTable& table);

}  // namespace overlapq
