#pragma once

#include "metax/predictor.hpp"
#include "metax/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metax {

// Row subsampling plan for partial-dependence sums: PD is evaluated at
// eval_rows and marginalized over data_rows, both observed rows.
struct EvalPlan {
    std::vector<std::size_t> eval_rows;
    std::vector<std::size_t> data_rows;
};

struct PdOptions {
    std::size_t max_eval_rows = 300;
    std::size_t max_data_rows = 300;
    std::uint64_t seed = 0;
};

// Seeded subsample of {0..n_rows-1} for both roles; indices sorted, the
// full row set when under the caps.
EvalPlan make_eval_plan(std::size_t n_rows, const PdOptions& opt);

// Empirical partial dependence of a feature subset, centered to mean zero
// over the evaluation rows.
struct PdFunction {
    std::vector<std::size_t> feature_subset;
    std::vector<std::vector<double>> support_points; // per eval row, subset values
    std::vector<double> values;                      // centered, one per eval row
};

PdFunction partial_dependence(const PredictFn& predict, const DataMatrix& X,
                              const std::vector<std::size_t>& subset, const EvalPlan& plan);

enum class HFlag { None, Inert, ConstantModel, AboveOne };

struct HStatRecord {
    std::string feature_a;
    std::string feature_b; // empty for overall records
    std::string group_a;
    std::string group_b;
    double h_squared = 0.0;
    double h = 0.0;
    HFlag flag = HFlag::None;
    bool pairwise = true;
};

std::string to_string(HFlag flag);

// Friedman-Popescu two-variable statistic:
// H^2 = sum_i [PD_jk(i) - PD_j(i) - PD_k(i)]^2 / sum_i PD_jk(i)^2,
// all PD functions centered over the evaluation rows.
HStatRecord h_statistic_pair(const PredictFn& predict, const DataMatrix& X,
                             const std::vector<std::string>& column_names, std::size_t j,
                             std::size_t k, const EvalPlan& plan);

// Overall propensity of one feature to interact:
// H^2 = sum_i [f(x_i) - PD_j(i) - PD_{-j}(i)]^2 / sum_i f(x_i)^2, centered.
HStatRecord h_statistic_overall(const PredictFn& predict, const DataMatrix& X,
                                const std::vector<std::string>& column_names, std::size_t j,
                                const EvalPlan& plan);

// Restricts the pair scan to pairs whose group labels match (unordered).
struct PairGroupFilter {
    FeatureGroup first;
    FeatureGroup second;
};

// All unordered feature pairs (optionally group-filtered), sorted by
// descending H^2 with flagged-inert pairs last, truncated to the top m.
// Shares one evaluation plan and the per-feature PD cache across pairs.
std::vector<HStatRecord>
top_interactions(const PredictFn& predict, const DataMatrix& X,
                 const std::vector<std::string>& column_names,
                 const std::vector<FeatureGroup>& column_groups, int m, const PdOptions& opt,
                 std::optional<PairGroupFilter> filter = std::nullopt, unsigned jobs = 1);

// Overall statistic for every feature, sorted descending.
std::vector<HStatRecord>
overall_interactions(const PredictFn& predict, const DataMatrix& X,
                     const std::vector<std::string>& column_names,
                     const std::vector<FeatureGroup>& column_groups, const PdOptions& opt,
                     unsigned jobs = 1);

void write_interactions_csv(const std::string& path, const std::vector<HStatRecord>& records);
std::vector<HStatRecord> read_interactions_csv(const std::string& path);

} // namespace metax
