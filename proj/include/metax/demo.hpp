#pragma once

#include "metax/meta_io.hpp"
#include "metax/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace metax::demo {

// One task of the bundled demo meta-benchmark: 20 binary-classification
// datasets with reference landmarker ratios and enough shape (instances,
// features, class balance) to drive the generators.
struct DemoDataset {
    std::string id;
    std::string name;
    double n_instances;
    double n_features;
    double minority_fraction;
    std::array<double, 4> landmark_ratios; // knn, glmnet, ranger, randomForest vs gbm_default
};

const std::vector<DemoDataset>& demo_datasets();

// Per-split rank contributions for the five landmarker models
// (gbm_default, knn, glmnet, ranger, randomForest): each split row sums to
// 10 and holds (rank-1) values, half-integers where two models tie. The
// resulting rating ratios match the targets to within 0.0045.
std::vector<std::array<double, 5>> solve_landmark_splits(const std::array<double, 4>& targets);

struct DemoTables {
    StatTable stats;
    std::vector<EvaluationRecord> evals;
    ConfigTable configs;
};

// The full synthetic benchmark: 38 statistical columns per dataset,
// landmarker evaluations reproducing the reference ratios, and 101
// configurations x 20 splits of AUC scores from a smooth
// hyperparameter-response surface. Deterministic in the seed.
DemoTables generate_demo_tables(std::uint64_t seed);

// Writes stat_features.csv, evaluations.csv and configs.csv under dir.
void write_demo_tables(const std::string& dir, std::uint64_t seed);

} // namespace metax::demo
