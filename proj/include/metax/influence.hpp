#pragma once

#include "metax/gbm.hpp"
#include "metax/profiles.hpp"
#include "metax/types.hpp"

#include <string>
#include <vector>

namespace metax {

// Prediction-displacement Cook's distance:
// D = sum_j (yhat_j - yhat_j^(reduced))^2 / (p * s2) over reference rows.
// Reduces to the textbook leverage form under ordinary least squares.
double cooks_distance(const PredictFn& full, const PredictFn& reduced,
                      const DataMatrix& reference_rows, std::size_t p, double s2);

struct ShiftResult {
    double grid_scale = 0.0; // log10 units on log grids, raw otherwise
    double raw = 0.0;        // absolute difference of the optimal values
};

// Distance between the CP-profile argmax of two models at one instance.
ShiftResult optimal_shift(const PredictFn& full, const PredictFn& reduced,
                          std::span<const double> instance, std::size_t feature_index,
                          const Grid& grid);

struct InfluenceRecord {
    std::string removed_dataset_id;
    double cooks_distance = 0.0;
    double optimal_shift = 0.0;     // grid-scale
    double optimal_shift_raw = 0.0;
    std::string feature;
};

struct InfluenceResult {
    std::vector<InfluenceRecord> records; // sorted descending by Cook's distance
    std::size_t n_reduced_fits = 0;       // exactly one per training dataset
    std::uint64_t fit_seed = 0;           // shared by full and reduced fits
    double s2 = 0.0;                      // full-model training MSE (floored)
    std::string test_dataset_id;
    Grid grid;                                            // profile grid used
    std::vector<double> full_profile;                     // CP of the full model
    std::map<std::string, std::vector<double>> reduced_profiles; // per removed dataset
};

// Leave-one-dataset-out robustness scan. The full model is the fold model
// that holds out test_dataset_id (trained here when not supplied); each
// remaining training dataset is removed in turn, a reduced model is
// refitted with the same params and seed, and its Cook's distance plus the
// shift of the CP-optimal hyperparameter at the test instance are recorded.
InfluenceResult influence_analysis(const MetaDataset& meta, const FitParams& params,
                                   const std::string& test_dataset_id,
                                   const std::string& feature, const Grid& grid,
                                   unsigned jobs = 1,
                                   const BoostedEnsemble* full_model = nullptr);

void write_influence_csv(const std::string& path, const InfluenceResult& result);

// Companion table for the profile-overlay chart: the full model's CP curve
// plus each reduced model's, header `model_id,feature,grid_value,prediction`.
void write_influence_profiles_csv(const std::string& path, const InfluenceResult& result);

} // namespace metax
