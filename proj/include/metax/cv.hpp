#pragma once

#include "metax/gbm.hpp"
#include "metax/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace metax {

struct FoldScore {
    std::string dataset_id;
    double mse = 0.0;
    double spearman = 0.0;
    bool degenerate = false; // constant predictions or ratings on the fold
};

struct CvReport {
    std::vector<FoldScore> folds; // sorted by dataset_id
    double mean_mse = 0.0;
    double mean_spearman = 0.0;
};

// One leave-one-dataset-out fold: the model plus an audit of the exact rows
// it was trained on (indices into the meta-dataset).
struct FoldModel {
    BoostedEnsemble model;
    std::vector<std::size_t> training_rows;
};

struct LodoResult {
    CvReport report;
    std::map<std::string, FoldModel> fold_models; // held-out dataset -> model
};

// For every dataset d: fit on all rows with dataset_id != d (same params and
// seed per fold), then score MSE and Spearman on d's rows. Folds may run in
// parallel; the report is assembled in dataset_id order.
//
// Throws ValidationError with fewer than 2 datasets, DegenerateError when a
// held-out dataset has fewer than 2 rows (Spearman undefined).
LodoResult lodo_cv(const MetaDataset& meta, const FitParams& params, unsigned jobs = 1);

void write_cv_report(const std::string& path, const CvReport& report);

} // namespace metax
