#pragma once

#include "metax/matrix.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace metax {

enum class FeatureGroup { Hyperparameter, Landmarker, Statistical };

std::string to_string(FeatureGroup g);
FeatureGroup feature_group_from_string(const std::string& s);

// The five tuned gbm hyperparameters. Serialization order is fixed:
// shrinkage, interaction.depth, n.trees, bag.fraction, n.minobsinnode.
struct HyperparameterConfig {
    double shrinkage = 0.1;
    int interaction_depth = 1;
    int n_trees = 100;
    double bag_fraction = 0.5;
    int min_node = 10;

    // Throws ValidationError when outside the declared bounds.
    void validate() const;

    std::array<double, 5> as_row() const {
        return {shrinkage, static_cast<double>(interaction_depth), static_cast<double>(n_trees),
                bag_fraction, static_cast<double>(min_node)};
    }

    bool operator==(const HyperparameterConfig&) const = default;
};

// Column names of the serialized hyperparameter block, order-stable.
const std::vector<std::string>& hyperparameter_column_names();

// The library defaults of the tuned learner; appended by the sampler when
// requested and used as the anchor row for per-dataset profiles.
HyperparameterConfig default_config();

// One AUC measurement: a model (configuration id or landmarker name)
// evaluated on one train/test split of one dataset.
struct EvaluationRecord {
    std::string dataset_id;
    std::string model_id;
    int split_index = 0;
    double auc = 0.0;
};

// Landmarker model ids; ratings of the first four are divided by the last.
const std::vector<std::string>& landmarker_model_ids(); // knn, glmnet, ranger, randomForest
const std::string& gbm_default_model_id();              // gbm_default
// Output column names for landmarker ratio features, fixed order.
const std::vector<std::string>& landmarker_feature_names();

// Flat meta-dataset: one row per (dataset, configuration) pair. Columns are
// the meta-features; the target column is the rank-normalized rating.
struct MetaDataset {
    std::vector<std::string> feature_names;
    std::vector<FeatureGroup> feature_groups;
    std::vector<std::string> dataset_ids; // per row
    std::vector<std::string> config_ids;  // per row
    DataMatrix features;                  // n_rows x feature_names.size()
    std::vector<double> ratings;          // per row, in [0,1]

    std::size_t n_rows() const { return features.n_rows; }
    std::size_t n_features() const { return feature_names.size(); }

    // Throws SchemaError when the feature is unknown.
    std::size_t feature_index(const std::string& name) const;

    // Sorted unique dataset ids.
    std::vector<std::string> datasets() const;

    // Row indices belonging to one dataset, in row order.
    std::vector<std::size_t> rows_of(const std::string& dataset_id) const;

    // Row indices for all datasets except the listed ones.
    std::vector<std::size_t> rows_excluding(const std::vector<std::string>& excluded) const;

    std::map<FeatureGroup, std::vector<std::string>> group_columns() const;

    // Consistency check: parallel arrays sized to each other.
    void validate() const;
};

} // namespace metax
