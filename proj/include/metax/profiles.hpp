#pragma once

#include "metax/cv.hpp"
#include "metax/predictor.hpp"
#include "metax/types.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace metax {

// Evaluation grid for one feature; points are strictly increasing and a
// log10 scale requires every point to be positive.
struct Grid {
    enum class Scale { Linear, Log10 };

    std::string feature;
    std::vector<double> points;
    Scale scale = Scale::Linear;

    void validate() const;
};

Grid make_grid(const std::string& feature, double lo, double hi, std::size_t n_points,
               Grid::Scale scale);

// The grid family used for hyperparameter profiles: log10-spaced for
// shrinkage and n.trees, integer steps for interaction.depth and
// n.minobsinnode, linear for bag.fraction. Bounds come from the observed
// range of the feature in the meta-data.
Grid default_grid_for(const std::string& feature, const MetaDataset& meta,
                      std::size_t n_points = 51);

// A ceteris-paribus curve: predictions as one feature of one instance
// sweeps the grid.
struct Profile {
    std::string dataset_id;
    std::string feature;
    Grid grid;
    std::vector<double> predictions;
    std::string source_model;          // fold identifier; empty for ad-hoc models
    std::vector<bool> extrapolated;    // per point, outside declared bounds
};

// Predictions of `predict` at `instance` with grid.feature swept over the
// grid. Points outside [bound_lo, bound_hi] are flagged, not rejected; pass
// an empty pair (lo > hi) to disable the check.
Profile ceteris_paribus(const PredictFn& predict, std::span<const double> instance,
                        std::size_t feature_index, const Grid& grid, double bound_lo = 1.0,
                        double bound_hi = 0.0);

// How the per-dataset instance is chosen: Anchor fixes the non-profiled
// hyperparameters to the library defaults; Average means the profile over
// all of the dataset's observed rows.
enum class InstanceMode { Anchor, Average };

// Builds the dataset's representative feature vector under Anchor mode.
std::vector<double> anchor_instance(const MetaDataset& meta, const std::string& dataset_id);

// One profile per dataset, each drawn from the fold model that held that
// dataset out. Throws ValidationError listing datasets without a fold model.
std::vector<Profile> profile_matrix(const std::map<std::string, FoldModel>& fold_models,
                                    const MetaDataset& meta, const std::string& feature,
                                    const Grid& grid, InstanceMode mode = InstanceMode::Anchor);

struct ProfileClustering {
    int k = 0;
    std::map<std::string, std::string> assignment;  // dataset_id -> label
    std::map<std::string, Profile> aggregated;      // label -> mean profile
    std::vector<std::string> labels;                // by descending cluster size
};

// Agglomerative clustering of profiles (Euclidean distance between
// mean-centered prediction vectors, complete linkage) cut at k clusters.
// Labels A, B, C... are ordered by descending cluster size; aggregated
// curves are pointwise means of the uncentered member predictions.
ProfileClustering cluster_profiles(const std::vector<Profile>& profiles, int k);

struct OptimalPoint {
    double value = 0.0;
    double prediction = 0.0;
    std::size_t index = 0;
};

// Grid point with the maximal prediction; ties resolve toward the smallest
// grid value.
OptimalPoint optimal_hyperparameter(const Profile& profile);

void write_profiles_csv(const std::string& path, const std::vector<Profile>& profiles,
                        const ProfileClustering& clustering);
void write_warm_starts_csv(const std::string& path, const std::vector<Profile>& profiles);

} // namespace metax
