#pragma once

#include "metax/types.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace metax {

// (dataset_id, model_id) -> rating in [0,1].
using RatingMap = std::map<std::pair<std::string, std::string>, double>;

// Turns raw AUC evaluations into ratings. Within each (dataset, split)
// block, models are ranked ascending by AUC (average ranks for ties) and
// ranks are scaled to [0,1] via (rank-1)/(n-1); the rating of a model on a
// dataset is the mean of its scaled ranks over that dataset's splits.
//
// Throws SchemaError when splits of one dataset disagree on the model set,
// or when a (dataset, model, split) key repeats; DegenerateError for a
// single-model block.
RatingMap rank_normalize(std::span<const EvaluationRecord> evals);

// Landmarker ratios per dataset, fixed order (knn, glmnet, ranger,
// randomForest), each divided by the gbm_default rating. Input records are
// filtered to the five landmarker model ids; anything else is ignored.
// Throws DegenerateError when a dataset's gbm_default rating is zero.
std::map<std::string, std::array<double, 4>>
compute_landmarkers(std::span<const EvaluationRecord> evals);

} // namespace metax
