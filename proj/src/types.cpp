#include "metax/types.hpp"

#include "metax/error.hpp"

#include <algorithm>
#include <set>

namespace metax {

std::string to_string(FeatureGroup g) {
    switch (g) {
    case FeatureGroup::Hyperparameter: return "hyperparameter";
    case FeatureGroup::Landmarker: return "landmarker";
    case FeatureGroup::Statistical: return "statistical";
    }
    return "unknown";
}

FeatureGroup feature_group_from_string(const std::string& s) {
    if (s == "hyperparameter") return FeatureGroup::Hyperparameter;
    if (s == "landmarker") return FeatureGroup::Landmarker;
    if (s == "statistical") return FeatureGroup::Statistical;
    throw ValidationError("unknown feature group '" + s + "'");
}

void HyperparameterConfig::validate() const {
    if (!(shrinkage > 0.0 && shrinkage <= 1.0))
        throw ValidationError("shrinkage must be in (0,1], got " + std::to_string(shrinkage));
    if (interaction_depth < 1 || interaction_depth > 10)
        throw ValidationError("interaction.depth must be in [1,10], got " +
                              std::to_string(interaction_depth));
    if (n_trees < 1 || n_trees > 10000)
        throw ValidationError("n.trees must be in [1,10000], got " + std::to_string(n_trees));
    if (!(bag_fraction > 0.0 && bag_fraction <= 1.0))
        throw ValidationError("bag.fraction must be in (0,1], got " + std::to_string(bag_fraction));
    if (min_node < 1 || min_node > 50)
        throw ValidationError("n.minobsinnode must be in [1,50], got " + std::to_string(min_node));
}

const std::vector<std::string>& hyperparameter_column_names() {
    static const std::vector<std::string> names = {"shrinkage", "interaction.depth", "n.trees",
                                                   "bag.fraction", "n.minobsinnode"};
    return names;
}

HyperparameterConfig default_config() {
    return HyperparameterConfig{0.1, 1, 100, 0.5, 10};
}

const std::vector<std::string>& landmarker_model_ids() {
    static const std::vector<std::string> ids = {"knn", "glmnet", "ranger", "randomForest"};
    return ids;
}

const std::string& gbm_default_model_id() {
    static const std::string id = "gbm_default";
    return id;
}

const std::vector<std::string>& landmarker_feature_names() {
    return landmarker_model_ids();
}

std::size_t MetaDataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return i;
    throw SchemaError("unknown feature '" + name + "'");
}

std::vector<std::string> MetaDataset::datasets() const {
    std::set<std::string> uniq(dataset_ids.begin(), dataset_ids.end());
    return {uniq.begin(), uniq.end()};
}

std::vector<std::size_t> MetaDataset::rows_of(const std::string& dataset_id) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < dataset_ids.size(); ++r)
        if (dataset_ids[r] == dataset_id) out.push_back(r);
    return out;
}

std::vector<std::size_t>
MetaDataset::rows_excluding(const std::vector<std::string>& excluded) const {
    const std::set<std::string> skip(excluded.begin(), excluded.end());
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < dataset_ids.size(); ++r)
        if (!skip.count(dataset_ids[r])) out.push_back(r);
    return out;
}

std::map<FeatureGroup, std::vector<std::string>> MetaDataset::group_columns() const {
    std::map<FeatureGroup, std::vector<std::string>> out;
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        out[feature_groups[i]].push_back(feature_names[i]);
    return out;
}

void MetaDataset::validate() const {
    if (feature_groups.size() != feature_names.size())
        throw SchemaError("meta-dataset: group labels do not cover all columns");
    if (features.n_cols != feature_names.size())
        throw SchemaError("meta-dataset: feature matrix width mismatch");
    if (features.n_rows != dataset_ids.size() || features.n_rows != config_ids.size() ||
        features.n_rows != ratings.size())
        throw SchemaError("meta-dataset: parallel row arrays disagree");
}

} // namespace metax
