#include "metax/rank.hpp"

#include "metax/error.hpp"
#include "metax/stats.hpp"

#include <algorithm>
#include <set>

namespace metax {

RatingMap rank_normalize(std::span<const EvaluationRecord> evals) {
    if (evals.empty()) throw ValidationError("rank_normalize: empty evaluation table");

    // dataset -> split -> (model -> auc), ordered for deterministic output
    std::map<std::string, std::map<int, std::map<std::string, double>>> blocks;
    for (const auto& e : evals) {
        auto& block = blocks[e.dataset_id][e.split_index];
        if (!block.emplace(e.model_id, e.auc).second)
            throw SchemaError("duplicate evaluation key (" + e.dataset_id + ", " + e.model_id +
                              ", split " + std::to_string(e.split_index) + ")");
    }

    RatingMap ratings;
    for (const auto& [dataset, splits] : blocks) {
        // All splits of a dataset must rank the same model set.
        const auto& first_block = splits.begin()->second;
        std::set<std::string> reference;
        for (const auto& [model, _] : first_block) reference.insert(model);

        if (reference.size() < 2)
            throw DegenerateError("rank_normalize: dataset '" + dataset + "', split " +
                                  std::to_string(splits.begin()->first) +
                                  " has a single model; ranks need n >= 2");

        std::map<std::string, double> scaled_rank_sum;
        for (const auto& [split, block] : splits) {
            std::set<std::string> present;
            for (const auto& [model, _] : block) present.insert(model);
            if (present != reference)
                throw SchemaError("rank_normalize: dataset '" + dataset + "', split " +
                                  std::to_string(split) +
                                  " evaluates a different model set than split " +
                                  std::to_string(splits.begin()->first));

            std::vector<std::string> models;
            std::vector<double> aucs;
            models.reserve(block.size());
            for (const auto& [model, auc] : block) {
                models.push_back(model);
                aucs.push_back(auc);
            }
            const auto ranks = average_ranks(aucs);
            const double n = static_cast<double>(models.size());
            for (std::size_t i = 0; i < models.size(); ++i)
                scaled_rank_sum[models[i]] += (ranks[i] - 1.0) / (n - 1.0);
        }

        const double n_splits = static_cast<double>(splits.size());
        for (const auto& [model, sum] : scaled_rank_sum)
            ratings[{dataset, model}] = sum / n_splits;
    }
    return ratings;
}

std::map<std::string, std::array<double, 4>>
compute_landmarkers(std::span<const EvaluationRecord> evals) {
    std::set<std::string> wanted(landmarker_model_ids().begin(), landmarker_model_ids().end());
    wanted.insert(gbm_default_model_id());

    std::vector<EvaluationRecord> filtered;
    for (const auto& e : evals)
        if (wanted.count(e.model_id)) filtered.push_back(e);
    if (filtered.empty())
        throw ValidationError("compute_landmarkers: no landmarker evaluations present");

    const auto ratings = rank_normalize(filtered);

    std::set<std::string> datasets;
    for (const auto& [key, _] : ratings) datasets.insert(key.first);

    std::map<std::string, std::array<double, 4>> out;
    for (const auto& dataset : datasets) {
        // completeness before degeneracy: a missing model is a schema
        // problem even when the present ratings are unusable
        const auto base_it = ratings.find({dataset, gbm_default_model_id()});
        if (base_it == ratings.end())
            throw SchemaError("compute_landmarkers: dataset '" + dataset +
                              "' is missing gbm_default evaluations");
        const auto& ids = landmarker_model_ids();
        for (const auto& id : ids)
            if (!ratings.count({dataset, id}))
                throw SchemaError("compute_landmarkers: dataset '" + dataset +
                                  "' is missing evaluations for model '" + id + "'");

        const double base = base_it->second;
        if (base == 0.0)
            throw DegenerateError("compute_landmarkers: dataset '" + dataset +
                                  "' has gbm_default rating 0; ratios undefined");

        std::array<double, 4> ratios{};
        for (std::size_t i = 0; i < ids.size(); ++i)
            ratios[i] = ratings.at({dataset, ids[i]}) / base;
        out[dataset] = ratios;
    }
    return out;
}

} // namespace metax
