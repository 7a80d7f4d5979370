#pragma once

#include "metax/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace metax {

// Regression tree stored as a node pool; node 0 is the root. Internal nodes
// route x[feature] < threshold to left, otherwise right; leaves carry the
// mean residual of their training rows.
struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    double eval(std::span<const double> x) const {
        int i = 0;
        while (!nodes[i].is_leaf())
            i = x[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
        return nodes[i].value;
    }

    int depth() const; // longest root-to-leaf edge count
};

struct FitParams {
    int n_trees = 500;
    double learn_rate = 0.05;
    int max_depth = 10;
    int min_node = 5;
    double subsample = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

// Additive tree ensemble: prediction(x) = base_score + learn_rate * sum of
// tree evaluations. Immutable after fitting; safe for concurrent predict.
struct BoostedEnsemble {
    double base_score = 0.0;
    double learn_rate = 1.0;
    int max_depth = 0;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;

    double predict(std::span<const double> x) const;
    std::vector<double> predict_batch(const DataMatrix& X) const;

    std::size_t n_features() const { return feature_names.size(); }

    // Number of internal nodes splitting on the given feature.
    std::size_t feature_use_count(std::size_t feature) const;

    std::string to_json() const;
    static BoostedEnsemble from_json(const std::string& text);
    void save(const std::string& path) const;
    static BoostedEnsemble load(const std::string& path);
};

// Gradient boosting on squared error: each round fits one tree to the
// residuals of the running prediction on a seeded row subsample, by exact
// greedy variance-reduction splitting over midpoint thresholds. Splitting
// stops at max_depth, when a child would fall under min_node rows, or when
// the best gain is below 1e-12. Deterministic for a fixed seed.
BoostedEnsemble fit(const DataMatrix& X, std::span<const double> y, const FitParams& params,
                    std::vector<std::string> feature_names = {});

} // namespace metax
