#pragma once

#include "metax/importance.hpp"
#include "metax/predictor.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace metax {

// Binary merge tree over feature columns. Nodes 0..n_leaves-1 are leaves in
// feature order; merge nodes are appended in merge order, so the root is
// the last node. Heights are 1 - |correlation| dissimilarities and are
// non-decreasing from leaves to root under complete linkage.
struct DendrogramNode {
    int left = -1;
    int right = -1;
    double height = 0.0;
    std::vector<int> members; // leaf indices, sorted
    double importance = std::numeric_limits<double>::quiet_NaN();
};

struct Dendrogram {
    std::vector<std::string> leaf_names;
    std::vector<DendrogramNode> nodes;

    int root() const { return static_cast<int>(nodes.size()) - 1; }
    std::size_t n_leaves() const { return leaf_names.size(); }

    // Nested {members, height, importance, children} document.
    std::string to_json() const;
};

enum class CorrelationKind { Spearman, Pearson };

// Agglomerative clustering of feature columns with dissimilarity
// 1 - |rho| and complete linkage. Constant columns are excluded and
// reported through excluded_constant when provided; fewer than 2 usable
// columns is an error.
Dendrogram correlation_linkage(const DataMatrix& X, const std::vector<std::string>& column_names,
                               const std::vector<std::string>& features,
                               CorrelationKind kind = CorrelationKind::Spearman,
                               std::vector<std::string>* excluded_constant = nullptr);

// Correlation linkage plus a grouped permutation dropout at every node:
// leaves carry single-feature importance, merge nodes the joint importance
// of their member set, all under one shared replication set.
Dendrogram triplot(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                   const std::vector<std::string>& column_names,
                   const std::vector<std::string>& features, const ImportanceOptions& opt,
                   CorrelationKind kind = CorrelationKind::Spearman);

} // namespace metax
