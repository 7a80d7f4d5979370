#pragma once

#include "metax/predictor.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace metax {

struct ImportanceOptions {
    int replications = 25; // B
    std::uint64_t seed = 0;
    unsigned jobs = 1; // feature sets are scored in parallel
};

// Loss dropout of one feature set under B joint permutations.
struct ImportanceRecord {
    std::vector<std::string> feature_set; // member columns
    std::string label;                    // feature name, or group name for grouped records
    double baseline_loss = 0.0;
    double permuted_loss_mean = 0.0;
    double permuted_loss_sd = 0.0;
    double dropout = 0.0; // permuted_loss_mean - baseline_loss
    int replications = 0;
    bool constant_flag = false; // every member column is constant
};

// Named groups of columns; groups must be disjoint and nonempty.
using FeatureGroups = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Per-feature permutation importance under MSE loss. The b-th replication
// uses the same row permutation for every feature, so grouped importance
// with singleton groups reproduces these records bit-for-bit. Records are
// sorted descending by dropout (ties by label).
std::vector<ImportanceRecord>
permutation_importance(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                       const std::vector<std::string>& column_names,
                       const std::vector<std::string>& features, const ImportanceOptions& opt);

// Group-level importance: all member columns are permuted jointly with one
// shared permutation per replication.
std::vector<ImportanceRecord>
grouped_importance(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                   const std::vector<std::string>& column_names, const FeatureGroups& groups,
                   const ImportanceOptions& opt);

// Shared inner loop: permuted-loss statistics of one column set under the
// given permutations (baseline computed once by the caller). Exposed for
// the triplot, which scores every dendrogram node with the same
// replication set.
struct DropoutStats {
    double permuted_loss_mean = 0.0;
    double permuted_loss_sd = 0.0;
};
DropoutStats joint_dropout(const PredictFn& predict, const DataMatrix& X,
                           std::span<const double> y, const std::vector<std::size_t>& columns,
                           const std::vector<std::vector<std::size_t>>& permutations);

// The shared permutation set for B replications over n rows.
std::vector<std::vector<std::size_t>> make_permutations(std::size_t n_rows, int replications,
                                                        std::uint64_t seed);

void write_importance_csv(const std::string& path, const std::vector<ImportanceRecord>& records,
                          const std::vector<std::string>& group_of_record);

} // namespace metax
