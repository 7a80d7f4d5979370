#pragma once

#include "metax/types.hpp"

#include <cstdint>
#include <vector>

namespace metax {

// Per-hyperparameter sampling bounds. shrinkage and n_trees are drawn
// log-uniformly, interaction_depth and min_node uniformly over integers,
// bag_fraction uniformly over its interval.
struct SamplerRanges {
    double shrinkage_lo = 1e-4, shrinkage_hi = 0.1;
    int n_trees_lo = 50, n_trees_hi = 10000;
    int depth_lo = 1, depth_hi = 5;
    int min_node_lo = 3, min_node_hi = 25;
    double bag_lo = 0.2, bag_hi = 1.0;

    void validate() const; // throws ValidationError on empty/inverted ranges
};

// n seeded random configurations; the library-default configuration is
// appended when append_default is set. Deterministic for a fixed seed.
std::vector<HyperparameterConfig> sample_configs(int n, std::uint64_t seed,
                                                 const SamplerRanges& ranges = {},
                                                 bool append_default = false);

} // namespace metax
