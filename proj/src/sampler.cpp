#include "metax/sampler.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"

#include <algorithm>
#include <cmath>

namespace metax {

void SamplerRanges::validate() const {
    if (!(shrinkage_lo > 0.0) || !(shrinkage_lo < shrinkage_hi))
        throw ValidationError("sampler: shrinkage range must satisfy 0 < lo < hi");
    if (n_trees_lo < 1 || n_trees_lo >= n_trees_hi)
        throw ValidationError("sampler: n.trees range must satisfy 1 <= lo < hi");
    if (depth_lo < 1 || depth_lo > depth_hi)
        throw ValidationError("sampler: interaction.depth range must satisfy 1 <= lo <= hi");
    if (min_node_lo < 1 || min_node_lo > min_node_hi)
        throw ValidationError("sampler: n.minobsinnode range must satisfy 1 <= lo <= hi");
    if (!(bag_lo > 0.0) || !(bag_lo < bag_hi) || bag_hi > 1.0)
        throw ValidationError("sampler: bag.fraction range must satisfy 0 < lo < hi <= 1");
}

std::vector<HyperparameterConfig> sample_configs(int n, std::uint64_t seed,
                                                 const SamplerRanges& ranges,
                                                 bool append_default) {
    if (n < 1) throw ValidationError("sample_configs: n must be >= 1");
    ranges.validate();

    Rng rng(seed);
    std::vector<HyperparameterConfig> out;
    out.reserve(static_cast<std::size_t>(n) + (append_default ? 1 : 0));
    for (int i = 0; i < n; ++i) {
        HyperparameterConfig c;
        c.shrinkage = rng.log_uniform(ranges.shrinkage_lo, ranges.shrinkage_hi);
        c.interaction_depth = static_cast<int>(rng.uniform_int(ranges.depth_lo, ranges.depth_hi));
        const double trees = rng.log_uniform(static_cast<double>(ranges.n_trees_lo),
                                             static_cast<double>(ranges.n_trees_hi));
        c.n_trees = std::clamp(static_cast<int>(std::llround(trees)), ranges.n_trees_lo,
                               ranges.n_trees_hi);
        c.bag_fraction = rng.uniform(ranges.bag_lo, ranges.bag_hi);
        c.min_node = static_cast<int>(rng.uniform_int(ranges.min_node_lo, ranges.min_node_hi));
        c.validate();
        out.push_back(c);
    }
    if (append_default) out.push_back(default_config());
    return out;
}

} // namespace metax
