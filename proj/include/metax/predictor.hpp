#pragma once

#include "metax/gbm.hpp"
#include "metax/matrix.hpp"

#include <functional>
#include <vector>

namespace metax {

// Explainers are model-agnostic: anything mapping a batch of rows to
// predictions can be interrogated, including exact oracle functions in
// tests.
using PredictFn = std::function<std::vector<double>(const DataMatrix&)>;

inline PredictFn predictor(const BoostedEnsemble& model) {
    return [&model](const DataMatrix& X) { return model.predict_batch(X); };
}

} // namespace metax
