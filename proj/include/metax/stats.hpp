#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metax {

// 1-based fractional ranks with average ranks for ties.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);

struct SpearmanResult {
    double rho = 0.0;
    // Set when either rank vector has zero variance; rho is reported as 0
    // so aggregates stay finite.
    bool degenerate = false;
};

// Pearson correlation of average-tie ranks. Lengths must match, n >= 2.
SpearmanResult spearman(std::span<const double> pred, std::span<const double> actual);

// Mean squared difference. Lengths must match, n >= 1.
double mse(std::span<const double> pred, std::span<const double> actual);

double mean(std::span<const double> v);
double variance(std::span<const double> v); // population variance
double sample_sd(std::span<const double> v);

} // namespace metax
