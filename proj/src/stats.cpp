#include "metax/stats.hpp"

#include "metax/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace metax {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share the average 1-based rank
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionError("pearson: length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    const std::size_t n = a.size();
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

SpearmanResult spearman(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size())
        throw DimensionError("spearman: length mismatch (" + std::to_string(pred.size()) +
                             " vs " + std::to_string(actual.size()) + ")");
    if (pred.size() < 2)
        throw ValidationError("spearman: need at least 2 observations");

    const auto ra = average_ranks(pred);
    const auto rb = average_ranks(actual);

    const auto var_a = variance(ra);
    const auto var_b = variance(rb);
    if (var_a == 0.0 || var_b == 0.0) return {0.0, true};
    return {pearson(ra, rb), false};
}

double mse(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size())
        throw DimensionError("mse: length mismatch (" + std::to_string(pred.size()) +
                             " vs " + std::to_string(actual.size()) + ")");
    if (pred.empty()) throw ValidationError("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - actual[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (const double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (const double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

} // namespace metax
