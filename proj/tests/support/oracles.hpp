#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths on purpose: they re-derive expected values from first
// principles (explicit sorting, exhaustive enumeration, closed forms).

#include "metax/matrix.hpp"
#include "metax/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Brute-force rating: for one dataset, scaled average ranks per split via
// explicit pairwise counting (rank = 1 + #smaller + #ties/2), averaged over
// splits.
inline std::map<std::string, double>
brute_force_ratings(const std::vector<std::vector<std::pair<std::string, double>>>& splits) {
    std::map<std::string, double> sum;
    for (const auto& block : splits) {
        const std::size_t n = block.size();
        for (const auto& [model, auc] : block) {
            double smaller = 0.0, ties = 0.0;
            for (const auto& [other, other_auc] : block) {
                if (other == model) continue;
                if (other_auc < auc) smaller += 1.0;
                else if (other_auc == auc) ties += 1.0;
            }
            const double rank = 1.0 + smaller + ties / 2.0;
            sum[model] += (rank - 1.0) / (static_cast<double>(n) - 1.0);
        }
    }
    for (auto& [model, value] : sum) value /= static_cast<double>(splits.size());
    return sum;
}

// Two-pass mean-of-squared-differences, accumulating in long double.
inline double two_pass_mse(std::span<const double> a, std::span<const double> b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - static_cast<long double>(b[i]);
        acc += d * d;
    }
    return static_cast<double>(acc / static_cast<long double>(a.size()));
}

// Kolmogorov-Smirnov statistic of a sample against an analytic CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
        worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return worst;
}

// Dense ordinary least squares with intercept via normal equations
// (Gaussian elimination); small test designs only.
struct OlsFit {
    std::vector<double> beta;        // intercept first
    std::vector<double> fitted;
    std::vector<double> residuals;
    std::vector<double> leverage;    // diagonal of the hat matrix
    double s2 = 0.0;                 // RSS / (n - p)
    std::size_t p = 0;               // parameter count incl. intercept
};

inline std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (std::abs(a[col][col]) < 1e-12) throw std::runtime_error("singular system");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline OlsFit ols_fit(const metax::DataMatrix& X, std::span<const double> y) {
    const std::size_t n = X.n_rows;
    const std::size_t p = X.n_cols + 1;

    // design with intercept
    metax::DataMatrix design(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        design.at(r, 0) = 1.0;
        for (std::size_t c = 0; c < X.n_cols; ++c) design.at(r, c + 1) = X.at(r, c);
    }

    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < p; ++i) {
            xty[i] += design.at(r, i) * y[r];
            for (std::size_t j = 0; j < p; ++j) xtx[i][j] += design.at(r, i) * design.at(r, j);
        }

    OlsFit fit;
    fit.p = p;
    fit.beta = solve_linear(xtx, xty);
    fit.fitted.resize(n);
    fit.residuals.resize(n);
    double rss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double pred = 0.0;
        for (std::size_t i = 0; i < p; ++i) pred += fit.beta[i] * design.at(r, i);
        fit.fitted[r] = pred;
        fit.residuals[r] = y[r] - pred;
        rss += fit.residuals[r] * fit.residuals[r];
    }
    fit.s2 = rss / static_cast<double>(n - p);

    // leverage h_ii = x_i' (X'X)^-1 x_i: solve per row
    fit.leverage.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> xi(p);
        for (std::size_t i = 0; i < p; ++i) xi[i] = design.at(r, i);
        const auto solved = solve_linear(xtx, xi);
        double h = 0.0;
        for (std::size_t i = 0; i < p; ++i) h += xi[i] * solved[i];
        fit.leverage[r] = h;
    }
    return fit;
}

// Textbook Cook's distance from leverage and standardized residuals.
inline double textbook_cooks_distance(const OlsFit& fit, std::size_t i) {
    const double h = fit.leverage[i];
    const double e = fit.residuals[i];
    const double p = static_cast<double>(fit.p);
    return e * e * h / (p * fit.s2 * (1.0 - h) * (1.0 - h));
}

} // namespace oracle
