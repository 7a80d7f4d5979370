#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metax {

// Dense row-major matrix of doubles; the common currency between the
// meta-dataset, the surrogate and the explainers.
struct DataMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values; // n_rows * n_cols, row-major

    DataMatrix() = default;
    DataMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : n_rows(rows), n_cols(cols), values(rows * cols, fill) {}

    double& at(std::size_t r, std::size_t c) { return values[r * n_cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }

    std::span<double> row(std::size_t r) {
        return {values.data() + r * n_cols, n_cols};
    }
    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * n_cols, n_cols};
    }

    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(n_rows);
        for (std::size_t r = 0; r < n_rows; ++r) out[r] = at(r, c);
        return out;
    }

    DataMatrix select_rows(const std::vector<std::size_t>& idx) const {
        DataMatrix out(idx.size(), n_cols);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto src = row(idx[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }
};

} // namespace metax
