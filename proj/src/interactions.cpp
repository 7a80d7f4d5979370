#include "metax/interactions.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/parallel.hpp"
#include "metax/rng.hpp"
#include "metax/stats.hpp"

#include <algorithm>
#include <cmath>

namespace metax {

namespace {

constexpr double kInertDenominator = 1e-12;

std::vector<std::size_t> seeded_subset(std::size_t n, std::size_t cap, Rng& rng) {
    std::vector<std::size_t> idx;
    if (n <= cap) {
        idx.resize(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        return idx;
    }
    auto perm = rng.permutation(n);
    idx.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(cap));
    std::sort(idx.begin(), idx.end());
    return idx;
}

void center(std::vector<double>& v) {
    const double m = mean(v);
    for (auto& x : v) x -= m;
}

// Uncentered PD over the plan: value at eval row i is the mean prediction
// over data rows with the subset columns overwritten by row i's values.
std::vector<double> pd_raw(const PredictFn& predict, const DataMatrix& X,
                           const std::vector<std::size_t>& subset, const EvalPlan& plan) {
    const std::size_t n_eval = plan.eval_rows.size();
    const std::size_t n_data = plan.data_rows.size();

    // One hybrid batch per eval point keeps the predict granularity large.
    DataMatrix hybrid(n_data, X.n_cols);
    std::vector<double> out(n_eval, 0.0);
    for (std::size_t e = 0; e < n_eval; ++e) {
        const auto eval_row = X.row(plan.eval_rows[e]);
        for (std::size_t w = 0; w < n_data; ++w) {
            const auto src = X.row(plan.data_rows[w]);
            auto dst = hybrid.row(w);
            std::copy(src.begin(), src.end(), dst.begin());
            for (const auto c : subset) dst[c] = eval_row[c];
        }
        out[e] = mean(predict(hybrid));
    }
    return out;
}

// PD over the complement of one feature: hybrid rows keep the eval row and
// take only feature j from each data row.
std::vector<double> pd_complement_raw(const PredictFn& predict, const DataMatrix& X, std::size_t j,
                                      const EvalPlan& plan) {
    const std::size_t n_eval = plan.eval_rows.size();
    const std::size_t n_data = plan.data_rows.size();
    DataMatrix hybrid(n_data, X.n_cols);
    std::vector<double> out(n_eval, 0.0);
    for (std::size_t e = 0; e < n_eval; ++e) {
        const auto eval_row = X.row(plan.eval_rows[e]);
        for (std::size_t w = 0; w < n_data; ++w) {
            auto dst = hybrid.row(w);
            std::copy(eval_row.begin(), eval_row.end(), dst.begin());
            dst[j] = X.at(plan.data_rows[w], j);
        }
        out[e] = mean(predict(hybrid));
    }
    return out;
}

HStatRecord make_pair_record(const std::vector<std::string>& column_names, std::size_t j,
                             std::size_t k, const std::vector<double>& pd_j,
                             const std::vector<double>& pd_k, const std::vector<double>& pd_jk) {
    HStatRecord rec;
    rec.feature_a = column_names[j];
    rec.feature_b = column_names[k];
    rec.pairwise = true;

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pd_jk.size(); ++i) {
        const double r = pd_jk[i] - pd_j[i] - pd_k[i];
        num += r * r;
        den += pd_jk[i] * pd_jk[i];
    }
    if (den < kInertDenominator) {
        rec.flag = HFlag::Inert;
        rec.h_squared = 0.0;
    } else {
        rec.h_squared = num / den;
        if (rec.h_squared > 1.05) rec.flag = HFlag::AboveOne;
    }
    rec.h = std::sqrt(std::max(0.0, rec.h_squared));
    return rec;
}

} // namespace

std::string to_string(HFlag flag) {
    switch (flag) {
    case HFlag::None: return "";
    case HFlag::Inert: return "inert";
    case HFlag::ConstantModel: return "constant_model";
    case HFlag::AboveOne: return "above_one";
    }
    return "";
}

EvalPlan make_eval_plan(std::size_t n_rows, const PdOptions& opt) {
    if (n_rows == 0) throw ValidationError("interactions: empty data");
    Rng rng(derive_seed(opt.seed, "interactions/plan"));
    EvalPlan plan;
    plan.eval_rows = seeded_subset(n_rows, opt.max_eval_rows, rng);
    plan.data_rows = seeded_subset(n_rows, opt.max_data_rows, rng);
    return plan;
}

PdFunction partial_dependence(const PredictFn& predict, const DataMatrix& X,
                              const std::vector<std::size_t>& subset, const EvalPlan& plan) {
    if (subset.empty()) throw ValidationError("partial_dependence: empty feature subset");
    if (plan.eval_rows.empty() || plan.data_rows.empty())
        throw ValidationError("partial_dependence: empty evaluation plan");
    for (const auto c : subset)
        if (c >= X.n_cols)
            throw DimensionError("partial_dependence: column index " + std::to_string(c) +
                                 " out of range");

    PdFunction pd;
    pd.feature_subset = subset;
    pd.values = pd_raw(predict, X, subset, plan);
    center(pd.values);
    pd.support_points.reserve(plan.eval_rows.size());
    for (const auto e : plan.eval_rows) {
        std::vector<double> point;
        point.reserve(subset.size());
        for (const auto c : subset) point.push_back(X.at(e, c));
        pd.support_points.push_back(std::move(point));
    }
    return pd;
}

HStatRecord h_statistic_pair(const PredictFn& predict, const DataMatrix& X,
                             const std::vector<std::string>& column_names, std::size_t j,
                             std::size_t k, const EvalPlan& plan) {
    if (j == k) throw ValidationError("h_statistic_pair: features must differ");
    if (j >= X.n_cols || k >= X.n_cols)
        throw DimensionError("h_statistic_pair: feature index out of range");

    auto pd_j = pd_raw(predict, X, {j}, plan);
    auto pd_k = pd_raw(predict, X, {k}, plan);
    auto pd_jk = pd_raw(predict, X, {j, k}, plan);
    center(pd_j);
    center(pd_k);
    center(pd_jk);
    return make_pair_record(column_names, j, k, pd_j, pd_k, pd_jk);
}

HStatRecord h_statistic_overall(const PredictFn& predict, const DataMatrix& X,
                                const std::vector<std::string>& column_names, std::size_t j,
                                const EvalPlan& plan) {
    if (j >= X.n_cols) throw DimensionError("h_statistic_overall: feature index out of range");

    auto pd_j = pd_raw(predict, X, {j}, plan);
    auto pd_rest = pd_complement_raw(predict, X, j, plan);
    auto f = predict(X.select_rows(plan.eval_rows));
    center(pd_j);
    center(pd_rest);
    center(f);

    HStatRecord rec;
    rec.feature_a = column_names[j];
    rec.pairwise = false;

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f[i] - pd_j[i] - pd_rest[i];
        num += r * r;
        den += f[i] * f[i];
    }
    if (den < kInertDenominator) {
        rec.flag = HFlag::ConstantModel;
        rec.h_squared = 0.0;
    } else {
        rec.h_squared = num / den;
        if (rec.h_squared > 1.05) rec.flag = HFlag::AboveOne;
    }
    rec.h = std::sqrt(std::max(0.0, rec.h_squared));
    return rec;
}

std::vector<HStatRecord>
top_interactions(const PredictFn& predict, const DataMatrix& X,
                 const std::vector<std::string>& column_names,
                 const std::vector<FeatureGroup>& column_groups, int m, const PdOptions& opt,
                 std::optional<PairGroupFilter> filter, unsigned jobs) {
    if (m < 1) throw ValidationError("top_interactions: m must be >= 1");
    const auto plan = make_eval_plan(X.n_rows, opt);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < X.n_cols; ++j)
        for (std::size_t k = j + 1; k < X.n_cols; ++k) {
            if (filter) {
                const auto ga = column_groups[j];
                const auto gb = column_groups[k];
                const bool match = (ga == filter->first && gb == filter->second) ||
                                   (ga == filter->second && gb == filter->first);
                if (!match) continue;
            }
            pairs.emplace_back(j, k);
        }
    if (pairs.empty()) throw ValidationError("top_interactions: no feature pairs to evaluate");

    // Single-feature PD functions are shared across every pair.
    std::vector<std::vector<double>> pd_single(X.n_cols);
    std::vector<char> needed(X.n_cols, 0);
    for (const auto& [j, k] : pairs) needed[j] = needed[k] = 1;
    std::vector<std::size_t> needed_cols;
    for (std::size_t c = 0; c < X.n_cols; ++c)
        if (needed[c]) needed_cols.push_back(c);
    parallel_for(needed_cols.size(), jobs, [&](std::size_t i) {
        const auto c = needed_cols[i];
        auto pd = pd_raw(predict, X, {c}, plan);
        center(pd);
        pd_single[c] = std::move(pd);
    });

    std::vector<HStatRecord> records(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t i) {
        const auto [j, k] = pairs[i];
        auto pd_jk = pd_raw(predict, X, {j, k}, plan);
        center(pd_jk);
        auto rec = make_pair_record(column_names, j, k, pd_single[j], pd_single[k], pd_jk);
        rec.group_a = to_string(column_groups[j]);
        rec.group_b = to_string(column_groups[k]);
        records[i] = std::move(rec);
    });

    std::sort(records.begin(), records.end(), [](const HStatRecord& a, const HStatRecord& b) {
        const bool a_inert = a.flag == HFlag::Inert;
        const bool b_inert = b.flag == HFlag::Inert;
        if (a_inert != b_inert) return b_inert; // inert pairs rank last
        if (a.h_squared != b.h_squared) return a.h_squared > b.h_squared;
        if (a.feature_a != b.feature_a) return a.feature_a < b.feature_a;
        return a.feature_b < b.feature_b;
    });
    if (records.size() > static_cast<std::size_t>(m))
        records.resize(static_cast<std::size_t>(m));
    return records;
}

std::vector<HStatRecord>
overall_interactions(const PredictFn& predict, const DataMatrix& X,
                     const std::vector<std::string>& column_names,
                     const std::vector<FeatureGroup>& column_groups, const PdOptions& opt,
                     unsigned jobs) {
    const auto plan = make_eval_plan(X.n_rows, opt);
    std::vector<HStatRecord> records(X.n_cols);
    parallel_for(X.n_cols, jobs, [&](std::size_t j) {
        auto rec = h_statistic_overall(predict, X, column_names, j, plan);
        rec.group_a = to_string(column_groups[j]);
        records[j] = std::move(rec);
    });
    std::sort(records.begin(), records.end(), [](const HStatRecord& a, const HStatRecord& b) {
        if (a.h_squared != b.h_squared) return a.h_squared > b.h_squared;
        return a.feature_a < b.feature_a;
    });
    return records;
}

void write_interactions_csv(const std::string& path, const std::vector<HStatRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (const auto& r : records)
        rows.push_back({r.feature_a, r.feature_b, r.group_a, r.group_b,
                        format_double(r.h_squared), format_double(r.h), to_string(r.flag)});
    write_csv_file(path, {"feature_a", "feature_b", "group_a", "group_b", "h_squared", "h", "flag"},
                   rows);
}

std::vector<HStatRecord> read_interactions_csv(const std::string& path) {
    const auto csv = read_csv_file(path);
    std::vector<HStatRecord> records;
    records.reserve(csv.n_rows());
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        HStatRecord rec;
        rec.feature_a = csv.cell(r, 0);
        rec.feature_b = csv.cell(r, 1);
        rec.group_a = csv.cell(r, 2);
        rec.group_b = csv.cell(r, 3);
        rec.h_squared = csv.numeric(r, 4);
        rec.h = csv.numeric(r, 5);
        rec.pairwise = !rec.feature_b.empty();
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace metax
