#include "metax/influence.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/parallel.hpp"
#include "metax/stats.hpp"

#include <algorithm>
#include <cmath>

namespace metax {

double cooks_distance(const PredictFn& full, const PredictFn& reduced,
                      const DataMatrix& reference_rows, std::size_t p, double s2) {
    if (p < 1) throw ValidationError("cooks_distance: p must be >= 1");
    if (!(s2 > 0.0)) throw ValidationError("cooks_distance: s2 must be > 0");
    if (reference_rows.n_rows == 0)
        throw ValidationError("cooks_distance: no reference rows");

    const auto yhat = full(reference_rows);
    const auto yhat_reduced = reduced(reference_rows);
    double acc = 0.0;
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        const double d = yhat[i] - yhat_reduced[i];
        acc += d * d;
    }
    return acc / (static_cast<double>(p) * s2);
}

ShiftResult optimal_shift(const PredictFn& full, const PredictFn& reduced,
                          std::span<const double> instance, std::size_t feature_index,
                          const Grid& grid) {
    const auto full_profile = ceteris_paribus(full, instance, feature_index, grid);
    const auto reduced_profile = ceteris_paribus(reduced, instance, feature_index, grid);
    const auto a = optimal_hyperparameter(full_profile);
    const auto b = optimal_hyperparameter(reduced_profile);

    ShiftResult shift;
    shift.raw = std::abs(a.value - b.value);
    shift.grid_scale = grid.scale == Grid::Scale::Log10
                           ? std::abs(std::log10(a.value) - std::log10(b.value))
                           : shift.raw;
    return shift;
}

InfluenceResult influence_analysis(const MetaDataset& meta, const FitParams& params,
                                   const std::string& test_dataset_id, const std::string& feature,
                                   const Grid& grid, unsigned jobs,
                                   const BoostedEnsemble* full_model) {
    meta.validate();
    grid.validate();
    const auto datasets = meta.datasets();
    if (datasets.size() < 3)
        throw ValidationError("influence_analysis: need at least 3 datasets");
    if (std::find(datasets.begin(), datasets.end(), test_dataset_id) == datasets.end())
        throw ValidationError("influence_analysis: unknown test dataset '" + test_dataset_id +
                              "'");

    std::vector<std::string> training;
    for (const auto& d : datasets)
        if (d != test_dataset_id) training.push_back(d);
    if (training.size() < 2)
        throw ValidationError("influence_analysis: fewer than 2 training datasets remain");

    const auto full_rows = meta.rows_excluding({test_dataset_id});
    const auto X_full = meta.features.select_rows(full_rows);
    std::vector<double> y_full(full_rows.size());
    for (std::size_t i = 0; i < full_rows.size(); ++i) y_full[i] = meta.ratings[full_rows[i]];

    BoostedEnsemble trained_full;
    if (!full_model) {
        trained_full = fit(X_full, y_full, params, meta.feature_names);
        full_model = &trained_full;
    }
    const auto full_fn = predictor(*full_model);

    const double training_mse = mse(full_model->predict_batch(X_full), y_full);
    const double s2 = std::max(training_mse, 1e-12);
    const std::size_t p = meta.n_features();

    const auto feature_idx = meta.feature_index(feature);
    const auto test_instance = anchor_instance(meta, test_dataset_id);

    std::vector<InfluenceRecord> records(training.size());
    std::vector<std::vector<double>> profiles(training.size());
    parallel_for(training.size(), jobs, [&](std::size_t i) {
        const auto& removed = training[i];
        const auto rows = meta.rows_excluding({test_dataset_id, removed});
        const auto X = meta.features.select_rows(rows);
        std::vector<double> y(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) y[r] = meta.ratings[rows[r]];

        const auto reduced = fit(X, y, params, meta.feature_names);
        const auto reduced_fn = predictor(reduced);

        InfluenceRecord rec;
        rec.removed_dataset_id = removed;
        rec.feature = feature;
        rec.cooks_distance = cooks_distance(full_fn, reduced_fn, X_full, p, s2);
        const auto shift = optimal_shift(full_fn, reduced_fn, test_instance, feature_idx, grid);
        rec.optimal_shift = shift.grid_scale;
        rec.optimal_shift_raw = shift.raw;
        profiles[i] = ceteris_paribus(reduced_fn, test_instance, feature_idx, grid).predictions;
        records[i] = std::move(rec);
    });

    InfluenceResult result;
    for (std::size_t i = 0; i < training.size(); ++i)
        result.reduced_profiles.emplace(training[i], std::move(profiles[i]));

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.cooks_distance != b.cooks_distance) return a.cooks_distance > b.cooks_distance;
        return a.removed_dataset_id < b.removed_dataset_id;
    });

    result.records = std::move(records);
    result.n_reduced_fits = training.size();
    result.fit_seed = params.seed;
    result.s2 = s2;
    result.test_dataset_id = test_dataset_id;
    result.grid = grid;
    result.full_profile =
        ceteris_paribus(full_fn, test_instance, feature_idx, grid).predictions;
    return result;
}

void write_influence_csv(const std::string& path, const InfluenceResult& result) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(result.records.size());
    for (const auto& r : result.records)
        rows.push_back({r.removed_dataset_id, format_double(r.cooks_distance),
                        format_double(r.optimal_shift), format_double(r.optimal_shift_raw),
                        r.feature});
    write_csv_file(
        path, {"removed_dataset_id", "cooks_distance", "optimal_shift_log", "optimal_shift_raw",
               "feature"},
        rows);
}

void write_influence_profiles_csv(const std::string& path, const InfluenceResult& result) {
    std::vector<std::vector<std::string>> rows;
    const auto& grid = result.grid;
    const std::string feature = grid.feature;
    for (std::size_t g = 0; g < result.full_profile.size(); ++g)
        rows.push_back({"full", feature, format_double(grid.points[g]),
                        format_double(result.full_profile[g])});
    for (const auto& [removed, profile] : result.reduced_profiles)
        for (std::size_t g = 0; g < profile.size(); ++g)
            rows.push_back({removed, feature, format_double(grid.points[g]),
                            format_double(profile[g])});
    write_csv_file(path, {"model_id", "feature", "grid_value", "prediction"}, rows);
}

} // namespace metax
