#include "metax/cv.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/parallel.hpp"
#include "metax/stats.hpp"

#include <algorithm>

namespace metax {

LodoResult lodo_cv(const MetaDataset& meta, const FitParams& params, unsigned jobs) {
    meta.validate();
    const auto datasets = meta.datasets();
    if (datasets.size() < 2)
        throw ValidationError("lodo_cv: need at least 2 distinct datasets, found " +
                              std::to_string(datasets.size()));
    for (const auto& d : datasets)
        if (meta.rows_of(d).size() < 2)
            throw DegenerateError("lodo_cv: dataset '" + d +
                                  "' has fewer than 2 rows; fold Spearman undefined");

    std::vector<FoldScore> scores(datasets.size());
    std::vector<FoldModel> models(datasets.size());

    parallel_for(datasets.size(), jobs, [&](std::size_t i) {
        const auto& held_out = datasets[i];
        const auto train_rows = meta.rows_excluding({held_out});
        const auto test_rows = meta.rows_of(held_out);

        const auto X = meta.features.select_rows(train_rows);
        std::vector<double> y(train_rows.size());
        for (std::size_t k = 0; k < train_rows.size(); ++k) y[k] = meta.ratings[train_rows[k]];

        FoldModel fold;
        fold.model = fit(X, y, params, meta.feature_names);
        fold.training_rows = train_rows;

        const auto X_test = meta.features.select_rows(test_rows);
        std::vector<double> actual(test_rows.size());
        for (std::size_t k = 0; k < test_rows.size(); ++k) actual[k] = meta.ratings[test_rows[k]];
        const auto pred = fold.model.predict_batch(X_test);

        FoldScore score;
        score.dataset_id = held_out;
        score.mse = mse(pred, actual);
        const auto rho = spearman(pred, actual);
        score.spearman = rho.rho;
        score.degenerate = rho.degenerate;

        scores[i] = std::move(score);
        models[i] = std::move(fold);
    });

    LodoResult result;
    result.report.folds = std::move(scores);
    for (std::size_t i = 0; i < datasets.size(); ++i)
        result.fold_models.emplace(datasets[i], std::move(models[i]));

    double sum_mse = 0.0, sum_rho = 0.0;
    for (const auto& s : result.report.folds) {
        sum_mse += s.mse;
        sum_rho += s.spearman;
    }
    const auto n = static_cast<double>(result.report.folds.size());
    result.report.mean_mse = sum_mse / n;
    result.report.mean_spearman = sum_rho / n;
    return result;
}

void write_cv_report(const std::string& path, const CvReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.folds.size());
    for (const auto& f : report.folds)
        rows.push_back({f.dataset_id, format_double(f.mse), format_double(f.spearman),
                        f.degenerate ? "1" : "0"});
    write_csv_file(path, {"dataset_id", "mse", "spearman", "degenerate_flag"}, rows);
}

} // namespace metax
