#include "metax/cv.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace metax;

namespace {

// Synthetic meta-dataset: `datasets` blocks of `rows_per` rows; rating is a
// smooth function of three features plus small noise.
MetaDataset smooth_meta(int datasets, int rows_per, double noise, std::uint64_t seed) {
    Rng rng(seed);
    MetaDataset meta;
    meta.feature_names = {"f0", "f1", "f2", "f3"};
    meta.feature_groups.assign(4, FeatureGroup::Statistical);
    const std::size_t n = static_cast<std::size_t>(datasets * rows_per);
    meta.features = DataMatrix(n, 4);

    std::size_t r = 0;
    for (int d = 0; d < datasets; ++d) {
        const double level = rng.uniform(-0.1, 0.1);
        for (int i = 0; i < rows_per; ++i, ++r) {
            for (std::size_t c = 0; c < 4; ++c) meta.features.at(r, c) = rng.uniform(0, 1);
            const double rating =
                0.5 + 0.3 * std::sin(3.0 * meta.features.at(r, 0)) +
                0.15 * meta.features.at(r, 1) - 0.2 * meta.features.at(r, 2) * level +
                noise * rng.uniform(-1, 1);
            meta.dataset_ids.push_back("d" + std::to_string(d));
            meta.config_ids.push_back("c" + std::to_string(i));
            meta.ratings.push_back(std::clamp(rating, 0.0, 1.0));
        }
    }
    return meta;
}

} // namespace

TEST_SUITE("cv") {

TEST_CASE("two datasets give two folds, each trained on the other") {
    const auto meta = smooth_meta(2, 30, 0.0, 3);
    FitParams params;
    params.n_trees = 20;
    const auto result = lodo_cv(meta, params);

    CHECK(result.report.folds.size() == 2);
    CHECK(result.fold_models.size() == 2);
    CHECK(result.fold_models.at("d0").training_rows.size() == 30);
    for (const auto row : result.fold_models.at("d0").training_rows)
        CHECK(meta.dataset_ids[row] == "d1");
}

TEST_CASE("no fold model ever trains on a row of its held-out dataset") {
    const auto meta = smooth_meta(5, 20, 0.01, 4);
    FitParams params;
    params.n_trees = 10;
    const auto result = lodo_cv(meta, params, 2);
    for (const auto& [held_out, fold] : result.fold_models) {
        CHECK(fold.training_rows.size() == meta.n_rows() - 20);
        for (const auto row : fold.training_rows) CHECK(meta.dataset_ids[row] != held_out);
    }
}

TEST_CASE("smooth synthetic meta-dataset reaches mean holdout Spearman >= 0.9") {
    const auto meta = smooth_meta(6, 80, 0.01, 5);
    FitParams params;
    params.n_trees = 150;
    params.learn_rate = 0.1;
    params.max_depth = 4;
    params.min_node = 3;
    params.subsample = 0.8;
    params.seed = 1;
    const auto result = lodo_cv(meta, params, 2);
    CHECK(result.report.mean_spearman >= 0.9);
    for (const auto& fold : result.report.folds) CHECK_FALSE(fold.degenerate);
}

TEST_CASE("constant ratings make every fold degenerate with spearman 0") {
    auto meta = smooth_meta(3, 25, 0.0, 6);
    for (auto& r : meta.ratings) r = 0.5;
    FitParams params;
    params.n_trees = 5;
    const auto result = lodo_cv(meta, params);
    for (const auto& fold : result.report.folds) {
        CHECK(fold.degenerate);
        CHECK(fold.spearman == 0.0);
    }
}

TEST_CASE("report is sorted by dataset id and means aggregate the folds") {
    const auto meta = smooth_meta(4, 30, 0.02, 7);
    FitParams params;
    params.n_trees = 15;
    const auto result = lodo_cv(meta, params, 3);
    double sum_mse = 0.0;
    for (std::size_t i = 1; i < result.report.folds.size(); ++i)
        CHECK(result.report.folds[i - 1].dataset_id < result.report.folds[i].dataset_id);
    for (const auto& f : result.report.folds) sum_mse += f.mse;
    CHECK(result.report.mean_mse ==
          doctest::Approx(sum_mse / static_cast<double>(result.report.folds.size())));
}

TEST_CASE("parallel and serial fold execution produce identical reports") {
    const auto meta = smooth_meta(5, 25, 0.02, 8);
    FitParams params;
    params.n_trees = 12;
    params.subsample = 0.7;
    const auto serial = lodo_cv(meta, params, 1);
    const auto parallel = lodo_cv(meta, params, 4);
    REQUIRE(serial.report.folds.size() == parallel.report.folds.size());
    for (std::size_t i = 0; i < serial.report.folds.size(); ++i) {
        CHECK(serial.report.folds[i].mse == parallel.report.folds[i].mse);
        CHECK(serial.report.folds[i].spearman == parallel.report.folds[i].spearman);
    }
}

TEST_CASE("single dataset is rejected") {
    const auto meta = smooth_meta(1, 30, 0.0, 9);
    FitParams params;
    CHECK_THROWS_AS((void)lodo_cv(meta, params), ValidationError);
}

TEST_CASE("held-out dataset with fewer than 2 rows is degenerate") {
    auto meta = smooth_meta(3, 10, 0.0, 10);
    // shrink dataset d2 to one row
    MetaDataset small;
    small.feature_names = meta.feature_names;
    small.feature_groups = meta.feature_groups;
    small.features = DataMatrix(21, 4);
    std::size_t out = 0;
    int kept_d2 = 0;
    for (std::size_t r = 0; r < meta.n_rows(); ++r) {
        if (meta.dataset_ids[r] == "d2" && kept_d2++ > 0) continue;
        const auto src = meta.features.row(r);
        std::copy(src.begin(), src.end(), small.features.row(out).begin());
        small.dataset_ids.push_back(meta.dataset_ids[r]);
        small.config_ids.push_back(meta.config_ids[r]);
        small.ratings.push_back(meta.ratings[r]);
        ++out;
    }
    FitParams params;
    CHECK_THROWS_WITH_AS((void)lodo_cv(small, params), doctest::Contains("d2"),
                         DegenerateError);
}

} // TEST_SUITE
