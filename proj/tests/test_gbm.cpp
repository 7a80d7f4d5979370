#include "metax/gbm.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"
#include "metax/stats.hpp"

#include "doctest.h"

#include <cmath>
#include <filesystem>

using namespace metax;

namespace {

DataMatrix matrix_from(const std::vector<std::vector<double>>& rows) {
    DataMatrix X(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) X.at(r, c) = rows[r][c];
    return X;
}

FitParams exact_fit_params() {
    FitParams p;
    p.n_trees = 1;
    p.learn_rate = 1.0;
    p.max_depth = 64;
    p.min_node = 1;
    p.subsample = 1.0;
    return p;
}

} // namespace

TEST_SUITE("gbm") {

TEST_CASE("constant target collapses to the base score") {
    Rng rng(1);
    DataMatrix X(20, 3);
    for (auto& v : X.values) v = rng.uniform01();
    std::vector<double> y(20, 2.5);

    FitParams params;
    params.n_trees = 50;
    const auto model = fit(X, y, params);
    CHECK(model.base_score == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(model.trees.empty()); // no-gain stop, nothing grown
    for (std::size_t r = 0; r < X.n_rows; ++r)
        CHECK(model.predict(X.row(r)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("exact fit on 8 distinct rows with unbounded depth") {
    const auto X = matrix_from({{0.1, 5.0}, {0.2, 4.0}, {0.3, 3.5}, {0.4, 1.0},
                                {0.5, 2.0}, {0.6, 9.0}, {0.7, 0.5}, {0.8, 7.0}});
    const std::vector<double> y = {3, -1, 4, 1, -5, 9, 2, 6};
    const auto model = fit(X, y, exact_fit_params());
    const auto pred = model.predict_batch(X);
    CHECK(mse(pred, y) < 1e-20);
}

TEST_CASE("single depth-1 tree traces by hand") {
    // one split on x0 at 0.5: left -1, right +1, base 0, rate 0.1
    BoostedEnsemble model;
    model.base_score = 0.0;
    model.learn_rate = 0.1;
    model.max_depth = 1;
    model.feature_names = {"x0"};
    Tree tree;
    tree.nodes.push_back({0, 0.5, 1, 2, 0.0});
    tree.nodes.push_back({-1, 0.0, -1, -1, -1.0});
    tree.nodes.push_back({-1, 0.0, -1, -1, 1.0});
    model.trees.push_back(tree);

    const std::vector<double> left = {0.2};
    const std::vector<double> right = {0.7};
    CHECK(model.predict(left) == doctest::Approx(-0.1));
    CHECK(model.predict(right) == doctest::Approx(0.1));
}

TEST_CASE("zero-tree ensemble predicts the base score") {
    BoostedEnsemble model;
    model.base_score = 0.37;
    model.feature_names = {"a", "b"};
    const std::vector<double> x = {1.0, 2.0};
    CHECK(model.predict(x) == 0.37);
}

TEST_CASE("synthetic regression reaches training R^2 above 0.99") {
    Rng rng(9);
    DataMatrix X(500, 4);
    std::vector<double> y(500);
    for (std::size_t r = 0; r < 500; ++r) {
        for (std::size_t c = 0; c < 4; ++c) X.at(r, c) = rng.uniform(-1, 1);
        y[r] = 3.0 * X.at(r, 0) + 0.01 * rng.uniform(-1, 1);
    }

    FitParams params;
    params.n_trees = 200;
    params.learn_rate = 0.1;
    params.max_depth = 3;
    params.min_node = 2;
    params.subsample = 1.0;
    const auto model = fit(X, y, params);

    const auto pred = model.predict_batch(X);
    const double r2 = 1.0 - mse(pred, y) / variance(y);
    CHECK(r2 > 0.99);
}

TEST_CASE("batch predict equals row-by-row predict") {
    Rng rng(2);
    DataMatrix X(200, 5);
    std::vector<double> y(200);
    for (std::size_t r = 0; r < 200; ++r) {
        for (std::size_t c = 0; c < 5; ++c) X.at(r, c) = rng.uniform(-2, 2);
        y[r] = std::sin(X.at(r, 0)) + X.at(r, 1) * X.at(r, 2);
    }
    FitParams params;
    params.n_trees = 40;
    const auto model = fit(X, y, params);

    DataMatrix Q(1000, 5);
    for (auto& v : Q.values) v = rng.uniform(-2, 2);
    const auto batch = model.predict_batch(Q);
    for (std::size_t r = 0; r < Q.n_rows; ++r) CHECK(batch[r] == model.predict(Q.row(r)));
}

TEST_CASE("training loss is non-increasing over boosting rounds (full sample)") {
    Rng rng(10);
    DataMatrix X(150, 3);
    std::vector<double> y(150);
    for (std::size_t r = 0; r < 150; ++r) {
        for (std::size_t c = 0; c < 3; ++c) X.at(r, c) = rng.uniform(-1, 1);
        y[r] = X.at(r, 0) * X.at(r, 1) + 0.5 * X.at(r, 2);
    }
    FitParams params;
    params.subsample = 1.0;
    params.learn_rate = 0.1;
    params.max_depth = 3;
    params.min_node = 2;

    double previous = variance(y);
    for (int rounds = 1; rounds <= 41; rounds += 10) {
        params.n_trees = rounds;
        const auto model = fit(X, y, params);
        const double loss = mse(model.predict_batch(X), y);
        CHECK(loss <= previous + 1e-12);
        previous = loss;
    }
}

TEST_CASE("same seed gives identical models, different seed differs") {
    Rng rng(4);
    DataMatrix X(100, 3);
    std::vector<double> y(100);
    for (std::size_t r = 0; r < 100; ++r) {
        for (std::size_t c = 0; c < 3; ++c) X.at(r, c) = rng.uniform01();
        y[r] = X.at(r, 0) - 2.0 * X.at(r, 2);
    }
    FitParams params;
    params.n_trees = 30;
    params.subsample = 0.6;
    params.seed = 77;
    const auto a = fit(X, y, params);
    const auto b = fit(X, y, params);
    CHECK(a.to_json() == b.to_json());
    params.seed = 78;
    const auto c = fit(X, y, params);
    CHECK(a.to_json() != c.to_json());
}

TEST_CASE("column permutation invariance") {
    Rng rng(6);
    DataMatrix X(120, 3);
    std::vector<double> y(120);
    for (std::size_t r = 0; r < 120; ++r) {
        for (std::size_t c = 0; c < 3; ++c) X.at(r, c) = rng.uniform(-1, 1);
        y[r] = 2.0 * X.at(r, 0) + X.at(r, 1) * X.at(r, 1) - X.at(r, 2);
    }
    // permute columns as (2, 0, 1)
    DataMatrix Xp(120, 3);
    for (std::size_t r = 0; r < 120; ++r) {
        Xp.at(r, 0) = X.at(r, 2);
        Xp.at(r, 1) = X.at(r, 0);
        Xp.at(r, 2) = X.at(r, 1);
    }
    FitParams params;
    params.n_trees = 25;
    params.subsample = 1.0;
    const auto a = fit(X, y, params);
    const auto b = fit(Xp, y, params);
    for (std::size_t r = 0; r < 5; ++r) {
        const auto row = X.row(r);
        const std::vector<double> permuted = {row[2], row[0], row[1]};
        CHECK(a.predict(row) == doctest::Approx(b.predict(permuted)).epsilon(1e-15));
    }
}

TEST_CASE("pure-noise column is never split on when signal features suffice") {
    Rng rng(8);
    DataMatrix X(300, 3);
    std::vector<double> y(300);
    for (std::size_t r = 0; r < 300; ++r) {
        X.at(r, 0) = rng.uniform(-1, 1);
        X.at(r, 1) = rng.uniform(-1, 1);
        X.at(r, 2) = rng.uniform(-1, 1) * 1e-9; // noise, negligible range
        y[r] = 4.0 * X.at(r, 0) + X.at(r, 1);
    }
    FitParams params;
    params.n_trees = 60;
    params.subsample = 1.0;
    params.max_depth = 3;
    const auto model = fit(X, y, params);
    // the usage count is reported; for this construction it stays tiny
    CHECK(model.feature_use_count(2) <= 2);
    CHECK(model.feature_use_count(0) > 0);
}

TEST_CASE("a column that never wins a split leaves the model bit-identical") {
    Rng rng(14);
    DataMatrix X(200, 2);
    std::vector<double> y(200);
    for (std::size_t r = 0; r < 200; ++r) {
        X.at(r, 0) = rng.uniform(-1, 1);
        X.at(r, 1) = rng.uniform(-1, 1);
        y[r] = 2.0 * X.at(r, 0) - X.at(r, 1);
    }
    DataMatrix Xplus(200, 3);
    for (std::size_t r = 0; r < 200; ++r) {
        Xplus.at(r, 0) = X.at(r, 0);
        Xplus.at(r, 1) = X.at(r, 1);
        Xplus.at(r, 2) = 0.25; // constant: no valid threshold exists
    }
    FitParams params;
    params.n_trees = 30;
    params.subsample = 1.0;
    const auto base = fit(X, y, params);
    const auto extended = fit(Xplus, y, params);
    CHECK(extended.feature_use_count(2) == 0);
    CHECK(mse(base.predict_batch(X), y) == mse(extended.predict_batch(Xplus), y));
}

TEST_CASE("max_depth=1 single tree is a two-piece step function") {
    Rng rng(12);
    DataMatrix X(100, 2);
    std::vector<double> y(100);
    for (std::size_t r = 0; r < 100; ++r) {
        X.at(r, 0) = rng.uniform(0, 1);
        X.at(r, 1) = rng.uniform(0, 1);
        y[r] = X.at(r, 0) > 0.4 ? 1.0 : -1.0;
    }
    FitParams params;
    params.n_trees = 1;
    params.learn_rate = 1.0;
    params.max_depth = 1;
    params.min_node = 1;
    params.subsample = 1.0;
    const auto model = fit(X, y, params);
    REQUIRE(model.trees.size() == 1);
    CHECK(model.trees[0].depth() == 1);

    // grid scan: exactly two distinct outputs, one boundary
    std::vector<double> seen;
    double previous = std::numeric_limits<double>::quiet_NaN();
    int switches = 0;
    for (int g = 0; g <= 200; ++g) {
        const std::vector<double> x = {g / 200.0, 0.5};
        const double p = model.predict(x);
        if (!std::isnan(previous) && p != previous) ++switches;
        previous = p;
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
    }
    CHECK(seen.size() == 2);
    CHECK(switches == 1);
}

TEST_CASE("JSON serialization round-trips predictions bit-for-bit") {
    Rng rng(13);
    DataMatrix X(150, 4);
    std::vector<double> y(150);
    for (std::size_t r = 0; r < 150; ++r) {
        for (std::size_t c = 0; c < 4; ++c) X.at(r, c) = rng.uniform(-3, 3);
        y[r] = X.at(r, 0) * X.at(r, 1) + std::cos(X.at(r, 2));
    }
    FitParams params;
    params.n_trees = 35;
    params.subsample = 0.7;
    params.seed = 5;
    const auto model = fit(X, y, params, {"a", "b", "c", "d"});

    const auto path = std::filesystem::temp_directory_path() / "metax_model_roundtrip.json";
    model.save(path.string());
    const auto loaded = BoostedEnsemble::load(path.string());

    CHECK(loaded.feature_names == model.feature_names);
    for (std::size_t r = 0; r < X.n_rows; ++r) {
        const double a = model.predict(X.row(r));
        const double b = loaded.predict(X.row(r));
        CHECK(a == b); // exact
    }
    // double round-trip is byte-stable
    CHECK(loaded.to_json() == model.to_json());
}

TEST_CASE("input validation errors") {
    DataMatrix X(2, 2);
    std::vector<double> y = {1.0, 2.0};
    FitParams params;

    DataMatrix with_nan = X;
    with_nan.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)fit(with_nan, y, params), ValidationError);

    std::vector<double> bad_y = {1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS((void)fit(X, bad_y, params), ValidationError);

    DataMatrix one_row(1, 2);
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS((void)fit(one_row, one, params), ValidationError);

    const auto model = fit(X, y, params);
    const std::vector<double> wrong_arity = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)model.predict(wrong_arity), DimensionError);
}

} // TEST_SUITE
