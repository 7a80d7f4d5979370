#include "metax/profiles.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <functional>
#include <set>

using namespace metax;

namespace {

Profile make_profile(const std::string& dataset, std::vector<double> points,
                     std::vector<double> predictions,
                     Grid::Scale scale = Grid::Scale::Linear) {
    Profile p;
    p.dataset_id = dataset;
    p.feature = "f";
    p.grid.feature = "f";
    p.grid.points = std::move(points);
    p.grid.scale = scale;
    p.predictions = std::move(predictions);
    return p;
}

} // namespace

TEST_SUITE("profiles") {

TEST_CASE("grids: construction, spacing and validation") {
    const auto lin = make_grid("bag.fraction", 0.2, 1.0, 5, Grid::Scale::Linear);
    CHECK(lin.points == std::vector<double>{0.2, 0.4, 0.6000000000000001, 0.8, 1.0});

    const auto log = make_grid("shrinkage", 1e-4, 0.1, 4, Grid::Scale::Log10);
    CHECK(log.points[0] == doctest::Approx(1e-4));
    CHECK(log.points[3] == doctest::Approx(0.1));
    CHECK(log.points[1] / log.points[0] == doctest::Approx(10.0).epsilon(1e-9));

    CHECK_THROWS_AS((void)make_grid("f", 1.0, 0.5, 5, Grid::Scale::Linear), ValidationError);
    CHECK_THROWS_AS((void)make_grid("f", -1.0, 1.0, 5, Grid::Scale::Log10), ValidationError);

    Grid bad;
    bad.feature = "f";
    bad.points = {1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("constant model yields a flat profile") {
    const PredictFn constant = [](const DataMatrix& M) {
        return std::vector<double>(M.n_rows, 0.42);
    };
    const std::vector<double> instance = {0.5, 0.5};
    const auto grid = make_grid("x0", 0.0, 1.0, 11, Grid::Scale::Linear);
    const auto profile = ceteris_paribus(constant, instance, 0, grid);
    for (const double p : profile.predictions) CHECK(p == 0.42);
}

TEST_CASE("profile through the instance's own value equals the plain prediction exactly") {
    const PredictFn fn = [](const DataMatrix& M) {
        std::vector<double> out(M.n_rows);
        for (std::size_t r = 0; r < M.n_rows; ++r)
            out[r] = std::sin(M.at(r, 0)) * M.at(r, 1) + M.at(r, 1);
        return out;
    };
    const std::vector<double> instance = {0.3, -1.7};
    Grid grid;
    grid.feature = "x0";
    grid.points = {0.1, 0.3, 0.9}; // includes the instance's own value
    const auto profile = ceteris_paribus(fn, instance, 0, grid);

    DataMatrix self(1, 2);
    self.at(0, 0) = 0.3;
    self.at(0, 1) = -1.7;
    CHECK(profile.predictions[1] == fn(self)[0]); // bit-exact
}

TEST_CASE("step-function tree produces a step profile with the jump at the threshold") {
    const PredictFn step = [](const DataMatrix& M) {
        std::vector<double> out(M.n_rows);
        for (std::size_t r = 0; r < M.n_rows; ++r) out[r] = M.at(r, 0) < 0.37 ? -1.0 : 1.0;
        return out;
    };
    const std::vector<double> instance = {0.0};
    const auto grid = make_grid("x0", 0.0, 1.0, 21, Grid::Scale::Linear);
    const auto profile = ceteris_paribus(step, instance, 0, grid);

    int jumps = 0;
    std::size_t jump_at = 0;
    for (std::size_t g = 1; g < profile.predictions.size(); ++g)
        if (profile.predictions[g] != profile.predictions[g - 1]) {
            ++jumps;
            jump_at = g;
        }
    CHECK(jumps == 1);
    CHECK(profile.grid.points[jump_at - 1] < 0.37);
    CHECK(profile.grid.points[jump_at] >= 0.37);
}

TEST_CASE("out-of-bounds grid points are flagged as extrapolation, still evaluated") {
    const PredictFn fn = [](const DataMatrix& M) {
        std::vector<double> out(M.n_rows);
        for (std::size_t r = 0; r < M.n_rows; ++r) out[r] = M.at(r, 0);
        return out;
    };
    const std::vector<double> instance = {0.5};
    const auto grid = make_grid("x0", 0.0, 2.0, 5, Grid::Scale::Linear);
    const auto profile = ceteris_paribus(fn, instance, 0, grid, 0.25, 1.75);
    REQUIRE(profile.extrapolated.size() == 5);
    CHECK(profile.extrapolated.front());
    CHECK_FALSE(profile.extrapolated[2]);
    CHECK(profile.extrapolated.back());
    CHECK(profile.predictions.front() == 0.0); // evaluated anyway
}

TEST_CASE("optimal_hyperparameter: argmax with ties toward the smallest grid value") {
    const auto increasing = make_profile("d", {1, 2, 3}, {0.1, 0.2, 0.3});
    CHECK(optimal_hyperparameter(increasing).value == 3.0);

    const auto flat = make_profile("d", {1, 2, 3}, {0.5, 0.5, 0.5});
    CHECK(optimal_hyperparameter(flat).value == 1.0);

    const auto unimodal = make_profile("d", {1, 2, 3, 4}, {0.1, 0.9, 0.4, 0.2});
    CHECK(optimal_hyperparameter(unimodal).value == 2.0);
    CHECK(optimal_hyperparameter(unimodal).prediction == 0.9);
}

TEST_CASE("argmax is invariant under strictly increasing transforms") {
    Rng rng(20);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> points, preds;
        double x = 0.0;
        for (int g = 0; g < 17; ++g) {
            x += rng.uniform(0.1, 1.0);
            points.push_back(x);
            preds.push_back(rng.uniform(-2.0, 2.0));
        }
        const auto base = make_profile("d", points, preds);
        const auto reference = optimal_hyperparameter(base).index;

        const std::vector<std::function<double(double)>> transforms = {
            [](double v) { return 2.0 * v + 1.0; },
            [](double v) { return std::exp(v); },
            [](double v) { return std::atan(v); },
            [](double v) { return v * v * v; },
        };
        for (const auto& t : transforms) {
            auto warped = base;
            for (double& v : warped.predictions) v = t(v);
            CHECK(optimal_hyperparameter(warped).index == reference);
        }
    }
}

TEST_CASE("cluster_profiles: k equal to profile count gives singletons") {
    std::vector<Profile> profiles;
    for (int i = 0; i < 4; ++i)
        profiles.push_back(make_profile("d" + std::to_string(i), {1, 2, 3},
                                        {0.1 * i, 0.2 * i, 0.1}));
    const auto clustering = cluster_profiles(profiles, 4);
    CHECK(clustering.aggregated.size() == 4);
    std::set<std::string> labels;
    for (const auto& [dataset, label] : clustering.assignment) labels.insert(label);
    CHECK(labels.size() == 4);
    // aggregated curves equal the originals
    for (const auto& p : profiles) {
        const auto& label = clustering.assignment.at(p.dataset_id);
        CHECK(clustering.aggregated.at(label).predictions == p.predictions);
    }
}

TEST_CASE("two constructed shapes are perfectly separated at k=2") {
    Rng rng(21);
    std::vector<Profile> profiles;
    std::vector<double> points;
    for (int g = 0; g < 20; ++g) points.push_back(g / 19.0);
    for (int i = 0; i < 10; ++i) {
        std::vector<double> step, bump;
        for (int g = 0; g < 20; ++g) {
            const double x = points[static_cast<std::size_t>(g)];
            step.push_back((x > 0.5 ? 1.0 : 0.0) + 0.01 * rng.uniform(-1, 1));
            bump.push_back(std::exp(-30.0 * (x - 0.5) * (x - 0.5)) + 0.01 * rng.uniform(-1, 1));
        }
        profiles.push_back(make_profile("step" + std::to_string(i), points, step));
        profiles.push_back(make_profile("bump" + std::to_string(i), points, bump));
    }
    const auto clustering = cluster_profiles(profiles, 2);
    std::set<std::string> step_labels, bump_labels;
    for (const auto& [dataset, label] : clustering.assignment) {
        if (dataset.starts_with("step")) step_labels.insert(label);
        else bump_labels.insert(label);
    }
    CHECK(step_labels.size() == 1);
    CHECK(bump_labels.size() == 1);
    CHECK(*step_labels.begin() != *bump_labels.begin());
}

TEST_CASE("labels are ordered by descending cluster size") {
    std::vector<Profile> profiles;
    // 3 nearly identical profiles and 1 outlier -> sizes 3 and 1
    for (int i = 0; i < 3; ++i)
        profiles.push_back(make_profile("same" + std::to_string(i), {1, 2, 3},
                                        {0.0, 0.001 * i, 0.0}));
    profiles.push_back(make_profile("outlier", {1, 2, 3}, {5.0, -5.0, 5.0}));
    const auto clustering = cluster_profiles(profiles, 2);
    CHECK(clustering.assignment.at("same0") == "A");
    CHECK(clustering.assignment.at("outlier") == "B");
}

TEST_CASE("aggregated curve stays inside the member prediction envelope") {
    Rng rng(22);
    std::vector<Profile> profiles;
    std::vector<double> points = {0, 1, 2, 3, 4};
    for (int i = 0; i < 9; ++i) {
        std::vector<double> preds;
        for (int g = 0; g < 5; ++g) preds.push_back(rng.uniform(-1, 1));
        profiles.push_back(make_profile("d" + std::to_string(i), points, preds));
    }
    const auto clustering = cluster_profiles(profiles, 3);
    for (const auto& [label, agg] : clustering.aggregated) {
        for (std::size_t g = 0; g < agg.predictions.size(); ++g) {
            double lo = 1e300, hi = -1e300;
            for (const auto& p : profiles) {
                if (clustering.assignment.at(p.dataset_id) != label) continue;
                lo = std::min(lo, p.predictions[g]);
                hi = std::max(hi, p.predictions[g]);
            }
            CHECK(agg.predictions[g] >= lo - 1e-12);
            CHECK(agg.predictions[g] <= hi + 1e-12);
        }
    }
}

TEST_CASE("clustering is invariant to input order") {
    Rng rng(23);
    std::vector<Profile> profiles;
    std::vector<double> points = {0, 1, 2, 3};
    for (int i = 0; i < 8; ++i) {
        std::vector<double> preds;
        for (int g = 0; g < 4; ++g) preds.push_back(rng.uniform(-1, 1));
        profiles.push_back(make_profile("d" + std::to_string(i), points, preds));
    }
    const auto a = cluster_profiles(profiles, 3);
    std::reverse(profiles.begin(), profiles.end());
    const auto b = cluster_profiles(profiles, 3);
    CHECK(a.assignment == b.assignment);
    CHECK(a.labels == b.labels);
}

TEST_CASE("validation: mismatched grids, k out of range") {
    auto p1 = make_profile("a", {1, 2, 3}, {0, 0, 0});
    auto p2 = make_profile("b", {1, 2, 4}, {0, 0, 0});
    CHECK_THROWS_AS((void)cluster_profiles({p1, p2}, 1), ValidationError);
    CHECK_THROWS_AS((void)cluster_profiles({p1}, 2), ValidationError);
    CHECK_THROWS_AS((void)cluster_profiles({p1}, 0), ValidationError);
}

} // TEST_SUITE
