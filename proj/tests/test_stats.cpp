#include "metax/stats.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"
#include "support/oracles.hpp"

#include "doctest.h"

#include <vector>

using namespace metax;

TEST_SUITE("stats") {

TEST_CASE("average ranks with ties") {
    const std::vector<double> v = {0.6, 0.8, 0.8, 0.5};
    const auto ranks = average_ranks(v);
    CHECK(ranks[0] == 2.0);
    CHECK(ranks[1] == 3.5);
    CHECK(ranks[2] == 3.5);
    CHECK(ranks[3] == 1.0);
}

TEST_CASE("spearman identical sequences is 1") {
    const std::vector<double> a = {0.1, 0.4, 0.2, 0.9};
    CHECK(spearman(a, a).rho == doctest::Approx(1.0));
    CHECK_FALSE(spearman(a, a).degenerate);
}

TEST_CASE("spearman reversed order is -1") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {5, 4, 3, 2, 1};
    CHECK(spearman(a, b).rho == doctest::Approx(-1.0));
}

TEST_CASE("spearman hand-computed 0.8 case") {
    // (1,2,3,4,5) vs (1,3,2,5,4): sum of squared rank differences is 4,
    // 1 - 6*4/(5*24) = 0.8
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {1, 3, 2, 5, 4};
    CHECK(spearman(a, b).rho == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("spearman degenerate variance reports flag with rho 0") {
    const std::vector<double> a = {2, 2, 2, 2};
    const std::vector<double> b = {1, 2, 3, 4};
    const auto r = spearman(a, b);
    CHECK(r.rho == 0.0);
    CHECK(r.degenerate);
}

TEST_CASE("spearman tie handling matches rank definition") {
    // ties in one sequence only shift ranks to averages
    const std::vector<double> a = {1, 1, 2, 3};
    const std::vector<double> b = {10, 20, 30, 40};
    const auto ra = average_ranks(a); // 1.5 1.5 3 4
    const auto rb = average_ranks(b); // 1 2 3 4
    CHECK(spearman(a, b).rho == doctest::Approx(pearson(ra, rb)));
}

TEST_CASE("spearman rejects length mismatch and tiny input") {
    const std::vector<double> a = {1, 2};
    const std::vector<double> b = {1, 2, 3};
    CHECK_THROWS_AS((void)spearman(a, b), DimensionError);
    const std::vector<double> one = {1};
    CHECK_THROWS_AS((void)spearman(one, one), ValidationError);
}

TEST_CASE("mse trivial examples") {
    const std::vector<double> a = {1, 2, 3};
    CHECK(mse(a, a) == 0.0);
    const std::vector<double> p = {0, 0};
    const std::vector<double> q = {1, 3};
    CHECK(mse(p, q) == doctest::Approx(5.0)); // (1 + 9) / 2
}

TEST_CASE("mse is invariant under identical row relabeling") {
    Rng rng(8);
    std::vector<double> a(100), b(100);
    for (std::size_t i = 0; i < 100; ++i) {
        a[i] = rng.uniform(-1, 1);
        b[i] = rng.uniform(-1, 1);
    }
    const auto perm = rng.permutation(100);
    std::vector<double> a2(100), b2(100);
    for (std::size_t i = 0; i < 100; ++i) {
        a2[i] = a[perm[i]];
        b2[i] = b[perm[i]];
    }
    CHECK(mse(a, b) == doctest::Approx(mse(a2, b2)).epsilon(1e-14));
}

TEST_CASE("mse equals independent two-pass oracle on random vectors") {
    Rng rng(7);
    std::vector<double> a(257), b(257);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform(-5, 5);
        b[i] = rng.uniform(-5, 5);
    }
    CHECK(mse(a, b) == doctest::Approx(oracle::two_pass_mse(a, b)).epsilon(1e-12));
}

} // TEST_SUITE
