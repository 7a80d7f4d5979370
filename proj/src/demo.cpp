#include "metax/demo.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"
#include "metax/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

namespace metax::demo {

namespace {

// All arithmetic runs in half-units (2x the rank contribution) so tied
// ranks (x.5 averages) stay exact integers.
using Vec5 = std::array<long long, 5>;

struct SolvedTotals {
    Vec5 totals_half{};
    int n_splits = 0;
};

// Candidate per-model contribution totals: sum 10*S, every ratio
// T_i/T_gbm within 0.0045 of its target, prefix sums inside the
// permutation polytope. Several candidates are returned so schedule
// construction can fall through on the rare infeasible one.
std::vector<SolvedTotals> candidate_totals(const std::array<double, 4>& targets) {
    std::vector<SolvedTotals> out;
    for (int k2 = 60; k2 <= 2400 && out.size() < 24; ++k2) { // k2 = 2 * T_gbm
        std::array<long long, 4> base{};
        std::array<double, 4> exact{};
        for (int i = 0; i < 4; ++i) {
            exact[i] = targets[i] * static_cast<double>(k2);
            base[i] = std::llround(exact[i]);
        }

        // Small adjustment search to make the grand total divisible by 20
        // half-units while keeping every ratio within tolerance.
        const double tol_half = 0.0045 * static_cast<double>(k2);
        bool taken = false;
        for (int d0 = -2; d0 <= 2 && !taken; ++d0)
            for (int d1 = -2; d1 <= 2 && !taken; ++d1)
                for (int d2 = -2; d2 <= 2 && !taken; ++d2)
                    for (int d3 = -2; d3 <= 2 && !taken; ++d3) {
                        const std::array<long long, 4> t = {base[0] + d0, base[1] + d1,
                                                            base[2] + d2, base[3] + d3};
                        bool fits = true;
                        long long total = k2;
                        for (int i = 0; i < 4; ++i) {
                            if (t[i] < 1 ||
                                std::abs(static_cast<double>(t[i]) - exact[i]) > tol_half)
                                fits = false;
                            total += t[i];
                        }
                        if (!fits || total % 20 != 0) continue;

                        const long long n_splits = total / 20;
                        Vec5 all = {k2, t[0], t[1], t[2], t[3]};
                        Vec5 sorted = all;
                        std::sort(sorted.begin(), sorted.end(), std::greater<>());
                        static const long long caps[5] = {8, 14, 18, 20, 20};
                        long long prefix = 0;
                        bool feasible = true;
                        for (int i = 0; i < 5; ++i) {
                            prefix += sorted[i];
                            if (prefix > caps[i] * n_splits) feasible = false;
                        }
                        if (!feasible) continue;

                        out.push_back({all, static_cast<int>(n_splits)});
                        taken = true;
                    }
    }
    if (out.empty())
        throw ValidationError("demo: no representable rank totals for the landmark targets");
    return out;
}

// One split's value vector is a permutation of a tie pattern: a composition
// of the 5 ranks into consecutive tied groups, each member carrying the
// group's average (rank-1). 16 patterns exist; values in half-units.
const std::vector<Vec5>& tie_patterns() {
    static const std::vector<Vec5> patterns = [] {
        std::vector<Vec5> out;
        for (int mask = 0; mask < 16; ++mask) { // bit i set = cut after position i
            Vec5 values{};
            int pos = 0;
            int start = 0;
            for (int i = 0; i < 5; ++i) {
                const bool cut = i == 4 || (mask >> i) & 1;
                if (!cut) continue;
                const int g = i - start + 1; // group size over sorted positions
                for (int j = start; j <= i; ++j) values[pos++] = 2LL * start + (g - 1);
                start = i + 1;
            }
            out.push_back(values);
        }
        return out;
    }();
    return patterns;
}

// Every distinct assignment of a tie pattern to the 5 models.
const std::vector<Vec5>& split_vectors() {
    static const std::vector<Vec5> vectors = [] {
        std::vector<Vec5> out;
        for (const auto& pattern : tie_patterns()) {
            Vec5 perm = pattern;
            std::sort(perm.begin(), perm.end());
            do {
                out.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }();
    return vectors;
}

std::uint64_t pack_key(const Vec5& v) {
    // entries fit comfortably in 12 bits each for our split counts
    std::uint64_t key = 0;
    for (int i = 0; i < 4; ++i) key = key << 14 | static_cast<std::uint64_t>(v[i]);
    return key;
}

// Exhaustive check that `target` is a sum of exactly `depth` split
// vectors; fills `rows` on success.
bool exact_fill(const Vec5& target, int depth, std::vector<Vec5>& rows) {
    for (int m = 0; m < 5; ++m)
        if (target[m] < 0 || target[m] > 8LL * depth) return false;
    if (depth == 1) {
        static const auto keys = [] {
            std::vector<std::uint64_t> k;
            for (const auto& v : split_vectors()) k.push_back(pack_key(v));
            std::sort(k.begin(), k.end());
            return k;
        }();
        if (!std::binary_search(keys.begin(), keys.end(), pack_key(target))) return false;
        rows.push_back(target);
        return true;
    }
    for (const auto& v : split_vectors()) {
        Vec5 rest;
        bool ok = true;
        for (int m = 0; m < 5; ++m) {
            rest[m] = target[m] - v[m];
            if (rest[m] < 0 || rest[m] > 8LL * (depth - 1)) ok = false;
        }
        if (!ok) continue;
        if (exact_fill(rest, depth - 1, rows)) {
            rows.push_back(v);
            return true;
        }
    }
    return false;
}

// Rate-tracking construction: at each split the remaining per-split need
// is quantized to the nearest tie pattern (largest need takes the largest
// value); the last three splits are solved exactly.
bool construct_schedule(const SolvedTotals& solved, std::vector<Vec5>& rows) {
    Vec5 remaining = solved.totals_half;
    rows.clear();
    rows.reserve(static_cast<std::size_t>(solved.n_splits));

    for (int splits_left = solved.n_splits; splits_left > 3; --splits_left) {
        std::array<int, 5> order = {0, 1, 2, 3, 4};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (remaining[a] != remaining[b]) return remaining[a] > remaining[b];
            return a < b;
        });

        const Vec5* best = nullptr;
        double best_score = 0.0;
        for (const auto& pattern : tie_patterns()) {
            // pattern values ascend over sorted positions; position p of
            // the pattern maps to the model with the p-th largest need
            double score = 0.0;
            bool ok = true;
            for (int p = 0; p < 5 && ok; ++p) {
                const int model = order[p];
                const long long value = pattern[4 - p];
                const long long after = remaining[model] - value;
                if (after < 0 || after > 8LL * (splits_left - 1)) ok = false;
                const double ideal = static_cast<double>(remaining[model]) /
                                     static_cast<double>(splits_left);
                const double err = static_cast<double>(value) - ideal;
                score += err * err;
            }
            if (!ok) continue;
            if (!best || score < best_score) {
                best = &pattern;
                best_score = score;
            }
        }
        if (!best) return false;

        Vec5 row{};
        for (int p = 0; p < 5; ++p) {
            row[order[p]] = (*best)[4 - p];
            remaining[order[p]] -= (*best)[4 - p];
        }
        rows.push_back(row);
    }
    return exact_fill(remaining, std::min(3, solved.n_splits), rows);
}

} // namespace

std::vector<std::array<double, 5>> solve_landmark_splits(const std::array<double, 4>& targets) {
    std::vector<Vec5> schedule;
    for (const auto& candidate : candidate_totals(targets)) {
        if (construct_schedule(candidate, schedule)) {
            std::vector<std::array<double, 5>> rows;
            rows.reserve(schedule.size());
            for (const auto& row : schedule) {
                std::array<double, 5> values{};
                for (int m = 0; m < 5; ++m)
                    values[static_cast<std::size_t>(m)] = static_cast<double>(row[m]) / 2.0;
                rows.push_back(values);
            }
            return rows;
        }
    }
    throw ValidationError("demo: no feasible rank schedule for the landmark targets");
}

const std::vector<DemoDataset>& demo_datasets() {
    static const std::vector<DemoDataset> datasets = {
        {"37", "diabetes", 768, 8, 0.349, {1.10, 2.25, 2.36, 2.30}},
        {"44", "spambase", 4601, 57, 0.394, {2.97, 4.78, 7.57, 7.74}},
        {"1043", "ada_agnostic", 4562, 48, 0.248, {2.31, 5.41, 6.28, 5.37}},
        {"1046", "mozilla4", 15545, 5, 0.329, {1.71, 0.39, 2.62, 2.84}},
        {"1049", "pc4", 1458, 37, 0.123, {1.11, 2.13, 3.46, 3.57}},
        {"1050", "pc3", 1563, 37, 0.102, {0.86, 1.34, 1.85, 1.88}},
        {"1063", "kc2", 522, 21, 0.205, {0.81, 0.73, 0.90, 0.98}},
        {"1067", "kc1", 2109, 21, 0.155, {0.23, 1.16, 1.49, 1.66}},
        {"1068", "pc1", 1109, 21, 0.069, {1.12, 0.27, 1.92, 1.84}},
        {"1462", "banknote-authentication", 1372, 4, 0.445, {6.47, 4.99, 5.56, 6.02}},
        {"1464", "blood-transfusion-service-center", 748, 4, 0.238, {0.64, 1.23, 0.86, 0.71}},
        {"1467", "climate-model-simulation-crashes", 540, 20, 0.085, {0.35, 1.36, 1.12, 1.15}},
        {"1471", "eeg-eye-state", 14980, 14, 0.448, {2.48, 0.93, 3.34, 4.16}},
        {"1479", "hill-valley", 1212, 100, 0.500, {1.78, 0.43, 2.04, 2.24}},
        {"1485", "madelon", 2600, 500, 0.500, {0.34, 0.48, 1.61, 1.58}},
        {"1487", "ozone-level-8hr", 2534, 72, 0.063, {1.41, 3.40, 4.43, 4.36}},
        {"1489", "phoneme", 5404, 5, 0.293, {4.89, 2.90, 7.12, 8.13}},
        {"1494", "qsar-biodeg", 1055, 41, 0.337, {4.16, 5.34, 6.74, 6.81}},
        {"1510", "wdbc", 569, 30, 0.373, {1.56, 0.63, 1.88, 1.91}},
        {"1570", "wilt", 4839, 5, 0.054, {2.73, 4.80, 7.15, 7.28}},
    };
    return datasets;
}

namespace {

const std::vector<std::string>& stat_column_names() {
    static const std::vector<std::string> names = {
        "NumberOfInstances", "NumberOfFeatures", "NumberOfClasses", "NumberOfNumericFeatures",
        "NumberOfSymbolicFeatures", "NumberOfBinaryFeatures", "NumberOfInstancesWithMissingValues",
        "NumberOfMissingValues", "PercentageOfInstancesWithMissingValues",
        "PercentageOfMissingValues", "PercentageOfNumericFeatures", "PercentageOfSymbolicFeatures",
        "PercentageOfBinaryFeatures", "MajorityClassSize", "MajorityClassPercentage",
        "MinorityClassSize", "MinorityClassPercentage", "Dimensionality", "AutoCorrelation",
        "ClassEntropy", "MeanAttributeEntropy", "MeanKurtosisOfNumericAtts",
        "MeanMeansOfNumericAtts", "MeanMutualInformation", "MeanNoiseToSignalRatio",
        "MeanSkewnessOfNumericAtts", "MeanStdDevOfNumericAtts", "MinAttributeEntropy",
        "MinKurtosisOfNumericAtts", "MinMeansOfNumericAtts", "MinSkewnessOfNumericAtts",
        "MinStdDevOfNumericAtts", "MaxAttributeEntropy", "MaxKurtosisOfNumericAtts",
        "MaxMeansOfNumericAtts", "MaxSkewnessOfNumericAtts", "MaxStdDevOfNumericAtts",
        "EquivalentNumberOfAtts"};
    return names;
}

std::vector<double> make_stat_row(const DemoDataset& d, Rng& rng) {
    const double inst = d.n_instances;
    const double feat = d.n_features;
    const double minority = std::round(inst * d.minority_fraction);
    const double majority = inst - minority;
    const double p_min = minority / inst * 100.0;

    const double class_entropy =
        -(d.minority_fraction * std::log2(d.minority_fraction) +
          (1.0 - d.minority_fraction) * std::log2(1.0 - d.minority_fraction));

    // Correlated attribute-summary family around a per-dataset level.
    const double mean_entropy = 1.2 + 2.2 * rng.uniform01();
    const double mean_kurtosis = 1.5 + 6.0 * rng.uniform01();
    const double mean_means = -1.0 + 40.0 * rng.uniform01();
    const double mean_std = std::abs(mean_means) * (0.4 + 0.5 * rng.uniform01()) + 0.5;
    const double mean_skew = -0.5 + 2.5 * rng.uniform01();
    const double spread = 0.3 + 0.6 * rng.uniform01();

    std::vector<double> row(stat_column_names().size(), 0.0);
    std::size_t c = 0;
    row[c++] = inst;
    row[c++] = feat;
    row[c++] = 2.0;
    row[c++] = feat;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = 100.0;
    row[c++] = 0.0;
    row[c++] = 0.0;
    row[c++] = majority;
    row[c++] = 100.0 - p_min;
    row[c++] = minority;
    row[c++] = p_min;
    row[c++] = feat / inst;
    row[c++] = 0.4 + 0.55 * rng.uniform01();
    row[c++] = class_entropy;
    row[c++] = mean_entropy;
    row[c++] = mean_kurtosis;
    row[c++] = mean_means;
    row[c++] = 0.02 + 0.3 * rng.uniform01();
    row[c++] = 0.5 + 4.0 * rng.uniform01();
    row[c++] = mean_skew;
    row[c++] = mean_std;
    row[c++] = mean_entropy * (1.0 - spread);
    row[c++] = mean_kurtosis * (1.0 - spread) - 1.0;
    row[c++] = mean_means - mean_std * (1.0 + rng.uniform01());
    row[c++] = mean_skew - spread;
    row[c++] = mean_std * (1.0 - spread);
    row[c++] = mean_entropy * (1.0 + spread);
    row[c++] = mean_kurtosis * (1.0 + spread) + 2.0;
    row[c++] = mean_means + mean_std * (1.0 + rng.uniform01());
    row[c++] = mean_skew + spread + 0.3;
    row[c++] = mean_std * (1.0 + spread);
    row[c++] = 1.0 + (feat - 1.0) * rng.uniform01() * 0.2;
    return row;
}

// Smooth hyperparameter-response surface. Dataset traits modulate the
// hyperparameter effects (pure per-dataset offsets would cancel in the
// within-dataset ranking), with the bag.fraction effect driven by the
// feature count.
double response_score(const HyperparameterConfig& cfg, double u_instances, double u_features,
                      double u_knn) {
    const double ls = std::log10(cfg.shrinkage);
    const double lt = std::log10(static_cast<double>(cfg.n_trees));

    const double peak = -2.9 + 0.9 * u_instances; // optimal log10 shrinkage per dataset
    const double shrink_term = -0.35 * (ls - peak) * (ls - peak);
    const double trees_term = 0.6 * std::tanh((lt - 2.2) / 0.7);
    const double depth_term =
        (0.1 + 0.6 * u_knn) * (static_cast<double>(cfg.interaction_depth) - 1.0) / 4.0;
    const double bag_term = 3.2 * (cfg.bag_fraction - 0.6) * (u_features - 0.5);
    const double node_term = -0.15 * (static_cast<double>(cfg.min_node) - 3.0) / 22.0;
    return shrink_term + trees_term + depth_term + bag_term + node_term;
}

} // namespace

DemoTables generate_demo_tables(std::uint64_t seed) {
    DemoTables tables;
    const auto& datasets = demo_datasets();

    // Statistical table.
    tables.stats.column_names = stat_column_names();
    {
        Rng rng(derive_seed(seed, "demo/stats"));
        for (const auto& d : datasets) tables.stats.rows[d.id] = make_stat_row(d, rng);
    }

    // Configurations: 100 sampled plus the library default.
    const auto configs = sample_configs(100, derive_seed(seed, "demo/configs"), SamplerRanges{},
                                        /*append_default=*/true);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const bool is_default = i + 1 == configs.size();
        char buf[16];
        std::snprintf(buf, sizeof(buf), "c%03zu", i);
        tables.configs.config_ids.push_back(is_default ? "default" : buf);
        tables.configs.configs.push_back(configs[i]);
    }

    // Normalized dataset traits for the response surface.
    double lo_li = 1e300, hi_li = -1e300, lo_lf = 1e300, hi_lf = -1e300;
    double lo_knn = 1e300, hi_knn = -1e300;
    for (const auto& d : datasets) {
        lo_li = std::min(lo_li, std::log10(d.n_instances));
        hi_li = std::max(hi_li, std::log10(d.n_instances));
        lo_lf = std::min(lo_lf, std::log10(d.n_features));
        hi_lf = std::max(hi_lf, std::log10(d.n_features));
        lo_knn = std::min(lo_knn, d.landmark_ratios[0]);
        hi_knn = std::max(hi_knn, d.landmark_ratios[0]);
    }

    constexpr int kConfigSplits = 20;
    Rng noise_rng(derive_seed(seed, "demo/noise"));
    Rng level_rng(derive_seed(seed, "demo/levels"));

    for (const auto& d : datasets) {
        const double u_inst = (std::log10(d.n_instances) - lo_li) / (hi_li - lo_li);
        const double u_feat = (std::log10(d.n_features) - lo_lf) / (hi_lf - lo_lf);
        const double u_knn = (d.landmark_ratios[0] - lo_knn) / (hi_knn - lo_knn);

        // Configuration evaluations: smooth response + split noise squashed
        // into a plausible AUC band.
        const double base = 0.1 * level_rng.uniform01() - 0.05;
        for (int s = 0; s < kConfigSplits; ++s) {
            const double split_level = 0.04 * (noise_rng.uniform01() - 0.5);
            for (std::size_t ci = 0; ci < tables.configs.configs.size(); ++ci) {
                const double score = response_score(tables.configs.configs[ci], u_inst, u_feat,
                                                    u_knn) +
                                     base + split_level + 0.22 * (noise_rng.uniform01() - 0.5);
                EvaluationRecord rec;
                rec.dataset_id = d.id;
                rec.model_id = tables.configs.config_ids[ci];
                rec.split_index = s;
                rec.auc = 0.5 + 0.45 * std::tanh(0.45 * score);
                tables.evals.push_back(std::move(rec));
            }
        }

        // Landmarker evaluations: rank patterns that reproduce the
        // reference ratios exactly.
        const auto split_rows = solve_landmark_splits(d.landmark_ratios);
        const std::array<std::string, 5> model_ids = {gbm_default_model_id(), "knn", "glmnet",
                                                      "ranger", "randomForest"};
        for (std::size_t s = 0; s < split_rows.size(); ++s) {
            const double split_level = 0.02 * (noise_rng.uniform01() - 0.5);
            for (int m = 0; m < 5; ++m) {
                EvaluationRecord rec;
                rec.dataset_id = d.id;
                rec.model_id = model_ids[static_cast<std::size_t>(m)];
                rec.split_index = static_cast<int>(s);
                // order and tie structure inside a split follow the
                // contribution exactly; the split level shifts all five
                rec.auc = 0.35 + 0.09 * split_rows[s][static_cast<std::size_t>(m)] + split_level;
                tables.evals.push_back(std::move(rec));
            }
        }
    }
    return tables;
}

void write_demo_tables(const std::string& dir, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    const auto tables = generate_demo_tables(seed);

    {
        std::vector<std::string> header = {"dataset_id"};
        header.insert(header.end(), tables.stats.column_names.begin(),
                      tables.stats.column_names.end());
        std::vector<std::vector<std::string>> rows;
        for (const auto& d : demo_datasets()) {
            std::vector<std::string> row = {d.id};
            for (const double v : tables.stats.rows.at(d.id)) row.push_back(format_double(v));
            rows.push_back(std::move(row));
        }
        write_csv_file(dir + "/stat_features.csv", header, rows);
    }
    {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(tables.evals.size());
        for (const auto& e : tables.evals)
            rows.push_back({e.dataset_id, e.model_id, std::to_string(e.split_index),
                            format_double(e.auc)});
        write_csv_file(dir + "/evaluations.csv", {"dataset_id", "model_id", "split_index", "auc"},
                       rows);
    }
    write_config_table(dir + "/configs.csv", tables.configs);
}

} // namespace metax::demo
