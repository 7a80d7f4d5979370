#pragma once

#include "metax/gbm.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <string>

// Effective settings of one pipeline run. Serializes to a single JSON
// document; loading a saved config reproduces the run bit-for-bit.
struct RunConfig {
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    std::string out = "out";

    // input paths
    std::string stats_csv;
    std::string evals_csv;
    std::string configs_csv;
    std::string meta_csv;
    std::string models_dir;

    // surrogate
    metax::FitParams surrogate{};

    // explainers
    int B = 25;
    int top = 15;
    int k = 3;
    int grid_points = 51;
    int eval_cap = 300;
    int data_cap = 300;
    std::string feature; // profiles: empty = all hyperparameters; influence: empty = shrinkage
    std::string test_dataset;
    std::string fold_dataset; // importance/triplot from one fold model, held-out rows
    bool average_profiles = false;
    bool pearson = false;
    bool use_full_model = false; // importance/triplot on the full-data model

    // sampler
    int sample_n = 100;
    bool append_default = true;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["seed"] = seed;
        j["jobs"] = jobs;
        j["out"] = out;
        j["paths"] = {{"stats", stats_csv},
                      {"evals", evals_csv},
                      {"configs", configs_csv},
                      {"meta", meta_csv},
                      {"models", models_dir}};
        j["surrogate"] = {{"n_trees", surrogate.n_trees},
                          {"learn_rate", surrogate.learn_rate},
                          {"max_depth", surrogate.max_depth},
                          {"min_node", surrogate.min_node},
                          {"subsample", surrogate.subsample}};
        j["explain"] = {{"B", B},
                        {"top", top},
                        {"k", k},
                        {"grid_points", grid_points},
                        {"eval_cap", eval_cap},
                        {"data_cap", data_cap},
                        {"feature", feature},
                        {"test_dataset", test_dataset},
                        {"fold_dataset", fold_dataset},
                        {"average_profiles", average_profiles},
                        {"pearson", pearson},
                        {"use_full_model", use_full_model}};
        j["sampler"] = {{"n", sample_n}, {"append_default", append_default}};
        return j;
    }

    void merge_json(const nlohmann::json& j) {
        seed = j.value("seed", seed);
        jobs = j.value("jobs", jobs);
        out = j.value("out", out);
        if (j.contains("paths")) {
            const auto& p = j["paths"];
            stats_csv = p.value("stats", stats_csv);
            evals_csv = p.value("evals", evals_csv);
            configs_csv = p.value("configs", configs_csv);
            meta_csv = p.value("meta", meta_csv);
            models_dir = p.value("models", models_dir);
        }
        if (j.contains("surrogate")) {
            const auto& s = j["surrogate"];
            surrogate.n_trees = s.value("n_trees", surrogate.n_trees);
            surrogate.learn_rate = s.value("learn_rate", surrogate.learn_rate);
            surrogate.max_depth = s.value("max_depth", surrogate.max_depth);
            surrogate.min_node = s.value("min_node", surrogate.min_node);
            surrogate.subsample = s.value("subsample", surrogate.subsample);
        }
        if (j.contains("explain")) {
            const auto& e = j["explain"];
            B = e.value("B", B);
            top = e.value("top", top);
            k = e.value("k", k);
            grid_points = e.value("grid_points", grid_points);
            eval_cap = e.value("eval_cap", eval_cap);
            data_cap = e.value("data_cap", data_cap);
            feature = e.value("feature", feature);
            test_dataset = e.value("test_dataset", test_dataset);
            fold_dataset = e.value("fold_dataset", fold_dataset);
            average_profiles = e.value("average_profiles", average_profiles);
            pearson = e.value("pearson", pearson);
            use_full_model = e.value("use_full_model", use_full_model);
        }
        if (j.contains("sampler")) {
            const auto& s = j["sampler"];
            sample_n = s.value("n", sample_n);
            append_default = s.value("append_default", append_default);
        }
    }

    void save(const std::string& path) const {
        std::ofstream outf(path);
        outf << to_json().dump(2) << '\n';
    }
};
