#include "metax/meta_io.hpp"

#include "metax/demo.hpp"
#include "metax/error.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace metax;
namespace fs = std::filesystem;

namespace {

// Shared scratch dir with the demo benchmark tables, generated once.
const fs::path& demo_dir() {
    static const fs::path dir = [] {
        const auto path = fs::temp_directory_path() / "metax_test_demo";
        fs::create_directories(path);
        demo::write_demo_tables(path.string(), 42);
        return path;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("meta_io") {

TEST_CASE("demo fixture assembles into 20 x 101 = 2020 instances with 47 columns") {
    const auto stats = read_stat_table((demo_dir() / "stat_features.csv").string());
    const auto evals = read_evaluation_table((demo_dir() / "evaluations.csv").string());
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());

    const auto meta = assemble_meta_dataset(stats, evals, configs);
    CHECK(meta.n_rows() == 2020);
    CHECK(meta.n_features() == 47);
    CHECK(meta.datasets().size() == 20);

    // column layout: 38 statistical, then 4 landmarkers, then 5 hyperparameters
    CHECK(meta.feature_groups[0] == FeatureGroup::Statistical);
    CHECK(meta.feature_names[38] == "knn");
    CHECK(meta.feature_groups[38] == FeatureGroup::Landmarker);
    CHECK(meta.feature_names[42] == "shrinkage");
    CHECK(meta.feature_groups[42] == FeatureGroup::Hyperparameter);
    CHECK(meta.feature_names[46] == "n.minobsinnode");

    for (const double r : meta.ratings) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
    }

    // every dataset has exactly one row per configuration
    for (const auto& d : meta.datasets()) CHECK(meta.rows_of(d).size() == 101);
}

TEST_CASE("canonical meta_dataset.csv round-trips byte-identically") {
    const auto stats = read_stat_table((demo_dir() / "stat_features.csv").string());
    const auto evals = read_evaluation_table((demo_dir() / "evaluations.csv").string());
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());
    const auto meta = assemble_meta_dataset(stats, evals, configs);

    const auto first = fs::temp_directory_path() / "metax_meta_roundtrip_1.csv";
    const auto second = fs::temp_directory_path() / "metax_meta_roundtrip_2.csv";
    write_meta_dataset(first.string(), meta);
    const auto reread = read_meta_dataset(first.string());
    write_meta_dataset(second.string(), reread);

    CHECK(slurp(first) == slurp(second));
    CHECK(reread.feature_names == meta.feature_names);
    CHECK(reread.ratings == meta.ratings);
    CHECK(reread.features.values == meta.features.values);
    for (std::size_t i = 0; i < meta.n_features(); ++i)
        CHECK(reread.feature_groups[i] == meta.feature_groups[i]);
}

TEST_CASE("landmark ratio columns carry the demo reference values") {
    const auto stats = read_stat_table((demo_dir() / "stat_features.csv").string());
    const auto evals = read_evaluation_table((demo_dir() / "evaluations.csv").string());
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());
    const auto meta = assemble_meta_dataset(stats, evals, configs);

    for (const auto& d : demo::demo_datasets()) {
        const auto row = meta.features.row(meta.rows_of(d.id).front());
        for (int i = 0; i < 4; ++i) {
            const double got = row[38 + static_cast<std::size_t>(i)];
            CHECK(std::round(got * 100.0) / 100.0 ==
                  doctest::Approx(d.landmark_ratios[static_cast<std::size_t>(i)]));
        }
    }
}

TEST_CASE("empty evaluation table produces an error and no partial output") {
    StatTable stats;
    stats.column_names.assign(38, "s");
    ConfigTable configs;
    CHECK_THROWS_AS((void)assemble_meta_dataset(stats, {}, configs), ValidationError);
}

TEST_CASE("missing dataset in the stat table is a join error listing the id") {
    auto stats = read_stat_table((demo_dir() / "stat_features.csv").string());
    const auto evals = read_evaluation_table((demo_dir() / "evaluations.csv").string());
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());
    stats.rows.erase("1471");
    CHECK_THROWS_WITH_AS((void)assemble_meta_dataset(stats, evals, configs),
                         doctest::Contains("1471"), JoinError);
}

TEST_CASE("unknown evaluation model id is a join error") {
    const auto stats = read_stat_table((demo_dir() / "stat_features.csv").string());
    auto evals = read_evaluation_table((demo_dir() / "evaluations.csv").string());
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());
    evals.push_back({"37", "mystery_model", 0, 0.5});
    CHECK_THROWS_WITH_AS((void)assemble_meta_dataset(stats, evals, configs),
                         doctest::Contains("mystery_model"), JoinError);
}

TEST_CASE("non-numeric cell reports row and column") {
    const auto path = fs::temp_directory_path() / "metax_bad_cell.csv";
    std::ofstream(path) << "dataset_id,model_id,split_index,auc\nd,a,0,oops\n";
    CHECK_THROWS_WITH_AS((void)read_evaluation_table(path.string()), doctest::Contains("auc"),
                         ParseError);
}

TEST_CASE("auc outside [0,1] is rejected") {
    const auto path = fs::temp_directory_path() / "metax_bad_auc.csv";
    std::ofstream(path) << "dataset_id,model_id,split_index,auc\nd,a,0,1.5\n";
    CHECK_THROWS_AS((void)read_evaluation_table(path.string()), ValidationError);
}

TEST_CASE("stat table requires exactly 38 statistical columns") {
    const auto path = fs::temp_directory_path() / "metax_bad_stats.csv";
    std::ofstream(path) << "dataset_id,a,b\nd,1,2\n";
    CHECK_THROWS_WITH_AS((void)read_stat_table(path.string()), doctest::Contains("38"),
                         SchemaError);
}

TEST_CASE("config table round-trips through write and read") {
    const auto configs = read_config_table((demo_dir() / "configs.csv").string());
    const auto path = fs::temp_directory_path() / "metax_configs_roundtrip.csv";
    write_config_table(path.string(), configs);
    const auto reread = read_config_table(path.string());
    CHECK(reread.config_ids == configs.config_ids);
    CHECK(reread.configs == configs.configs);
}

TEST_CASE("missing file raises an error naming the path") {
    CHECK_THROWS_WITH_AS((void)read_csv_file("/nonexistent/metax_nope.csv"),
                         doctest::Contains("/nonexistent/metax_nope.csv"), ValidationError);
}

} // TEST_SUITE
