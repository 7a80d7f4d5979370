// metax: explainable meta-learning pipeline.
// ingest evaluation tables -> train the boosted-tree surrogate with
// one-dataset-out cross-validation -> interrogate it (importance, H-statistic
// interactions, triplot, ceteris-paribus profiles, influence diagnostics),
// emitting CSV/JSON reports plus SVG charts.

#include "metax/cv.hpp"
#include "metax/demo.hpp"
#include "metax/error.hpp"
#include "metax/gbm.hpp"
#include "metax/importance.hpp"
#include "metax/influence.hpp"
#include "metax/interactions.hpp"
#include "metax/linkage.hpp"
#include "metax/meta_io.hpp"
#include "metax/profiles.hpp"
#include "metax/rank.hpp"
#include "metax/render.hpp"
#include "metax/rng.hpp"
#include "metax/sampler.hpp"
#include "metax/stats.hpp"

#include "run_config.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

namespace fs = std::filesystem;
using namespace metax;

namespace {

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw ValidationError(what + " path not set");
    if (!fs::exists(path)) throw ValidationError("cannot open " + what + " file: " + path);
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::create_directories(cfg.out);
    return {cfg.out};
}

// ---------------------------------------------------------------- ingest

int cmd_demo_data(const RunConfig& cfg) {
    const auto out = ensure_out_dir(cfg);
    demo::write_demo_tables(out.string(), derive_seed(cfg.seed, "demo"));
    std::cout << "demo benchmark written to " << out.string() << ": stat_features.csv, "
              << "evaluations.csv, configs.csv (" << demo::demo_datasets().size()
              << " datasets)\n";
    return 0;
}

int cmd_ingest(const RunConfig& cfg) {
    require_file(cfg.stats_csv, "stat features");
    require_file(cfg.evals_csv, "evaluations");
    require_file(cfg.configs_csv, "configs");
    const auto out = ensure_out_dir(cfg);

    const auto stats = read_stat_table(cfg.stats_csv);
    const auto evals = read_evaluation_table(cfg.evals_csv);
    const auto configs = read_config_table(cfg.configs_csv);
    const auto meta = assemble_meta_dataset(stats, evals, configs);

    const auto path = (out / "meta_dataset.csv").string();
    write_meta_dataset(path, meta);
    std::cout << "meta-dataset written to " << path << ": " << meta.n_rows() << " rows, "
              << meta.datasets().size() << " datasets, " << configs.configs.size()
              << " configurations, " << meta.n_features() << " feature columns\n";
    return 0;
}

int cmd_sample_configs(const RunConfig& cfg) {
    const auto out = ensure_out_dir(cfg);
    const auto configs = sample_configs(cfg.sample_n, derive_seed(cfg.seed, "sample-configs"),
                                        SamplerRanges{}, cfg.append_default);
    ConfigTable table;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const bool is_default = cfg.append_default && i + 1 == configs.size();
        char buf[16];
        std::snprintf(buf, sizeof(buf), "c%03zu", i);
        table.config_ids.push_back(is_default ? "default" : buf);
        table.configs.push_back(configs[i]);
    }
    const auto path = (out / "configs.csv").string();
    write_config_table(path, table);
    std::cout << "configurations written to " << path << ": " << table.configs.size()
              << " rows\n";
    return 0;
}

// ----------------------------------------------------------------- train

int cmd_train(const RunConfig& cfg) {
    require_file(cfg.meta_csv, "meta-dataset");
    const auto out = ensure_out_dir(cfg);
    const auto meta = read_meta_dataset(cfg.meta_csv);

    auto params = cfg.surrogate;
    params.seed = derive_seed(cfg.seed, "fit");

    const auto result = lodo_cv(meta, params, cfg.jobs);

    const auto models_dir = out / "models";
    fs::create_directories(models_dir);
    for (const auto& [dataset, fold] : result.fold_models)
        fold.model.save((models_dir / ("fold_" + dataset + ".json")).string());

    std::vector<double> y(meta.ratings);
    const auto full = fit(meta.features, y, params, meta.feature_names);
    full.save((models_dir / "full.json").string());

    write_cv_report((out / "cv_report.csv").string(), result.report);

    std::cout << "trained " << result.fold_models.size() << " fold models + 1 full model -> "
              << models_dir.string() << "\n";
    std::printf("cv mean mse %.6f, mean spearman %.4f\n", result.report.mean_mse,
                result.report.mean_spearman);
    return 0;
}

// --------------------------------------------------------------- explain

struct LoadedModels {
    BoostedEnsemble full;
    bool has_full = false;
    std::map<std::string, BoostedEnsemble> folds;
};

LoadedModels load_models(const std::string& models_dir, const MetaDataset& meta,
                         bool need_folds) {
    if (models_dir.empty()) throw ValidationError("models directory not set (--models)");
    LoadedModels loaded;
    const auto full_path = fs::path(models_dir) / "full.json";
    if (fs::exists(full_path)) {
        loaded.full = BoostedEnsemble::load(full_path.string());
        loaded.has_full = true;
    }
    std::vector<std::string> missing;
    for (const auto& d : meta.datasets()) {
        const auto path = fs::path(models_dir) / ("fold_" + d + ".json");
        if (fs::exists(path)) loaded.folds.emplace(d, BoostedEnsemble::load(path.string()));
        else missing.push_back(d);
    }
    if (need_folds && !missing.empty()) {
        std::string list;
        for (const auto& d : missing) list += (list.empty() ? "" : ", ") + d;
        throw ValidationError("missing fold model(s) under " + models_dir + ": " + list);
    }
    if (need_folds && !loaded.has_full)
        throw ValidationError("missing full model: " + full_path.string());
    return loaded;
}

// Mean per-feature dropout across the fold models. Each fold model is
// scored on the full meta-data: held-out rows alone would leave every
// dataset-level column constant and force its dropout to zero.
std::vector<ImportanceRecord>
aggregate_fold_importance(const LoadedModels& models, const MetaDataset& meta,
                          const FeatureGroups& groups, const ImportanceOptions& opt,
                          std::vector<std::vector<std::string>>& fold_rows) {
    std::map<std::string, ImportanceRecord> sums;
    std::map<std::string, std::vector<double>> dropouts;
    std::vector<double> y(meta.ratings);
    for (const auto& d : meta.datasets()) {
        const auto records = grouped_importance(predictor(models.folds.at(d)), meta.features, y,
                                                meta.feature_names, groups, opt);
        for (const auto& rec : records) {
            auto [it, fresh] = sums.emplace(rec.label, rec);
            if (!fresh) {
                it->second.baseline_loss += rec.baseline_loss;
                it->second.permuted_loss_mean += rec.permuted_loss_mean;
                it->second.dropout += rec.dropout;
            }
            dropouts[rec.label].push_back(rec.dropout);

            std::string members;
            for (const auto& m : rec.feature_set) {
                if (!members.empty()) members += '|';
                members += m;
            }
            fold_rows.push_back({d, members, format_double(rec.baseline_loss),
                                 format_double(rec.dropout),
                                 format_double(rec.permuted_loss_sd),
                                 std::to_string(rec.replications)});
        }
    }

    const double n = static_cast<double>(meta.datasets().size());
    std::vector<ImportanceRecord> aggregated;
    for (auto& [label, rec] : sums) {
        rec.baseline_loss /= n;
        rec.permuted_loss_mean /= n;
        rec.dropout /= n;
        rec.permuted_loss_sd = sample_sd(dropouts[label]); // across folds
        aggregated.push_back(rec);
    }
    std::sort(aggregated.begin(), aggregated.end(), [](const auto& a, const auto& b) {
        if (a.dropout != b.dropout) return a.dropout > b.dropout;
        return a.label < b.label;
    });
    return aggregated;
}

FeatureGroups singleton_groups(const MetaDataset& meta) {
    FeatureGroups groups;
    for (const auto& name : meta.feature_names)
        groups.emplace_back(name, std::vector<std::string>{name});
    return groups;
}

FeatureGroups label_groups(const MetaDataset& meta) {
    FeatureGroups groups;
    for (const auto& [group, columns] : meta.group_columns())
        groups.emplace_back(to_string(group), columns);
    return groups;
}

std::string group_of_feature_set(const MetaDataset& meta, const ImportanceRecord& rec) {
    if (rec.feature_set.size() == 1)
        return to_string(meta.feature_groups[meta.feature_index(rec.feature_set.front())]);
    return rec.label; // grouped records are labeled by their group
}

int explain_importance(const RunConfig& cfg, const MetaDataset& meta, const LoadedModels& models,
                       const fs::path& out, bool by_group) {
    const ImportanceOptions opt{cfg.B, derive_seed(cfg.seed, "importance"), cfg.jobs};
    const auto groups = by_group ? label_groups(meta) : singleton_groups(meta);
    const std::string stem = by_group ? "importance_groups" : "importance";

    std::vector<ImportanceRecord> records;
    if (!cfg.fold_dataset.empty()) {
        // single-fold mode: the fold model scored on the rows it never saw
        // (hyperparameter columns are the only varying ones there)
        const auto it = models.folds.find(cfg.fold_dataset);
        if (it == models.folds.end())
            throw ValidationError("no fold model for dataset '" + cfg.fold_dataset + "'");
        const auto rows = meta.rows_of(cfg.fold_dataset);
        const auto X = meta.features.select_rows(rows);
        std::vector<double> y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) y[i] = meta.ratings[rows[i]];
        records = grouped_importance(predictor(it->second), X, y, meta.feature_names, groups,
                                     opt);
        std::cout << stem << ": fold " << cfg.fold_dataset << " model on its "
                  << rows.size() << " held-out rows\n";
    } else if (cfg.use_full_model) {
        std::vector<double> y(meta.ratings);
        records = grouped_importance(predictor(models.full), meta.features, y,
                                     meta.feature_names, groups, opt);
        std::cout << stem << ": full-data model on all " << meta.n_rows() << " rows\n";
    } else {
        std::vector<std::vector<std::string>> fold_rows;
        records = aggregate_fold_importance(models, meta, groups, opt, fold_rows);
        write_csv_file((out / (stem + "_folds.csv")).string(),
                       {"dataset_id", "feature_set", "baseline_loss", "dropout_mean",
                        "dropout_sd", "B"},
                       fold_rows);
        std::cout << stem << ": aggregated over " << meta.datasets().size()
                  << " fold models, each scored on the full meta-data\n";
    }

    // the per-feature report is a top-k table; the fold-level file above
    // keeps the full detail
    if (!by_group && records.size() > static_cast<std::size_t>(cfg.top))
        records.resize(static_cast<std::size_t>(cfg.top));

    std::vector<std::string> group_column;
    for (const auto& rec : records) group_column.push_back(group_of_feature_set(meta, rec));
    write_importance_csv((out / (stem + ".csv")).string(), records, group_column);
    render_importance_svg((out / (stem + ".csv")).string(), (out / (stem + ".svg")).string(),
                          by_group ? static_cast<int>(records.size()) : cfg.top);
    return 0;
}

int explain_triplot(const RunConfig& cfg, const MetaDataset& meta, const LoadedModels& models,
                    const fs::path& out) {
    const ImportanceOptions opt{cfg.B, derive_seed(cfg.seed, "triplot"), cfg.jobs};
    std::vector<double> y(meta.ratings);
    const auto kind = cfg.pearson ? CorrelationKind::Pearson : CorrelationKind::Spearman;
    const auto tree = triplot(predictor(models.full), meta.features, y, meta.feature_names,
                              meta.feature_names, opt, kind);
    std::ofstream json_out((out / "triplot.json").string());
    json_out << tree.to_json() << '\n';
    json_out.close();
    render_triplot_svg((out / "triplot.json").string(), (out / "triplot.svg").string());
    std::cout << "triplot: " << tree.n_leaves() << " features, " << tree.nodes.size()
              << " scored nodes\n";
    return 0;
}

int explain_interactions(const RunConfig& cfg, const MetaDataset& meta,
                         const LoadedModels& models, const fs::path& out) {
    PdOptions opt;
    opt.max_eval_rows = static_cast<std::size_t>(cfg.eval_cap);
    opt.max_data_rows = static_cast<std::size_t>(cfg.data_cap);
    opt.seed = derive_seed(cfg.seed, "interactions");

    const auto fn = predictor(models.full);
    auto records = top_interactions(fn, meta.features, meta.feature_names, meta.feature_groups,
                                    cfg.top, opt, std::nullopt, cfg.jobs);
    const auto overall = overall_interactions(fn, meta.features, meta.feature_names,
                                              meta.feature_groups, opt, cfg.jobs);
    records.insert(records.end(), overall.begin(), overall.end());

    const auto csv_path = (out / "interactions.csv").string();
    write_interactions_csv(csv_path, records);
    render_interactions_svg(csv_path, (out / "interactions.svg").string(), cfg.top, true);
    render_interactions_svg(csv_path, (out / "interactions_overall.svg").string(), cfg.top,
                            false);
    std::cout << "interactions: top " << cfg.top << " pairs + " << overall.size()
              << " overall records\n";
    return 0;
}

int explain_profiles(const RunConfig& cfg, const MetaDataset& meta, const LoadedModels& models,
                     const fs::path& out) {
    std::map<std::string, FoldModel> folds;
    for (const auto& [d, model] : models.folds) folds.emplace(d, FoldModel{model, {}});

    std::vector<std::string> features;
    if (!cfg.feature.empty() && cfg.feature != "all") features.push_back(cfg.feature);
    else {
        for (const auto& name : hyperparameter_column_names()) {
            const auto col = meta.feature_index(name);
            const auto values = meta.features.column(col);
            if (variance(values) > 0.0) features.push_back(name);
        }
    }

    std::vector<std::vector<std::string>> profile_rows;
    std::vector<std::vector<std::string>> warm_rows;
    const auto mode = cfg.average_profiles ? InstanceMode::Average : InstanceMode::Anchor;
    for (const auto& feature : features) {
        const auto grid = default_grid_for(feature, meta,
                                           static_cast<std::size_t>(cfg.grid_points));
        const auto profiles = profile_matrix(folds, meta, feature, grid, mode);
        const auto clustering = cluster_profiles(
            profiles, std::min<int>(cfg.k, static_cast<int>(profiles.size())));

        for (const auto& p : profiles) {
            const auto& label = clustering.assignment.at(p.dataset_id);
            for (std::size_t g = 0; g < p.predictions.size(); ++g)
                profile_rows.push_back({p.dataset_id, p.feature,
                                        format_double(p.grid.points[g]),
                                        format_double(p.predictions[g]), label});
            const auto best = optimal_hyperparameter(p);
            warm_rows.push_back({p.dataset_id, p.feature, format_double(best.value),
                                 format_double(best.prediction)});
        }

        // per-feature chart from the rows of this feature only
        std::vector<std::vector<std::string>> feature_rows;
        for (const auto& row : profile_rows)
            if (row[1] == feature) feature_rows.push_back(row);
        const auto tmp_csv = (out / ("profiles_" + feature + ".csv")).string();
        write_csv_file(tmp_csv, {"dataset_id", "feature", "grid_value", "prediction", "cluster"},
                       feature_rows);
        render_profiles_svg(tmp_csv, (out / ("profiles_" + feature + ".svg")).string());
    }

    write_csv_file((out / "profiles.csv").string(),
                   {"dataset_id", "feature", "grid_value", "prediction", "cluster"},
                   profile_rows);
    write_csv_file((out / "warm_starts.csv").string(),
                   {"dataset_id", "feature", "optimal_value", "predicted_rating"}, warm_rows);
    std::cout << "profiles: " << features.size() << " hyperparameter(s) x "
              << meta.datasets().size() << " datasets, k=" << cfg.k
              << (cfg.average_profiles ? " (averaged rows)" : " (anchor instance)") << "\n";
    return 0;
}

int explain_influence(const RunConfig& cfg, const MetaDataset& meta, const LoadedModels& models,
                      const fs::path& out) {
    std::string test = cfg.test_dataset;
    if (test.empty()) {
        const auto datasets = meta.datasets();
        test = std::find(datasets.begin(), datasets.end(), "1471") != datasets.end()
                   ? "1471"
                   : datasets.front();
    }
    const std::string feature = cfg.feature.empty() ? "shrinkage" : cfg.feature;
    const auto grid = default_grid_for(feature, meta,
                                       static_cast<std::size_t>(cfg.grid_points));
    auto params = cfg.surrogate;
    params.seed = derive_seed(cfg.seed, "fit");

    const BoostedEnsemble* full = nullptr;
    const auto it = models.folds.find(test);
    if (it != models.folds.end()) full = &it->second;

    const auto result =
        influence_analysis(meta, params, test, feature, grid, cfg.jobs, full);
    write_influence_csv((out / "influence.csv").string(), result);
    write_influence_profiles_csv((out / "influence_profiles.csv").string(), result);
    render_influence_svg((out / "influence.csv").string(),
                         (out / "influence_profiles.csv").string(),
                         (out / "influence.svg").string());
    std::cout << "influence: test dataset " << test << ", " << result.n_reduced_fits
              << " reduced refits, s2=" << format_double(result.s2) << "\n";
    return 0;
}

int cmd_explain(const RunConfig& cfg, const std::string& kind) {
    require_file(cfg.meta_csv, "meta-dataset");
    const auto out = ensure_out_dir(cfg);
    const auto meta = read_meta_dataset(cfg.meta_csv);

    const bool needs_folds = kind != "triplot" && kind != "interactions";
    const auto models = load_models(cfg.models_dir, meta, needs_folds);
    if ((kind == "triplot" || kind == "interactions" || kind == "all") && !models.has_full)
        throw ValidationError("missing full model under " + cfg.models_dir);

    if (kind == "importance") return explain_importance(cfg, meta, models, out, false);
    if (kind == "groups") return explain_importance(cfg, meta, models, out, true);
    if (kind == "triplot") return explain_triplot(cfg, meta, models, out);
    if (kind == "interactions") return explain_interactions(cfg, meta, models, out);
    if (kind == "profiles") return explain_profiles(cfg, meta, models, out);
    if (kind == "influence") return explain_influence(cfg, meta, models, out);
    if (kind == "all") {
        explain_importance(cfg, meta, models, out, false);
        explain_importance(cfg, meta, models, out, true);
        explain_triplot(cfg, meta, models, out);
        explain_interactions(cfg, meta, models, out);
        explain_profiles(cfg, meta, models, out);
        explain_influence(cfg, meta, models, out);
        return 0;
    }
    throw ValidationError("unknown explain kind '" + kind +
                          "' (importance|groups|triplot|interactions|profiles|influence|all)");
}

int cmd_render(const RunConfig& cfg, const std::string& kind) {
    const fs::path out(cfg.out);
    auto csv = [&](const std::string& name) {
        const auto path = (out / name).string();
        require_file(path, kind + " report");
        return path;
    };
    if (kind == "importance")
        render_importance_svg(csv("importance.csv"), (out / "importance.svg").string(), cfg.top);
    else if (kind == "groups")
        render_importance_svg(csv("importance_groups.csv"),
                              (out / "importance_groups.svg").string(), 10);
    else if (kind == "triplot")
        render_triplot_svg(csv("triplot.json"), (out / "triplot.svg").string());
    else if (kind == "interactions") {
        render_interactions_svg(csv("interactions.csv"), (out / "interactions.svg").string(),
                                cfg.top, true);
        render_interactions_svg(csv("interactions.csv"),
                                (out / "interactions_overall.svg").string(), cfg.top, false);
    } else if (kind == "profiles") {
        // one chart per feature present in the report
        const auto table = read_csv_file(csv("profiles.csv"));
        std::set<std::string> features;
        for (std::size_t r = 0; r < table.n_rows(); ++r) features.insert(table.cell(r, 1));
        for (const auto& feature : features) {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t r = 0; r < table.n_rows(); ++r)
                if (table.cell(r, 1) == feature) rows.push_back(table.rows[r]);
            const auto tmp = (out / ("profiles_" + feature + ".csv")).string();
            write_csv_file(tmp, table.header, rows);
            render_profiles_svg(tmp, (out / ("profiles_" + feature + ".svg")).string());
        }
    } else if (kind == "influence")
        render_influence_svg(csv("influence.csv"), (out / "influence_profiles.csv").string(),
                             (out / "influence.svg").string());
    else
        throw ValidationError("unknown render kind '" + kind + "'");
    std::cout << "rendered " << kind << " chart(s) under " << out.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // --config seeds the defaults; explicit flags then override it.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) {
                std::cerr << "error: cannot open config file: " << argv[i + 1] << "\n";
                return 2;
            }
            try {
                cfg.merge_json(nlohmann::json::parse(in));
            } catch (const std::exception& e) {
                std::cerr << "error: bad config file: " << e.what() << "\n";
                return 2;
            }
        }
    }

    CLI::App app{"explainable meta-learning surrogate pipeline"};
    app.require_subcommand(1);
    std::string config_path;
    std::string save_config_path;
    app.add_option("--config", config_path, "JSON config with defaults for all flags");
    app.add_option("--save-config", save_config_path, "write the effective config to this file");
    app.add_option("--seed", cfg.seed, "root random seed");
    app.add_option("--jobs", cfg.jobs, "worker thread cap");
    app.add_option("--out", cfg.out, "output directory");

    auto* demo_cmd = app.add_subcommand("demo-data", "write the bundled demo benchmark tables");

    auto* ingest = app.add_subcommand("ingest", "join input tables into meta_dataset.csv");
    ingest->add_option("--stats", cfg.stats_csv, "stat_features.csv path");
    ingest->add_option("--evals", cfg.evals_csv, "evaluations.csv path");
    ingest->add_option("--configs", cfg.configs_csv, "configs.csv path");

    auto* sample = app.add_subcommand("sample-configs", "draw seeded random configurations");
    sample->add_option("--n", cfg.sample_n, "number of random configurations");
    sample->add_flag("--append-default,!--no-append-default", cfg.append_default,
                     "append the library default configuration");

    auto* train = app.add_subcommand("train", "fit LODO fold models and the full model");
    train->add_option("--meta", cfg.meta_csv, "meta_dataset.csv path");
    train->add_option("--n-trees", cfg.surrogate.n_trees, "boosting rounds");
    train->add_option("--learn-rate", cfg.surrogate.learn_rate, "shrinkage of the surrogate");
    train->add_option("--max-depth", cfg.surrogate.max_depth, "maximum tree depth");
    train->add_option("--min-node", cfg.surrogate.min_node, "minimum rows per leaf");
    train->add_option("--subsample", cfg.surrogate.subsample, "row subsample fraction");

    auto* explain = app.add_subcommand("explain", "run one explainer (or 'all')");
    std::string explain_kind;
    explain->add_option("kind", explain_kind,
                        "importance|groups|triplot|interactions|profiles|influence|all")
        ->required();
    explain->add_option("--meta", cfg.meta_csv, "meta_dataset.csv path");
    explain->add_option("--models", cfg.models_dir, "directory with trained models");
    explain->add_option("--b", cfg.B, "permutation replications");
    explain->add_option("--top", cfg.top, "rows in top-k reports");
    explain->add_option("--k", cfg.k, "profile cluster count");
    explain->add_option("--grid-points", cfg.grid_points, "profile grid resolution");
    explain->add_option("--eval-cap", cfg.eval_cap, "PD evaluation-row cap");
    explain->add_option("--data-cap", cfg.data_cap, "PD marginalization-row cap");
    explain->add_option("--feature", cfg.feature, "profiled feature ('all' for profiles)");
    explain->add_option("--test", cfg.test_dataset, "influence test dataset id");
    explain->add_option("--fold", cfg.fold_dataset,
                        "single-fold importance: this fold's model on its held-out rows");
    explain->add_flag("--average-profiles", cfg.average_profiles,
                      "profile the mean over each dataset's rows instead of the anchor");
    explain->add_flag("--pearson", cfg.pearson, "Pearson linkage instead of Spearman");
    explain->add_flag("--full-model", cfg.use_full_model,
                      "score importance on the full-data model instead of fold aggregation");
    explain->add_option("--n-trees", cfg.surrogate.n_trees, "boosting rounds (influence refits)");
    explain->add_option("--learn-rate", cfg.surrogate.learn_rate, "surrogate shrinkage");
    explain->add_option("--max-depth", cfg.surrogate.max_depth, "maximum tree depth");
    explain->add_option("--min-node", cfg.surrogate.min_node, "minimum rows per leaf");
    explain->add_option("--subsample", cfg.surrogate.subsample, "row subsample fraction");

    auto* render = app.add_subcommand("render", "re-render SVG charts from report files");
    std::string render_kind;
    render->add_option("kind", render_kind,
                       "importance|groups|triplot|interactions|profiles|influence")
        ->required();
    render->add_option("--top", cfg.top, "rows in top-k charts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!save_config_path.empty()) cfg.save(save_config_path);
        if (app.got_subcommand(demo_cmd)) return cmd_demo_data(cfg);
        if (app.got_subcommand(ingest)) return cmd_ingest(cfg);
        if (app.got_subcommand(sample)) return cmd_sample_configs(cfg);
        if (app.got_subcommand(train)) return cmd_train(cfg);
        if (app.got_subcommand(explain)) return cmd_explain(cfg, explain_kind);
        if (app.got_subcommand(render)) return cmd_render(cfg, render_kind);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
