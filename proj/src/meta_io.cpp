#include "metax/meta_io.hpp"

#include "metax/error.hpp"
#include "metax/rank.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace metax {

namespace {

constexpr std::size_t kStatColumns = 38;

std::string join_ids(const std::set<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

} // namespace

StatTable read_stat_table(const std::string& path) {
    const auto csv = read_csv_file(path);
    if (csv.header.empty() || csv.header[0] != "dataset_id")
        throw SchemaError(path + ": first column must be 'dataset_id'");
    if (csv.header.size() - 1 != kStatColumns)
        throw SchemaError(path + ": expected " + std::to_string(kStatColumns) +
                          " statistical columns, found " + std::to_string(csv.header.size() - 1));

    StatTable table;
    table.column_names.assign(csv.header.begin() + 1, csv.header.end());
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        const std::string& id = csv.cell(r, 0);
        std::vector<double> values(kStatColumns);
        for (std::size_t c = 0; c < kStatColumns; ++c) values[c] = csv.numeric(r, c + 1);
        if (!table.rows.emplace(id, std::move(values)).second)
            throw SchemaError(path + ": duplicate dataset_id '" + id + "'");
    }
    return table;
}

std::vector<EvaluationRecord> read_evaluation_table(const std::string& path) {
    const auto csv = read_csv_file(path);
    const std::vector<std::string> expected = {"dataset_id", "model_id", "split_index", "auc"};
    if (csv.header != expected)
        throw SchemaError(path + ": header must be 'dataset_id,model_id,split_index,auc'");

    std::vector<EvaluationRecord> out;
    out.reserve(csv.n_rows());
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        EvaluationRecord rec;
        rec.dataset_id = csv.cell(r, 0);
        rec.model_id = csv.cell(r, 1);
        rec.split_index = static_cast<int>(csv.numeric(r, 2));
        rec.auc = csv.numeric(r, 3);
        if (rec.auc < 0.0 || rec.auc > 1.0)
            throw ValidationError(path + ": auc " + format_double(rec.auc) + " outside [0,1] at data row " +
                                  std::to_string(r + 1));
        if (rec.split_index < 0)
            throw ValidationError(path + ": negative split_index at data row " + std::to_string(r + 1));
        out.push_back(std::move(rec));
    }
    return out;
}

ConfigTable read_config_table(const std::string& path) {
    const auto csv = read_csv_file(path);
    std::vector<std::string> expected = {"config_id"};
    const auto& hp = hyperparameter_column_names();
    expected.insert(expected.end(), hp.begin(), hp.end());
    if (csv.header != expected)
        throw SchemaError(path +
                          ": header must be "
                          "'config_id,shrinkage,interaction.depth,n.trees,bag.fraction,n."
                          "minobsinnode'");

    ConfigTable table;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        const std::string& id = csv.cell(r, 0);
        if (!seen.insert(id).second)
            throw SchemaError(path + ": duplicate config_id '" + id + "'");
        HyperparameterConfig c;
        c.shrinkage = csv.numeric(r, 1);
        c.interaction_depth = static_cast<int>(csv.numeric(r, 2));
        c.n_trees = static_cast<int>(csv.numeric(r, 3));
        c.bag_fraction = csv.numeric(r, 4);
        c.min_node = static_cast<int>(csv.numeric(r, 5));
        c.validate();
        table.config_ids.push_back(id);
        table.configs.push_back(c);
    }
    return table;
}

void write_config_table(const std::string& path, const ConfigTable& table) {
    std::vector<std::string> header = {"config_id"};
    const auto& hp = hyperparameter_column_names();
    header.insert(header.end(), hp.begin(), hp.end());

    std::vector<std::vector<std::string>> rows;
    rows.reserve(table.configs.size());
    for (std::size_t i = 0; i < table.configs.size(); ++i) {
        const auto& c = table.configs[i];
        rows.push_back({table.config_ids[i], format_double(c.shrinkage),
                        std::to_string(c.interaction_depth), std::to_string(c.n_trees),
                        format_double(c.bag_fraction), std::to_string(c.min_node)});
    }
    write_csv_file(path, header, rows);
}

MetaDataset assemble_meta_dataset(const StatTable& stats,
                                  const std::vector<EvaluationRecord>& evals,
                                  const ConfigTable& configs) {
    if (evals.empty()) throw ValidationError("assemble: empty evaluation table");
    if (configs.configs.empty()) throw ValidationError("assemble: empty configuration table");

    const std::set<std::string> config_ids(configs.config_ids.begin(), configs.config_ids.end());
    std::set<std::string> landmarker_ids(landmarker_model_ids().begin(),
                                         landmarker_model_ids().end());
    landmarker_ids.insert(gbm_default_model_id());

    // Split evaluations into the configuration block (ratings) and the
    // landmarker block (ratio features); unknown model ids are a join error.
    std::vector<EvaluationRecord> config_evals;
    std::vector<EvaluationRecord> landmark_evals;
    std::set<std::string> unknown;
    for (const auto& e : evals) {
        if (config_ids.count(e.model_id)) config_evals.push_back(e);
        else if (landmarker_ids.count(e.model_id)) landmark_evals.push_back(e);
        else unknown.insert(e.model_id);
    }
    if (!unknown.empty())
        throw JoinError("assemble: evaluation model ids absent from configs.csv and not "
                        "landmarkers: " + join_ids(unknown));
    if (config_evals.empty())
        throw ValidationError("assemble: no configuration evaluations present");
    if (landmark_evals.empty())
        throw ValidationError("assemble: no landmarker evaluations present");

    const auto ratings = rank_normalize(config_evals);
    const auto landmarks = compute_landmarkers(landmark_evals);

    std::set<std::string> eval_datasets;
    for (const auto& [key, _] : ratings) eval_datasets.insert(key.first);

    // The three tables must agree on dataset ids.
    std::set<std::string> missing;
    for (const auto& d : eval_datasets) {
        if (!stats.rows.count(d)) missing.insert(d + " (stat_features)");
        if (!landmarks.count(d)) missing.insert(d + " (landmarker evaluations)");
    }
    for (const auto& [d, _] : stats.rows)
        if (!eval_datasets.count(d)) missing.insert(d + " (evaluations)");
    if (!missing.empty())
        throw JoinError("assemble: dataset ids missing from joined tables: " + join_ids(missing));

    MetaDataset meta;
    meta.feature_names = stats.column_names;
    meta.feature_groups.assign(stats.column_names.size(), FeatureGroup::Statistical);
    for (const auto& name : landmarker_feature_names()) {
        meta.feature_names.push_back(name);
        meta.feature_groups.push_back(FeatureGroup::Landmarker);
    }
    for (const auto& name : hyperparameter_column_names()) {
        meta.feature_names.push_back(name);
        meta.feature_groups.push_back(FeatureGroup::Hyperparameter);
    }

    const std::size_t n_rows = eval_datasets.size() * configs.configs.size();
    meta.features = DataMatrix(n_rows, meta.feature_names.size());
    meta.dataset_ids.reserve(n_rows);
    meta.config_ids.reserve(n_rows);
    meta.ratings.reserve(n_rows);

    std::size_t row = 0;
    for (const auto& dataset : eval_datasets) {
        const auto& stat_row = stats.rows.at(dataset);
        const auto& marks = landmarks.at(dataset);
        for (std::size_t ci = 0; ci < configs.configs.size(); ++ci) {
            const auto it = ratings.find({dataset, configs.config_ids[ci]});
            if (it == ratings.end())
                throw JoinError("assemble: dataset '" + dataset +
                                "' has no evaluations for config '" + configs.config_ids[ci] + "'");

            auto dst = meta.features.row(row);
            std::size_t col = 0;
            for (const double v : stat_row) dst[col++] = v;
            for (const double v : marks) dst[col++] = v;
            for (const double v : configs.configs[ci].as_row()) dst[col++] = v;

            meta.dataset_ids.push_back(dataset);
            meta.config_ids.push_back(configs.config_ids[ci]);
            meta.ratings.push_back(it->second);
            ++row;
        }
    }
    meta.validate();
    return meta;
}

void write_meta_dataset(const std::string& path, const MetaDataset& meta) {
    meta.validate();
    std::vector<std::string> header = {"dataset_id", "config_id"};
    header.insert(header.end(), meta.feature_names.begin(), meta.feature_names.end());
    header.push_back("rating");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(meta.n_rows());
    for (std::size_t r = 0; r < meta.n_rows(); ++r) {
        std::vector<std::string> row = {meta.dataset_ids[r], meta.config_ids[r]};
        for (const double v : meta.features.row(r)) row.push_back(format_double(v));
        row.push_back(format_double(meta.ratings[r]));
        rows.push_back(std::move(row));
    }
    write_csv_file(path, header, rows);
}

MetaDataset read_meta_dataset(const std::string& path) {
    const auto csv = read_csv_file(path);
    if (csv.header.size() < 4 || csv.header.front() != "dataset_id" ||
        csv.header[1] != "config_id" || csv.header.back() != "rating")
        throw SchemaError(path + ": header must be 'dataset_id,config_id,<features>,rating'");

    MetaDataset meta;
    meta.feature_names.assign(csv.header.begin() + 2, csv.header.end() - 1);
    const std::size_t p = meta.feature_names.size();

    // Group labels are recovered from the fixed landmarker and
    // hyperparameter column names; everything else is statistical.
    const auto& hp = hyperparameter_column_names();
    const auto& lm = landmarker_feature_names();
    for (const auto& name : meta.feature_names) {
        if (std::find(hp.begin(), hp.end(), name) != hp.end())
            meta.feature_groups.push_back(FeatureGroup::Hyperparameter);
        else if (std::find(lm.begin(), lm.end(), name) != lm.end())
            meta.feature_groups.push_back(FeatureGroup::Landmarker);
        else
            meta.feature_groups.push_back(FeatureGroup::Statistical);
    }

    const std::size_t n = csv.n_rows();
    meta.features = DataMatrix(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        meta.dataset_ids.push_back(csv.cell(r, 0));
        meta.config_ids.push_back(csv.cell(r, 1));
        for (std::size_t c = 0; c < p; ++c) meta.features.at(r, c) = csv.numeric(r, c + 2);
        const double rating = csv.numeric(r, p + 2);
        if (rating < 0.0 || rating > 1.0)
            throw ValidationError(path + ": rating outside [0,1] at data row " +
                                  std::to_string(r + 1));
        meta.ratings.push_back(rating);
    }
    meta.validate();
    return meta;
}

} // namespace metax
