#pragma once

#include "metax/csv.hpp"
#include "metax/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace metax {

// Parsed input tables.
struct StatTable {
    std::vector<std::string> column_names;             // 38 statistical columns
    std::map<std::string, std::vector<double>> rows;   // dataset_id -> values
};

struct ConfigTable {
    std::vector<std::string> config_ids;           // file order
    std::vector<HyperparameterConfig> configs;     // parallel
};

// stat_features.csv: header `dataset_id,<stat columns>`. Exactly 38
// statistical columns are required by the meta-instance schema.
StatTable read_stat_table(const std::string& path);

// evaluations.csv: header `dataset_id,model_id,split_index,auc`.
std::vector<EvaluationRecord> read_evaluation_table(const std::string& path);

// configs.csv: header
// `config_id,shrinkage,interaction.depth,n.trees,bag.fraction,n.minobsinnode`.
ConfigTable read_config_table(const std::string& path);

void write_config_table(const std::string& path, const ConfigTable& table);

// Joins the three tables into the flat meta-dataset: one row per
// (dataset, configuration), ratings from rank_normalize over configuration
// evaluations, landmarker ratios from compute_landmarkers. Column layout:
// 38 statistical, 4 landmarkers, 5 hyperparameters.
//
// Throws JoinError listing missing dataset/config ids, SchemaError or
// ParseError on malformed tables.
MetaDataset assemble_meta_dataset(const StatTable& stats,
                                  const std::vector<EvaluationRecord>& evals,
                                  const ConfigTable& configs);

// Canonical serialization, header `dataset_id,config_id,<features>,rating`,
// floats at 17 significant digits. Re-reading reproduces the dataset and
// re-writing is byte-identical.
void write_meta_dataset(const std::string& path, const MetaDataset& meta);
MetaDataset read_meta_dataset(const std::string& path);

} // namespace metax
