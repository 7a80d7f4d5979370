#include "metax/importance.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/parallel.hpp"
#include "metax/rng.hpp"
#include "metax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace metax {

namespace {

std::size_t require_column(const std::vector<std::string>& column_names,
                           const std::string& name) {
    for (std::size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == name) return i;
    throw ValidationError("importance: unknown column '" + name + "'");
}

bool column_is_constant(const DataMatrix& X, std::size_t c) {
    for (std::size_t r = 1; r < X.n_rows; ++r)
        if (X.at(r, c) != X.at(0, c)) return false;
    return true;
}

} // namespace

std::vector<std::vector<std::size_t>> make_permutations(std::size_t n_rows, int replications,
                                                        std::uint64_t seed) {
    Rng rng(derive_seed(seed, "importance/permutations"));
    std::vector<std::vector<std::size_t>> perms;
    perms.reserve(static_cast<std::size_t>(replications));
    for (int b = 0; b < replications; ++b) perms.push_back(rng.permutation(n_rows));
    return perms;
}

DropoutStats joint_dropout(const PredictFn& predict, const DataMatrix& X,
                           std::span<const double> y, const std::vector<std::size_t>& columns,
                           const std::vector<std::vector<std::size_t>>& permutations) {
    DropoutStats stats;
    std::vector<double> losses;
    losses.reserve(permutations.size());
    DataMatrix perturbed = X;
    for (const auto& perm : permutations) {
        for (const auto c : columns)
            for (std::size_t r = 0; r < X.n_rows; ++r)
                perturbed.at(r, c) = X.at(perm[r], c);
        losses.push_back(mse(predict(perturbed), y));
        for (const auto c : columns) // restore for the next replication
            for (std::size_t r = 0; r < X.n_rows; ++r) perturbed.at(r, c) = X.at(r, c);
    }
    stats.permuted_loss_mean = mean(losses);
    stats.permuted_loss_sd = sample_sd(losses);
    return stats;
}

std::vector<ImportanceRecord>
grouped_importance(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                   const std::vector<std::string>& column_names, const FeatureGroups& groups,
                   const ImportanceOptions& opt) {
    if (opt.replications < 1) throw ValidationError("importance: B must be >= 1");
    if (X.n_rows == 0) throw ValidationError("importance: empty data");
    if (X.n_rows != y.size()) throw DimensionError("importance: row/target count mismatch");
    if (groups.empty()) throw ValidationError("importance: no groups given");

    std::set<std::string> seen;
    for (const auto& [label, members] : groups) {
        if (members.empty())
            throw ValidationError("importance: group '" + label + "' is empty");
        for (const auto& m : members)
            if (!seen.insert(m).second)
                throw ValidationError("importance: column '" + m + "' appears in two groups");
    }

    const auto perms = make_permutations(X.n_rows, opt.replications, opt.seed);
    const double baseline = mse(predict(X), y);

    // Resolve all group columns up front, then score groups in parallel.
    std::vector<std::vector<std::size_t>> group_cols(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto& m : groups[g].second)
            group_cols[g].push_back(require_column(column_names, m));

    std::vector<ImportanceRecord> records(groups.size());
    parallel_for(groups.size(), opt.jobs, [&](std::size_t g) {
        const auto stats = joint_dropout(predict, X, y, group_cols[g], perms);
        ImportanceRecord rec;
        rec.feature_set = groups[g].second;
        rec.label = groups[g].first;
        rec.baseline_loss = baseline;
        rec.permuted_loss_mean = stats.permuted_loss_mean;
        rec.permuted_loss_sd = stats.permuted_loss_sd;
        rec.dropout = stats.permuted_loss_mean - baseline;
        rec.replications = opt.replications;
        rec.constant_flag =
            std::all_of(group_cols[g].begin(), group_cols[g].end(),
                        [&](std::size_t c) { return column_is_constant(X, c); });
        records[g] = std::move(rec);
    });

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.dropout != b.dropout) return a.dropout > b.dropout;
        return a.label < b.label;
    });
    return records;
}

std::vector<ImportanceRecord>
permutation_importance(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                       const std::vector<std::string>& column_names,
                       const std::vector<std::string>& features, const ImportanceOptions& opt) {
    FeatureGroups singleton_groups;
    singleton_groups.reserve(features.size());
    for (const auto& f : features) singleton_groups.emplace_back(f, std::vector<std::string>{f});
    return grouped_importance(predict, X, y, column_names, singleton_groups, opt);
}

void write_importance_csv(const std::string& path, const std::vector<ImportanceRecord>& records,
                          const std::vector<std::string>& group_of_record) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        std::string members;
        for (const auto& m : r.feature_set) {
            if (!members.empty()) members += '|';
            members += m;
        }
        rows.push_back({members, group_of_record[i], format_double(r.baseline_loss),
                        format_double(r.dropout), format_double(r.permuted_loss_sd),
                        std::to_string(r.replications)});
    }
    write_csv_file(path, {"feature_set", "group", "baseline_loss", "dropout_mean", "dropout_sd", "B"},
                   rows);
}

} // namespace metax
