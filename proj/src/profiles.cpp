#include "metax/profiles.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace metax {

void Grid::validate() const {
    if (points.empty()) throw ValidationError("grid: no points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw ValidationError("grid: points must be strictly increasing");
    if (scale == Scale::Log10)
        for (const double p : points)
            if (!(p > 0.0)) throw ValidationError("grid: log10 scale requires positive points");
}

Grid make_grid(const std::string& feature, double lo, double hi, std::size_t n_points,
               Grid::Scale scale) {
    if (!(lo < hi)) throw ValidationError("grid: need lo < hi for feature '" + feature + "'");
    if (n_points < 2) throw ValidationError("grid: need at least 2 points");

    Grid grid;
    grid.feature = feature;
    grid.scale = scale;
    grid.points.reserve(n_points);
    if (scale == Grid::Scale::Log10) {
        if (!(lo > 0.0)) throw ValidationError("grid: log10 scale requires lo > 0");
        const double llo = std::log10(lo);
        const double lhi = std::log10(hi);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
            grid.points.push_back(std::pow(10.0, llo + t * (lhi - llo)));
        }
    } else {
        for (std::size_t i = 0; i < n_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
            grid.points.push_back(lo + t * (hi - lo));
        }
    }
    // Guard against duplicate endpoints from rounding.
    grid.points.erase(std::unique(grid.points.begin(), grid.points.end()), grid.points.end());
    grid.validate();
    return grid;
}

Grid default_grid_for(const std::string& feature, const MetaDataset& meta, std::size_t n_points) {
    const auto col = meta.feature_index(feature);
    const auto values = meta.features.column(col);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(lo < hi))
        throw ValidationError("grid: feature '" + feature + "' is constant in the meta-data");

    if (feature == "shrinkage" || feature == "n.trees")
        return make_grid(feature, lo, hi, n_points, Grid::Scale::Log10);

    if (feature == "interaction.depth" || feature == "n.minobsinnode") {
        // integer steps across the observed range, at most n_points of them
        Grid grid;
        grid.feature = feature;
        grid.scale = Grid::Scale::Linear;
        const long long ilo = static_cast<long long>(std::ceil(lo));
        const long long ihi = static_cast<long long>(std::floor(hi));
        const long long span = ihi - ilo;
        const long long step =
            std::max<long long>(1, (span + static_cast<long long>(n_points) - 1) /
                                       static_cast<long long>(n_points));
        for (long long v = ilo; v <= ihi; v += step) grid.points.push_back(static_cast<double>(v));
        if (grid.points.empty() || grid.points.back() != static_cast<double>(ihi))
            grid.points.push_back(static_cast<double>(ihi));
        grid.validate();
        return grid;
    }
    return make_grid(feature, lo, hi, n_points, Grid::Scale::Linear);
}

Profile ceteris_paribus(const PredictFn& predict, std::span<const double> instance,
                        std::size_t feature_index, const Grid& grid, double bound_lo,
                        double bound_hi) {
    grid.validate();
    if (feature_index >= instance.size())
        throw DimensionError("ceteris_paribus: feature index out of range");

    DataMatrix batch(grid.points.size(), instance.size());
    for (std::size_t g = 0; g < grid.points.size(); ++g) {
        auto row = batch.row(g);
        std::copy(instance.begin(), instance.end(), row.begin());
        row[feature_index] = grid.points[g];
    }

    Profile profile;
    profile.feature = grid.feature;
    profile.grid = grid;
    profile.predictions = predict(batch);
    if (bound_lo <= bound_hi) {
        profile.extrapolated.reserve(grid.points.size());
        for (const double p : grid.points)
            profile.extrapolated.push_back(p < bound_lo || p > bound_hi);
    }
    return profile;
}

std::vector<double> anchor_instance(const MetaDataset& meta, const std::string& dataset_id) {
    const auto rows = meta.rows_of(dataset_id);
    if (rows.empty())
        throw ValidationError("anchor_instance: unknown dataset '" + dataset_id + "'");

    // first row of the dataset, with any hyperparameter columns reset to
    // the library defaults; meta-datasets without those columns keep the
    // row as is
    std::vector<double> instance(meta.features.row(rows.front()).begin(),
                                 meta.features.row(rows.front()).end());
    const auto defaults = default_config().as_row();
    const auto& hp_names = hyperparameter_column_names();
    for (std::size_t i = 0; i < hp_names.size(); ++i)
        for (std::size_t c = 0; c < meta.feature_names.size(); ++c)
            if (meta.feature_names[c] == hp_names[i]) instance[c] = defaults[i];
    return instance;
}

std::vector<Profile> profile_matrix(const std::map<std::string, FoldModel>& fold_models,
                                    const MetaDataset& meta, const std::string& feature,
                                    const Grid& grid, InstanceMode mode) {
    const auto datasets = meta.datasets();
    std::vector<std::string> missing;
    for (const auto& d : datasets)
        if (!fold_models.count(d)) missing.push_back(d);
    if (!missing.empty()) {
        std::string list;
        for (const auto& d : missing) list += (list.empty() ? "" : ", ") + d;
        throw ValidationError("profile_matrix: no fold model for dataset(s): " + list);
    }

    const auto feature_idx = meta.feature_index(feature);
    const auto observed = meta.features.column(feature_idx);
    const auto [lo_it, hi_it] = std::minmax_element(observed.begin(), observed.end());

    std::vector<Profile> profiles;
    profiles.reserve(datasets.size());
    for (const auto& d : datasets) {
        const auto& fold = fold_models.at(d);
        const auto fn = predictor(fold.model);

        Profile profile;
        if (mode == InstanceMode::Anchor) {
            const auto instance = anchor_instance(meta, d);
            profile = ceteris_paribus(fn, instance, feature_idx, grid, *lo_it, *hi_it);
        } else {
            // Average mode: mean of the CP curves of every observed row.
            const auto rows = meta.rows_of(d);
            std::vector<double> acc(grid.points.size(), 0.0);
            for (const auto r : rows) {
                const auto row = meta.features.row(r);
                const auto p = ceteris_paribus(fn, row, feature_idx, grid, *lo_it, *hi_it);
                for (std::size_t g = 0; g < acc.size(); ++g) acc[g] += p.predictions[g];
            }
            for (auto& v : acc) v /= static_cast<double>(rows.size());
            profile.grid = grid;
            profile.feature = grid.feature;
            profile.predictions = std::move(acc);
        }
        profile.dataset_id = d;
        profile.source_model = d;
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

ProfileClustering cluster_profiles(const std::vector<Profile>& profiles, int k) {
    if (k < 1) throw ValidationError("cluster_profiles: k must be >= 1");
    if (profiles.size() < static_cast<std::size_t>(k))
        throw ValidationError("cluster_profiles: fewer profiles than clusters");
    const std::size_t n = profiles.size();
    for (std::size_t i = 1; i < n; ++i)
        if (profiles[i].grid.points != profiles[0].grid.points ||
            profiles[i].feature != profiles[0].feature)
            throw ValidationError("cluster_profiles: profiles must share one grid");

    // Sort members by dataset_id so the partition is independent of input
    // order.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profiles[a].dataset_id < profiles[b].dataset_id;
    });

    std::vector<std::vector<double>> centered(n);
    for (std::size_t i = 0; i < n; ++i) {
        centered[i] = profiles[order[i]].predictions;
        const double m = mean(centered[i]);
        for (auto& v : centered[i]) v -= m;
    }

    auto euclid = [&](std::size_t a, std::size_t b) {
        double acc = 0.0;
        for (std::size_t g = 0; g < centered[a].size(); ++g) {
            const double d = centered[a][g] - centered[b][g];
            acc += d * d;
        }
        return std::sqrt(acc);
    };

    std::vector<std::vector<std::size_t>> clusters(n); // member positions in `order`
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = euclid(i, j);

    while (clusters.size() > static_cast<std::size_t>(k)) {
        std::size_t bi = 0, bj = 1;
        double best = dist[0][1];
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j)
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        for (std::size_t t = 0; t < clusters.size(); ++t) {
            if (t == bi || t == bj) continue;
            const double dm = std::max(dist[bi][t], dist[bj][t]);
            dist[bi][t] = dist[t][bi] = dm;
        }
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
    }

    // Label clusters by descending size; ties by smallest member id.
    std::vector<std::size_t> cluster_order(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) cluster_order[i] = i;
    std::sort(cluster_order.begin(), cluster_order.end(), [&](std::size_t a, std::size_t b) {
        if (clusters[a].size() != clusters[b].size())
            return clusters[a].size() > clusters[b].size();
        return profiles[order[clusters[a].front()]].dataset_id <
               profiles[order[clusters[b].front()]].dataset_id;
    });

    ProfileClustering result;
    result.k = k;
    for (std::size_t rank = 0; rank < cluster_order.size(); ++rank) {
        std::string label;
        // A, B, ..., Z, AA, AB, ... for many clusters
        std::size_t v = rank;
        do {
            label.insert(label.begin(), static_cast<char>('A' + v % 26));
            v = v / 26;
        } while (v-- > 0);

        const auto& members = clusters[cluster_order[rank]];
        Profile agg;
        agg.dataset_id = label;
        agg.feature = profiles[0].feature;
        agg.grid = profiles[0].grid;
        agg.predictions.assign(profiles[0].grid.points.size(), 0.0);
        for (const auto pos : members) {
            const auto& p = profiles[order[pos]];
            result.assignment[p.dataset_id] = label;
            for (std::size_t g = 0; g < agg.predictions.size(); ++g)
                agg.predictions[g] += p.predictions[g];
        }
        for (auto& v2 : agg.predictions) v2 /= static_cast<double>(members.size());
        result.aggregated.emplace(label, std::move(agg));
        result.labels.push_back(label);
    }
    return result;
}

OptimalPoint optimal_hyperparameter(const Profile& profile) {
    if (profile.predictions.empty())
        throw ValidationError("optimal_hyperparameter: empty profile");
    OptimalPoint best{profile.grid.points[0], profile.predictions[0], 0};
    for (std::size_t g = 1; g < profile.predictions.size(); ++g)
        if (profile.predictions[g] > best.prediction)
            best = {profile.grid.points[g], profile.predictions[g], g};
    return best;
}

void write_profiles_csv(const std::string& path, const std::vector<Profile>& profiles,
                        const ProfileClustering& clustering) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : profiles) {
        const auto it = clustering.assignment.find(p.dataset_id);
        const std::string label = it == clustering.assignment.end() ? "" : it->second;
        for (std::size_t g = 0; g < p.predictions.size(); ++g)
            rows.push_back({p.dataset_id, p.feature, format_double(p.grid.points[g]),
                            format_double(p.predictions[g]), label});
    }
    write_csv_file(path, {"dataset_id", "feature", "grid_value", "prediction", "cluster"}, rows);
}

void write_warm_starts_csv(const std::string& path, const std::vector<Profile>& profiles) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(profiles.size());
    for (const auto& p : profiles) {
        const auto opt = optimal_hyperparameter(p);
        rows.push_back({p.dataset_id, p.feature, format_double(opt.value),
                        format_double(opt.prediction)});
    }
    write_csv_file(path, {"dataset_id", "feature", "optimal_value", "predicted_rating"}, rows);
}

} // namespace metax
