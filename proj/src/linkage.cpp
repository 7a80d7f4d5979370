#include "metax/linkage.hpp"

#include "metax/error.hpp"
#include "metax/parallel.hpp"
#include "metax/stats.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace metax {

namespace {

nlohmann::json node_to_json(const Dendrogram& d, int index) {
    const auto& node = d.nodes[index];
    nlohmann::json j;
    nlohmann::json members = nlohmann::json::array();
    for (const int m : node.members) members.push_back(d.leaf_names[m]);
    j["members"] = std::move(members);
    j["height"] = node.height;
    if (!std::isnan(node.importance)) j["importance"] = node.importance;
    if (node.left >= 0) {
        j["children"] = nlohmann::json::array({node_to_json(d, node.left),
                                               node_to_json(d, node.right)});
    }
    return j;
}

} // namespace

std::string Dendrogram::to_json() const {
    if (nodes.empty()) return "{}";
    return node_to_json(*this, root()).dump(2);
}

Dendrogram correlation_linkage(const DataMatrix& X, const std::vector<std::string>& column_names,
                               const std::vector<std::string>& features, CorrelationKind kind,
                               std::vector<std::string>* excluded_constant) {
    if (features.size() < 2)
        throw ValidationError("correlation_linkage: need at least 2 features");

    // Resolve columns and drop constants.
    std::vector<std::size_t> cols;
    std::vector<std::string> names;
    for (const auto& f : features) {
        std::size_t c = X.n_cols;
        for (std::size_t i = 0; i < column_names.size(); ++i)
            if (column_names[i] == f) { c = i; break; }
        if (c == X.n_cols) throw ValidationError("correlation_linkage: unknown column '" + f + "'");
        const auto values = X.column(c);
        if (variance(values) == 0.0) {
            if (excluded_constant) excluded_constant->push_back(f);
            continue;
        }
        cols.push_back(c);
        names.push_back(f);
    }
    if (names.size() < 2)
        throw ValidationError("correlation_linkage: fewer than 2 non-constant features remain");

    const std::size_t n = names.size();
    // Column ranks (or raw values) for the correlation.
    std::vector<std::vector<double>> series(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto values = X.column(cols[i]);
        series[i] = kind == CorrelationKind::Spearman ? average_ranks(values) : std::move(values);
    }

    // Active cluster list: distances kept as a full symmetric matrix.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double rho = pearson(series[i], series[j]);
            dist[i][j] = dist[j][i] = 1.0 - std::abs(rho);
        }

    Dendrogram d;
    d.leaf_names = names;
    d.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.nodes[i].members = {static_cast<int>(i)};

    std::vector<int> active; // node index per active cluster, creation order
    std::vector<std::vector<double>> cdist = dist;
    for (std::size_t i = 0; i < n; ++i) active.push_back(static_cast<int>(i));

    while (active.size() > 1) {
        // Lowest distance; ties resolve to the earliest (i, j) pair in
        // creation order.
        std::size_t bi = 0, bj = 1;
        double best = cdist[0][1];
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j)
                if (cdist[i][j] < best) {
                    best = cdist[i][j];
                    bi = i;
                    bj = j;
                }

        DendrogramNode merged;
        merged.left = active[bi];
        merged.right = active[bj];
        merged.height = best;
        merged.members = d.nodes[active[bi]].members;
        merged.members.insert(merged.members.end(), d.nodes[active[bj]].members.begin(),
                              d.nodes[active[bj]].members.end());
        std::sort(merged.members.begin(), merged.members.end());
        const int merged_index = static_cast<int>(d.nodes.size());
        d.nodes.push_back(std::move(merged));

        // Complete linkage: the merged cluster's distance to any other is
        // the max of its parts' distances. The merged cluster replaces slot
        // bi; slot bj is removed.
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj) continue;
            const double dm = std::max(cdist[bi][k], cdist[bj][k]);
            cdist[bi][k] = cdist[k][bi] = dm;
        }
        active[bi] = merged_index;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        for (auto& row : cdist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
        cdist.erase(cdist.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return d;
}

Dendrogram triplot(const PredictFn& predict, const DataMatrix& X, std::span<const double> y,
                   const std::vector<std::string>& column_names,
                   const std::vector<std::string>& features, const ImportanceOptions& opt,
                   CorrelationKind kind) {
    if (opt.replications < 1) throw ValidationError("triplot: B must be >= 1");
    auto d = correlation_linkage(X, column_names, features, kind);

    const auto perms = make_permutations(X.n_rows, opt.replications, opt.seed);
    const double baseline = mse(predict(X), y);
    parallel_for(d.nodes.size(), opt.jobs, [&](std::size_t n) {
        auto& node = d.nodes[n];
        std::vector<std::size_t> cols;
        cols.reserve(node.members.size());
        for (const int m : node.members) {
            const auto& name = d.leaf_names[m];
            for (std::size_t i = 0; i < column_names.size(); ++i)
                if (column_names[i] == name) { cols.push_back(i); break; }
        }
        const auto stats = joint_dropout(predict, X, y, cols, perms);
        node.importance = stats.permuted_loss_mean - baseline;
    });
    return d;
}

} // namespace metax
