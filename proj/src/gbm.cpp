#include "metax/gbm.hpp"

#include "metax/error.hpp"
#include "metax/rng.hpp"
#include "metax/stats.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace metax {

namespace {

constexpr double kMinGain = 1e-12;

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Exact greedy search: for every feature, sort the node's rows by value and
// scan midpoint thresholds, maximizing the variance-reduction gain
// S_L^2/n_L + S_R^2/n_R - S^2/n. Ties resolve to the lowest feature index,
// then the lowest threshold (scan order with strict improvement).
SplitChoice best_split(const DataMatrix& X, const std::vector<double>& residual,
                       const std::vector<std::size_t>& rows, int min_node,
                       std::vector<std::pair<double, double>>& scratch) {
    SplitChoice best;
    const std::size_t n = rows.size();
    if (n < 2 * static_cast<std::size_t>(min_node)) return best;

    double total = 0.0;
    for (const auto r : rows) total += residual[r];

    for (std::size_t f = 0; f < X.n_cols; ++f) {
        scratch.clear();
        for (const auto r : rows) scratch.emplace_back(X.at(r, f), residual[r]);
        std::sort(scratch.begin(), scratch.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (scratch.front().first == scratch.back().first) continue; // constant column

        double left_sum = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            left_sum += scratch[i - 1].second;
            if (scratch[i].first == scratch[i - 1].first) continue;
            const auto n_left = i;
            const auto n_right = n - i;
            if (n_left < static_cast<std::size_t>(min_node) ||
                n_right < static_cast<std::size_t>(min_node))
                continue;
            const double right_sum = total - left_sum;
            const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                                right_sum * right_sum / static_cast<double>(n_right) -
                                total * total / static_cast<double>(n);
            if (gain > best.gain + kMinGain || (!best.found && gain >= kMinGain)) {
                best.found = true;
                best.feature = static_cast<int>(f);
                best.threshold = (scratch[i - 1].first + scratch[i].first) / 2.0;
                best.gain = gain;
            }
        }
    }
    return best;
}

void grow_node(Tree& tree, int node_index, const DataMatrix& X,
               const std::vector<double>& residual, std::vector<std::size_t> rows, int depth,
               const FitParams& params, std::vector<std::pair<double, double>>& scratch) {
    double sum = 0.0;
    for (const auto r : rows) sum += residual[r];
    tree.nodes[node_index].value = sum / static_cast<double>(rows.size());

    if (depth >= params.max_depth) return;
    const auto split = best_split(X, residual, rows, params.min_node, scratch);
    if (!split.found) return;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (const auto r : rows) {
        if (X.at(r, static_cast<std::size_t>(split.feature)) < split.threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = static_cast<int>(tree.nodes.size());
    const int right = left + 1;
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    tree.nodes[node_index].feature = split.feature;
    tree.nodes[node_index].threshold = split.threshold;
    tree.nodes[node_index].left = left;
    tree.nodes[node_index].right = right;
    grow_node(tree, left, X, residual, std::move(left_rows), depth + 1, params, scratch);
    grow_node(tree, right, X, residual, std::move(right_rows), depth + 1, params, scratch);
}

nlohmann::json node_to_json(const Tree& tree, int index) {
    const auto& n = tree.nodes[index];
    if (n.is_leaf()) return nlohmann::json{{"v", n.value}};
    return nlohmann::json{{"f", n.feature},
                          {"t", n.threshold},
                          {"l", node_to_json(tree, n.left)},
                          {"r", node_to_json(tree, n.right)}};
}

int node_from_json(const nlohmann::json& j, Tree& tree) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (j.contains("v")) {
        tree.nodes[index].value = j.at("v").get<double>();
        return index;
    }
    tree.nodes[index].feature = j.at("f").get<int>();
    tree.nodes[index].threshold = j.at("t").get<double>();
    const int left = node_from_json(j.at("l"), tree);
    tree.nodes[index].left = left;
    const int right = node_from_json(j.at("r"), tree);
    tree.nodes[index].right = right;
    return index;
}

} // namespace

int Tree::depth() const {
    // iterative depth over the pool
    std::vector<int> depth_of(nodes.size(), 0);
    int out = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nodes[i].is_leaf()) {
            depth_of[nodes[i].left] = depth_of[i] + 1;
            depth_of[nodes[i].right] = depth_of[i] + 1;
        } else {
            out = std::max(out, depth_of[i]);
        }
    }
    return out;
}

void FitParams::validate() const {
    if (n_trees < 1 || n_trees > 100000)
        throw ValidationError("fit: n_trees must be in [1,100000]");
    if (!(learn_rate > 0.0 && learn_rate <= 1.0))
        throw ValidationError("fit: learn_rate must be in (0,1]");
    if (max_depth < 1) throw ValidationError("fit: max_depth must be >= 1");
    if (min_node < 1) throw ValidationError("fit: min_node must be >= 1");
    if (!(subsample > 0.0 && subsample <= 1.0))
        throw ValidationError("fit: subsample must be in (0,1]");
}

double BoostedEnsemble::predict(std::span<const double> x) const {
    if (x.size() != feature_names.size())
        throw DimensionError("predict: expected " + std::to_string(feature_names.size()) +
                             " features, got " + std::to_string(x.size()));
    for (const double v : x)
        if (!std::isfinite(v)) throw ValidationError("predict: non-finite feature value");
    double acc = 0.0;
    for (const auto& tree : trees) acc += tree.eval(x);
    return base_score + learn_rate * acc;
}

std::vector<double> BoostedEnsemble::predict_batch(const DataMatrix& X) const {
    if (X.n_cols != feature_names.size())
        throw DimensionError("predict_batch: expected " + std::to_string(feature_names.size()) +
                             " features, got " + std::to_string(X.n_cols));
    std::vector<double> out(X.n_rows);
    for (std::size_t r = 0; r < X.n_rows; ++r) out[r] = predict(X.row(r));
    return out;
}

std::size_t BoostedEnsemble::feature_use_count(std::size_t feature) const {
    std::size_t count = 0;
    for (const auto& tree : trees)
        for (const auto& node : tree.nodes)
            if (!node.is_leaf() && node.feature == static_cast<int>(feature)) ++count;
    return count;
}

std::string BoostedEnsemble::to_json() const {
    nlohmann::json j;
    j["base_score"] = base_score;
    j["learn_rate"] = learn_rate;
    j["max_depth"] = max_depth;
    j["feature_names"] = feature_names;
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& tree : trees) jt.push_back(node_to_json(tree, 0));
    j["trees"] = std::move(jt);
    return j.dump();
}

BoostedEnsemble BoostedEnsemble::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BoostedEnsemble model;
    model.base_score = j.at("base_score").get<double>();
    model.learn_rate = j.at("learn_rate").get<double>();
    model.max_depth = j.at("max_depth").get<int>();
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& jt : j.at("trees")) {
        Tree tree;
        node_from_json(jt, tree);
        model.trees.push_back(std::move(tree));
    }
    return model;
}

void BoostedEnsemble::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write model file: " + path);
    out << to_json() << '\n';
    if (!out) throw ValidationError("write failed: " + path);
}

BoostedEnsemble BoostedEnsemble::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

BoostedEnsemble fit(const DataMatrix& X, std::span<const double> y, const FitParams& params,
                    std::vector<std::string> feature_names) {
    params.validate();
    if (X.n_rows < 2) throw ValidationError("fit: need at least 2 rows");
    if (X.n_rows != y.size()) throw DimensionError("fit: row/target count mismatch");
    for (const double v : X.values)
        if (!std::isfinite(v)) throw ValidationError("fit: non-finite feature value");
    for (const double t : y)
        if (!std::isfinite(t)) throw ValidationError("fit: non-finite target value");

    BoostedEnsemble model;
    model.learn_rate = params.learn_rate;
    model.max_depth = params.max_depth;
    if (feature_names.empty()) {
        for (std::size_t f = 0; f < X.n_cols; ++f)
            model.feature_names.push_back("x" + std::to_string(f));
    } else {
        if (feature_names.size() != X.n_cols)
            throw DimensionError("fit: feature name count does not match matrix width");
        model.feature_names = std::move(feature_names);
    }
    model.base_score = mean(y);

    std::vector<double> prediction(X.n_rows, model.base_score);
    std::vector<double> residual(X.n_rows);
    Rng rng(params.seed);
    std::vector<std::pair<double, double>> scratch;
    scratch.reserve(X.n_rows);

    const auto sample_size = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(params.subsample * static_cast<double>(X.n_rows))));

    for (int round = 0; round < params.n_trees; ++round) {
        for (std::size_t r = 0; r < X.n_rows; ++r) residual[r] = y[r] - prediction[r];

        std::vector<std::size_t> rows;
        if (sample_size >= X.n_rows) {
            rows.resize(X.n_rows);
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        } else {
            auto perm = rng.permutation(X.n_rows);
            rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(sample_size));
            std::sort(rows.begin(), rows.end());
        }

        Tree tree;
        tree.nodes.emplace_back();
        grow_node(tree, 0, X, residual, std::move(rows), 0, params, scratch);

        if (tree.nodes.size() == 1 && std::abs(tree.nodes[0].value) <= 1e-15)
            break; // no gain anywhere and nothing left to shift

        for (std::size_t r = 0; r < X.n_rows; ++r)
            prediction[r] += params.learn_rate * tree.eval(X.row(r));
        model.trees.push_back(std::move(tree));
    }
    return model;
}

} // namespace metax
