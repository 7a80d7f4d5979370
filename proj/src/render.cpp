#include "metax/render.hpp"

#include "metax/csv.hpp"
#include "metax/error.hpp"
#include "metax/svg.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace metax {

namespace {

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string group_color(const std::string& group) {
    if (group == "hyperparameter") return chart_palette()[0];
    if (group == "landmarker") return chart_palette()[1];
    if (group == "statistical") return chart_palette()[2];
    return chart_palette()[8];
}

// Shared horizontal bar chart: labels on the left, values growing right.
void bar_chart(const std::string& svg_path, const std::string& title,
               const std::vector<std::tuple<std::string, double, std::string>>& bars) {
    const double label_width = 280.0;
    const double bar_area = 420.0;
    const double row_height = 22.0;
    const double top = 40.0;
    const double height = top + row_height * static_cast<double>(bars.size()) + 20.0;

    SvgCanvas canvas(label_width + bar_area + 60.0, height);
    canvas.text(10.0, 22.0, title, 14.0);

    double max_value = 0.0;
    for (const auto& [label, value, color] : bars) max_value = std::max(max_value, value);
    if (max_value <= 0.0) max_value = 1.0;

    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& [label, value, color] = bars[i];
        const double y = top + row_height * static_cast<double>(i);
        const double w = std::max(0.0, value) / max_value * bar_area;
        canvas.text(label_width - 6.0, y + 14.0, label, 11.0, "end");
        canvas.rect(label_width, y + 3.0, w, row_height - 8.0, color);
        canvas.text(label_width + w + 4.0, y + 14.0, short_num(value), 10.0);
    }
    canvas.line(label_width, top - 4.0, label_width, height - 16.0, "#555555");
    canvas.save(svg_path);
}

struct TriplotNode {
    std::vector<std::string> members;
    double height = 0.0;
    double importance = 0.0;
    std::vector<TriplotNode> children;
};

TriplotNode parse_triplot(const nlohmann::json& j) {
    TriplotNode node;
    node.members = j.at("members").get<std::vector<std::string>>();
    node.height = j.at("height").get<double>();
    if (j.contains("importance")) node.importance = j.at("importance").get<double>();
    if (j.contains("children"))
        for (const auto& c : j.at("children")) node.children.push_back(parse_triplot(c));
    return node;
}

void leaf_order(const TriplotNode& node, std::vector<const TriplotNode*>& leaves) {
    if (node.children.empty()) {
        leaves.push_back(&node);
        return;
    }
    for (const auto& c : node.children) leaf_order(c, leaves);
}

double max_importance(const TriplotNode& node) {
    double best = std::abs(node.importance);
    for (const auto& c : node.children) best = std::max(best, max_importance(c));
    return best;
}

// Draws the merge tree; returns the x position of the subtree root.
double draw_dendrogram(SvgCanvas& canvas, const TriplotNode& node,
                       std::map<const TriplotNode*, double>& leaf_x, double y_base,
                       double y_scale, double imp_scale, double bar_base) {
    if (node.children.empty()) {
        const double x = leaf_x.at(&node);
        // leaf importance bar in the lower panel
        const double h = std::abs(node.importance) * imp_scale;
        canvas.rect(x - 7.0, bar_base - h, 14.0, h, chart_palette()[0]);
        return x;
    }
    std::vector<double> xs;
    for (const auto& c : node.children)
        xs.push_back(draw_dendrogram(canvas, c, leaf_x, y_base, y_scale, imp_scale, bar_base));
    const double y = y_base - node.height * y_scale;
    double child_y0 = y_base - node.children[0].height * y_scale;
    double child_y1 = y_base - node.children[1].height * y_scale;
    if (node.children[0].children.empty()) child_y0 = y_base;
    if (node.children[1].children.empty()) child_y1 = y_base;
    canvas.line(xs[0], child_y0, xs[0], y, "#555555");
    canvas.line(xs[1], child_y1, xs[1], y, "#555555");
    canvas.line(xs[0], y, xs[1], y, "#555555");
    const double xm = (xs[0] + xs[1]) / 2.0;
    canvas.text(xm + 3.0, y - 2.0, short_num(node.importance), 8.0, "start", "#9c2f2f");
    return xm;
}

} // namespace

void render_importance_svg(const std::string& importance_csv, const std::string& svg_path,
                           int top_n) {
    const auto csv = read_csv_file(importance_csv);
    std::vector<std::tuple<std::string, double, std::string>> bars;
    for (std::size_t r = 0; r < csv.n_rows() && static_cast<int>(r) < top_n; ++r) {
        std::string label = csv.cell(r, 0);
        if (label.size() > 40) label = label.substr(0, 37) + "...";
        bars.emplace_back(label, csv.numeric(r, csv.column_index("dropout_mean")),
                          group_color(csv.cell(r, csv.column_index("group"))));
    }
    bar_chart(svg_path, "Permutation importance (loss dropout)", bars);
}

void render_interactions_svg(const std::string& interactions_csv, const std::string& svg_path,
                             int top_n, bool pairwise) {
    const auto csv = read_csv_file(interactions_csv);
    std::vector<std::tuple<std::string, double, std::string>> bars;
    for (std::size_t r = 0; r < csv.n_rows() && static_cast<int>(bars.size()) < top_n; ++r) {
        const std::string a = csv.cell(r, 0);
        const std::string b = csv.cell(r, 1);
        if (pairwise != !b.empty()) continue;
        const std::string label = b.empty() ? a : a + " : " + b;
        bars.emplace_back(label, csv.numeric(r, csv.column_index("h_squared")),
                          group_color(csv.cell(r, csv.column_index("group_a"))));
    }
    bar_chart(svg_path,
              pairwise ? "Two-way interaction strength (Friedman H^2)"
                       : "Overall interaction propensity (Friedman H^2)",
              bars);
}

void render_triplot_svg(const std::string& triplot_json, const std::string& svg_path) {
    std::ifstream in(triplot_json);
    if (!in) throw ValidationError("cannot open file: " + triplot_json);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto root = parse_triplot(nlohmann::json::parse(buf.str()));

    std::vector<const TriplotNode*> leaves;
    leaf_order(root, leaves);

    const double col_width = 26.0;
    const double width = std::max(420.0, 60.0 + col_width * static_cast<double>(leaves.size()));
    const double tree_base = 300.0;
    const double bar_base = 420.0;
    const double height = bar_base + 110.0;

    SvgCanvas canvas(width, height);
    canvas.text(10.0, 22.0, "Feature correlation structure and group importance", 14.0);

    std::map<const TriplotNode*, double> leaf_x;
    for (std::size_t i = 0; i < leaves.size(); ++i)
        leaf_x[leaves[i]] = 40.0 + col_width * (static_cast<double>(i) + 0.5);

    const double y_scale = (tree_base - 50.0) / 1.0; // heights live in [0,1]
    const double imp = max_importance(root);
    const double imp_scale = (bar_base - tree_base - 20.0) / (imp > 0.0 ? imp : 1.0);

    draw_dendrogram(canvas, root, leaf_x, tree_base, y_scale, imp_scale, bar_base);

    for (const auto* leaf : leaves) {
        // rotate-free label: characters stacked via small font under the bar
        canvas.text(leaf_x.at(leaf), bar_base + 12.0, leaf->members.front().substr(0, 3), 8.0,
                    "middle");
        canvas.text(leaf_x.at(leaf), bar_base + 22.0,
                    leaf->members.front().size() > 3 ? leaf->members.front().substr(3, 3) : "",
                    8.0, "middle");
    }
    canvas.line(30.0, tree_base, width - 20.0, tree_base, "#999999", 0.5);
    canvas.save(svg_path);
}

void render_profiles_svg(const std::string& profiles_csv, const std::string& svg_path) {
    const auto csv = read_csv_file(profiles_csv);
    const auto c_ds = csv.column_index("dataset_id");
    const auto c_feat = csv.column_index("feature");
    const auto c_x = csv.column_index("grid_value");
    const auto c_y = csv.column_index("prediction");
    const auto c_cluster = csv.column_index("cluster");
    if (csv.n_rows() == 0) throw ValidationError(profiles_csv + ": no profile rows");

    const std::string feature = csv.cell(0, c_feat);
    const bool log_x = feature == "shrinkage" || feature == "n.trees";

    struct Series {
        std::string cluster;
        std::vector<std::pair<double, double>> points;
    };
    std::map<std::string, Series> series; // dataset -> curve
    std::set<std::string> clusters;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        double x = csv.numeric(r, c_x);
        if (log_x) x = std::log10(x);
        const double y = csv.numeric(r, c_y);
        auto& s = series[csv.cell(r, c_ds)];
        s.cluster = csv.cell(r, c_cluster);
        s.points.emplace_back(x, y);
        clusters.insert(s.cluster);
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;

    const double width = 640.0, height = 420.0;
    const double ml = 60.0, mr = 20.0, mt = 40.0, mb = 50.0;
    SvgCanvas canvas(width, height);
    canvas.text(10.0, 22.0, "Ceteris paribus profiles: " + feature + (log_x ? " (log10 x)" : ""),
                14.0);
    auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

    std::map<std::string, std::string> cluster_color;
    std::size_t ci = 0;
    for (const auto& c : clusters) cluster_color[c] = chart_palette()[ci++ % chart_palette().size()];

    // thin per-dataset curves
    std::map<std::string, std::vector<std::vector<std::pair<double, double>>>> by_cluster;
    for (const auto& [ds, s] : series) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [x, y] : s.points) pts.emplace_back(sx(x), sy(y));
        canvas.polyline(pts, cluster_color[s.cluster], 0.8);
        by_cluster[s.cluster].push_back(s.points);
    }
    // thick aggregated curve per cluster (pointwise mean)
    for (const auto& [cluster, curves] : by_cluster) {
        const auto& first = curves.front();
        std::vector<std::pair<double, double>> agg(first.size());
        for (std::size_t g = 0; g < first.size(); ++g) {
            double acc = 0.0;
            for (const auto& curve : curves) acc += curve[g].second;
            agg[g] = {sx(first[g].first), sy(acc / static_cast<double>(curves.size()))};
        }
        canvas.polyline(agg, cluster_color[cluster], 3.0);
    }

    canvas.line(ml, height - mb, width - mr, height - mb, "#555555");
    canvas.line(ml, mt, ml, height - mb, "#555555");
    canvas.text(ml - 6.0, sy(y_lo) + 4.0, short_num(y_lo), 9.0, "end");
    canvas.text(ml - 6.0, sy(y_hi) + 4.0, short_num(y_hi), 9.0, "end");
    canvas.text(sx(x_lo), height - mb + 16.0, short_num(x_lo), 9.0, "middle");
    canvas.text(sx(x_hi), height - mb + 16.0, short_num(x_hi), 9.0, "middle");

    double legend_x = ml + 10.0;
    for (const auto& [cluster, color] : cluster_color) {
        canvas.rect(legend_x, mt - 14.0, 12.0, 12.0, color);
        canvas.text(legend_x + 16.0, mt - 4.0, cluster.empty() ? "(none)" : cluster, 10.0);
        legend_x += 70.0;
    }
    canvas.save(svg_path);
}

void render_influence_svg(const std::string& influence_csv,
                          const std::string& influence_profiles_csv,
                          const std::string& svg_path) {
    const auto csv = read_csv_file(influence_csv);
    const auto c_id = csv.column_index("removed_dataset_id");
    const auto c_d = csv.column_index("cooks_distance");
    const auto c_shift = csv.column_index("optimal_shift_log");

    const double width = 900.0, height = 420.0;
    SvgCanvas canvas(width, height);
    canvas.text(10.0, 22.0, "Dataset influence: Cook's distance vs optimal-value shift", 14.0);

    // Panel A: scatter
    const double aml = 70.0, amr = 480.0, amt = 50.0, amb = 50.0;
    double x_hi = 0.0, y_hi = 0.0;
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        x_hi = std::max(x_hi, csv.numeric(r, c_shift));
        y_hi = std::max(y_hi, csv.numeric(r, c_d));
    }
    if (x_hi <= 0.0) x_hi = 1.0;
    if (y_hi <= 0.0) y_hi = 1.0;
    auto sax = [&](double x) { return aml + x / x_hi * (width - amr - aml); };
    auto say = [&](double y) { return height - amb - y / y_hi * (height - amt - amb); };
    for (std::size_t r = 0; r < csv.n_rows(); ++r) {
        const double x = sax(csv.numeric(r, c_shift));
        const double y = say(csv.numeric(r, c_d));
        canvas.circle(x, y, 4.0, chart_palette()[3]);
        canvas.text(x + 6.0, y + 4.0, csv.cell(r, c_id), 9.0);
    }
    canvas.line(aml, height - amb, width - amr, height - amb, "#555555");
    canvas.line(aml, amt, aml, height - amb, "#555555");
    canvas.text((aml + width - amr) / 2.0, height - 14.0, "optimal shift (grid scale)", 10.0,
                "middle");
    canvas.text(aml - 40.0, amt - 10.0, "Cook's D", 10.0);
    canvas.text(aml - 6.0, say(y_hi) + 4.0, short_num(y_hi), 9.0, "end");
    canvas.text(sax(x_hi), height - amb + 14.0, short_num(x_hi), 9.0, "middle");

    // Panel B: profile overlay for the full model and selected reduced ones
    std::ifstream probe(influence_profiles_csv);
    if (probe) {
        const auto pcsv = read_csv_file(influence_profiles_csv);
        const auto p_id = pcsv.column_index("model_id");
        const auto p_x = pcsv.column_index("grid_value");
        const auto p_y = pcsv.column_index("prediction");
        const std::string feature = pcsv.cell(0, pcsv.column_index("feature"));
        const bool log_x = feature == "shrinkage" || feature == "n.trees";

        std::map<std::string, std::vector<std::pair<double, double>>> curves;
        double bx_lo = 1e300, bx_hi = -1e300, by_lo = 1e300, by_hi = -1e300;
        for (std::size_t r = 0; r < pcsv.n_rows(); ++r) {
            double x = pcsv.numeric(r, p_x);
            if (log_x) x = std::log10(x);
            const double y = pcsv.numeric(r, p_y);
            curves[pcsv.cell(r, p_id)].emplace_back(x, y);
            bx_lo = std::min(bx_lo, x);
            bx_hi = std::max(bx_hi, x);
            by_lo = std::min(by_lo, y);
            by_hi = std::max(by_hi, y);
        }
        if (bx_hi <= bx_lo) bx_hi = bx_lo + 1.0;
        if (by_hi <= by_lo) by_hi = by_lo + 1.0;
        const double bml = width - amr + 60.0, bmr2 = 20.0;
        auto sbx = [&](double x) {
            return bml + (x - bx_lo) / (bx_hi - bx_lo) * (width - bmr2 - bml);
        };
        auto sby = [&](double y) {
            return height - amb - (y - by_lo) / (by_hi - by_lo) * (height - amt - amb);
        };
        std::size_t ci = 0;
        double legend_y = amt;
        for (const auto& [model_id, pts] : curves) {
            std::vector<std::pair<double, double>> spts;
            for (const auto& [x, y] : pts) spts.emplace_back(sbx(x), sby(y));
            const bool is_full = model_id == "full";
            const auto color = is_full ? std::string("#1f4e9c")
                                       : chart_palette()[4 + ci++ % 5];
            canvas.polyline(spts, color, is_full ? 3.0 : 1.2);
            canvas.rect(bml + 4.0, legend_y, 10.0, 4.0, color);
            canvas.text(bml + 18.0, legend_y + 6.0, model_id, 9.0);
            legend_y += 14.0;
        }
        canvas.line(bml, height - amb, width - bmr2, height - amb, "#555555");
        canvas.line(bml, amt, bml, height - amb, "#555555");
        canvas.text((bml + width - bmr2) / 2.0, height - 14.0,
                    feature + (log_x ? " (log10)" : ""), 10.0, "middle");
    }
    canvas.save(svg_path);
}

} // namespace metax
