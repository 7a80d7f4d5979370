#pragma once

#include <string>

namespace metax {

// Static chart renderers. Each consumes one of the pipeline's report files
// and writes a standalone SVG, so plots can be regenerated without
// recomputing the analysis.

void render_importance_svg(const std::string& importance_csv, const std::string& svg_path,
                           int top_n = 15);
// pairwise=true draws two-way records (feature_b nonempty), otherwise the
// overall-propensity records.
void render_interactions_svg(const std::string& interactions_csv, const std::string& svg_path,
                             int top_n = 15, bool pairwise = true);
void render_triplot_svg(const std::string& triplot_json, const std::string& svg_path);
void render_profiles_svg(const std::string& profiles_csv, const std::string& svg_path);
void render_influence_svg(const std::string& influence_csv,
                          const std::string& influence_profiles_csv,
                          const std::string& svg_path);

} // namespace metax
