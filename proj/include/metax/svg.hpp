#pragma once

#include <string>
#include <vector>

namespace metax {

// Minimal deterministic SVG builder: fixed-precision coordinates, no
// timestamps, no external assets. Identical inputs produce identical bytes.
class SvgCanvas {
public:
    SvgCanvas(double width, double height);

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0);
    void rect(double x, double y, double w, double h, const std::string& fill);
    void circle(double cx, double cy, double r, const std::string& fill);
    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& stroke, double stroke_width = 1.5);
    void text(double x, double y, const std::string& content, double font_size = 11.0,
              const std::string& anchor = "start", const std::string& fill = "#222222");

    std::string finish() const;
    void save(const std::string& path) const;

private:
    double width_;
    double height_;
    std::string body_;
};

// Fixed qualitative palette used across all charts.
const std::vector<std::string>& chart_palette();

// Escapes &, <, > for text nodes.
std::string svg_escape(const std::string& s);

} // namespace metax
