#pragma once

#include "text.hpp"

#include <string>
#include <vector>

namespace tempobench::internal {

/// Minimal deterministic SVG writer; all geometry is formatted with the
/// shortest round-trip representation so output files are byte-stable.
class SvgWriter {
public:
    SvgWriter(double width, double height) : width_(width), height_(height) {
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) +
                 "\" height=\"" + format_double(height) + "\" viewBox=\"0 0 " +
                 format_double(width) + " " + format_double(height) + "\">\n";
        body_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double stroke = 1.0, const std::string& dash = "") {
        body_ += "<line x1=\"" + format_double(x1) + "\" y1=\"" + format_double(y1) + "\" x2=\"" +
                 format_double(x2) + "\" y2=\"" + format_double(y2) + "\" stroke=\"" + color +
                 "\" stroke-width=\"" + format_double(stroke) + "\"";
        if (!dash.empty()) {
            body_ += " stroke-dasharray=\"" + dash + "\"";
        }
        body_ += "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& color,
                  double stroke = 1.5) {
        if (points.empty()) {
            return;
        }
        body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                 format_double(stroke) + "\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i > 0) {
                body_ += ' ';
            }
            body_ += format_double(points[i].first) + "," + format_double(points[i].second);
        }
        body_ += "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& color) {
        body_ += "<circle cx=\"" + format_double(cx) + "\" cy=\"" + format_double(cy) + "\" r=\"" +
                 format_double(r) + "\" fill=\"" + color + "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 12.0,
              const std::string& anchor = "start", const std::string& color = "black") {
        body_ += "<text x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
                 "\" font-family=\"sans-serif\" font-size=\"" + format_double(size) +
                 "\" text-anchor=\"" + anchor + "\" fill=\"" + color + "\">" + escape(content) +
                 "</text>\n";
    }

    std::string finish() const { return body_ + "</svg>\n"; }

    double width() const { return width_; }
    double height() const { return height_; }

private:
    static std::string escape(const std::string& raw) {
        std::string out;
        for (const char c : raw) {
            switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
            }
        }
        return out;
    }

    double width_;
    double height_;
    std::string body_;
};

} // namespace tempobench::internal
