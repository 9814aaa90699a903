#include "qxy/grid_io.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qxy/contour.hpp"

namespace qxy {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// printf-style append used by the SVG writer; all call sites pass fixed
// format strings.
#if defined(__GNUC__)
__attribute__((format(printf, 2, 3)))
#endif
void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

nlohmann::json axis_to_json(const Axis& axis) {
    return {{"name", axis.name},
            {"min", axis.min},
            {"max", axis.max},
            {"count", axis.count}};
}

Axis axis_from_json(const nlohmann::json& j) {
    Axis axis;
    axis.name = j.at("name").get<std::string>();
    axis.min = j.at("min").get<double>();
    axis.max = j.at("max").get<double>();
    axis.count = j.at("count").get<int>();
    return axis;
}

// Linear two-ended color ramp: t=0 -> #2166ac, t=1 -> #b2182b, each RGB
// channel interpolated independently.
struct Rgb {
    int r, g, b;
};
constexpr Rgb kRampLow = {0x21, 0x66, 0xac};
constexpr Rgb kRampHigh = {0xb2, 0x18, 0x2b};
constexpr Rgb kSentinelGray = {0xbd, 0xbd, 0xbd};

Rgb ramp_color(double t) {
    const auto mix = [t](int lo, int hi) {
        return static_cast<int>(std::lround(lo + (hi - lo) * t));
    };
    return {mix(kRampLow.r, kRampHigh.r), mix(kRampLow.g, kRampHigh.g),
            mix(kRampLow.b, kRampHigh.b)};
}

void append_color(std::string& out, const Rgb& c) {
    appendf(out, "#%02x%02x%02x", c.r, c.g, c.b);
}

}  // namespace

std::string grid_to_csv(const Grid2D& g) {
    std::string out;
    out.reserve(32 * g.values.size() + 64);
    out += g.axis1.name;
    out += ',';
    out += g.axis2.name;
    out += ",value\n";
    for (int i1 = 0; i1 < g.axis1.count; ++i1) {
        const std::string x1 = fmt17(g.axis1.value(i1));
        for (int i2 = 0; i2 < g.axis2.count; ++i2) {
            const std::size_t idx = g.index(i1, i2);
            out += x1;
            out += ',';
            out += fmt17(g.axis2.value(i2));
            out += ',';
            if (g.status[idx] == CellStatus::Value) {
                out += fmt17(g.values[idx]);
            } else {
                out += "NA";
            }
            out += '\n';
        }
    }
    return out;
}

nlohmann::json grid_to_json(const Grid2D& g) {
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        if (g.status[i] == CellStatus::Value) {
            values.push_back(g.values[i]);
        } else {
            values.push_back(nullptr);
        }
    }
    return {{"quantity", quantity_name(g.quantity)},
            {"axis1", axis_to_json(g.axis1)},
            {"axis2", axis_to_json(g.axis2)},
            {"fixed", g.fixed},
            {"values", std::move(values)},
            {"metadata",
             {{"tool", g.metadata.tool},
              {"version", g.metadata.version},
              {"timestamp", g.metadata.timestamp}}}};
}

Grid2D grid_from_json(const nlohmann::json& j) {
    Grid2D g;
    const std::string token = j.at("quantity").get<std::string>();
    const std::optional<Quantity> q = parse_quantity(token);
    if (!q) {
        throw std::invalid_argument("grid_from_json: unknown quantity \"" +
                                    token + "\"");
    }
    g.quantity = *q;
    g.axis1 = axis_from_json(j.at("axis1"));
    g.axis2 = axis_from_json(j.at("axis2"));
    g.fixed = j.at("fixed").get<std::map<std::string, double>>();

    const nlohmann::json& values = j.at("values");
    const std::size_t expected = static_cast<std::size_t>(g.axis1.count) *
                                 static_cast<std::size_t>(g.axis2.count);
    if (!values.is_array() || values.size() != expected) {
        throw std::invalid_argument(
            "grid_from_json: values length does not match axis counts");
    }
    g.values.reserve(expected);
    g.status.reserve(expected);
    for (const nlohmann::json& v : values) {
        if (v.is_null()) {
            g.values.push_back(0.0);
            g.status.push_back(CellStatus::Undefined);
        } else {
            g.values.push_back(v.get<double>());
            g.status.push_back(CellStatus::Value);
        }
    }

    const nlohmann::json& meta = j.at("metadata");
    g.metadata.tool = meta.at("tool").get<std::string>();
    g.metadata.version = meta.at("version").get<std::string>();
    g.metadata.timestamp = meta.at("timestamp").get<std::string>();
    return g;
}

std::string locus_to_csv(const CrossingLocus& locus) {
    std::string out = "segment," + locus.axis1 + ',' + locus.axis2 + '\n';
    for (std::size_t s = 0; s < locus.polylines.size(); ++s) {
        for (const Point2& p : locus.polylines[s]) {
            out += std::to_string(s);
            out += ',';
            out += fmt17(p[0]);
            out += ',';
            out += fmt17(p[1]);
            out += '\n';
        }
    }
    return out;
}

nlohmann::json locus_to_json(const CrossingLocus& locus) {
    nlohmann::json polylines = nlohmann::json::array();
    for (const Polyline& line : locus.polylines) {
        nlohmann::json points = nlohmann::json::array();
        for (const Point2& p : line) {
            points.push_back({p[0], p[1]});
        }
        polylines.push_back(std::move(points));
    }
    return {{"axis1", locus.axis1},
            {"axis2", locus.axis2},
            {"polylines", std::move(polylines)}};
}

std::string render_heatmap(const Grid2D& g) {
    const int n1 = g.axis1.count;
    const int n2 = g.axis2.count;
    if (n1 < 1 || n2 < 1 ||
        g.values.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2)) {
        throw std::invalid_argument("render_heatmap: malformed grid");
    }

    // Value range over defined cells only.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        if (g.status[i] == CellStatus::Value) {
            lo = std::min(lo, g.values[i]);
            hi = std::max(hi, g.values[i]);
        }
    }
    const bool constant = !(lo < hi);  // also true if every cell is undefined

    const double ml = 70.0, mt = 42.0;
    const double plot_w = 600.0, plot_h = 600.0;
    const double bar_x = ml + plot_w + 24.0, bar_w = 18.0;
    const double width = bar_x + bar_w + 96.0;
    const double height = mt + plot_h + 56.0;
    const double cw = plot_w / n1;
    const double ch = plot_h / n2;

    // Nodes map to cell centers; the same mapping places ticks and contour
    // points so everything lines up.
    const auto px_of = [&](double v) {
        const double t = (g.axis1.max > g.axis1.min)
                             ? (v - g.axis1.min) / (g.axis1.max - g.axis1.min)
                             : 0.5;
        return ml + (t * (n1 - 1) + 0.5) * cw;
    };
    const auto py_of = [&](double v) {
        const double t = (g.axis2.max > g.axis2.min)
                             ? (v - g.axis2.min) / (g.axis2.max - g.axis2.min)
                             : 0.5;
        return mt + plot_h - (t * (n2 - 1) + 0.5) * ch;
    };

    std::string out;
    out.reserve(64 * g.values.size() + 4096);
    appendf(out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
            "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
            width, height, width, height);
    out += "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" "
           "y2=\"0\"><stop offset=\"0\" stop-color=\"";
    append_color(out, kRampLow);
    out += "\"/><stop offset=\"1\" stop-color=\"";
    append_color(out, kRampHigh);
    out += "\"/></linearGradient></defs>\n";
    appendf(out,
            "<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" "
            "fill=\"#ffffff\"/>\n",
            width, height);

    // Title: quantity plus the fixed-parameter echo.
    std::string subtitle;
    for (const auto& [name, value] : g.fixed) {
        if (!subtitle.empty()) subtitle += "  ";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s=%.6g", name.c_str(), value);
        subtitle += buf;
    }
    appendf(out,
            "<text x=\"%.1f\" y=\"20\" font-family=\"sans-serif\" "
            "font-size=\"15\" font-weight=\"bold\">%s</text>\n",
            ml, escape_xml(quantity_name(g.quantity)).c_str());
    appendf(out,
            "<text x=\"%.1f\" y=\"36\" font-family=\"sans-serif\" "
            "font-size=\"11\" fill=\"#555555\">%s</text>\n",
            ml, escape_xml(subtitle).c_str());

    // Cells.
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const std::size_t idx = g.index(i1, i2);
            Rgb c = kSentinelGray;
            if (g.status[idx] == CellStatus::Value) {
                const double t =
                    constant ? 0.5 : (g.values[idx] - lo) / (hi - lo);
                c = ramp_color(t);
            }
            const double x = ml + i1 * cw;
            const double y = mt + plot_h - (i2 + 1) * ch;
            appendf(out,
                    "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" "
                    "height=\"%.3f\" fill=\"",
                    x, y, cw, ch);
            append_color(out, c);
            out += "\"/>\n";
        }
    }

    // Zero-contour overlay for gap grids.
    if (g.quantity == Quantity::Gap) {
        const CrossingLocus locus = crossing_locus_grid(g);
        for (const Polyline& line : locus.polylines) {
            if (line.size() < 2) continue;
            out += "<polyline fill=\"none\" stroke=\"#000000\" "
                   "stroke-width=\"1.5\" points=\"";
            for (const Point2& p : line) {
                appendf(out, "%.2f,%.2f ", px_of(p[0]), py_of(p[1]));
            }
            out += "\"/>\n";
        }
    }

    // Plot frame and axis ticks (min, mid, max per axis).
    appendf(out,
            "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
            "fill=\"none\" stroke=\"#333333\"/>\n",
            ml, mt, plot_w, plot_h);
    const double x_ticks[3] = {g.axis1.min, 0.5 * (g.axis1.min + g.axis1.max),
                               g.axis1.max};
    const double y_ticks[3] = {g.axis2.min, 0.5 * (g.axis2.min + g.axis2.max),
                               g.axis2.max};
    for (double v : x_ticks) {
        appendf(out,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"11\" text-anchor=\"middle\">%.6g</text>\n",
                px_of(v), mt + plot_h + 16.0, v);
    }
    for (double v : y_ticks) {
        appendf(out,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"11\" text-anchor=\"end\">%.6g</text>\n",
                ml - 6.0, py_of(v) + 4.0, v);
    }
    appendf(out,
            "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
            "font-size=\"13\" text-anchor=\"middle\">%s</text>\n",
            ml + plot_w / 2.0, mt + plot_h + 38.0,
            escape_xml(g.axis1.name).c_str());
    appendf(out,
            "<text x=\"16\" y=\"%.1f\" font-family=\"sans-serif\" "
            "font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
            "16 %.1f)\">%s</text>\n",
            mt + plot_h / 2.0, mt + plot_h / 2.0,
            escape_xml(g.axis2.name).c_str());

    // Color-bar.
    if (constant) {
        appendf(out,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"",
                bar_x, mt, bar_w, plot_h);
        append_color(out, ramp_color(0.5));
        out += "\" stroke=\"#333333\"/>\n";
        char label[48];
        if (std::isfinite(lo)) {
            std::snprintf(label, sizeof(label), "constant = %.6g", lo);
        } else {
            std::snprintf(label, sizeof(label), "all undefined");
        }
        appendf(out,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"11\">%s</text>\n",
                bar_x + bar_w + 6.0, mt + plot_h / 2.0, label);
    } else {
        appendf(out,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"url(#ramp)\" stroke=\"#333333\"/>\n",
                bar_x, mt, bar_w, plot_h);
        const double bar_vals[3] = {hi, 0.5 * (lo + hi), lo};
        const double bar_ys[3] = {mt + 10.0, mt + plot_h / 2.0,
                                  mt + plot_h - 2.0};
        for (int k = 0; k < 3; ++k) {
            appendf(out,
                    "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                    "font-size=\"11\">%.6g</text>\n",
                    bar_x + bar_w + 6.0, bar_ys[k], bar_vals[k]);
        }
    }

    out += "</svg>\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) {
        throw IoError("failed while writing '" + path + "'");
    }
}

}  // namespace qxy
