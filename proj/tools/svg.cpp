#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <mcrit/error.hpp>

namespace mcrit::cli
{

namespace
{

constexpr double width = 800;
constexpr double height = 500;
constexpr double left = 70;
constexpr double right = 20;
constexpr double top = 40;
constexpr double bottom = 50;
constexpr int ticks = 5;

struct Series {
    const char *name;
    const char *color;
    double ConformalSample::*field;
};

struct Range {
    double lo = INFINITY;
    double hi = -INFINITY;

    void add(double x)
    {
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }

    void pad()
    {
        if (!(lo <= hi)) {
            lo = -1;
            hi = 1;
        } else if (lo == hi) {
            lo -= 1;
            hi += 1;
        }
    }
};

std::string coord(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(x) < 1e-12 ? 0.0 : x);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

bool usable(const ConformalSample &s, double value)
{
    return s.metric_state != MetricState::Pole && std::isfinite(s.tau) && std::isfinite(value);
}

} // namespace

std::string render_plot(const std::vector<ConformalSample> &samples, const PlotOptions &options)
{
    if (samples.empty()) {
        fail(ErrorKind::EmptyInput, "nothing to plot");
    }
    std::vector<Series> series{{"S", "#1f77b4", &ConformalSample::S}};
    if (options.with_fluid) {
        series.push_back({"m", "#d62728", &ConformalSample::m_tilde});
        series.push_back({"p", "#2ca02c", &ConformalSample::p_tilde});
    }

    Range xr, yr;
    for (const auto &s : samples) {
        for (const auto &ser : series) {
            if (usable(s, s.*ser.field)) {
                xr.add(s.tau);
                yr.add(s.*ser.field);
            }
        }
        xr.add(s.tau);
    }
    xr.pad();
    yr.pad();
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(width) + "\" height=\"" + coord(height) +
           "\" viewBox=\"0 0 " + coord(width) + " " + coord(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + coord(width) + "\" height=\"" + coord(height) + "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        out += "<text x=\"" + coord(width / 2) + "\" y=\"24\" text-anchor=\"middle\">" + escape(options.title) +
               "</text>\n";
    }

    out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(top + ph) + "\" x2=\"" + coord(left + pw) + "\" y2=\"" +
           coord(top + ph) + "\"/>\n";
    out += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(top) + "\" x2=\"" + coord(left) + "\" y2=\"" +
           coord(top + ph) + "\"/>\n";
    out += "</g>\n";
    out += "<g class=\"ticks\">\n";
    for (int i = 0; i < ticks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / (ticks - 1);
        const double fy = yr.lo + (yr.hi - yr.lo) * i / (ticks - 1);
        const double x = px(fx);
        const double y = py(fy);
        out += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(top + ph) + "\" x2=\"" + coord(x) + "\" y2=\"" +
               coord(top + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + coord(x) + "\" y=\"" + coord(top + ph + 18) + "\" text-anchor=\"middle\">" +
               tick_label(fx) + "</text>\n";
        out += "<line x1=\"" + coord(left - 5) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(left) + "\" y2=\"" +
               coord(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + coord(left - 8) + "\" y=\"" + coord(y + 4) + "\" text-anchor=\"end\">" +
               tick_label(fy) + "</text>\n";
    }
    out += "<text x=\"" + coord(left + pw / 2) + "\" y=\"" + coord(height - 8) + "\" text-anchor=\"middle\">tau</text>\n";
    out += "</g>\n";

    for (const auto &ser : series) {
        out += "<g class=\"series\" id=\"" + std::string(ser.name) + "\" fill=\"none\" stroke=\"" + ser.color +
               "\" stroke-width=\"1.5\">\n";
        std::string points;
        const auto flush = [&] {
            if (!points.empty()) {
                out += "<polyline points=\"" + points + "\"/>\n";
                points.clear();
            }
        };
        for (const auto &s : samples) {
            const double v = s.*ser.field;
            if (!usable(s, v)) {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + coord(px(s.tau)) + "," + coord(py(v));
        }
        flush();
        out += "</g>\n";
    }

    out += "<g class=\"degenerate\" fill=\"black\">\n";
    for (const auto &s : samples) {
        if (s.metric_state == MetricState::Degenerate && std::isfinite(s.tau) && std::isfinite(s.S)) {
            out += "<circle cx=\"" + coord(px(s.tau)) + "\" cy=\"" + coord(py(s.S)) + "\" r=\"3\"/>\n";
        }
    }
    out += "</g>\n";

    out += "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = top + 14 + 16 * static_cast<double>(i);
        out += "<line x1=\"" + coord(left + pw - 60) + "\" y1=\"" + coord(y - 4) + "\" x2=\"" + coord(left + pw - 40) +
               "\" y2=\"" + coord(y - 4) + "\" stroke=\"" + series[i].color + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + coord(left + pw - 34) + "\" y=\"" + coord(y) + "\">" + series[i].name + "</text>\n";
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

} // namespace mcrit::cli
