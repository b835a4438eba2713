#pragma once

// Static plots of the metric tables. Plots only ever read metrics.csv, and the
// companion CSV repeats the plotted cells exactly as they appear there.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppswarm {

/// One data row of metrics.csv, kept as text so values pass through untouched.
struct MetricRow {
    std::string experiment, pair, function;
    std::size_t dimension = 0;
    std::size_t checkpoint = 0;
    std::string metric;
    std::string value;
    std::string tie_count;
};

inline std::vector<MetricRow> read_metrics_csv(std::istream& in)
{
    std::vector<MetricRow> rows;
    std::string line;
    if (!std::getline(in, line))
        return rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 8)
            throw std::runtime_error("metrics.csv: malformed row: " + line);
        rows.push_back({f[0], f[1], f[2], std::stoul(f[3]), std::stoul(f[4]), f[5], f[6], f[7]});
    }
    return rows;
}

enum class PlotKind { winning, relerr };

struct Series {
    std::string name;
    bool dashed = false;
    std::vector<const MetricRow*> points; // ascending checkpoint
};

struct Panel {
    std::size_t dimension = 0;
    std::vector<Series> series;
};

/// Group the aggregate rows of one pair into per-dimension panels.
inline std::vector<Panel> build_panels(const std::vector<MetricRow>& rows, PlotKind kind,
                                       const std::string& pair)
{
    const auto colon = pair.find(':');
    const std::string a = pair.substr(0, colon), b = colon == std::string::npos ? "" : pair.substr(colon + 1);
    std::map<std::size_t, Panel> panels;
    for (const auto& r : rows) {
        if (r.pair != pair || r.function != "ALL")
            continue;
        auto& p = panels[r.dimension];
        p.dimension = r.dimension;
        if (p.series.empty()) {
            if (kind == PlotKind::winning)
                p.series = {{"P(" + b + " beats " + a + ")", false, {}}};
            else
                p.series = {{"RE " + a, true, {}}, {"RE " + b, false, {}}};
        }
        if (kind == PlotKind::winning && r.metric == "winning_proportion")
            p.series[0].points.push_back(&r);
        else if (kind == PlotKind::relerr && r.metric == "relerr_a")
            p.series[0].points.push_back(&r);
        else if (kind == PlotKind::relerr && r.metric == "relerr_b")
            p.series[1].points.push_back(&r);
    }
    std::vector<Panel> out;
    for (auto& [d, p] : panels) {
        for (auto& s : p.series)
            std::sort(s.points.begin(), s.points.end(),
                      [](const MetricRow* x, const MetricRow* y) { return x->checkpoint < y->checkpoint; });
        out.push_back(std::move(p));
    }
    return out;
}

/// Companion table: dimension,series,checkpoint,value.
inline std::string panels_csv(const std::vector<Panel>& panels)
{
    std::ostringstream out;
    out << "dimension,series,checkpoint,value\n";
    for (const auto& p : panels)
        for (const auto& s : p.series)
            for (const auto* r : s.points)
                out << p.dimension << ',' << s.name << ',' << r->checkpoint << ',' << r->value << '\n';
    return out.str();
}

/// SVG with one panel per dimension; checkpoint axis log-scaled when all checkpoints are positive.
inline std::string panels_svg(const std::vector<Panel>& panels, PlotKind kind, const std::string& title)
{
    constexpr double pw = 260, ph = 220, ml = 50, mr = 15, mt = 40, mb = 45;
    const double width = std::max<std::size_t>(1, panels.size()) * (pw + ml + mr);
    const double height = ph + mt + mb + 30;

    std::size_t tmin = SIZE_MAX, tmax = 0;
    for (const auto& p : panels)
        for (const auto& s : p.series)
            for (const auto* r : s.points) {
                tmin = std::min(tmin, r->checkpoint);
                tmax = std::max(tmax, r->checkpoint);
            }
    if (tmin == SIZE_MAX)
        tmin = tmax = 0;
    const bool logx = tmin > 0;
    auto xmap = [&](std::size_t t) {
        const double lo = logx ? std::log10(static_cast<double>(tmin)) : static_cast<double>(tmin);
        const double hi = logx ? std::log10(static_cast<double>(tmax)) : static_cast<double>(tmax);
        const double v = logx ? std::log10(static_cast<double>(t)) : static_cast<double>(t);
        return hi > lo ? (v - lo) / (hi - lo) * pw : pw / 2;
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    const char* colors[] = {"#1f4e9c", "#c0392b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"8\" y=\"18\" font-size=\"14\">" << title << "</text>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& p = panels[pi];
        const double ox = pi * (pw + ml + mr) + ml, oy = mt;
        svg << "<g>\n";
        svg << "<text x=\"" << num(ox + pw / 2 - 15) << "\" y=\"" << num(oy - 6) << "\">d = "
            << p.dimension << "</text>\n";
        svg << "<rect x=\"" << num(ox) << "\" y=\"" << num(oy) << "\" width=\"" << num(pw)
            << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";
        for (const double yv : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double y = oy + ph - yv * ph;
            svg << "<line x1=\"" << num(ox) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ox + pw)
                << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
            svg << "<text x=\"" << num(ox - 30) << "\" y=\"" << num(y + 4) << "\">" << num(yv)
                << "</text>\n";
        }
        if (kind == PlotKind::winning) {
            const double y = oy + ph / 2;
            svg << "<line x1=\"" << num(ox) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ox + pw)
                << "\" y2=\"" << num(y) << "\" stroke=\"#999\" stroke-dasharray=\"2,3\"/>\n";
        }
        std::vector<std::size_t> ticks;
        for (const auto& s : p.series)
            for (const auto* r : s.points)
                if (std::find(ticks.begin(), ticks.end(), r->checkpoint) == ticks.end())
                    ticks.push_back(r->checkpoint);
        for (const auto t : ticks)
            svg << "<text x=\"" << num(ox + xmap(t) - 10) << "\" y=\"" << num(oy + ph + 15)
                << "\" font-size=\"9\">" << t << "</text>\n";
        svg << "<text x=\"" << num(ox + pw / 2 - 30) << "\" y=\"" << num(oy + ph + 32)
            << "\">iteration" << (logx ? " (log)" : "") << "</text>\n";

        for (std::size_t si = 0; si < p.series.size(); ++si) {
            const auto& s = p.series[si];
            const char* color = colors[si % 2];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\""
                << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
            for (const auto* r : s.points) {
                const double v = std::stod(r->value);
                svg << num(ox + xmap(r->checkpoint)) << ',' << num(oy + ph - v * ph) << ' ';
            }
            svg << "\"/>\n";
            for (const auto* r : s.points) {
                const double v = std::stod(r->value);
                svg << "<circle cx=\"" << num(ox + xmap(r->checkpoint)) << "\" cy=\""
                    << num(oy + ph - v * ph) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            }
            const double ly = oy + ph + 44;
            const double lx = ox + si * 130;
            svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
                << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.8\""
                << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
            svg << "<text x=\"" << num(lx + 24) << "\" y=\"" << num(ly + 4) << "\">" << s.name
                << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace ppswarm
