/*
 Copyright 2026 The mmashc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "mmashc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mmashc {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Panel {
    double top;
    double height;
    double y_min;
    double y_max;
};

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

void widen(double& lo, double& hi) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.5;
        lo -= pad;
        hi += pad;
        return;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

class Canvas {
public:
    Canvas(double t0, double t1) : t0_(t0), t1_(t1 > t0 ? t1 : t0 + 1.0) {}

    double x(double t) const { return kLeft + (t - t0_) / (t1_ - t0_) * (kWidth - kLeft - kRight); }
    static double y(const Panel& p, double v) {
        return p.top + p.height - (v - p.y_min) / (p.y_max - p.y_min) * p.height;
    }

    void frame(const Panel& p, const std::string& label) {
        const double x0 = kLeft, x1 = kWidth - kRight;
        out_ += "<rect x=\"" + fmt("%.2f", x0) + "\" y=\"" + fmt("%.2f", p.top) + "\" width=\"" +
                fmt("%.2f", x1 - x0) + "\" height=\"" + fmt("%.2f", p.height) +
                "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double v = p.y_min + (p.y_max - p.y_min) * i / 4.0;
            const double yy = y(p, v);
            out_ += "<line x1=\"" + fmt("%.2f", x0) + "\" y1=\"" + fmt("%.2f", yy) + "\" x2=\"" +
                    fmt("%.2f", x1) + "\" y2=\"" + fmt("%.2f", yy) + "\" stroke=\"#ddd\"/>\n";
            out_ += "<text x=\"" + fmt("%.2f", x0 - 6) + "\" y=\"" + fmt("%.2f", yy + 4) +
                    "\" text-anchor=\"end\" font-size=\"11\">" + fmt("%.3g", v) + "</text>\n";
        }
        for (int i = 0; i <= 5; ++i) {
            const double t = t0_ + (t1_ - t0_) * i / 5.0;
            out_ += "<text x=\"" + fmt("%.2f", x(t)) + "\" y=\"" + fmt("%.2f", p.top + p.height + 16) +
                    "\" text-anchor=\"middle\" font-size=\"11\">" + fmt("%.3g", t) + "</text>\n";
        }
        out_ += "<text x=\"20\" y=\"" + fmt("%.2f", p.top + p.height / 2) +
                "\" font-size=\"12\" transform=\"rotate(-90 20 " + fmt("%.2f", p.top + p.height / 2) +
                ")\" text-anchor=\"middle\">" + escape(label) + "</text>\n";
    }

    void polyline(const Panel& p, const std::vector<double>& t, const std::vector<double>& v,
                  const std::string& color, std::size_t max_points) {
        const std::size_t stride = std::max<std::size_t>(1, (t.size() + max_points - 1) / max_points);
        out_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < t.size(); k += stride) {
            append_point(p, t[k], v[k]);
        }
        if ((t.size() - 1) % stride != 0) append_point(p, t.back(), v.back());
        out_ += "\"/>\n";
    }

    void legend_entry(int index, const std::string& label, const std::string& color, double top) {
        const double x0 = kWidth - kRight + 15;
        const double yy = top + 14.0 * index;
        out_ += "<line x1=\"" + fmt("%.2f", x0) + "\" y1=\"" + fmt("%.2f", yy) + "\" x2=\"" +
                fmt("%.2f", x0 + 20) + "\" y2=\"" + fmt("%.2f", yy) + "\" stroke=\"" + color +
                "\" stroke-width=\"2\"/>\n";
        out_ += "<text x=\"" + fmt("%.2f", x0 + 26) + "\" y=\"" + fmt("%.2f", yy + 4) +
                "\" font-size=\"11\">" + escape(label) + "</text>\n";
    }

    std::string& text() { return out_; }

private:
    void append_point(const Panel& p, double t, double v) {
        const double vv = std::clamp(v, p.y_min, p.y_max);
        out_ += fmt("%.2f", x(t)) + "," + fmt("%.2f", y(p, vv)) + " ";
    }

    double t0_;
    double t1_;
    std::string out_;
};

}  // namespace

std::vector<std::string> plotted_blocks(const Trajectory& traj) {
    switch (traj.topology) {
        case Topology::DirectGenerator: return {"y", "y_ss"};
        case Topology::SwappedFilter: return {"varpi", "zeta"};
        case Topology::Hierarchical:
        case Topology::MDirect:
        case Topology::MDirectStabilized: return {"y", "psi"};
        case Topology::MSwapped: return {"xi", "xi_lim"};
        case Topology::Custom: break;
    }
    std::vector<std::string> names;
    for (const auto& b : traj.blocks) names.push_back(b.name);
    return names;
}

std::string render_svg(const Trajectory& traj, const ErrorTrace& error, const std::string& title,
                       std::size_t max_points) {
    const std::vector<double>& t = traj.times;
    const double t0 = t.empty() ? 0.0 : t.front();
    const double t1 = t.empty() ? 1.0 : t.back();
    Canvas canvas(t0, t1);
    max_points = std::max<std::size_t>(max_points, 2);

    std::vector<const TrajectoryBlock*> blocks;
    for (const auto& name : plotted_blocks(traj)) {
        if (traj.has_block(name)) blocks.push_back(&traj.block(name));
    }
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto* b : blocks) {
        if (b->samples.size() == 0) continue;
        lo = first ? b->samples.minCoeff() : std::min(lo, b->samples.minCoeff());
        hi = first ? b->samples.maxCoeff() : std::max(hi, b->samples.maxCoeff());
        first = false;
    }
    widen(lo, hi);
    const Panel top{50.0, 300.0, lo, hi};

    double err_hi = 0.0;
    for (double v : error.output_norm) err_hi = std::max(err_hi, std::isfinite(v) ? v : 0.0);
    double err_lo = 0.0;
    widen(err_lo, err_hi);
    const Panel bottom{400.0, 160.0, 0.0, err_hi};

    std::string& out = canvas.text();
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" viewBox=\"0 0 900 600\">\n";
    out += "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
    out += "<text x=\"450\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) + "</text>\n";
    canvas.frame(top, "outputs");
    canvas.frame(bottom, "output error norm");
    out += "<text x=\"" + fmt("%.2f", (kLeft + kWidth - kRight) / 2) +
           "\" y=\"594\" text-anchor=\"middle\" font-size=\"12\">time [s]</text>\n";

    int channel = 0;
    std::vector<double> column(t.size());
    for (const auto* b : blocks) {
        for (Eigen::Index c = 0; c < b->samples.cols(); ++c) {
            for (std::size_t k = 0; k < t.size(); ++k) column[k] = b->samples(static_cast<Eigen::Index>(k), c);
            const std::string color = kPalette[channel % 8];
            if (!t.empty()) canvas.polyline(top, t, column, color, max_points);
            canvas.legend_entry(channel, b->labels[static_cast<std::size_t>(c)], color, top.top + 10);
            ++channel;
        }
    }
    if (!t.empty() && error.output_norm.size() == t.size()) {
        canvas.polyline(bottom, t, error.output_norm, "#000000", max_points);
        canvas.legend_entry(0, "output error", "#000000", bottom.top + 10);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace mmashc
