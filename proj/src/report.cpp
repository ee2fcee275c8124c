// Copyright 2026 The vqopt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "vqopt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace vqopt {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::uint64_t first_degeneracy(const SweepResult &sweep) {
    return sweep.setup.problems().front()->ground.degeneracy();
}

const char *const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

class Plot {
  public:
    Plot(double xmin, double xmax, double ymin, double ymax)
        : xmin_(xmin), xmax_(xmax > xmin ? xmax : xmin + 1), ymin_(ymin),
          ymax_(ymax > ymin ? ymax : ymin + 1) {
        out_ << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")"
             << kHeight << R"(" font-family="sans-serif" font-size="12">)" << '\n'
             << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    }

    [[nodiscard]] double px(double x) const {
        return kLeft + (x - xmin_) / (xmax_ - xmin_) * (kWidth - kLeft - kRight);
    }
    [[nodiscard]] double py(double y) const {
        return kHeight - kBottom - (y - ymin_) / (ymax_ - ymin_) * (kHeight - kTop - kBottom);
    }

    void axes(const std::string &xlabel, const std::string &ylabel, double xstep, double ystep) {
        out_ << "<g stroke=\"black\">" << line(px(xmin_), py(ymin_), px(xmax_), py(ymin_))
             << line(px(xmin_), py(ymin_), px(xmin_), py(ymax_)) << "</g>\n";
        for (double x = std::ceil(xmin_ / xstep) * xstep; x <= xmax_ + 1e-9; x += xstep) {
            out_ << line(px(x), py(ymin_), px(x), py(ymin_) + 4) << text(px(x), py(ymin_) + 18, num(x), "middle");
        }
        for (double y = std::ceil(ymin_ / ystep) * ystep; y <= ymax_ + 1e-9; y += ystep) {
            out_ << line(px(xmin_) - 4, py(y), px(xmin_), py(y)) << text(px(xmin_) - 8, py(y) + 4, num(y), "end");
        }
        out_ << text((px(xmin_) + px(xmax_)) / 2, kHeight - 8, xlabel, "middle");
        out_ << "<text transform=\"translate(16," << num((py(ymin_) + py(ymax_)) / 2)
             << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>> &pts, const std::string &color,
                  bool dashed) {
        if (pts.empty()) {
            return;
        }
        out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
             << (dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
        for (const auto &[x, y] : pts) {
            out_ << num(px(x)) << ',' << num(py(y)) << ' ';
        }
        out_ << "\"/>\n";
    }

    void marker(double x, double y, const std::string &color) {
        out_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3.5\" fill=\""
             << color << "\"/>\n";
    }

    void legend(std::size_t row, const std::string &label, const std::string &color) {
        const double y = kTop + 14.0 * static_cast<double>(row);
        out_ << "<line x1=\"" << num(kWidth - kRight - 90) << "\" y1=\"" << num(y) << "\" x2=\""
             << num(kWidth - kRight - 70) << "\" y2=\"" << num(y) << "\" stroke=\"" << color
             << "\" stroke-width=\"2\"/>" << text(kWidth - kRight - 64, y + 4, label, "start");
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

  private:
    static std::string line(double x1, double y1, double x2, double y2) {
        return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
               num(y2) + "\" stroke=\"black\"/>";
    }
    static std::string text(double x, double y, const std::string &s, const char *anchor) {
        return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor + "\">" +
               s + "</text>\n";
    }

    static constexpr double kWidth = 640, kHeight = 420;
    static constexpr double kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
    double xmin_, xmax_, ymin_, ymax_;
    std::ostringstream out_;
};

} // namespace

void write_cells_csv(std::ostream &os, const SweepResult &sweep) {
    os << "shots,n_iter,repetitions,n_calls,f_succ,f_lower,f_upper,p_succ,p_lower,p_upper\n";
    for (const auto &c : sweep.cells) {
        os << c.shots << ',' << c.n_iter << ',' << c.repetitions << ',' << c.n_calls << ','
           << num(c.f_succ) << ',' << num(c.f_band.lower) << ',' << num(c.f_band.upper) << ','
           << num(c.p_succ) << ',' << num(c.p_band.lower) << ',' << num(c.p_band.upper) << '\n';
    }
}

void write_curves_csv(std::ostream &os, const SweepResult &sweep) {
    const auto g = first_degeneracy(sweep);
    os << "shots,iteration,n_calls,f_succ,baseline\n";
    for (const auto &c : sweep.curves) {
        for (std::size_t n = 0; n < c.f_succ.size(); ++n) {
            os << c.shots << ',' << n << ',' << c.n_calls[n] << ',' << num(c.f_succ[n]) << ','
               << num(random_search_baseline(sweep.setup.L, g, c.n_calls[n])) << '\n';
        }
    }
}

void write_fit_csv(std::ostream &os, const ScalingFit &fit) {
    os << "size,n_calls,used_in_fit,fit\n";
    for (const auto &p : fit.points) {
        os << p.L << ',' << num(p.n_calls) << ',' << (p.L >= fit.L_min ? 1 : 0) << ','
           << num(fit.predict(static_cast<double>(p.L))) << '\n';
    }
}

void write_depth_csv(std::ostream &os, const DepthSweepResult &result) {
    os << "size,depth,instance,disorder_seed,p_gs,f_succ,f_lower,f_upper\n";
    for (const auto &r : result.rows) {
        os << r.L << ',' << r.depth << ',' << r.instance << ',' << r.disorder_seed << ','
           << num(r.p_gs) << ',' << num(r.f_succ) << ',' << num(r.f_band.lower) << ','
           << num(r.f_band.upper) << '\n';
    }
}

std::string success_curves_svg(const SweepResult &sweep) {
    double xmax = 1.0;
    for (const auto &c : sweep.curves) {
        if (!c.n_calls.empty()) {
            xmax = std::max(xmax, std::log2(static_cast<double>(c.n_calls.back())));
        }
    }
    xmax = std::ceil(xmax);
    Plot plot(0.0, xmax, 0.0, 1.0);
    plot.axes("log2 n_calls", "F_succ", xmax > 12 ? 2.0 : 1.0, 0.2);
    for (std::size_t i = 0; i < sweep.curves.size(); ++i) {
        const auto &c = sweep.curves[i];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t n = 0; n < c.f_succ.size(); ++n) {
            pts.emplace_back(std::log2(static_cast<double>(c.n_calls[n])), c.f_succ[n]);
        }
        const std::string color = kPalette[i % std::size(kPalette)];
        plot.polyline(pts, color, false);
        plot.legend(i, "M=" + std::to_string(c.shots), color);
    }
    const auto g = first_degeneracy(sweep);
    std::vector<std::pair<double, double>> base;
    for (double x = 0.0; x <= xmax + 1e-9; x += 0.125) {
        const auto n = static_cast<std::uint64_t>(std::llround(std::exp2(x)));
        base.emplace_back(x, random_search_baseline(sweep.setup.L, g, n));
    }
    plot.polyline(base, "black", true);
    plot.legend(sweep.curves.size(), "random search", "black");
    return plot.finish();
}

std::string scaling_svg(const ScalingFit &fit) {
    double lmin = 1e9, lmax = 0.0, ymin = 1e9, ymax = 0.0;
    for (const auto &p : fit.points) {
        const double L = static_cast<double>(p.L);
        lmin = std::min(lmin, L);
        lmax = std::max(lmax, L);
        ymin = std::min(ymin, std::log2(p.n_calls));
        ymax = std::max(ymax, std::log2(p.n_calls));
    }
    if (fit.points.empty()) {
        lmin = 0, lmax = 1, ymin = 0, ymax = 1;
    }
    Plot plot(lmin - 1, lmax + 1, std::floor(ymin) - 1, std::ceil(ymax) + 1);
    plot.axes("L", "log2 n_calls*", 1.0, 1.0);
    for (const auto &p : fit.points) {
        plot.marker(static_cast<double>(p.L), std::log2(p.n_calls),
                    p.L >= fit.L_min ? kPalette[0] : kPalette[7]);
    }
    const double from = std::max(static_cast<double>(fit.L_min), lmin);
    plot.polyline({{from, std::log2(fit.predict(from))}, {lmax, std::log2(fit.predict(lmax))}},
                  kPalette[3], false);
    plot.legend(0, "k=" + num(fit.k) + " a=" + num(fit.a), kPalette[3]);
    return plot.finish();
}

} // namespace vqopt
