#include "disrupt/svg.hpp"

#include <algorithm>
#include <cmath>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"

namespace disrupt {

namespace {

constexpr double kWidth = 800, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

struct Scale {
    double lo, hi, out_lo, out_hi;
    double operator()(double v) const {
        if (hi == lo) return 0.5 * (out_lo + out_hi);
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

// round tick step: 1/2/5 times a power of ten
double tick_step(double span, int target) {
    if (span <= 0) return 1;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10 * mag;
}

void polyline(std::ostream& os, const std::vector<std::pair<double, double>>& pts,
              const char* stroke, const char* dash) {
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.6\"";
    if (dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    for (const auto& [x, y] : pts) os << format_real(x) << ',' << format_real(y) << ' ';
    os << "\"/>\n";
}

}  // namespace

void write_percentile_chart(const YearlyPercentiles& percentiles,
                            const MilestoneMedians& milestones, std::ostream& os) {
    if (percentiles.rows.empty()) throw UserError("svg: no percentile rows");
    if (percentiles.percentiles.size() != 3)
        throw UserError("svg: expected three percentile series");

    double ymin = milestones.rows.empty() ? percentiles.rows[0].values[0]
                                          : milestones.rows[0].median;
    double ymax = ymin;
    int xmin = percentiles.rows.front().year, xmax = percentiles.rows.back().year;
    for (const auto& r : percentiles.rows)
        for (const double v : r.values) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    for (const auto& r : milestones.rows) {
        ymin = std::min(ymin, r.median);
        ymax = std::max(ymax, r.median);
        xmin = std::min(xmin, r.year);
        xmax = std::max(xmax, r.year);
    }
    if (ymax == ymin) {
        ymax += 1;
        ymin -= 1;
    }

    const Scale sx{static_cast<double>(xmin), static_cast<double>(xmax), kLeft, kWidth - kRight};
    const Scale sy{ymin, ymax, kHeight - kBottom, kTop};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << percentiles.indicator << " by publication year</text>\n";

    // axes
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
       << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const double ystep = tick_step(ymax - ymin, 6);
    for (double v = std::ceil(ymin / ystep) * ystep; v <= ymax + 1e-9 * ystep; v += ystep) {
        const double y = sy(v);
        os << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\""
           << y << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << format_real(v) << "</text>\n";
    }
    const int xstep = std::max(1, static_cast<int>(tick_step(xmax - xmin, 8)));
    for (int yr = xmin; yr <= xmax; yr += xstep) {
        const double x = sx(yr);
        os << "<line x1=\"" << x << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << x
           << "\" y2=\"" << kHeight - kBottom + 4 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << yr
           << "</text>\n";
    }

    const char* colors[3] = {"#c0c0c0", "#808080", "#404040"};
    const char* labels[3] = {"median", "p90", "p99"};
    for (size_t s = 0; s < 3; ++s) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : percentiles.rows) pts.emplace_back(sx(r.year), sy(r.values[s]));
        polyline(os, pts, colors[s], "4,3");
        os << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 16 * (s + 1)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
           << colors[s] << "\">" << labels[s] << "</text>\n";
    }
    for (const auto& r : milestones.rows)
        os << "<circle cx=\"" << sx(r.year) << "\" cy=\"" << sy(r.median)
           << "\" r=\"3.5\" fill=\"#1f4e9c\"/>\n";
    if (!milestones.rows.empty())
        os << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 16 * 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
              "fill=\"#1f4e9c\">milestone median</text>\n";
    os << "</svg>\n";
}

}  // namespace disrupt
