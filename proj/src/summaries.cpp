#include "disrupt/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"

namespace disrupt {

double nearest_rank_percentile(std::vector<double> values, double p) {
    if (values.empty()) throw UserError("percentile of empty sample");
    if (!(p > 0.0 && p < 100.0)) throw UserError("percentile must lie in (0,100)");
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    auto rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    rank = std::clamp<size_t>(rank, 1, n);
    return values[rank - 1];
}

double midpoint_median(std::vector<double> values) {
    if (values.empty()) throw UserError("median of empty sample");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

// defined (year, value) pairs of one indicator column, grouped by year
std::map<int, std::vector<double>> values_by_year(const DataTable& table,
                                                  const std::string& indicator) {
    const int yc = table.require_col("year");
    const int vc = table.require_col(indicator);
    std::map<int, std::vector<double>> by_year;
    for (size_t i = 0; i < table.n_rows(); ++i) {
        const double y = table.cell(i, yc);
        const double v = table.cell(i, vc);
        if (is_missing(y) || is_missing(v)) continue;
        by_year[static_cast<int>(y)].push_back(v);
    }
    return by_year;
}

}  // namespace

YearlyPercentiles yearly_percentiles(const DataTable& table, const std::string& indicator,
                                     const std::vector<double>& percentiles) {
    for (const double p : percentiles)
        if (!(p > 0.0 && p < 100.0)) throw UserError("percentile must lie in (0,100)");
    YearlyPercentiles out;
    out.indicator = indicator;
    out.percentiles = percentiles;
    for (auto& [year, vals] : values_by_year(table, indicator)) {
        YearlyPercentiles::Row row;
        row.year = year;
        row.n = vals.size();
        std::sort(vals.begin(), vals.end());
        for (const double p : percentiles) {
            auto rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(vals.size())));
            rank = std::clamp<size_t>(rank, 1, vals.size());
            row.values.push_back(vals[rank - 1]);
        }
        out.rows.push_back(std::move(row));
    }
    if (out.rows.empty()) throw UserError("no defined values for indicator " + indicator);
    return out;
}

MilestoneMedians milestone_annual_medians(const DataTable& table, const std::string& indicator) {
    const int yc = table.require_col("year");
    const int vc = table.require_col(indicator);
    const int mc = table.require_col("milestone");
    std::map<int, std::vector<double>> by_year;
    for (size_t i = 0; i < table.n_rows(); ++i) {
        const double m = table.cell(i, mc);
        if (is_missing(m) || m == 0.0) continue;
        const double y = table.cell(i, yc);
        const double v = table.cell(i, vc);
        if (is_missing(y) || is_missing(v)) continue;
        by_year[static_cast<int>(y)].push_back(v);
    }
    MilestoneMedians out;
    out.indicator = indicator;
    for (auto& [year, vals] : by_year)
        out.rows.push_back({year, vals.size(), midpoint_median(vals)});
    return out;
}

HistogramSummary histogram(const DataTable& table, const std::string& indicator, size_t bins) {
    if (bins < 1) throw UserError("histogram needs at least one bin");
    const int vc = table.require_col(indicator);
    std::vector<double> vals;
    for (size_t i = 0; i < table.n_rows(); ++i)
        if (!is_missing(table.cell(i, vc))) vals.push_back(table.cell(i, vc));
    if (vals.empty()) throw UserError("no defined values for indicator " + indicator);

    HistogramSummary h;
    h.indicator = indicator;
    h.n = vals.size();
    h.min = *std::min_element(vals.begin(), vals.end());
    h.max = *std::max_element(vals.begin(), vals.end());
    h.counts.assign(bins, 0);
    const double width = (h.max - h.min) / static_cast<double>(bins);
    for (const double v : vals) {
        size_t b = 0;
        if (width > 0)
            b = std::min(bins - 1, static_cast<size_t>((v - h.min) / width));
        ++h.counts[b];
    }
    double sum = 0;
    for (const double v : vals) sum += v;
    h.mean = sum / static_cast<double>(h.n);
    if (h.n > 1) {
        double ss = 0;
        for (const double v : vals) ss += (v - h.mean) * (v - h.mean);
        h.sd = std::sqrt(ss / static_cast<double>(h.n - 1));
    }
    return h;
}

void write_percentiles(const std::vector<YearlyPercentiles>& all, std::ostream& os) {
    os << "indicator,year,n";
    if (!all.empty() && all[0].percentiles == std::vector<double>{50, 90, 99}) {
        os << ",median,p90,p99";
    } else if (!all.empty()) {
        for (const double p : all[0].percentiles) os << ",p" << format_real(p);
    }
    os << '\n';
    for (const auto& yp : all)
        for (const auto& row : yp.rows) {
            os << yp.indicator << ',' << row.year << ',' << row.n;
            for (const double v : row.values) os << ',' << format_real(v);
            os << '\n';
        }
}

void write_milestone_medians(const std::vector<MilestoneMedians>& all, std::ostream& os) {
    os << "indicator,year,n_milestone,median\n";
    for (const auto& mm : all)
        for (const auto& row : mm.rows)
            os << mm.indicator << ',' << row.year << ',' << row.n << ','
               << format_real(row.median) << '\n';
}

void write_histograms(const std::vector<HistogramSummary>& all, std::ostream& os) {
    os << "indicator,bin,lo,hi,count,n,mean,sd\n";
    for (const auto& h : all) {
        const double width =
            (h.max - h.min) / static_cast<double>(h.counts.size());
        for (size_t b = 0; b < h.counts.size(); ++b) {
            const double lo = h.min + width * static_cast<double>(b);
            const double hi = (b + 1 == h.counts.size()) ? h.max : lo + width;
            os << h.indicator << ',' << b << ',' << format_real(lo) << ',' << format_real(hi)
               << ',' << h.counts[b] << ',' << h.n << ',' << format_real(h.mean) << ','
               << format_real(h.sd) << '\n';
        }
    }
}

}  // namespace disrupt
