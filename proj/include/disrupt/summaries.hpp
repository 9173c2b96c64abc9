#pragma once

// Descriptive summaries over the indicator table: per-year percentile
// timelines, annual medians over milestone papers, and histogram summaries
// with the mean/sd pair for a normal overlay.

#include <map>
#include <string>
#include <vector>

#include "disrupt/table.hpp"

namespace disrupt {

struct YearlyPercentiles {
    std::string indicator;
    std::vector<double> percentiles;  // requested, each in (0,100)
    struct Row {
        int year;
        size_t n;                    // defined values that year
        std::vector<double> values;  // one per requested percentile
    };
    std::vector<Row> rows;  // ascending year; years with no defined values absent
};

struct MilestoneMedians {
    std::string indicator;
    struct Row {
        int year;
        size_t n;  // milestone papers with a defined value that year
        double median;
    };
    std::vector<Row> rows;
};

struct HistogramSummary {
    std::string indicator;
    double min = 0, max = 0;
    std::vector<size_t> counts;  // equal-width bins over [min, max]
    double mean = 0;
    double sd = 0;  // sample sd; 0 when n < 2
    size_t n = 0;
};

// Nearest-rank percentile: the value at 1-based index ceil(p/100 * n) of the
// ascending sample. p must lie in (0,100).
double nearest_rank_percentile(std::vector<double> values, double p);

// Conventional median: midpoint of the two central order statistics when the
// count is even.
double midpoint_median(std::vector<double> values);

// `table` rows need a `year` column and the indicator column; missing values
// are excluded per indicator.
YearlyPercentiles yearly_percentiles(const DataTable& table, const std::string& indicator,
                                     const std::vector<double>& percentiles = {50, 90, 99});

// Requires a `milestone` column (0/1). Years without milestone papers are absent.
MilestoneMedians milestone_annual_medians(const DataTable& table, const std::string& indicator);

HistogramSummary histogram(const DataTable& table, const std::string& indicator, size_t bins);

// Pinned formats: `indicator,year,n,median,p90,p99` (for the default percentile
// list) and `indicator,year,n_milestone,median`.
void write_percentiles(const std::vector<YearlyPercentiles>& all, std::ostream& os);
void write_milestone_medians(const std::vector<MilestoneMedians>& all, std::ostream& os);
void write_histograms(const std::vector<HistogramSummary>& all, std::ostream& os);

}  // namespace disrupt
