#include <doctest.h>

#include <algorithm>

#include "disrupt/errors.hpp"
#include "disrupt/rng.hpp"
#include "disrupt/summaries.hpp"

using namespace disrupt;

namespace {

DataTable table_of(const std::vector<int>& years, const std::vector<double>& values,
                   const std::vector<int>& milestone = {}) {
    DataTable t;
    t.names = {"year", "v", "milestone"};
    t.cols.resize(3);
    for (size_t i = 0; i < years.size(); ++i) {
        t.row_ids.push_back("p" + std::to_string(i));
        t.cols[0].push_back(years[i]);
        t.cols[1].push_back(values[i]);
        t.cols[2].push_back(milestone.empty() ? 0.0 : static_cast<double>(milestone[i]));
    }
    return t;
}

// independent sort-and-index percentile for cross-checks
double oracle_percentile(std::vector<double> vals, double p) {
    std::sort(vals.begin(), vals.end());
    const auto n = static_cast<double>(vals.size());
    auto idx = static_cast<size_t>(std::ceil(p / 100.0 * n));
    if (idx < 1) idx = 1;
    if (idx > vals.size()) idx = vals.size();
    return vals[idx - 1];
}

}  // namespace

TEST_SUITE("summaries") {

TEST_CASE("nearest-rank on the uniform grid 1..100") {
    std::vector<double> vals;
    for (int i = 1; i <= 100; ++i) vals.push_back(i);
    CHECK(nearest_rank_percentile(vals, 90) == 90.0);
    CHECK(nearest_rank_percentile(vals, 99) == 99.0);
    CHECK(nearest_rank_percentile(vals, 50) == 50.0);
    CHECK_THROWS_AS(nearest_rank_percentile(vals, 0), UserError);
    CHECK_THROWS_AS(nearest_rank_percentile(vals, 100), UserError);
}

TEST_CASE("single value collapses every percentile") {
    const DataTable t = table_of({1999}, {7.25});
    const YearlyPercentiles yp = yearly_percentiles(t, "v");
    REQUIRE(yp.rows.size() == 1);
    CHECK(yp.rows[0].n == 1);
    CHECK(yp.rows[0].values == std::vector<double>{7.25, 7.25, 7.25});
}

TEST_CASE("percentiles match the oracle on random year-partitioned data") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> years;
        std::vector<double> values;
        const size_t n = 1 + rng.next_below(400);
        for (size_t i = 0; i < n; ++i) {
            years.push_back(1980 + static_cast<int>(rng.next_below(5)));
            values.push_back(std::floor(rng.next_double() * 50));  // ties likely
        }
        const DataTable t = table_of(years, values);
        const YearlyPercentiles yp = yearly_percentiles(t, "v");
        for (const auto& row : yp.rows) {
            std::vector<double> yv;
            for (size_t i = 0; i < n; ++i)
                if (years[i] == row.year) yv.push_back(values[i]);
            REQUIRE(row.n == yv.size());
            REQUIRE(row.values[0] == oracle_percentile(yv, 50));
            REQUIRE(row.values[1] == oracle_percentile(yv, 90));
            REQUIRE(row.values[2] == oracle_percentile(yv, 99));
            // monotone in p
            CHECK(row.values[0] <= row.values[1]);
            CHECK(row.values[1] <= row.values[2]);
        }
    }
}

TEST_CASE("undefined values are excluded per indicator") {
    DataTable t = table_of({2000, 2000, 2000}, {1.0, kMissing, 3.0});
    const YearlyPercentiles yp = yearly_percentiles(t, "v");
    REQUIRE(yp.rows.size() == 1);
    CHECK(yp.rows[0].n == 2);
}

TEST_CASE("milestone medians: single, even and absent years") {
    const DataTable t = table_of({2000, 2000, 2001, 2001, 2002},
                                 {1.0, 3.0, 5.0, kMissing, 9.0},
                                 {1, 1, 1, 1, 0});
    const MilestoneMedians mm = milestone_annual_medians(t, "v");
    REQUIRE(mm.rows.size() == 2);  // 2002 has no milestone paper
    CHECK(mm.rows[0].year == 2000);
    CHECK(mm.rows[0].n == 2);
    CHECK(mm.rows[0].median == 2.0);  // even count: midpoint
    CHECK(mm.rows[1].year == 2001);
    CHECK(mm.rows[1].n == 1);  // the undefined value is excluded
    CHECK(mm.rows[1].median == 5.0);
}

TEST_CASE("milestone medians match a brute-force oracle on random data") {
    SplitMix64 rng(88);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> years, flags;
        std::vector<double> values;
        const size_t n = 5 + rng.next_below(200);
        for (size_t i = 0; i < n; ++i) {
            years.push_back(1990 + static_cast<int>(rng.next_below(4)));
            values.push_back(rng.next_double());
            flags.push_back(rng.next_double() < 0.2 ? 1 : 0);
        }
        const MilestoneMedians mm =
            milestone_annual_medians(table_of(years, values, flags), "v");
        for (const auto& row : mm.rows) {
            std::vector<double> group;
            for (size_t i = 0; i < n; ++i)
                if (flags[i] == 1 && years[i] == row.year) group.push_back(values[i]);
            std::sort(group.begin(), group.end());
            const double want = group.size() % 2 == 1
                                    ? group[group.size() / 2]
                                    : 0.5 * (group[group.size() / 2 - 1] + group[group.size() / 2]);
            REQUIRE(row.median == want);
        }
    }
}

TEST_CASE("histogram: constant data occupies one bin with zero sd") {
    const DataTable t = table_of({2000, 2000, 2000}, {4.0, 4.0, 4.0});
    const HistogramSummary h = histogram(t, "v", 8);
    CHECK(h.n == 3);
    CHECK(h.sd == 0.0);
    size_t occupied = 0, total = 0;
    for (const size_t c : h.counts) {
        if (c) ++occupied;
        total += c;
    }
    CHECK(occupied == 1);
    CHECK(total == 3);
}

TEST_CASE("histogram: {0,1,2,3} in two bins") {
    const DataTable t = table_of({2000, 2000, 2000, 2000}, {0, 1, 2, 3});
    const HistogramSummary h = histogram(t, "v", 2);
    CHECK(h.counts == std::vector<size_t>{2, 2});
    CHECK(h.mean == 1.5);
    CHECK(h.min == 0.0);
    CHECK(h.max == 3.0);
}

TEST_CASE("histogram conserves n and recovers generator moments") {
    SplitMix64 rng(4242);
    const size_t n = 20000;
    std::vector<int> years(n, 2000);
    std::vector<double> values(n);
    for (auto& v : values) v = 5.0 + 2.0 * rng.next_normal();
    const HistogramSummary h = histogram(table_of(years, values), "v", 60);
    size_t total = 0;
    for (const size_t c : h.counts) total += c;
    CHECK(total == n);
    // within three standard errors of the generator parameters
    CHECK(std::fabs(h.mean - 5.0) < 3.0 * 2.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(h.sd - 2.0) < 0.1);
}

TEST_CASE("errors: unknown column, all-missing, empty") {
    DataTable t = table_of({2000}, {kMissing});
    CHECK_THROWS_AS(yearly_percentiles(t, "nope"), UserError);
    CHECK_THROWS_AS(yearly_percentiles(t, "v"), UserError);
    CHECK_THROWS_AS(histogram(t, "v", 4), UserError);
}

}  // TEST_SUITE summaries
