#include <doctest.h>

#include <cmath>

#include "disrupt/errors.hpp"
#include "disrupt/margins.hpp"
#include "disrupt/rng.hpp"

using namespace disrupt;

namespace {

DataTable planted_table(uint64_t seed, size_t n, double effect) {
    SplitMix64 rng(mix_seed(seed, 4000));
    DataTable t;
    t.names = {"y", "g", "x", "year"};
    t.cols.resize(4);
    for (size_t i = 0; i < n; ++i) {
        const double g = rng.next_double() < 0.3 ? 1.0 : 0.0;
        const double x = rng.next_normal();
        t.row_ids.push_back("m" + std::to_string(i));
        t.cols[1].push_back(g);
        t.cols[2].push_back(x);
        t.cols[3].push_back(2000 + static_cast<double>(rng.next_below(3)));
        t.cols[0].push_back(1.0 + 0.5 * x + effect * g + 0.2 * rng.next_normal());
    }
    return t;
}

}  // namespace

TEST_SUITE("margins") {

TEST_CASE("noiseless model: group mean prediction equals group mean outcome") {
    DataTable t;
    t.names = {"y", "g", "x"};
    t.cols.resize(3);
    for (int i = 0; i < 40; ++i) {
        const double g = i % 2;
        const double x = i % 7;
        t.row_ids.push_back(std::to_string(i));
        t.cols[1].push_back(g);
        t.cols[2].push_back(x);
        t.cols[0].push_back(2.0 + 3.0 * g - 0.5 * x);
    }
    const OlsFit fit = ols_fit(t, {"y", {"g", "x"}});
    double mean1 = 0, mean0 = 0;
    size_t n1 = 0, n0 = 0;
    for (size_t i = 0; i < t.n_rows(); ++i) {
        if (t.cell(i, 1) == 1.0) {
            mean1 += t.cell(i, 0);
            ++n1;
        } else {
            mean0 += t.cell(i, 0);
            ++n0;
        }
    }
    const auto gm = predict_group_means(fit, t, "g");
    REQUIRE(gm.size() == 2);
    CHECK(gm[0].group == 0);
    CHECK(gm[0].estimate == doctest::Approx(mean0 / n0).epsilon(1e-12));
    CHECK(gm[1].estimate == doctest::Approx(mean1 / n1).epsilon(1e-12));
    // exact fit: the delta-method interval collapses
    CHECK(gm[0].ci_hi - gm[0].ci_lo == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("intercept-only model: all groups share one prediction") {
    DataTable t = planted_table(3, 100, 1.0);
    const OlsFit fit = ols_fit(t, ModelSpec{"y", {}});
    const auto gm = predict_group_means(fit, t, "g");
    REQUIRE(gm.size() == 2);
    CHECK(gm[0].estimate == doctest::Approx(gm[1].estimate).epsilon(1e-12));
}

TEST_CASE("planted positive effect separates the groups, with by-year cells") {
    const DataTable t = planted_table(11, 600, 2.0);
    const OlsFit fit = ols_fit(t, {"y", {"g", "x"}});
    const auto overall = predict_group_means(fit, t, "g");
    REQUIRE(overall.size() == 2);
    CHECK(overall[1].estimate > overall[0].estimate + 1.0);
    CHECK(overall[1].ci_lo > overall[0].ci_hi);  // clear separation

    const auto by_year = predict_group_means(fit, t, "g", "year");
    CHECK(by_year.size() == 6);  // 3 years x 2 groups
    for (const auto& gm : by_year) {
        REQUIRE(gm.by_level.has_value());
        CHECK(gm.ci_lo <= gm.estimate);
        CHECK(gm.estimate <= gm.ci_hi);
    }
}

TEST_CASE("logit margins live on the probability scale") {
    SplitMix64 rng(77);
    DataTable t;
    t.names = {"y", "g", "x"};
    t.cols.resize(3);
    for (int i = 0; i < 500; ++i) {
        const double g = rng.next_double() < 0.5 ? 1.0 : 0.0;
        const double x = rng.next_normal();
        const double p = 1.0 / (1.0 + std::exp(-(-1.0 + 1.5 * g + 0.5 * x)));
        t.row_ids.push_back(std::to_string(i));
        t.cols[1].push_back(g);
        t.cols[2].push_back(x);
        t.cols[0].push_back(rng.next_double() < p ? 1.0 : 0.0);
    }
    const LogitFit fit = logit_fit(t, {"y", {"g", "x"}});
    const auto gm = predict_group_means(fit, t, "g");
    REQUIRE(gm.size() == 2);
    for (const auto& cell : gm) {
        CHECK(cell.estimate > 0.0);
        CHECK(cell.estimate < 1.0);
    }
    CHECK(gm[1].estimate > gm[0].estimate);
    // average fitted probability within the group equals the margin estimate
    double sum = 0;
    size_t n1 = 0;
    for (size_t i = 0; i < fit.row_index.size(); ++i)
        if (t.cell(fit.row_index[i], 1) == 1.0) {
            sum += fit.fitted[i];
            ++n1;
        }
    CHECK(gm[1].estimate == doctest::Approx(sum / static_cast<double>(n1)).epsilon(1e-12));
}

TEST_CASE("a group level absent in a by-level is omitted") {
    DataTable t;
    t.names = {"y", "g", "year"};
    t.cols.resize(3);
    // year 2001 has only group 0
    const double rows[][3] = {{1, 0, 2000}, {2, 1, 2000}, {3, 0, 2001}, {4, 0, 2001},
                              {2, 1, 2000}, {1, 0, 2000}, {5, 0, 2001}, {2, 1, 2000}};
    for (size_t i = 0; i < 8; ++i) {
        t.row_ids.push_back(std::to_string(i));
        t.cols[0].push_back(rows[i][0]);
        t.cols[1].push_back(rows[i][1]);
        t.cols[2].push_back(rows[i][2]);
    }
    const OlsFit fit = ols_fit(t, ModelSpec{"y", {"g"}});
    const auto gm = predict_group_means(fit, t, "g", "year");
    CHECK(gm.size() == 3);  // (2000,0), (2000,1), (2001,0)
}

TEST_CASE("group column must be binary") {
    DataTable t = planted_table(5, 50, 1.0);
    t.cols[1][0] = 2.0;
    const OlsFit fit = ols_fit(t, {"y", {"x"}});
    CHECK_THROWS_AS(predict_group_means(fit, t, "g"), UserError);
}

}  // TEST_SUITE margins
