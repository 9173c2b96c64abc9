#include <doctest.h>

#include "disrupt/errors.hpp"
#include "disrupt/indicators.hpp"
#include "disrupt/oracle.hpp"
#include "test_util.hpp"

using namespace disrupt;

namespace {

void check_equivalence(const Corpus& corpus, const IndicatorConfig& cfg) {
    OracleConfig ocfg;
    ocfg.thresholds = cfg.thresholds;
    ocfg.dep_mode = cfg.dep_mode;
    ocfg.window = cfg.window;

    const IndicatorTable table = compute_all(corpus, cfg);
    for (const auto& rec : table.rows) {
        const OracleRecord ref = brute_force_indicators(corpus, rec.paper, ocfg);
        REQUIRE(rec.citations == ref.citations);
        REQUIRE(rec.log_citations == doctest::Approx(ref.log_citations).epsilon(1e-15));
        for (size_t t = 0; t < cfg.thresholds.size(); ++t) {
            // integer count triples must agree exactly
            const DisruptionCounts mine = disruption_counts(
                corpus, rec.paper, cfg.thresholds[t], RefSetMode::own_references, cfg.window);
            REQUIRE(mine.n_i == ref.counts[t].n_i);
            REQUIRE(mine.n_j == ref.counts[t].n_j);
            REQUIRE(mine.n_k == ref.counts[t].n_k);
            const DisruptionCounts mine_n = disruption_counts(
                corpus, rec.paper, cfg.thresholds[t], RefSetMode::cohort_union, cfg.window);
            REQUIRE(mine_n.defined == ref.counts_n[t].defined);
            REQUIRE(mine_n.n_i == ref.counts_n[t].n_i);
            REQUIRE(mine_n.n_j == ref.counts_n[t].n_j);
            REQUIRE(mine_n.n_k == ref.counts_n[t].n_k);

            REQUIRE(rec.di[t].has_value() == ref.di[t].has_value());
            if (rec.di[t]) REQUIRE(*rec.di[t] == doctest::Approx(*ref.di[t]).epsilon(1e-12));
            REQUIRE(rec.di_n[t].has_value() == ref.di_n[t].has_value());
            if (rec.di_n[t])
                REQUIRE(*rec.di_n[t] == doctest::Approx(*ref.di_n[t]).epsilon(1e-12));
        }
        REQUIRE(rec.dep.has_value() == ref.dep.has_value());
        if (rec.dep) REQUIRE(*rec.dep == doctest::Approx(*ref.dep).epsilon(1e-12));
    }
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("oracle reproduces the worked G1 values") {
    const Corpus c = test_util::g1();
    OracleConfig cfg;
    const OracleRecord rec = brute_force_indicators(c, c.require("F"), cfg);
    CHECK(rec.citations == 3);
    CHECK(*rec.di[0] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(*rec.di[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(*rec.dep == doctest::Approx(1.0));
    OracleConfig total = cfg;
    total.dep_mode = DepMode::total_links;
    CHECK(*brute_force_indicators(c, c.require("F"), total).dep == doctest::Approx(3.0));
}

TEST_CASE("oracle marks the degenerate cases undefined") {
    const Corpus c = test_util::make_corpus({{"F"}, {"X", 2001}}, {});
    const OracleRecord rec = brute_force_indicators(c, c.require("F"), {});
    CHECK_FALSE(rec.di[0].has_value());
    CHECK_FALSE(rec.dep.has_value());
}

TEST_CASE("engine equals oracle on 150 random graphs") {
    for (uint64_t seed = 1; seed <= 150; ++seed) {
        IndicatorConfig cfg;
        // sweep the configuration space along with the graphs
        if (seed % 3 == 1) cfg.dep_mode = DepMode::total_links;
        if (seed % 4 == 1) cfg.window = static_cast<int>(seed % 7);
        if (seed % 5 == 1) cfg.thresholds = {1, 2, 3};
        check_equivalence(test_util::random_corpus(seed), cfg);
    }
}

TEST_CASE("oracle guard refuses large corpora") {
    std::vector<disrupt::PaperMeta> metas(kOracleGuard + 1);
    for (size_t i = 0; i < metas.size(); ++i) {
        metas[i].id = "g" + std::to_string(i);
        metas[i].year = 2000;
    }
    const Corpus c = build_corpus(std::move(metas), {}, {}, nullptr);
    CHECK_THROWS_AS(brute_force_indicators(c, 0, {}), UserError);
}

}  // TEST_SUITE oracle
