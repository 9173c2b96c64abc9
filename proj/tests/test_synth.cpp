#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"
#include "disrupt/indicators.hpp"
#include "disrupt/oracle.hpp"
#include "disrupt/synth.hpp"

using namespace disrupt;

TEST_SUITE("synth") {

TEST_CASE("same params and seed give byte-identical files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "disrupt_synth_det";
    fs::create_directories(dir);
    GeneratorParams p;
    p.n_papers = 400;
    p.planted_disruptive = 6;
    p.planted_effect = 10;
    p.seed = 31;
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
        const GeneratedCorpus g = generate_corpus(p);
        const auto base = (dir / ("run" + std::to_string(run))).string();
        fs::create_directories(base);
        write_corpus_files(g, base + "/papers.csv", base + "/citations.csv",
                           base + "/manifest.txt");
        bytes[run] = slurp_file(base + "/papers.csv") + slurp_file(base + "/citations.csv") +
                     slurp_file(base + "/manifest.txt");
    }
    CHECK(bytes[0] == bytes[1]);
    fs::remove_all(dir);
}

TEST_CASE("temporal soundness: citations only point backward in year") {
    for (const auto attachment :
         {GeneratorParams::Attachment::uniform, GeneratorParams::Attachment::preferential}) {
        GeneratorParams p;
        p.n_papers = 500;
        p.attachment = attachment;
        p.planted_disruptive = 5;
        p.planted_effect = 5;
        p.seed = 17;
        const GeneratedCorpus g = generate_corpus(p);
        for (const auto& [u, v] : g.edges)
            REQUIRE(g.papers[static_cast<size_t>(u)].year >
                    g.papers[static_cast<size_t>(v)].year);
    }
}

TEST_CASE("manifest counts match the emitted files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "disrupt_synth_manifest";
    fs::create_directories(dir);
    GeneratorParams p;
    p.n_papers = 300;
    p.planted_disruptive = 4;
    p.seed = 5;
    const GeneratedCorpus g = generate_corpus(p);
    write_corpus_files(g, (dir / "papers.csv").string(), (dir / "citations.csv").string(),
                       (dir / "manifest.txt").string());

    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : read_manifest((dir / "manifest.txt").string())) kv[k] = v;
    CHECK(kv["rng"] == "splitmix64/v1");
    CHECK(kv["n_papers"] == "300");
    CHECK(kv["planted_disruptive"] == "4");

    LoadReport rep;
    const Corpus c = load_corpus((dir / "papers.csv").string(),
                                 (dir / "citations.csv").string(), {}, &rep);
    CHECK(std::to_string(c.edge_count()) == kv["edge_count"]);
    CHECK(std::to_string(c.size()) == kv["n_papers"]);
    // no duplicates or self loops in generated output
    CHECK(rep.duplicate_edges == 0);
    CHECK(rep.self_loops == 0);
    fs::remove_all(dir);
}

TEST_CASE("planted papers are maximally disruptive with citers and references") {
    GeneratorParams p;
    p.n_papers = 350;
    p.planted_disruptive = 8;
    p.planted_effect = 6;
    p.seed = 23;
    const GeneratedCorpus g = generate_corpus(p);
    REQUIRE(g.planted_ids.size() == 8);
    const Corpus c = to_corpus(g);
    for (const auto& id : g.planted_ids) {
        const PaperIndex f = c.require(id);
        CHECK(c.meta(f).milestone);
        REQUIRE(!c.out_edges(f).empty());
        REQUIRE(!c.in_edges(f).empty());
        // the main engine, not the generator, certifies DI = 1 at every threshold
        for (const int l : {1, 5}) {
            const auto dc = disruption_counts(c, f, l, RefSetMode::own_references);
            REQUIRE(dc.n_j == 0);
            REQUIRE(dc.n_k == 0);
            CHECK(*disruption_index(dc) == 1.0);
        }
        // and the brute-force reference agrees
        const OracleRecord ref = brute_force_indicators(c, f, {});
        CHECK(*ref.di[0] == 1.0);
        CHECK(*ref.di[1] == 1.0);
    }
    // milestone flags are exactly the planted set
    size_t milestones = 0;
    for (size_t i = 0; i < c.size(); ++i)
        if (c.meta(static_cast<PaperIndex>(i)).milestone) ++milestones;
    CHECK(milestones == g.planted_ids.size());
}

TEST_CASE("planted_effect raises planted citation counts") {
    GeneratorParams p;
    p.n_papers = 600;
    p.mean_out_degree = 6;
    p.planted_disruptive = 10;
    p.planted_effect = 30;
    p.seed = 11;
    const Corpus c = to_corpus(generate_corpus(p));
    double planted_mean = 0, other_mean = 0;
    size_t planted_n = 0, other_n = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        const auto deg = static_cast<double>(c.in_edges(static_cast<PaperIndex>(i)).size());
        if (c.meta(static_cast<PaperIndex>(i)).milestone) {
            planted_mean += deg;
            ++planted_n;
        } else {
            other_mean += deg;
            ++other_n;
        }
    }
    planted_mean /= static_cast<double>(planted_n);
    other_mean /= static_cast<double>(other_n);
    CHECK(planted_mean > other_mean + 15);
}

TEST_CASE("single paper is a valid degenerate corpus") {
    GeneratorParams p;
    p.n_papers = 1;
    const GeneratedCorpus g = generate_corpus(p);
    CHECK(g.papers.size() == 1);
    CHECK(g.edges.empty());
}

TEST_CASE("infeasible parameters are rejected") {
    GeneratorParams p;
    p.n_papers = 10;
    p.mean_out_degree = 50;
    CHECK_THROWS_AS(generate_corpus(p), UserError);
    GeneratorParams q;
    q.n_papers = 10;
    q.year_min = 2000;
    q.year_max = 2000;
    q.planted_disruptive = 1;  // no interior years exist
    CHECK_THROWS_AS(generate_corpus(q), UserError);
}

}  // TEST_SUITE synth
