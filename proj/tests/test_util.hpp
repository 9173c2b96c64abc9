#pragma once

// Shared fixtures for the unit tests: compact corpus construction and the
// worked seven-paper graph G1 used throughout (focal F with references R1, R2
// and citers A, B, D; C cites only R1):
//   F->R1, F->R2, A->F, B->F, B->R1, C->R1, D->F, D->R1, D->R2

#include <string>
#include <vector>

#include "disrupt/corpus.hpp"
#include "disrupt/rng.hpp"

namespace test_util {

struct P {
    std::string id;
    int year = 2000;
    std::string journal = "J";
    bool milestone = false;
};

inline disrupt::Corpus make_corpus(const std::vector<P>& papers,
                                   const std::vector<std::pair<std::string, std::string>>& edges,
                                   disrupt::LoadOptions options = {},
                                   disrupt::LoadReport* report = nullptr) {
    std::vector<disrupt::PaperMeta> metas;
    for (const auto& p : papers) {
        disrupt::PaperMeta m;
        m.id = p.id;
        m.year = p.year;
        m.journal = p.journal;
        m.doc_type = "article";
        m.milestone = p.milestone;
        m.n_authors = 1;
        m.n_pages = 4;
        m.n_countries = 1;
        metas.push_back(std::move(m));
    }
    return disrupt::build_corpus(std::move(metas), edges, options, report);
}

inline disrupt::Corpus g1() {
    return make_corpus({{"F", 2000}, {"R1", 1998}, {"R2", 1998}, {"A", 2001}, {"B", 2002},
                        {"C", 2003}, {"D", 2005}},
                       {{"F", "R1"},
                        {"F", "R2"},
                        {"A", "F"},
                        {"B", "F"},
                        {"B", "R1"},
                        {"C", "R1"},
                        {"D", "F"},
                        {"D", "R1"},
                        {"D", "R2"}});
}

// random corpus for oracle-equivalence and property tests: 2..50 papers,
// random edges (no self loops; duplicates removed by the builder), a few
// yearless/journal-less papers to exercise the undefined paths
inline disrupt::Corpus random_corpus(uint64_t seed, size_t max_papers = 50) {
    disrupt::SplitMix64 rng(disrupt::mix_seed(seed, 99));
    const size_t n = 2 + rng.next_below(max_papers - 1);
    const char* journals[] = {"JA", "JB", "JC", ""};
    std::vector<disrupt::PaperMeta> metas(n);
    for (size_t i = 0; i < n; ++i) {
        metas[i].id = "r" + std::to_string(100 + i);
        metas[i].year = rng.next_double() < 0.08
                            ? disrupt::kNoYear
                            : 1990 + static_cast<int>(rng.next_below(10));
        metas[i].journal = journals[rng.next_below(4)];
        metas[i].doc_type = "article";
        metas[i].milestone = rng.next_double() < 0.1;
        metas[i].n_authors = 1 + static_cast<int>(rng.next_below(5));
        metas[i].n_pages = 1 + static_cast<int>(rng.next_below(20));
        metas[i].n_countries = 1 + static_cast<int>(rng.next_below(3));
        metas[i].usa = rng.next_double() < 0.4;
        metas[i].china = rng.next_double() < 0.1;
        metas[i].eu28 = rng.next_double() < 0.3;
    }
    const size_t m = rng.next_below(4 * n + 1);
    std::vector<std::pair<std::string, std::string>> edges;
    for (size_t e = 0; e < m; ++e) {
        const size_t u = rng.next_below(n);
        const size_t v = rng.next_below(n);
        if (u != v) edges.emplace_back(metas[u].id, metas[v].id);
    }
    return disrupt::build_corpus(std::move(metas), std::move(edges), {}, nullptr);
}

}  // namespace test_util
