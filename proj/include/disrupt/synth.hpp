#pragma once

// Seeded synthetic citation corpora for testing and benchmarking. Edges only
// point backward in publication year. Optionally plants "disruptive" papers:
// after generation their reference lists are claimed exclusively (every other
// edge into those references is rewired away), which forces n_j = n_k = 0 and
// hence a disruption index of exactly 1 at every threshold; planted papers are
// flagged as milestones and receive extra citing edges per planted_effect.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "disrupt/corpus.hpp"

namespace disrupt {

struct GeneratorParams {
    int64_t n_papers = 1000;
    int year_min = 1980;
    int year_max = 2002;
    int journals = 20;
    double mean_out_degree = 10.0;
    enum class Attachment { uniform, preferential } attachment = Attachment::preferential;
    int64_t planted_disruptive = 0;
    double planted_effect = 0.0;  // extra citing edges added to each planted paper
    uint64_t seed = 1;
};

struct GeneratedCorpus {
    std::vector<PaperMeta> papers;                      // ascending id
    std::vector<std::pair<int32_t, int32_t>> edges;     // (citing, cited) positions, sorted
    std::vector<std::string> planted_ids;
    GeneratorParams params;

    std::string manifest_text() const;  // key = value lines
};

GeneratedCorpus generate_corpus(const GeneratorParams& params);

// papers.csv / citations.csv in the loader's format plus manifest.txt.
// Same params and seed produce byte-identical files.
void write_corpus_files(const GeneratedCorpus& corpus, const std::string& papers_path,
                        const std::string& citations_path, const std::string& manifest_path);

// In-memory load, bypassing the file round trip (tests, benchmarks).
Corpus to_corpus(const GeneratedCorpus& generated);

// Reads a manifest back as ordered key/value pairs.
std::vector<std::pair<std::string, std::string>> read_manifest(const std::string& path);

}  // namespace disrupt
