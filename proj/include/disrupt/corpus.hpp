#pragma once

// Citation corpus: immutable paper metadata plus bidirectional adjacency.
// Papers are interned to dense indices in ascending id order, so index order,
// id order and output row order all coincide. The corpus never changes after
// load and is safe to share across any number of reader threads.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace disrupt {

using PaperIndex = int32_t;
constexpr PaperIndex kNoPaper = -1;
constexpr int kNoYear = INT32_MIN;

struct PaperMeta {
    std::string id;
    int year = kNoYear;
    std::string journal;   // trimmed; empty = unknown
    std::string doc_type;
    bool milestone = false;
    int n_authors = 0;
    int n_pages = 0;
    int n_countries = 0;
    bool usa = false;
    bool china = false;
    bool eu28 = false;
    // Edge endpoint absent from the metadata table, materialized under the
    // lenient load option. Participates in adjacency only: no cohort, never a
    // focal paper, excluded from regressions and matching.
    bool stub = false;
};

struct LoadOptions {
    char delimiter = ',';
    bool lenient_edges = false;    // stubs instead of a hard error for unknown endpoints
    std::string doc_type_filter;   // empty = keep all rows
    int min_year = 1800;
    int max_year = 2100;
};

struct LoadReport {
    size_t paper_rows = 0;
    size_t papers_loaded = 0;
    size_t filtered_doc_type = 0;
    size_t edge_rows = 0;
    size_t edges_kept = 0;
    size_t duplicate_edges = 0;
    size_t self_loops = 0;
    size_t stub_papers = 0;
    std::string summary() const;
};

class Corpus {
public:
    size_t size() const { return metas_.size(); }
    size_t edge_count() const { return out_targets_.size(); }

    PaperIndex find(std::string_view id) const;
    PaperIndex require(std::string_view id) const;  // throws UserError on unknown id

    const PaperMeta& meta(PaperIndex p) const { return metas_[static_cast<size_t>(p)]; }
    const std::string& id(PaperIndex p) const { return metas_[static_cast<size_t>(p)].id; }
    bool has_year(PaperIndex p) const { return metas_[static_cast<size_t>(p)].year != kNoYear; }

    // cited references of p (out-neighbours), ascending by id
    std::span<const PaperIndex> out_edges(PaperIndex p) const {
        return {out_targets_.data() + out_offsets_[static_cast<size_t>(p)],
                out_targets_.data() + out_offsets_[static_cast<size_t>(p) + 1]};
    }
    // citing papers of p (in-neighbours), ascending by id
    std::span<const PaperIndex> in_edges(PaperIndex p) const {
        return {in_targets_.data() + in_offsets_[static_cast<size_t>(p)],
                in_targets_.data() + in_offsets_[static_cast<size_t>(p) + 1]};
    }

    struct Cohort {
        int32_t journal_id;
        int year;
        std::vector<PaperIndex> members;  // ascending
    };
    const std::vector<Cohort>& cohorts() const { return cohorts_; }
    const std::string& journal_name(int32_t journal_id) const {
        return journal_names_[static_cast<size_t>(journal_id)];
    }
    // -1 when the paper has no cohort (stub, missing year, or empty journal)
    int32_t cohort_of(PaperIndex p) const { return cohort_of_[static_cast<size_t>(p)]; }
    // index into cohorts(), or -1 when the (journal, year) cohort does not exist
    int32_t find_cohort(std::string_view journal, int year) const;

    // canonical text form; loading identical files yields byte-identical output
    void serialize(std::ostream& os) const;

private:
    friend Corpus build_corpus(std::vector<PaperMeta>, std::vector<std::pair<std::string, std::string>>,
                               const LoadOptions&, LoadReport*);
    std::vector<PaperMeta> metas_;  // ascending id
    std::unordered_map<std::string, PaperIndex> index_;
    std::vector<size_t> out_offsets_, in_offsets_;
    std::vector<PaperIndex> out_targets_, in_targets_;
    std::vector<std::string> journal_names_;
    std::vector<Cohort> cohorts_;
    std::vector<int32_t> cohort_of_;
    std::map<std::pair<int32_t, int>, int32_t> cohort_lookup_;
    std::unordered_map<std::string, int32_t> journal_ids_;
};

// Validates and indexes an in-memory corpus: drops self loops, deduplicates
// edges, resolves unknown endpoints per options (strict error or stub).
Corpus build_corpus(std::vector<PaperMeta> papers,
                    std::vector<std::pair<std::string, std::string>> edges,
                    const LoadOptions& options, LoadReport* report);

// Reads the two delimited files (header `id,year,journal,doc_type,milestone,
// n_authors,n_pages,n_countries,usa,china,eu28` and `citing,cited`), applies the
// doc-type filter before indexing, and builds the corpus. Gzip-transparent.
Corpus load_corpus(const std::string& papers_path, const std::string& citations_path,
                   const LoadOptions& options, LoadReport* report);

// --- graph queries ---

std::vector<PaperIndex> cited_references(const Corpus& corpus, PaperIndex focal);

// In-neighbours; with a window w only citing papers with a known year and
// year <= focal.year + w are returned (a yearless focal admits none).
std::vector<PaperIndex> citing_papers(const Corpus& corpus, PaperIndex focal,
                                      std::optional<int> window = std::nullopt);

int64_t citation_count(const Corpus& corpus, PaperIndex focal,
                       std::optional<int> window = std::nullopt);

// Union of cited references over all members of a (journal, year) cohort,
// computed once per cohort and cached.
class CohortUnions {
public:
    explicit CohortUnions(const Corpus& corpus) : corpus_(corpus) {}
    std::span<const PaperIndex> union_for(int32_t cohort_index);
    std::span<const PaperIndex> union_for(std::string_view journal, int year);

private:
    const Corpus& corpus_;
    std::unordered_map<int32_t, std::vector<PaperIndex>> cache_;
};

}  // namespace disrupt
