#pragma once

// The disruption-index family over a citation corpus.
//
// For a focal paper with reference set R and citing set C, three counts are
// formed: n_i (citers with no citation link into R), n_j (citers with at least
// l links into R), and n_k (papers outside {focal} and C citing at least one
// member of R). The index is (n_i - n_j) / (n_i + n_j + n_k), undefined when
// the denominator is zero. R is either the focal paper's own cited references
// or, for the normalized variants, the union of cited references over the
// focal paper's (journal, year) cohort.
//
// DEP sums, over the citers of the focal paper, the number of their references
// shared with the focal paper's references; reported either as the raw link
// total or as the mean per citer (undefined for uncited papers in mean mode).
// Inverse DEP rescales so that high values align with disruptiveness:
// max(defined DEP) + 1 - DEP.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disrupt/corpus.hpp"

namespace disrupt {

enum class RefSetMode { own_references, cohort_union };
enum class DepMode { mean_per_citer, total_links };

struct DisruptionCounts {
    int64_t n_i = 0;
    int64_t n_j = 0;
    int64_t n_k = 0;
    int threshold = 1;
    RefSetMode mode = RefSetMode::own_references;
    bool defined = true;  // false in cohort mode for papers without a cohort
};

struct IndicatorConfig {
    std::vector<int> thresholds = {1, 5};  // link thresholds, each >= 1
    DepMode dep_mode = DepMode::mean_per_citer;
    std::optional<int> window;             // years; absent = all citers count
    // focal filter: which papers receive indicator records (stubs never do)
    std::string focal_doc_type;
    std::string focal_journal;
    std::optional<int> focal_year_min, focal_year_max;
    int workers = 0;                       // 0 = OpenMP default
};

struct IndicatorRecord {
    PaperIndex paper = kNoPaper;
    int year = kNoYear;
    int64_t citations = 0;
    double log_citations = 0.0;
    std::vector<std::optional<double>> di;    // own references, per threshold
    std::vector<std::optional<double>> di_n;  // cohort union, per threshold
    std::optional<double> dep;
    std::optional<double> dep_inverse;
};

struct IndicatorTable {
    std::vector<int> thresholds;
    std::vector<IndicatorRecord> rows;  // ascending id
    struct Report {
        size_t focal_papers = 0;
        size_t skipped_stubs = 0;
        size_t no_cohort = 0;            // focal papers without (journal, year)
        std::vector<size_t> undefined_di;    // per threshold
        std::vector<size_t> undefined_di_n;  // per threshold
        size_t undefined_dep = 0;
        std::string summary() const;
    } report;

    std::vector<std::string> column_names() const;  // indicator columns, in output order
};

// Counts for a single focal paper and configuration.
DisruptionCounts disruption_counts(const Corpus& corpus, PaperIndex focal, int threshold,
                                   RefSetMode mode, std::optional<int> window = std::nullopt);

// (n_i - n_j) / (n_i + n_j + n_k); empty when the denominator is zero or the
// counts themselves are undefined.
std::optional<double> disruption_index(const DisruptionCounts& counts);

// DEP for one paper. Mean mode is undefined for uncited papers; total mode is 0.
std::optional<double> dep_value(const Corpus& corpus, PaperIndex focal, DepMode mode,
                                std::optional<int> window = std::nullopt);

// max(defined) + 1 - v per element; undefined values stay undefined.
// Throws DegenerateError when no value is defined.
std::vector<std::optional<double>> invert_dep(const std::vector<std::optional<double>>& values);

inline double log_citations(int64_t count) { return std::log1p(static_cast<double>(count)); }

// Every indicator for every focal paper. Parallelized over focal papers and
// cohorts; the result is bit-identical for any worker count.
IndicatorTable compute_all(const Corpus& corpus, const IndicatorConfig& config);

// Pinned output format: header id,year,citations,log_citations,di1,di5,di1n,
// di5n,dep,dep_inverse (column names track non-default thresholds), undefined
// as empty fields, reals with 10 significant digits, rows ascending by id.
void write_indicator_table(const IndicatorTable& table, const Corpus& corpus, std::ostream& os);

// Reads a table written by write_indicator_table back into records (ids are
// resolved against the corpus). Used by downstream stages.
IndicatorTable read_indicator_table(const std::string& path, const Corpus& corpus);

}  // namespace disrupt
