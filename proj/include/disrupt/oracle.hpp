#pragma once

// Brute-force reference for every indicator: literal scans over all papers and
// their reference lists, no adjacency index, no cohort cache, no reuse. Each
// count is its own loop so it can be read directly against the definitions.
// Used only for equivalence testing; guarded to small corpora.

#include <optional>
#include <vector>

#include "disrupt/corpus.hpp"
#include "disrupt/indicators.hpp"

namespace disrupt {

struct OracleConfig {
    std::vector<int> thresholds = {1, 5};
    DepMode dep_mode = DepMode::mean_per_citer;
    std::optional<int> window;
};

struct OracleRecord {
    int64_t citations = 0;
    double log_citations = 0.0;
    std::vector<DisruptionCounts> counts;    // own references, per threshold
    std::vector<DisruptionCounts> counts_n;  // cohort union, per threshold
    std::vector<std::optional<double>> di;
    std::vector<std::optional<double>> di_n;
    std::optional<double> dep;
};

constexpr size_t kOracleGuard = 10000;  // papers; O(P*E) enumeration beyond this refused

OracleRecord brute_force_indicators(const Corpus& corpus, PaperIndex focal,
                                    const OracleConfig& config);

}  // namespace disrupt
