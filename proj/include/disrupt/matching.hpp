#pragma once

// Coarsened exact matching: covariates are binned (quintiles by default), each
// treated unit is paired 1:1 without replacement with a control sharing the
// identical coarsened signature, and the average treatment effect is the mean
// outcome difference over the matched groups with a Welch-style standard error.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "disrupt/table.hpp"

namespace disrupt {

struct CoarseningRule {
    enum class Kind { quintile, identity, cutpoints } kind = Kind::quintile;
    std::vector<double> cuts;  // Kind::cutpoints only; strictly increasing
};

struct CoarseningSpec {
    std::vector<std::pair<std::string, CoarseningRule>> covariates;
};

// one coarsened bin / category per covariate, in spec order
using Signature = std::vector<int64_t>;

struct CoarsenResult {
    std::vector<size_t> rows;          // rows with treatment and all covariates present
    std::vector<Signature> signatures; // parallel to rows
    std::vector<std::string> display;  // human-readable signature per row
    size_t excluded_missing = 0;
};

// Quintile cutpoints are nearest-rank percentiles (20/40/60/80) of the pooled
// analysis sample; a value <= cutpoint falls in the lower bin. Constant columns
// collapse to a single bin. Identity rules match on the exact raw value.
CoarsenResult coarsen(const DataTable& data, const CoarseningSpec& spec,
                      const std::string& treatment = "");

struct MatchedSample {
    struct Pair {
        size_t treated_row;
        size_t control_row;
        std::string signature;
    };
    std::vector<Pair> pairs;
    std::vector<size_t> unmatched_treated;  // rows
    struct StratumInfo {
        std::string signature;
        size_t treated;
        size_t controls;
        size_t matched;
    };
    std::vector<StratumInfo> strata;
    size_t excluded_missing = 0;
};

// Within each stratum holding both groups, every treated unit draws one control
// uniformly at random (seeded) without replacement; leftovers are reported
// unmatched. Identical (data, spec, seed) give identical output.
MatchedSample cem_match(const DataTable& data, const std::string& treatment,
                        const CoarseningSpec& spec, uint64_t seed);

struct AteResult {
    double ate;
    double se;
    double ci_lo;
    double ci_hi;
    size_t n;        // 2 * surviving pairs
    size_t matched;  // surviving pairs
    size_t unmatched_treated;
    size_t dropped_pairs;  // undefined outcome on either side
};

AteResult ate(const MatchedSample& matched, const DataTable& data, const std::string& outcome);

void write_pairs(const MatchedSample& matched, const DataTable& data, std::ostream& os);
void write_ate_header(std::ostream& os);
void write_ate_row(const AteResult& r, const std::string& outcome, std::ostream& os);

}  // namespace disrupt
