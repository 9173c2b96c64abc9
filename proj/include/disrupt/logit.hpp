#pragma once

// Logistic regression by Newton-Raphson maximum likelihood, with sandwich
// robust standard errors, odds ratios (delta-method SEs) and McFadden's
// pseudo R-squared. Complete and quasi-complete separation are detected and
// reported as SeparationError instead of silently diverging.

#include <map>
#include <string>
#include <vector>

#include "disrupt/linalg.hpp"
#include "disrupt/ols.hpp"

namespace disrupt {

struct LogitFit {
    ModelSpec spec;
    std::vector<FitTerm> terms;       // coefficient scale (log odds)
    std::vector<FitTerm> odds_terms;  // odds-ratio scale, delta-method SEs
    double pseudo_r2 = 0;             // McFadden
    double log_lik = 0;
    size_t n = 0;
    size_t k = 0;
    bool converged = false;
    int iterations = 0;

    std::vector<size_t> row_index;
    std::vector<std::string> row_ids;
    std::vector<double> fitted;  // probabilities
    std::vector<double> beta;    // predictors then intercept
    Matrix vcov;                 // coefficient scale

    size_t excluded_rows = 0;
    std::map<std::string, size_t> missing_count;
};

// Tolerance 1e-8 on the coefficient change, at most 100 iterations. The outcome
// must be strictly 0/1 with both classes present.
LogitFit logit_fit(const DataTable& data, const ModelSpec& spec);

}  // namespace disrupt
