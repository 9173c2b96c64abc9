#pragma once

// Least-squares fits with heteroscedasticity-robust (HC1) standard errors,
// retaining residuals, leverages and the coefficient covariance for the
// diagnostic suite.

#include <map>
#include <string>
#include <vector>

#include "disrupt/linalg.hpp"
#include "disrupt/table.hpp"

namespace disrupt {

struct ModelSpec {
    std::string outcome;
    std::vector<std::string> predictors;  // distinct, outcome excluded
    bool robust = true;                   // HC1 sandwich standard errors
    std::vector<std::string> exclude_rows;  // row ids dropped before fitting
    bool t_reference = false;  // exact t p-values instead of the normal approximation

    ModelSpec() = default;
    ModelSpec(std::string outcome_, std::vector<std::string> predictors_, bool robust_ = true)
        : outcome(std::move(outcome_)), predictors(std::move(predictors_)), robust(robust_) {}
};

struct FitTerm {
    std::string name;  // predictor name, or "_cons" for the intercept
    double estimate = 0;
    double se = 0;
    double p = 1;
};

struct OlsFit {
    ModelSpec spec;
    std::vector<FitTerm> terms;  // predictors in spec order, then _cons
    double r2 = 0;
    size_t n = 0;  // rows with no missing outcome/predictor after exclusions
    size_t k = 0;  // estimated parameters including the intercept
    double s2 = 0;  // RSS / (n - k)

    // per retained observation, in row_index order
    std::vector<size_t> row_index;  // rows of the source table
    std::vector<std::string> row_ids;
    std::vector<double> residuals;
    std::vector<double> fitted;
    std::vector<double> leverages;

    std::vector<double> beta;  // internal order: predictors then intercept
    Matrix xtx_inv;
    Matrix vcov;  // robust (HC1) when spec.robust, classical otherwise

    size_t excluded_rows = 0;                     // dropped via spec.exclude_rows
    std::map<std::string, size_t> missing_count;  // per column, among dropped rows
};

// Throws RankDeficientError (naming the collinear columns) or UserError when n
// is too small. Rows with any missing field are dropped and counted.
OlsFit ols_fit(const DataTable& data, const ModelSpec& spec);

// Design matrix for `spec` over the given rows: predictor columns then an
// intercept column of ones. Shared with the diagnostics and margins code.
Matrix build_design(const DataTable& data, const std::vector<std::string>& predictors,
                    const std::vector<size_t>& rows);

// Rows usable for the fit: exclusions applied, listwise deletion over outcome
// and predictors; missing counts per column accumulated into `missing`.
std::vector<size_t> complete_rows(const DataTable& data, const ModelSpec& spec,
                                  std::map<std::string, size_t>& missing, size_t& excluded);

}  // namespace disrupt
