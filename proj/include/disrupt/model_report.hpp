#pragma once

// Model output rendering: the machine-readable long format
// `model,term,estimate,se,p,stars,n,r2` and an aligned plain-text table with
// the conventional significance stars.

#include <ostream>
#include <string>
#include <vector>

#include "disrupt/logit.hpp"
#include "disrupt/ols.hpp"

namespace disrupt {

struct ModelResult {
    std::string name;
    std::string family;  // "ols" or "logit"
    std::vector<FitTerm> terms;  // odds-ratio scale for logit
    size_t n = 0;
    double r2 = 0;  // pseudo R2 for logit
    std::string error;  // non-empty when the fit failed; terms empty
};

ModelResult from_fit(std::string name, const OlsFit& fit);
ModelResult from_fit(std::string name, const LogitFit& fit);

// * p<0.05, ** p<0.01, *** p<0.001
std::string significance_stars(double p);

void write_models_csv(const std::vector<ModelResult>& models, std::ostream& os);

// one block per model: term, estimate (5 decimals), se, p, stars
void render_models_text(const std::vector<ModelResult>& models, std::ostream& os);

// wide rendering: terms as rows, models as columns, estimate with stars over
// the standard error in parentheses
void render_models_wide(const std::vector<ModelResult>& models, std::ostream& os);

}  // namespace disrupt
