#pragma once

// Regression diagnostics: variance inflation factors, the Breusch-Pagan LM
// heteroscedasticity test, Cook's distance influence measure, and a combined
// skewness/kurtosis normality test.

#include <string>
#include <vector>

#include "disrupt/ols.hpp"

namespace disrupt {

struct VifEntry {
    std::string predictor;
    double vif;  // +inf for exact collinearity
};

// VIF_j = 1 / (1 - R2_j) from regressing predictor j on the remaining ones.
std::vector<VifEntry> vif(const DataTable& data, const std::vector<std::string>& predictors);

struct BreuschPagan {
    double statistic;  // n * R2 from the squared-residual auxiliary regression
    int df;            // number of predictors
    double p_value;    // chi-square upper tail
};

// Throws DegenerateError when residuals are all (numerically) zero.
BreuschPagan breusch_pagan(const OlsFit& fit, const DataTable& data);

struct CooksDistances {
    std::vector<double> d;  // per retained observation, fit.row_index order
    double cutoff;
    std::vector<std::string> flagged_ids;  // ids with d above the cutoff
};

// D_i = (e_i^2 / (k s^2)) * h_i / (1 - h_i)^2; exact-fit points (leverage 1)
// come out infinite. Default cutoff 4/n.
CooksDistances cooks_distance(const OlsFit& fit, double cutoff = 0.0);

struct NormalityTest {
    double skewness;   // sample sqrt(b1)
    double kurtosis;   // sample b2
    double z_skew;
    double z_kurt;
    double statistic;  // z_skew^2 + z_kurt^2, chi-square(2) under normality
    double p_value;
};

// Combined skewness/kurtosis K^2 test. Requires n >= 20 and a non-constant sample.
NormalityTest skew_kurt_normality(const std::vector<double>& values);

}  // namespace disrupt
