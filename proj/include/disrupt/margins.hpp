#pragma once

// Predicted group means: model predictions averaged within a binary group
// (optionally crossed with a by-column such as publication year), with
// delta-method 95% confidence intervals. Logistic fits are reported on the
// response (probability) scale.

#include <optional>

#include "disrupt/logit.hpp"
#include "disrupt/ols.hpp"

namespace disrupt {

struct GroupMean {
    std::optional<double> by_level;  // absent when no by-column was given
    int group;                       // 0 or 1
    size_t n;
    double estimate;
    double ci_lo;
    double ci_hi;
};

std::vector<GroupMean> predict_group_means(const OlsFit& fit, const DataTable& data,
                                           const std::string& group,
                                           const std::string& by = "");

std::vector<GroupMean> predict_group_means(const LogitFit& fit, const DataTable& data,
                                           const std::string& group,
                                           const std::string& by = "");

}  // namespace disrupt
