#include "disrupt/margins.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "disrupt/errors.hpp"

namespace disrupt {

namespace {

// cells of the estimation sample: (by-level, group) -> positions within row_index
using Cells = std::map<std::pair<double, int>, std::vector<size_t>>;

Cells build_cells(const DataTable& data, const std::vector<size_t>& row_index,
                  const std::string& group, const std::string& by) {
    const int gc = data.require_col(group);
    const int bc = by.empty() ? -1 : data.require_col(by);
    Cells cells;
    for (size_t pos = 0; pos < row_index.size(); ++pos) {
        const size_t row = row_index[pos];
        const double g = data.cell(row, gc);
        if (is_missing(g)) continue;
        if (g != 0.0 && g != 1.0) throw UserError("group column " + group + " must be 0/1");
        double b = 0.0;
        if (bc >= 0) {
            b = data.cell(row, bc);
            if (is_missing(b)) continue;
        }
        cells[{b, static_cast<int>(g)}].push_back(pos);
    }
    return cells;
}

template <typename Fit>
std::vector<GroupMean> group_means_impl(const Fit& fit, const DataTable& data,
                                        const std::string& group, const std::string& by,
                                        bool logistic) {
    const Matrix x = build_design(data, fit.spec.predictors, fit.row_index);
    const size_t k = x.cols;
    const Cells cells = build_cells(data, fit.row_index, group, by);

    std::vector<GroupMean> out;
    for (const auto& [key, members] : cells) {
        GroupMean gm;
        if (!by.empty()) gm.by_level = key.first;
        gm.group = key.second;
        gm.n = members.size();

        // delta method on the averaged prediction: gradient is the average
        // design row (identity link) or the average of p(1-p)x (logit link)
        std::vector<double> grad(k, 0.0);
        double est = 0;
        for (const size_t pos : members) {
            double eta = 0;
            for (size_t j = 0; j < k; ++j) eta += x(pos, j) * fit.beta[j];
            if (logistic) {
                const double p = 1.0 / (1.0 + std::exp(-eta));
                est += p;
                const double w = p * (1.0 - p);
                for (size_t j = 0; j < k; ++j) grad[j] += w * x(pos, j);
            } else {
                est += eta;
                for (size_t j = 0; j < k; ++j) grad[j] += x(pos, j);
            }
        }
        const auto m = static_cast<double>(members.size());
        est /= m;
        for (double& g : grad) g /= m;
        const double var = quad_form(fit.vcov, grad);
        const double se = std::sqrt(std::max(0.0, var));
        gm.estimate = est;
        gm.ci_lo = est - 1.96 * se;
        gm.ci_hi = est + 1.96 * se;
        out.push_back(gm);
    }
    return out;
}

}  // namespace

std::vector<GroupMean> predict_group_means(const OlsFit& fit, const DataTable& data,
                                           const std::string& group, const std::string& by) {
    return group_means_impl(fit, data, group, by, false);
}

std::vector<GroupMean> predict_group_means(const LogitFit& fit, const DataTable& data,
                                           const std::string& group, const std::string& by) {
    return group_means_impl(fit, data, group, by, true);
}

}  // namespace disrupt
