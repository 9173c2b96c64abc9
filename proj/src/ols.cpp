#include "disrupt/ols.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "disrupt/errors.hpp"
#include "disrupt/special_math.hpp"

namespace disrupt {

std::vector<size_t> complete_rows(const DataTable& data, const ModelSpec& spec,
                                  std::map<std::string, size_t>& missing, size_t& excluded) {
    std::vector<int> cols;
    cols.push_back(data.require_col(spec.outcome));
    for (const auto& p : spec.predictors) cols.push_back(data.require_col(p));

    std::unordered_set<std::string> drop(spec.exclude_rows.begin(), spec.exclude_rows.end());
    excluded = 0;
    std::vector<size_t> rows;
    rows.reserve(data.n_rows());
    for (size_t i = 0; i < data.n_rows(); ++i) {
        if (!drop.empty() && drop.contains(data.row_ids[i])) {
            ++excluded;
            continue;
        }
        bool ok = true;
        for (const int c : cols)
            if (is_missing(data.cell(i, c))) {
                ++missing[data.names[static_cast<size_t>(c)]];
                ok = false;
            }
        if (ok) rows.push_back(i);
    }
    return rows;
}

Matrix build_design(const DataTable& data, const std::vector<std::string>& predictors,
                    const std::vector<size_t>& rows) {
    Matrix x(rows.size(), predictors.size() + 1);
    for (size_t j = 0; j < predictors.size(); ++j) {
        const int c = data.require_col(predictors[j]);
        for (size_t i = 0; i < rows.size(); ++i) x(i, j) = data.cell(rows[i], c);
    }
    for (size_t i = 0; i < rows.size(); ++i) x(i, predictors.size()) = 1.0;
    return x;
}

OlsFit ols_fit(const DataTable& data, const ModelSpec& spec) {
    {
        std::unordered_set<std::string> seen;
        for (const auto& p : spec.predictors) {
            if (p == spec.outcome)
                throw UserError("outcome " + spec.outcome + " cannot also be a predictor");
            if (!seen.insert(p).second) throw UserError("duplicate predictor: " + p);
        }
    }

    OlsFit fit;
    fit.spec = spec;
    fit.row_index = complete_rows(data, spec, fit.missing_count, fit.excluded_rows);

    const size_t n = fit.row_index.size();
    const size_t k = spec.predictors.size() + 1;
    if (n < k + 1)
        throw UserError("too few complete observations (" + std::to_string(n) + ") for " +
                        std::to_string(k) + " parameters");
    fit.n = n;
    fit.k = k;

    const Matrix x = build_design(data, spec.predictors, fit.row_index);
    std::vector<double> y(n);
    const int yc = data.require_col(spec.outcome);
    for (size_t i = 0; i < n; ++i) y[i] = data.cell(fit.row_index[i], yc);

    const LeastSquaresResult ls = qr_least_squares(x, y);
    if (!ls.full_rank) {
        std::vector<std::string> bad;
        for (const size_t j : ls.deficient_cols)
            bad.push_back(j < spec.predictors.size() ? spec.predictors[j] : "_cons");
        std::string msg = "design matrix is rank deficient; collinear column(s):";
        for (const auto& b : bad) msg += " " + b;
        throw RankDeficientError(msg, std::move(bad));
    }
    fit.beta = ls.beta;
    fit.xtx_inv = xtx_inverse_from_r(ls.r);

    fit.fitted.resize(n);
    fit.residuals.resize(n);
    double rss = 0;
    double ybar = 0;
    for (size_t i = 0; i < n; ++i) ybar += y[i];
    ybar /= static_cast<double>(n);
    double tss = 0;
    for (size_t i = 0; i < n; ++i) {
        double f = 0;
        for (size_t j = 0; j < k; ++j) f += x(i, j) * fit.beta[j];
        fit.fitted[i] = f;
        fit.residuals[i] = y[i] - f;
        rss += fit.residuals[i] * fit.residuals[i];
        tss += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r2 = tss > 0 ? 1.0 - rss / tss : 0.0;
    fit.s2 = rss / static_cast<double>(n - k);

    fit.leverages.resize(n);
    std::vector<double> xi(k);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) xi[j] = x(i, j);
        fit.leverages[i] = quad_form(fit.xtx_inv, xi);
    }

    if (spec.robust) {
        // HC1: n/(n-k) * (X'X)^-1 (sum e_i^2 x_i x_i') (X'X)^-1
        Matrix meat(k, k);
        for (size_t i = 0; i < n; ++i) {
            const double w = fit.residuals[i] * fit.residuals[i];
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b) meat(a, b) += w * x(i, a) * x(i, b);
        }
        Matrix tmp(k, k);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double s = 0;
                for (size_t m = 0; m < k; ++m) s += fit.xtx_inv(a, m) * meat(m, b);
                tmp(a, b) = s;
            }
        fit.vcov = Matrix(k, k);
        const double dof_factor = static_cast<double>(n) / static_cast<double>(n - k);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double s = 0;
                for (size_t m = 0; m < k; ++m) s += tmp(a, m) * fit.xtx_inv(m, b);
                fit.vcov(a, b) = dof_factor * s;
            }
    } else {
        fit.vcov = Matrix(k, k);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) fit.vcov(a, b) = fit.s2 * fit.xtx_inv(a, b);
    }

    fit.row_ids.reserve(n);
    for (const size_t r : fit.row_index) fit.row_ids.push_back(data.row_ids[r]);

    fit.terms.resize(k);
    for (size_t j = 0; j < k; ++j) {
        FitTerm& t = fit.terms[j];
        t.name = j < spec.predictors.size() ? spec.predictors[j] : "_cons";
        t.estimate = fit.beta[j];
        t.se = std::sqrt(std::max(0.0, fit.vcov(j, j)));
        if (t.se > 0) {
            const double z = t.estimate / t.se;
            t.p = spec.t_reference ? two_sided_p_from_t(z, static_cast<double>(n - k))
                                   : two_sided_p_from_z(z);
        } else {
            t.p = t.estimate == 0.0 ? 1.0 : 0.0;
        }
    }
    return fit;
}

}  // namespace disrupt
