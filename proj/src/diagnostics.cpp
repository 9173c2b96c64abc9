#include "disrupt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "disrupt/errors.hpp"
#include "disrupt/special_math.hpp"

namespace disrupt {

namespace {

// R2 of y on the given design, by the same QR path the main fits use
double aux_r2(const Matrix& x, const std::vector<double>& y) {
    const LeastSquaresResult ls = qr_least_squares(x, y);
    if (!ls.full_rank) {
        // exact collinearity among the regressors; drop the flagged columns and
        // refit (an exact duplicate does not change the fitted values)
        Matrix reduced(x.rows, x.cols - ls.deficient_cols.size());
        size_t jj = 0;
        for (size_t j = 0; j < x.cols; ++j) {
            if (std::find(ls.deficient_cols.begin(), ls.deficient_cols.end(), j) !=
                ls.deficient_cols.end())
                continue;
            for (size_t i = 0; i < x.rows; ++i) reduced(i, jj) = x(i, j);
            ++jj;
        }
        return aux_r2(reduced, y);
    }
    double ybar = 0;
    for (const double v : y) ybar += v;
    ybar /= static_cast<double>(y.size());
    double rss = 0, tss = 0;
    for (size_t i = 0; i < x.rows; ++i) {
        double f = 0;
        for (size_t j = 0; j < x.cols; ++j) f += x(i, j) * ls.beta[j];
        rss += (y[i] - f) * (y[i] - f);
        tss += (y[i] - ybar) * (y[i] - ybar);
    }
    return tss > 0 ? 1.0 - rss / tss : 0.0;
}

}  // namespace

std::vector<VifEntry> vif(const DataTable& data, const std::vector<std::string>& predictors) {
    if (predictors.size() < 2) throw UserError("vif needs at least two predictors");

    // listwise deletion over the predictor set
    std::vector<int> cols;
    for (const auto& p : predictors) cols.push_back(data.require_col(p));
    std::vector<size_t> rows;
    for (size_t i = 0; i < data.n_rows(); ++i) {
        bool ok = true;
        for (const int c : cols)
            if (is_missing(data.cell(i, c))) ok = false;
        if (ok) rows.push_back(i);
    }
    if (rows.size() < predictors.size() + 1)
        throw UserError("too few complete rows for vif");

    std::vector<VifEntry> out;
    for (size_t j = 0; j < predictors.size(); ++j) {
        std::vector<std::string> others;
        for (size_t m = 0; m < predictors.size(); ++m)
            if (m != j) others.push_back(predictors[m]);
        const Matrix x = build_design(data, others, rows);
        std::vector<double> y(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) y[i] = data.cell(rows[i], cols[j]);
        const double r2 = aux_r2(x, y);
        const double denom = 1.0 - r2;
        out.push_back({predictors[j], denom <= 1e-12
                                          ? std::numeric_limits<double>::infinity()
                                          : 1.0 / denom});
    }
    return out;
}

BreuschPagan breusch_pagan(const OlsFit& fit, const DataTable& data) {
    const size_t n = fit.row_index.size();
    double ss = 0;
    double scale = 0;
    for (size_t i = 0; i < n; ++i) {
        ss += fit.residuals[i] * fit.residuals[i];
        scale = std::max(scale, std::fabs(fit.fitted[i]));
    }
    if (ss <= (scale > 0 ? scale * scale : 1.0) * 1e-24 * static_cast<double>(n))
        throw DegenerateError("breusch_pagan: residuals are numerically zero (exact fit)");

    // LM = n * R2 from regressing e^2 on the model's predictors
    const Matrix x = build_design(data, fit.spec.predictors, fit.row_index);
    std::vector<double> e2(n);
    for (size_t i = 0; i < n; ++i) e2[i] = fit.residuals[i] * fit.residuals[i];
    const double r2 = aux_r2(x, e2);
    BreuschPagan bp;
    bp.statistic = static_cast<double>(n) * r2;
    bp.df = static_cast<int>(fit.spec.predictors.size());
    bp.p_value = chi2_sf(bp.statistic, bp.df);
    return bp;
}

CooksDistances cooks_distance(const OlsFit& fit, double cutoff) {
    CooksDistances out;
    const size_t n = fit.row_index.size();
    out.cutoff = cutoff > 0 ? cutoff : 4.0 / static_cast<double>(n);
    out.d.resize(n);
    const double kd = static_cast<double>(fit.k) * fit.s2;
    for (size_t i = 0; i < n; ++i) {
        const double h = fit.leverages[i];
        const double e = fit.residuals[i];
        if (h >= 1.0 - 1e-12) {
            out.d[i] = std::numeric_limits<double>::infinity();
        } else {
            out.d[i] = (e * e / kd) * (h / ((1.0 - h) * (1.0 - h)));
        }
        if (out.d[i] > out.cutoff) out.flagged_ids.push_back(fit.row_ids[i]);
    }
    return out;
}

NormalityTest skew_kurt_normality(const std::vector<double>& values) {
    const size_t n_sz = values.size();
    if (n_sz < 20) throw UserError("normality test requires n >= 20");
    const auto n = static_cast<double>(n_sz);

    double mean = 0;
    for (const double v : values) mean += v;
    mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (const double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0) throw DegenerateError("normality test on a constant sample");

    NormalityTest t{};
    t.skewness = m3 / std::pow(m2, 1.5);
    t.kurtosis = m4 / (m2 * m2);

    // skewness transform (D'Agostino 1970)
    {
        const double y = t.skewness * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
        const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                             ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
        const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
        const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
        const double alpha = std::sqrt(2.0 / (w2 - 1.0));
        t.z_skew = delta * std::asinh(y / alpha);
    }
    // kurtosis transform (Anscombe & Glynn 1983)
    {
        const double mean_b2 = 3.0 * (n - 1.0) / (n + 1.0);
        const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) /
                              ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
        const double xs = (t.kurtosis - mean_b2) / std::sqrt(var_b2);
        const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                                  std::sqrt(6.0 * (n + 3.0) * (n + 5.0) /
                                            (n * (n - 2.0) * (n - 3.0)));
        const double a = 6.0 + 8.0 / sqrt_beta1 *
                                   (2.0 / sqrt_beta1 +
                                    std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
        const double term = (1.0 - 2.0 / a) / (1.0 + xs * std::sqrt(2.0 / (a - 4.0)));
        t.z_kurt = ((1.0 - 2.0 / (9.0 * a)) - std::cbrt(term)) / std::sqrt(2.0 / (9.0 * a));
    }
    t.statistic = t.z_skew * t.z_skew + t.z_kurt * t.z_kurt;
    t.p_value = chi2_sf(t.statistic, 2.0);
    return t;
}

}  // namespace disrupt
