#include "disrupt/logit.hpp"

#include <algorithm>
#include <cmath>

#include "disrupt/errors.hpp"
#include "disrupt/special_math.hpp"

namespace disrupt {

namespace {

constexpr double kTol = 1e-8;
constexpr int kMaxIter = 100;

double log_lik_at(const std::vector<double>& y, const std::vector<double>& eta) {
    // log L = sum y*eta - log(1 + e^eta), stable on both tails
    double ll = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        const double e = eta[i];
        const double log1pexp = e > 30 ? e : std::log1p(std::exp(e));
        ll += y[i] * e - log1pexp;
    }
    return ll;
}

}  // namespace

LogitFit logit_fit(const DataTable& data, const ModelSpec& spec) {
    LogitFit fit;
    fit.spec = spec;
    fit.row_index = complete_rows(data, spec, fit.missing_count, fit.excluded_rows);
    const size_t n = fit.row_index.size();
    const size_t k = spec.predictors.size() + 1;
    if (n < k + 1)
        throw UserError("too few complete observations (" + std::to_string(n) + ") for " +
                        std::to_string(k) + " parameters");
    fit.n = n;
    fit.k = k;

    const int yc = data.require_col(spec.outcome);
    std::vector<double> y(n);
    size_t ones = 0;
    for (size_t i = 0; i < n; ++i) {
        y[i] = data.cell(fit.row_index[i], yc);
        if (y[i] == 1.0)
            ++ones;
        else if (y[i] != 0.0)
            throw UserError("outcome " + spec.outcome + " must be 0/1 for a logistic fit");
    }
    if (ones == 0 || ones == n)
        throw UserError("outcome " + spec.outcome + " has a single class; both classes required");

    const Matrix x = build_design(data, spec.predictors, fit.row_index);

    fit.beta.assign(k, 0.0);
    std::vector<double> eta(n, 0.0), p(n, 0.5), w(n);
    std::vector<double> grad(k), delta;

    auto refresh = [&]() {
        for (size_t i = 0; i < n; ++i) {
            double e = 0;
            for (size_t j = 0; j < k; ++j) e += x(i, j) * fit.beta[j];
            eta[i] = e;
            p[i] = 1.0 / (1.0 + std::exp(-e));
            w[i] = p[i] * (1.0 - p[i]);
        }
    };

    for (fit.iterations = 1; fit.iterations <= kMaxIter; ++fit.iterations) {
        refresh();

        // complete separation: every observation predicted on the correct side
        // with saturated probability
        bool all_saturated = true;
        for (size_t i = 0; i < n; ++i) {
            const bool sat = y[i] == 1.0 ? p[i] >= 1.0 - 1e-6 : p[i] <= 1e-6;
            if (!sat) {
                all_saturated = false;
                break;
            }
        }
        if (all_saturated)
            throw SeparationError("complete separation: the predictors perfectly classify " +
                                  spec.outcome + " (monotone likelihood)");

        std::fill(grad.begin(), grad.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            const double r = y[i] - p[i];
            for (size_t j = 0; j < k; ++j) grad[j] += x(i, j) * r;
        }
        Matrix h(k, k);
        for (size_t i = 0; i < n; ++i)
            for (size_t a = 0; a < k; ++a)
                for (size_t b = a; b < k; ++b) h(a, b) += w[i] * x(i, a) * x(i, b);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < a; ++b) h(a, b) = h(b, a);

        if (!cholesky_solve(h, grad, delta)) {
            // information matrix collapsed: either collinear columns or
            // weights driven to zero by a separating direction
            bool saturating = false;
            for (size_t i = 0; i < n; ++i)
                if (p[i] <= 1e-10 || p[i] >= 1.0 - 1e-10) saturating = true;
            if (saturating)
                throw SeparationError(
                    "quasi-complete separation detected while fitting " + spec.outcome);
            throw RankDeficientError("singular information matrix in logistic fit", {});
        }
        double max_step = 0;
        for (size_t j = 0; j < k; ++j) {
            fit.beta[j] += delta[j];
            max_step = std::max(max_step, std::fabs(delta[j]));
        }
        if (max_step <= kTol) {
            fit.converged = true;
            break;
        }
        double max_beta = 0;
        for (const double b : fit.beta) max_beta = std::max(max_beta, std::fabs(b));
        if (max_beta > 1e4)
            throw SeparationError("diverging coefficients while fitting " + spec.outcome +
                                  "; data are separated");
    }
    if (!fit.converged) {
        refresh();
        bool saturating = false;
        for (size_t i = 0; i < n; ++i)
            if (p[i] <= 1e-10 || p[i] >= 1.0 - 1e-10) saturating = true;
        if (saturating)
            throw SeparationError("quasi-complete separation: no convergence in " +
                                  std::to_string(kMaxIter) + " iterations with saturated fits");
        throw ModelError("logistic fit did not converge in " + std::to_string(kMaxIter) +
                         " iterations");
    }
    refresh();
    // quasi-complete separation with boundary ties: the likelihood approaches a
    // finite supremum along a recession direction, so Newton "converges" with
    // enormous coefficients. Fitted log-odds beyond +-30 (probabilities within
    // ~1e-13 of 0 or 1) only arise on such ridges.
    for (size_t i = 0; i < n; ++i)
        if (std::fabs(eta[i]) > 30.0)
            throw SeparationError("quasi-complete separation while fitting " + spec.outcome +
                                  ": fitted log-odds exceed +-30 (monotone likelihood)");
    fit.fitted = p;
    fit.log_lik = log_lik_at(y, eta);

    // intercept-only log likelihood for McFadden's pseudo R2
    const double pbar = static_cast<double>(ones) / static_cast<double>(n);
    const double ll0 = static_cast<double>(ones) * std::log(pbar) +
                       static_cast<double>(n - ones) * std::log(1.0 - pbar);
    fit.pseudo_r2 = ll0 != 0.0 ? 1.0 - fit.log_lik / ll0 : 0.0;

    // sandwich covariance on the coefficient scale, n/(n-1) small-sample factor
    Matrix h(k, k);
    for (size_t i = 0; i < n; ++i)
        for (size_t a = 0; a < k; ++a)
            for (size_t b = a; b < k; ++b) h(a, b) += w[i] * x(i, a) * x(i, b);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < a; ++b) h(a, b) = h(b, a);
    Matrix hinv;
    if (!spd_inverse(h, hinv))
        throw RankDeficientError("singular information matrix at the optimum", {});
    if (spec.robust) {
        Matrix meat(k, k);
        for (size_t i = 0; i < n; ++i) {
            const double r = y[i] - p[i];
            for (size_t a = 0; a < k; ++a)
                for (size_t b = 0; b < k; ++b) meat(a, b) += r * r * x(i, a) * x(i, b);
        }
        Matrix tmp(k, k);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double s = 0;
                for (size_t m = 0; m < k; ++m) s += hinv(a, m) * meat(m, b);
                tmp(a, b) = s;
            }
        fit.vcov = Matrix(k, k);
        const double f = static_cast<double>(n) / static_cast<double>(n - 1);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                double s = 0;
                for (size_t m = 0; m < k; ++m) s += tmp(a, m) * hinv(m, b);
                fit.vcov(a, b) = f * s;
            }
    } else {
        fit.vcov = hinv;
    }

    fit.row_ids.reserve(n);
    for (const size_t r : fit.row_index) fit.row_ids.push_back(data.row_ids[r]);

    fit.terms.resize(k);
    fit.odds_terms.resize(k);
    for (size_t j = 0; j < k; ++j) {
        FitTerm& t = fit.terms[j];
        t.name = j < spec.predictors.size() ? spec.predictors[j] : "_cons";
        t.estimate = fit.beta[j];
        t.se = std::sqrt(std::max(0.0, fit.vcov(j, j)));
        t.p = t.se > 0 ? two_sided_p_from_z(t.estimate / t.se) : (t.estimate == 0.0 ? 1.0 : 0.0);

        FitTerm& o = fit.odds_terms[j];
        o.name = t.name;
        o.estimate = std::exp(t.estimate);
        o.se = o.estimate * t.se;  // delta method on exp(beta)
        o.p = t.p;
    }
    return fit;
}

}  // namespace disrupt
