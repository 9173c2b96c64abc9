#include "disrupt/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"
#include "disrupt/rng.hpp"

namespace disrupt {

namespace {

int64_t identity_key(double v) {
    // exact-value matching via the bit pattern; 0.0 and -0.0 collapse
    if (v == 0.0) v = 0.0;
    int64_t k;
    std::memcpy(&k, &v, sizeof(k));
    return k;
}

std::vector<double> quintile_cuts(std::vector<double> values) {
    // nearest-rank percentiles at 20/40/60/80 over the pooled sample
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    std::vector<double> cuts;
    for (const double p : {20.0, 40.0, 60.0, 80.0}) {
        auto rank = static_cast<size_t>(std::ceil(p / 100.0 * n));
        rank = std::clamp<size_t>(rank, 1, values.size());
        cuts.push_back(values[rank - 1]);
    }
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

int64_t bin_of(double v, const std::vector<double>& cuts) {
    // value <= cutpoint goes to the lower bin
    for (size_t b = 0; b < cuts.size(); ++b)
        if (v <= cuts[b]) return static_cast<int64_t>(b);
    return static_cast<int64_t>(cuts.size());
}

}  // namespace

CoarsenResult coarsen(const DataTable& data, const CoarseningSpec& spec,
                      const std::string& treatment) {
    if (spec.covariates.empty()) throw UserError("coarsening spec has no covariates");
    if (data.n_rows() == 0) throw UserError("coarsen: empty data");
    std::vector<int> cols;
    for (const auto& [name, rule] : spec.covariates) {
        cols.push_back(data.require_col(name));
        if (rule.kind == CoarseningRule::Kind::cutpoints) {
            if (rule.cuts.empty()) throw UserError("empty cutpoint list for " + name);
            for (size_t i = 1; i < rule.cuts.size(); ++i)
                if (!(rule.cuts[i] > rule.cuts[i - 1]))
                    throw UserError("cutpoints for " + name + " must be strictly increasing");
        }
    }
    const int tc = treatment.empty() ? -1 : data.require_col(treatment);

    CoarsenResult res;
    for (size_t i = 0; i < data.n_rows(); ++i) {
        bool ok = tc < 0 || !is_missing(data.cell(i, tc));
        for (const int c : cols)
            if (is_missing(data.cell(i, c))) ok = false;
        if (ok)
            res.rows.push_back(i);
        else
            ++res.excluded_missing;
    }
    if (res.rows.empty()) throw UserError("coarsen: no complete rows");

    // per-covariate quintile cutpoints over the analysis sample
    std::vector<std::vector<double>> cuts(spec.covariates.size());
    for (size_t j = 0; j < spec.covariates.size(); ++j) {
        if (spec.covariates[j].second.kind == CoarseningRule::Kind::quintile) {
            std::vector<double> vals;
            vals.reserve(res.rows.size());
            for (const size_t i : res.rows) vals.push_back(data.cell(i, cols[j]));
            cuts[j] = quintile_cuts(std::move(vals));
        } else if (spec.covariates[j].second.kind == CoarseningRule::Kind::cutpoints) {
            cuts[j] = spec.covariates[j].second.cuts;
        }
    }

    res.signatures.reserve(res.rows.size());
    res.display.reserve(res.rows.size());
    for (const size_t i : res.rows) {
        Signature sig(spec.covariates.size());
        std::string disp;
        for (size_t j = 0; j < spec.covariates.size(); ++j) {
            const double v = data.cell(i, cols[j]);
            if (spec.covariates[j].second.kind == CoarseningRule::Kind::identity) {
                sig[j] = identity_key(v);
                if (!disp.empty()) disp += ';';
                disp += format_real(v);
            } else {
                sig[j] = bin_of(v, cuts[j]);
                if (!disp.empty()) disp += ';';
                disp += std::to_string(sig[j]);
            }
        }
        res.signatures.push_back(std::move(sig));
        res.display.push_back(std::move(disp));
    }
    return res;
}

MatchedSample cem_match(const DataTable& data, const std::string& treatment,
                        const CoarseningSpec& spec, uint64_t seed) {
    const int tc = data.require_col(treatment);
    const CoarsenResult co = coarsen(data, spec, treatment);

    struct Stratum {
        std::vector<size_t> treated;
        std::vector<size_t> controls;
        std::string display;
    };
    std::map<Signature, Stratum> strata;
    size_t n_treated = 0, n_controls = 0;
    for (size_t idx = 0; idx < co.rows.size(); ++idx) {
        const size_t row = co.rows[idx];
        const double t = data.cell(row, tc);
        if (t != 0.0 && t != 1.0)
            throw UserError("treatment column " + treatment + " must be 0/1");
        Stratum& s = strata[co.signatures[idx]];
        if (s.display.empty()) s.display = co.display[idx];
        if (t == 1.0) {
            s.treated.push_back(row);
            ++n_treated;
        } else {
            s.controls.push_back(row);
            ++n_controls;
        }
    }
    if (n_treated == 0) throw UserError("cem: no treated units");
    if (n_controls == 0) throw UserError("cem: no control units");

    MatchedSample out;
    out.excluded_missing = co.excluded_missing;
    SplitMix64 rng(mix_seed(seed, 0xCE11));
    size_t strata_with_both = 0;
    // std::map iteration is signature-ordered, so draws are reproducible
    for (auto& [sig, s] : strata) {
        if (!s.treated.empty() && !s.controls.empty()) ++strata_with_both;
        size_t matched_here = 0;
        for (const size_t treated_row : s.treated) {
            if (s.controls.empty()) {
                out.unmatched_treated.push_back(treated_row);
                continue;
            }
            const size_t pick = rng.next_below(s.controls.size());
            out.pairs.push_back({treated_row, s.controls[pick], s.display});
            s.controls[pick] = s.controls.back();
            s.controls.pop_back();
            ++matched_here;
        }
        out.strata.push_back(
            {s.display, s.treated.size(), s.controls.size() + matched_here, matched_here});
    }
    if (strata_with_both == 0)
        throw UserError("cem: no stratum contains both treated and control units");
    return out;
}

AteResult ate(const MatchedSample& matched, const DataTable& data, const std::string& outcome) {
    const int oc = data.require_col(outcome);
    std::vector<double> t_vals, c_vals;
    size_t dropped = 0;
    for (const auto& p : matched.pairs) {
        const double tv = data.cell(p.treated_row, oc);
        const double cv = data.cell(p.control_row, oc);
        if (is_missing(tv) || is_missing(cv)) {
            ++dropped;
            continue;
        }
        t_vals.push_back(tv);
        c_vals.push_back(cv);
    }
    if (t_vals.empty()) throw UserError("ate: no surviving pairs with a defined outcome");

    const auto m = static_cast<double>(t_vals.size());
    double mt = 0, mc = 0;
    for (const double v : t_vals) mt += v;
    for (const double v : c_vals) mc += v;
    mt /= m;
    mc /= m;
    double vt = 0, vc = 0;
    for (const double v : t_vals) vt += (v - mt) * (v - mt);
    for (const double v : c_vals) vc += (v - mc) * (v - mc);
    // two-sample unequal-variance (Welch) standard error over the matched groups
    const double denom = m > 1 ? m - 1 : 1;
    vt /= denom;
    vc /= denom;
    const double se = std::sqrt(vt / m + vc / m);

    AteResult r{};
    r.ate = mt - mc;
    r.se = se;
    r.ci_lo = r.ate - 1.96 * se;
    r.ci_hi = r.ate + 1.96 * se;
    r.matched = t_vals.size();
    r.n = 2 * t_vals.size();
    r.unmatched_treated = matched.unmatched_treated.size();
    r.dropped_pairs = dropped;
    return r;
}

void write_pairs(const MatchedSample& matched, const DataTable& data, std::ostream& os) {
    os << "treated_id,control_id,stratum_signature\n";
    for (const auto& p : matched.pairs)
        os << data.row_ids[p.treated_row] << ',' << data.row_ids[p.control_row] << ','
           << p.signature << '\n';
}

void write_ate_header(std::ostream& os) {
    os << "outcome,ate,se,ci_lo,ci_hi,n,matched,unmatched\n";
}

void write_ate_row(const AteResult& r, const std::string& outcome, std::ostream& os) {
    os << outcome << ',' << format_real(r.ate) << ',' << format_real(r.se) << ','
       << format_real(r.ci_lo) << ',' << format_real(r.ci_hi) << ',' << r.n << ',' << r.matched
       << ',' << r.unmatched_treated << '\n';
}

}  // namespace disrupt
