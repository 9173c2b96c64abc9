#include "disrupt/indicators.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"

namespace disrupt {

namespace {

// Epoch-stamped membership marks: O(1) set reset between focal papers.
class Marks {
public:
    void resize(size_t n) { stamp_.assign(n, 0); cur_ = 0; }
    void clear() {
        if (++cur_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            cur_ = 1;
        }
    }
    void add(PaperIndex p) { stamp_[static_cast<size_t>(p)] = cur_; }
    bool has(PaperIndex p) const { return stamp_[static_cast<size_t>(p)] == cur_; }

private:
    std::vector<uint32_t> stamp_;
    uint32_t cur_ = 0;
};

struct Workspace {
    Marks ref_set;   // members of R
    Marks citer_set; // citers of the focal paper
    Marks seen;      // n_k dedup
    std::vector<PaperIndex> citers;

    void resize(size_t n) {
        ref_set.resize(n);
        citer_set.resize(n);
        seen.resize(n);
    }
};

bool year_in_window(const Corpus& corpus, PaperIndex p, long long bound) {
    return corpus.has_year(p) && corpus.meta(p).year <= bound;
}

// Citers of `focal`, window-filtered. A yearless focal admits no citers under a
// window (the bound cannot be formed).
void collect_citers(const Corpus& corpus, PaperIndex focal, std::optional<int> window,
                    std::vector<PaperIndex>& out) {
    out.clear();
    const auto in = corpus.in_edges(focal);
    if (!window) {
        out.assign(in.begin(), in.end());
        return;
    }
    if (!corpus.has_year(focal)) return;
    const long long bound = static_cast<long long>(corpus.meta(focal).year) + *window;
    for (const PaperIndex c : in)
        if (year_in_window(corpus, c, bound)) out.push_back(c);
}

struct OwnModeResult {
    int64_t n_i = 0;
    std::vector<int64_t> n_j;  // per threshold
    int64_t n_k = 0;
    int64_t dep_links = 0;
    int64_t citer_count = 0;
};

// One pass over the focal paper's neighbourhood: link counts per citer against
// the paper's own reference set, plus the n_k sweep over the references'
// citers. Window restricts citers and n_k candidates by the same year bound.
OwnModeResult own_mode_counts(const Corpus& corpus, PaperIndex focal,
                              const std::vector<int>& thresholds, std::optional<int> window,
                              Workspace& ws) {
    OwnModeResult res;
    res.n_j.assign(thresholds.size(), 0);

    ws.ref_set.clear();
    const auto refs = corpus.out_edges(focal);
    for (const PaperIndex r : refs) ws.ref_set.add(r);

    collect_citers(corpus, focal, window, ws.citers);
    res.citer_count = static_cast<int64_t>(ws.citers.size());

    ws.citer_set.clear();
    for (const PaperIndex c : ws.citers) ws.citer_set.add(c);

    for (const PaperIndex c : ws.citers) {
        int64_t links = 0;
        for (const PaperIndex x : corpus.out_edges(c))
            if (ws.ref_set.has(x)) ++links;
        if (links == 0) ++res.n_i;
        for (size_t t = 0; t < thresholds.size(); ++t)
            if (links >= thresholds[t]) ++res.n_j[t];
        res.dep_links += links;
    }

    ws.seen.clear();
    const bool windowed = window.has_value() && corpus.has_year(focal);
    const long long bound =
        windowed ? static_cast<long long>(corpus.meta(focal).year) + *window : 0;
    for (const PaperIndex r : refs) {
        for (const PaperIndex p : corpus.in_edges(r)) {
            if (p == focal || ws.citer_set.has(p)) continue;
            if (window && !(windowed && year_in_window(corpus, p, bound))) continue;
            if (!ws.seen.has(p)) {
                ws.seen.add(p);
                ++res.n_k;
            }
        }
    }
    return res;
}

struct CohortScratch {
    Marks union_set;    // cohort reference union U
    Marks citers_of_u;  // papers with >= 1 reference in U
    std::vector<PaperIndex> union_vec;

    void resize(size_t n) {
        union_set.resize(n);
        citers_of_u.resize(n);
    }
};

// Shared per-cohort state: the reference union U and the set of papers citing
// at least one member of U. Both are reused by every focal paper in the cohort.
struct CohortContext {
    int64_t citers_of_u_count = 0;  // window-filtered when a window is set
    bool windowed = false;
    long long bound = 0;
};

CohortContext build_cohort_context(const Corpus& corpus, const Corpus::Cohort& cohort,
                                   std::optional<int> window, CohortScratch& cs) {
    CohortContext ctx;
    cs.union_set.clear();
    cs.union_vec.clear();
    for (const PaperIndex m : cohort.members)
        for (const PaperIndex r : corpus.out_edges(m))
            if (!cs.union_set.has(r)) {
                cs.union_set.add(r);
                cs.union_vec.push_back(r);
            }

    if (window) {
        ctx.windowed = true;
        ctx.bound = static_cast<long long>(cohort.year) + *window;
    }
    cs.citers_of_u.clear();
    for (const PaperIndex r : cs.union_vec) {
        for (const PaperIndex p : corpus.in_edges(r)) {
            if (cs.citers_of_u.has(p)) continue;
            cs.citers_of_u.add(p);
            if (!ctx.windowed || year_in_window(corpus, p, ctx.bound)) ++ctx.citers_of_u_count;
        }
    }
    return ctx;
}

struct CohortModeResult {
    int64_t n_i = 0;
    std::vector<int64_t> n_j;
    int64_t n_k = 0;
};

// Counts for one focal paper against its cohort's reference union. n_k is
// derived from the cohort-wide citer set: everything citing U, minus the focal
// paper's own citers and the focal paper itself.
CohortModeResult cohort_mode_counts(const Corpus& corpus, PaperIndex focal,
                                    const std::vector<int>& thresholds,
                                    std::optional<int> window, const CohortContext& ctx,
                                    CohortScratch& cs, Workspace& ws) {
    CohortModeResult res;
    res.n_j.assign(thresholds.size(), 0);

    collect_citers(corpus, focal, window, ws.citers);
    int64_t overlap = 0;  // citers of focal that also cite U (window-consistent)
    for (const PaperIndex c : ws.citers) {
        int64_t links = 0;
        for (const PaperIndex x : corpus.out_edges(c))
            if (cs.union_set.has(x)) ++links;
        if (links == 0) ++res.n_i;
        for (size_t t = 0; t < thresholds.size(); ++t)
            if (links >= thresholds[t]) ++res.n_j[t];
        if (cs.citers_of_u.has(c)) ++overlap;
    }
    const bool focal_cites_u = cs.citers_of_u.has(focal);
    // the focal paper's own year equals the cohort year, always inside the window
    res.n_k = ctx.citers_of_u_count - overlap - (focal_cites_u ? 1 : 0);
    return res;
}

std::optional<double> ratio_or_undefined(int64_t n_i, int64_t n_j, int64_t n_k) {
    const int64_t denom = n_i + n_j + n_k;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(n_i - n_j) / static_cast<double>(denom);
}

}  // namespace

DisruptionCounts disruption_counts(const Corpus& corpus, PaperIndex focal, int threshold,
                                   RefSetMode mode, std::optional<int> window) {
    if (focal < 0 || static_cast<size_t>(focal) >= corpus.size())
        throw UserError("unknown focal paper index");
    if (threshold < 1) throw UserError("link threshold must be >= 1");
    if (window && *window < 0) throw UserError("window must be >= 0");

    Workspace ws;
    ws.resize(corpus.size());
    const std::vector<int> thresholds{threshold};

    DisruptionCounts counts;
    counts.threshold = threshold;
    counts.mode = mode;
    if (mode == RefSetMode::own_references) {
        const OwnModeResult r = own_mode_counts(corpus, focal, thresholds, window, ws);
        counts.n_i = r.n_i;
        counts.n_j = r.n_j[0];
        counts.n_k = r.n_k;
        return counts;
    }
    const int32_t cohort = corpus.cohort_of(focal);
    if (cohort < 0) {
        counts.defined = false;  // reported, not fatal
        return counts;
    }
    CohortScratch cs;
    cs.resize(corpus.size());
    const CohortContext ctx =
        build_cohort_context(corpus, corpus.cohorts()[static_cast<size_t>(cohort)], window, cs);
    const CohortModeResult r =
        cohort_mode_counts(corpus, focal, thresholds, window, ctx, cs, ws);
    counts.n_i = r.n_i;
    counts.n_j = r.n_j[0];
    counts.n_k = r.n_k;
    return counts;
}

std::optional<double> disruption_index(const DisruptionCounts& counts) {
    if (!counts.defined) return std::nullopt;
    return ratio_or_undefined(counts.n_i, counts.n_j, counts.n_k);
}

std::optional<double> dep_value(const Corpus& corpus, PaperIndex focal, DepMode mode,
                                std::optional<int> window) {
    if (focal < 0 || static_cast<size_t>(focal) >= corpus.size())
        throw UserError("unknown focal paper index");
    Workspace ws;
    ws.resize(corpus.size());
    const OwnModeResult r = own_mode_counts(corpus, focal, {}, window, ws);
    if (mode == DepMode::total_links) return static_cast<double>(r.dep_links);
    if (r.citer_count == 0) return std::nullopt;
    return static_cast<double>(r.dep_links) / static_cast<double>(r.citer_count);
}

std::vector<std::optional<double>> invert_dep(const std::vector<std::optional<double>>& values) {
    double max_dep = 0.0;
    bool any = false;
    for (const auto& v : values)
        if (v) {
            max_dep = any ? std::max(max_dep, *v) : *v;
            any = true;
        }
    if (!any) throw DegenerateError("invert_dep: no defined DEP values");
    std::vector<std::optional<double>> out(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i]) out[i] = max_dep + 1.0 - *values[i];
    return out;
}

std::string IndicatorTable::Report::summary() const {
    std::ostringstream os;
    os << focal_papers << " focal papers";
    if (skipped_stubs) os << " (" << skipped_stubs << " stubs skipped)";
    if (no_cohort) os << ", " << no_cohort << " without a (journal, year) cohort";
    os << "; undefined:";
    for (size_t t = 0; t < undefined_di.size(); ++t)
        os << " di[" << t << "]=" << undefined_di[t] << " di_n[" << t << "]=" << undefined_di_n[t];
    os << " dep=" << undefined_dep;
    return os.str();
}

std::vector<std::string> IndicatorTable::column_names() const {
    std::vector<std::string> names{"citations", "log_citations"};
    for (const int t : thresholds) names.push_back("di" + std::to_string(t));
    for (const int t : thresholds) names.push_back("di" + std::to_string(t) + "n");
    names.push_back("dep");
    names.push_back("dep_inverse");
    return names;
}

IndicatorTable compute_all(const Corpus& corpus, const IndicatorConfig& config) {
    for (const int t : config.thresholds)
        if (t < 1) throw UserError("link threshold must be >= 1");
    if (config.thresholds.empty()) throw UserError("at least one link threshold required");
    if (config.window && *config.window < 0) throw UserError("window must be >= 0");

    const size_t n = corpus.size();
    const size_t n_thresholds = config.thresholds.size();

    IndicatorTable table;
    table.thresholds = config.thresholds;
    table.report.undefined_di.assign(n_thresholds, 0);
    table.report.undefined_di_n.assign(n_thresholds, 0);

    // focal set: non-stub papers passing the filter, in index (= id) order
    std::vector<PaperIndex> focal;
    std::vector<int32_t> row_of(n, -1);
    for (size_t i = 0; i < n; ++i) {
        const PaperMeta& m = corpus.meta(static_cast<PaperIndex>(i));
        if (m.stub) {
            ++table.report.skipped_stubs;
            continue;
        }
        if (!config.focal_doc_type.empty() && m.doc_type != config.focal_doc_type) continue;
        if (!config.focal_journal.empty() && m.journal != config.focal_journal) continue;
        if (config.focal_year_min && (m.year == kNoYear || m.year < *config.focal_year_min))
            continue;
        if (config.focal_year_max && (m.year == kNoYear || m.year > *config.focal_year_max))
            continue;
        row_of[i] = static_cast<int32_t>(focal.size());
        focal.push_back(static_cast<PaperIndex>(i));
    }
    table.report.focal_papers = focal.size();
    table.rows.resize(focal.size());

    const int nthreads =
        config.workers > 0 ? config.workers : omp_get_max_threads();

    // pass 1: own-reference counts, DEP, citations — independent per paper
    {
        std::vector<Workspace> ws(static_cast<size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
        {
            Workspace& w = ws[static_cast<size_t>(omp_get_thread_num())];
            w.resize(n);
#pragma omp for schedule(dynamic, 64)
            for (int64_t fi = 0; fi < static_cast<int64_t>(focal.size()); ++fi) {
                const PaperIndex f = focal[static_cast<size_t>(fi)];
                const OwnModeResult r =
                    own_mode_counts(corpus, f, config.thresholds, config.window, w);
                IndicatorRecord& rec = table.rows[static_cast<size_t>(fi)];
                rec.paper = f;
                rec.year = corpus.meta(f).year;
                rec.citations = r.citer_count;
                rec.log_citations = log_citations(r.citer_count);
                rec.di.resize(n_thresholds);
                rec.di_n.resize(n_thresholds);  // stays empty unless the cohort pass fills it
                for (size_t t = 0; t < n_thresholds; ++t)
                    rec.di[t] = ratio_or_undefined(r.n_i, r.n_j[t], r.n_k);
                if (config.dep_mode == DepMode::total_links)
                    rec.dep = static_cast<double>(r.dep_links);
                else if (r.citer_count > 0)
                    rec.dep = static_cast<double>(r.dep_links) / static_cast<double>(r.citer_count);
            }
        }
    }

    // pass 2: cohort-union counts, parallel over cohorts so the per-cohort
    // union and citer set are built once and shared
    {
        const auto& cohorts = corpus.cohorts();
        std::vector<Workspace> ws(static_cast<size_t>(nthreads));
        std::vector<CohortScratch> cs(static_cast<size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
        {
            const auto tid = static_cast<size_t>(omp_get_thread_num());
            ws[tid].resize(n);
            cs[tid].resize(n);
#pragma omp for schedule(dynamic, 1)
            for (int64_t ci = 0; ci < static_cast<int64_t>(cohorts.size()); ++ci) {
                const Corpus::Cohort& cohort = cohorts[static_cast<size_t>(ci)];
                bool any_focal = false;
                for (const PaperIndex m : cohort.members)
                    if (row_of[static_cast<size_t>(m)] >= 0) {
                        any_focal = true;
                        break;
                    }
                if (!any_focal) continue;
                const CohortContext ctx =
                    build_cohort_context(corpus, cohort, config.window, cs[tid]);
                for (const PaperIndex m : cohort.members) {
                    const int32_t row = row_of[static_cast<size_t>(m)];
                    if (row < 0) continue;
                    const CohortModeResult r = cohort_mode_counts(
                        corpus, m, config.thresholds, config.window, ctx, cs[tid], ws[tid]);
                    IndicatorRecord& rec = table.rows[static_cast<size_t>(row)];
                    for (size_t t = 0; t < n_thresholds; ++t)
                        rec.di_n[t] = ratio_or_undefined(r.n_i, r.n_j[t], r.n_k);
                }
            }
        }
    }

    // inverse DEP needs the corpus-wide maximum over defined values
    double max_dep = 0.0;
    bool any_dep = false;
    for (const auto& rec : table.rows)
        if (rec.dep) {
            max_dep = any_dep ? std::max(max_dep, *rec.dep) : *rec.dep;
            any_dep = true;
        }
    for (auto& rec : table.rows) {
        if (rec.dep && any_dep) rec.dep_inverse = max_dep + 1.0 - *rec.dep;
        if (!rec.dep) ++table.report.undefined_dep;
        for (size_t t = 0; t < n_thresholds; ++t) {
            if (!rec.di[t]) ++table.report.undefined_di[t];
            if (!rec.di_n[t]) ++table.report.undefined_di_n[t];
        }
        if (corpus.cohort_of(rec.paper) < 0) ++table.report.no_cohort;
    }
    return table;
}

namespace {

void write_opt(std::ostream& os, const std::optional<double>& v) {
    if (v) os << format_real(*v);
}

}  // namespace

void write_indicator_table(const IndicatorTable& table, const Corpus& corpus, std::ostream& os) {
    os << "id,year";
    for (const auto& name : table.column_names()) os << ',' << name;
    os << '\n';
    for (const auto& rec : table.rows) {
        os << corpus.id(rec.paper) << ',';
        if (rec.year != kNoYear) os << rec.year;
        os << ',' << rec.citations << ',' << format_real(rec.log_citations);
        for (const auto& v : rec.di) {
            os << ',';
            write_opt(os, v);
        }
        for (const auto& v : rec.di_n) {
            os << ',';
            write_opt(os, v);
        }
        os << ',';
        write_opt(os, rec.dep);
        os << ',';
        write_opt(os, rec.dep_inverse);
        os << '\n';
    }
}

IndicatorTable read_indicator_table(const std::string& path, const Corpus& corpus) {
    const std::string text = slurp_file(path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw UserError(path + ": empty file");

    std::vector<std::string_view> f;
    std::string storage;
    split_fields(lines[0], ',', f, storage);
    if (f.size() < 6 || f[0] != "id" || f[1] != "year")
        throw UserError(path + ": not an indicator table");

    IndicatorTable table;
    // recover thresholds from the diN column names
    for (const auto col : f) {
        if (col.size() > 2 && col.substr(0, 2) == "di" && col.back() != 'n') {
            long long t;
            if (parse_i64(col.substr(2), t)) table.thresholds.push_back(static_cast<int>(t));
        }
    }
    const size_t n_thresholds = table.thresholds.size();
    const size_t expected_fields = 6 + 2 * n_thresholds;
    for (size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        split_fields(lines[li], ',', f, storage);
        if (f.size() != expected_fields)
            throw UserError(path + ":" + std::to_string(li + 1) + ": expected " +
                            std::to_string(expected_fields) + " fields");
        IndicatorRecord rec;
        rec.paper = corpus.require(trim(f[0]));
        long long year;
        if (parse_i64(f[1], year)) rec.year = static_cast<int>(year);
        long long cites;
        if (!parse_i64(f[2], cites))
            throw UserError(path + ":" + std::to_string(li + 1) + ": bad citations field");
        rec.citations = cites;
        double lc;
        if (!parse_f64(f[3], lc))
            throw UserError(path + ":" + std::to_string(li + 1) + ": bad log_citations field");
        rec.log_citations = lc;
        auto opt_at = [&](size_t idx) -> std::optional<double> {
            if (trim(f[idx]).empty()) return std::nullopt;
            double v;
            if (!parse_f64(f[idx], v))
                throw UserError(path + ":" + std::to_string(li + 1) + ": bad numeric field");
            return v;
        };
        for (size_t t = 0; t < n_thresholds; ++t) rec.di.push_back(opt_at(4 + t));
        for (size_t t = 0; t < n_thresholds; ++t)
            rec.di_n.push_back(opt_at(4 + n_thresholds + t));
        rec.dep = opt_at(4 + 2 * n_thresholds);
        rec.dep_inverse = opt_at(5 + 2 * n_thresholds);
        table.rows.push_back(std::move(rec));
    }
    return table;
}

}  // namespace disrupt
