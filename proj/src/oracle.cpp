#include "disrupt/oracle.hpp"

#include <algorithm>

#include "disrupt/errors.hpp"

namespace disrupt {

namespace {

bool contains(std::span<const PaperIndex> list, PaperIndex p) {
    return std::find(list.begin(), list.end(), p) != list.end();
}

bool in_window(const Corpus& corpus, PaperIndex p, PaperIndex focal, std::optional<int> window) {
    if (!window) return true;
    if (!corpus.has_year(focal) || !corpus.has_year(p)) return false;
    return static_cast<long long>(corpus.meta(p).year) <=
           static_cast<long long>(corpus.meta(focal).year) + *window;
}

// papers citing the focal paper, found by scanning every paper's reference list
std::vector<PaperIndex> scan_citers(const Corpus& corpus, PaperIndex focal,
                                    std::optional<int> window) {
    std::vector<PaperIndex> citers;
    for (size_t p = 0; p < corpus.size(); ++p) {
        const auto pi = static_cast<PaperIndex>(p);
        if (pi == focal) continue;
        if (!contains(corpus.out_edges(pi), focal)) continue;
        if (!in_window(corpus, pi, focal, window)) continue;
        citers.push_back(pi);
    }
    return citers;
}

int64_t links_into(const Corpus& corpus, PaperIndex p, const std::vector<PaperIndex>& ref_set) {
    int64_t links = 0;
    for (const PaperIndex x : corpus.out_edges(p))
        if (std::find(ref_set.begin(), ref_set.end(), x) != ref_set.end()) ++links;
    return links;
}

// the three counts, each by its own literal scan
DisruptionCounts enumerate_counts(const Corpus& corpus, PaperIndex focal,
                                  const std::vector<PaperIndex>& ref_set, int threshold,
                                  RefSetMode mode, std::optional<int> window) {
    DisruptionCounts c;
    c.threshold = threshold;
    c.mode = mode;

    const std::vector<PaperIndex> citers = scan_citers(corpus, focal, window);

    for (const PaperIndex cp : citers)
        if (links_into(corpus, cp, ref_set) == 0) ++c.n_i;

    for (const PaperIndex cp : citers)
        if (links_into(corpus, cp, ref_set) >= threshold) ++c.n_j;

    for (size_t p = 0; p < corpus.size(); ++p) {
        const auto pi = static_cast<PaperIndex>(p);
        if (pi == focal) continue;
        if (contains(corpus.out_edges(pi), focal) && in_window(corpus, pi, focal, window))
            continue;  // a citer of the focal paper
        if (!in_window(corpus, pi, focal, window)) continue;
        if (links_into(corpus, pi, ref_set) >= 1) ++c.n_k;
    }
    return c;
}

// union of reference lists over all papers sharing the focal paper's
// (journal, year); the focal paper is a member of its own cohort
std::vector<PaperIndex> scan_cohort_union(const Corpus& corpus, PaperIndex focal) {
    const PaperMeta& fm = corpus.meta(focal);
    std::vector<PaperIndex> u;
    for (size_t p = 0; p < corpus.size(); ++p) {
        const auto pi = static_cast<PaperIndex>(p);
        const PaperMeta& m = corpus.meta(pi);
        if (m.stub || m.journal.empty() || m.year == kNoYear) continue;
        if (m.journal != fm.journal || m.year != fm.year) continue;
        for (const PaperIndex r : corpus.out_edges(pi))
            if (std::find(u.begin(), u.end(), r) == u.end()) u.push_back(r);
    }
    return u;
}

}  // namespace

OracleRecord brute_force_indicators(const Corpus& corpus, PaperIndex focal,
                                    const OracleConfig& config) {
    if (corpus.size() > kOracleGuard)
        throw UserError("oracle guard: corpus exceeds " + std::to_string(kOracleGuard) +
                        " papers");
    if (focal < 0 || static_cast<size_t>(focal) >= corpus.size())
        throw UserError("unknown focal paper index");

    OracleRecord rec;
    const std::vector<PaperIndex> citers = scan_citers(corpus, focal, config.window);
    rec.citations = static_cast<int64_t>(citers.size());
    rec.log_citations = std::log1p(static_cast<double>(rec.citations));

    const std::vector<PaperIndex> own_refs(corpus.out_edges(focal).begin(),
                                           corpus.out_edges(focal).end());
    for (const int t : config.thresholds) {
        const DisruptionCounts c =
            enumerate_counts(corpus, focal, own_refs, t, RefSetMode::own_references, config.window);
        rec.counts.push_back(c);
        rec.di.push_back(disruption_index(c));
    }

    const PaperMeta& fm = corpus.meta(focal);
    const bool has_cohort = !fm.stub && !fm.journal.empty() && fm.year != kNoYear;
    for (const int t : config.thresholds) {
        DisruptionCounts c;
        c.threshold = t;
        c.mode = RefSetMode::cohort_union;
        if (has_cohort) {
            const std::vector<PaperIndex> u = scan_cohort_union(corpus, focal);
            c = enumerate_counts(corpus, focal, u, t, RefSetMode::cohort_union, config.window);
        } else {
            c.defined = false;
        }
        rec.counts_n.push_back(c);
        rec.di_n.push_back(disruption_index(c));
    }

    // DEP: total citation links from citing papers into the focal paper's own
    // reference list, divided by the citer count in mean mode
    int64_t total_links = 0;
    for (const PaperIndex cp : citers) total_links += links_into(corpus, cp, own_refs);
    if (config.dep_mode == DepMode::total_links)
        rec.dep = static_cast<double>(total_links);
    else if (!citers.empty())
        rec.dep = static_cast<double>(total_links) / static_cast<double>(citers.size());
    return rec;
}

}  // namespace disrupt
