#include "disrupt/synth.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <set>
#include <sstream>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"
#include "disrupt/rng.hpp"

namespace disrupt {

namespace {

std::string paper_id(int64_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "p%07lld", static_cast<long long>(idx));
    return buf;
}

std::string journal_name(int idx) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "J%02d", idx);
    return buf;
}

void validate(const GeneratorParams& p) {
    if (p.n_papers < 1) throw UserError("generate: n_papers must be >= 1");
    if (p.year_min > p.year_max) throw UserError("generate: empty year range");
    if (p.journals < 1) throw UserError("generate: journals must be >= 1");
    if (p.mean_out_degree < 0) throw UserError("generate: mean_out_degree must be >= 0");
    if (p.n_papers > 1 && p.mean_out_degree > static_cast<double>(p.n_papers - 1))
        throw UserError("generate: mean_out_degree " + std::to_string(p.mean_out_degree) +
                        " infeasible for " + std::to_string(p.n_papers) +
                        " papers (more references requested than earlier papers exist)");
    if (p.planted_disruptive < 0 || p.planted_disruptive > p.n_papers)
        throw UserError("generate: planted_disruptive out of range");
    if (p.planted_effect < 0) throw UserError("generate: planted_effect must be >= 0");
}

struct EdgeSet {
    // adjacency as mutable sets during construction; flattened at the end
    std::vector<std::set<int32_t>> refs;  // refs[u] = cited papers of u

    explicit EdgeSet(size_t n) : refs(n) {}
    bool add(int32_t u, int32_t v) { return u != v && refs[static_cast<size_t>(u)].insert(v).second; }
    bool remove(int32_t u, int32_t v) { return refs[static_cast<size_t>(u)].erase(v) > 0; }
    bool has(int32_t u, int32_t v) const { return refs[static_cast<size_t>(u)].contains(v); }
};

}  // namespace

GeneratedCorpus generate_corpus(const GeneratorParams& params) {
    validate(params);
    const auto n = static_cast<size_t>(params.n_papers);

    GeneratedCorpus out;
    out.params = params;

    // metadata stream; papers sorted by year so index order matches id order
    // while keeping the reference pools (papers of strictly earlier years) as
    // simple index prefixes
    SplitMix64 meta_rng(mix_seed(params.seed, 1));
    std::vector<int> years(n);
    for (auto& y : years)
        y = params.year_min +
            static_cast<int>(meta_rng.next_below(
                static_cast<uint64_t>(params.year_max - params.year_min + 1)));
    std::sort(years.begin(), years.end());

    out.papers.resize(n);
    for (size_t i = 0; i < n; ++i) {
        PaperMeta& m = out.papers[i];
        m.id = paper_id(static_cast<int64_t>(i));
        m.year = years[i];
        m.journal = journal_name(static_cast<int>(meta_rng.next_below(
            static_cast<uint64_t>(params.journals))));
        m.doc_type = "article";
        m.n_authors = 1 + static_cast<int>(meta_rng.next_poisson(3.0));
        m.n_pages = 1 + static_cast<int>(meta_rng.next_poisson(6.0));
        m.n_countries = 1 + static_cast<int>(meta_rng.next_poisson(0.5));
        m.usa = meta_rng.next_double() < 0.4;
        m.china = meta_rng.next_double() < 0.1;
        m.eu28 = meta_rng.next_double() < 0.3;
    }

    // prefix of papers with a strictly earlier year
    std::vector<size_t> earlier(n, 0);
    for (size_t i = 1; i < n; ++i) earlier[i] = (years[i] > years[i - 1]) ? i : earlier[i - 1];

    // edge stream: out-degree ~ Poisson(mean), truncated to the candidate pool.
    // Preferential attachment draws from a repeat-by-degree pool (one base entry
    // per paper plus one entry per citation received), so the pick probability
    // is proportional to in-degree + 1.
    SplitMix64 edge_rng(mix_seed(params.seed, 2));
    EdgeSet edges(n);
    std::vector<int32_t> pool;  // preferential only: entries for earlier-year papers
    if (params.attachment == GeneratorParams::Attachment::preferential)
        pool.reserve(n * (1 + static_cast<size_t>(params.mean_out_degree)));
    size_t pooled_papers = 0;  // base entries added for papers [0, pooled_papers)

    for (size_t i = 0; i < n; ++i) {
        const size_t avail = earlier[i];
        if (params.attachment == GeneratorParams::Attachment::preferential)
            while (pooled_papers < avail) pool.push_back(static_cast<int32_t>(pooled_papers++));
        if (avail == 0) continue;
        size_t want = static_cast<size_t>(edge_rng.next_poisson(params.mean_out_degree));
        want = std::min(want, avail);
        size_t attempts = 4 * want + 16;
        size_t added = 0;
        while (added < want && attempts-- > 0) {
            int32_t target;
            if (params.attachment == GeneratorParams::Attachment::preferential) {
                // pool entries beyond `avail` base papers may reference same-year
                // papers that already collected citations; reject those
                target = pool[edge_rng.next_below(pool.size())];
                if (static_cast<size_t>(target) >= avail) continue;
            } else {
                target = static_cast<int32_t>(edge_rng.next_below(avail));
            }
            if (edges.add(static_cast<int32_t>(i), target)) {
                ++added;
                if (params.attachment == GeneratorParams::Attachment::preferential)
                    pool.push_back(target);
            }
        }
    }

    // plant disruptive papers
    if (params.planted_disruptive > 0) {
        SplitMix64 plant_rng(mix_seed(params.seed, 3));
        // eligible: papers with at least one strictly earlier and one strictly
        // later paper by year
        std::vector<int32_t> eligible;
        for (size_t i = 0; i < n; ++i)
            if (earlier[i] > 0 && years[i] < years[n - 1])
                eligible.push_back(static_cast<int32_t>(i));
        if (static_cast<int64_t>(eligible.size()) < params.planted_disruptive)
            throw UserError("generate: not enough interior-year papers to plant " +
                            std::to_string(params.planted_disruptive) + " disruptive papers");
        // sample without replacement
        std::vector<int32_t> planted;
        for (int64_t k = 0; k < params.planted_disruptive; ++k) {
            const size_t pick = plant_rng.next_below(eligible.size());
            planted.push_back(eligible[pick]);
            eligible[pick] = eligible.back();
            eligible.pop_back();
        }
        std::sort(planted.begin(), planted.end());
        std::vector<bool> is_planted(n, false);
        for (const int32_t p : planted) is_planted[static_cast<size_t>(p)] = true;

        // planted papers must not cite each other: a planted reference could not
        // be claimed exclusively by two owners
        for (const int32_t p : planted) {
            std::vector<int32_t> drop;
            for (const int32_t r : edges.refs[static_cast<size_t>(p)])
                if (is_planted[static_cast<size_t>(r)]) drop.push_back(r);
            for (const int32_t r : drop) edges.remove(p, r);
        }

        // claim pass: each reference of a planted paper belongs to exactly one owner
        std::vector<int32_t> claim(n, -1);
        auto claim_fresh_ref = [&](int32_t p) {
            const size_t avail = earlier[static_cast<size_t>(p)];
            for (size_t attempts = 0; attempts < 64; ++attempts) {
                const auto r = static_cast<int32_t>(plant_rng.next_below(avail));
                if (claim[static_cast<size_t>(r)] >= 0 || is_planted[static_cast<size_t>(r)])
                    continue;
                if (edges.add(p, r)) {
                    claim[static_cast<size_t>(r)] = p;
                    return true;
                }
            }
            return false;
        };
        for (const int32_t p : planted) {
            std::vector<int32_t> drop;
            for (const int32_t r : edges.refs[static_cast<size_t>(p)]) {
                if (claim[static_cast<size_t>(r)] >= 0)
                    drop.push_back(r);  // already owned by an earlier planted paper
                else
                    claim[static_cast<size_t>(r)] = p;
            }
            for (const int32_t r : drop) edges.remove(p, r);
            if (edges.refs[static_cast<size_t>(p)].empty() && !claim_fresh_ref(p))
                throw UserError("generate: could not secure a reference for a planted paper");
        }

        // rewire every foreign edge into a claimed reference; the replacement
        // target must be unclaimed and unplanted so no invariant is re-broken
        for (size_t q = 0; q < n; ++q) {
            std::vector<int32_t> foreign;
            for (const int32_t r : edges.refs[q])
                if (claim[static_cast<size_t>(r)] >= 0 &&
                    claim[static_cast<size_t>(r)] != static_cast<int32_t>(q))
                    foreign.push_back(r);
            for (const int32_t r : foreign) {
                edges.remove(static_cast<int32_t>(q), r);
                const size_t avail = earlier[q];
                for (size_t attempts = 0; attempts < 16; ++attempts) {
                    const auto alt = static_cast<int32_t>(plant_rng.next_below(avail));
                    if (claim[static_cast<size_t>(alt)] >= 0 || is_planted[static_cast<size_t>(alt)])
                        continue;
                    if (edges.add(static_cast<int32_t>(q), alt)) break;
                }
            }
        }

        // citers: at least one, plus round(planted_effect) extras, all from
        // strictly later years (their reference lists are already clean)
        std::vector<int64_t> in_degree(n, 0);
        for (size_t u = 0; u < n; ++u)
            for (const int32_t v : edges.refs[u]) ++in_degree[static_cast<size_t>(v)];
        const auto extra = static_cast<int64_t>(std::llround(params.planted_effect));
        for (const int32_t p : planted) {
            const int64_t want_citers = std::max<int64_t>(1, in_degree[static_cast<size_t>(p)]) +
                                        extra - in_degree[static_cast<size_t>(p)];
            // candidates: unplanted papers of strictly later years
            size_t later_begin = static_cast<size_t>(p) + 1;
            while (later_begin < n && years[later_begin] == years[static_cast<size_t>(p)])
                ++later_begin;
            int64_t added = 0;
            size_t attempts = static_cast<size_t>(want_citers) * 8 + 64;
            while (added < want_citers && attempts-- > 0) {
                const auto c = static_cast<int32_t>(
                    later_begin + plant_rng.next_below(n - later_begin));
                if (is_planted[static_cast<size_t>(c)]) continue;
                if (edges.add(c, p)) ++added;
            }
            if (in_degree[static_cast<size_t>(p)] + added < 1)
                throw UserError("generate: could not secure a citer for a planted paper");
        }

        for (const int32_t p : planted) {
            out.papers[static_cast<size_t>(p)].milestone = true;
            out.planted_ids.push_back(out.papers[static_cast<size_t>(p)].id);
        }
    }

    for (size_t u = 0; u < n; ++u)
        for (const int32_t v : edges.refs[u]) out.edges.emplace_back(static_cast<int32_t>(u), v);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::string GeneratedCorpus::manifest_text() const {
    std::ostringstream os;
    os << "rng = splitmix64/v1\n";
    os << "seed = " << params.seed << "\n";
    os << "n_papers = " << papers.size() << "\n";
    os << "year_min = " << params.year_min << "\n";
    os << "year_max = " << params.year_max << "\n";
    os << "journals = " << params.journals << "\n";
    os << "mean_out_degree = " << format_real(params.mean_out_degree) << "\n";
    os << "attachment = "
       << (params.attachment == GeneratorParams::Attachment::preferential ? "preferential"
                                                                          : "uniform")
       << "\n";
    os << "edge_count = " << edges.size() << "\n";
    os << "planted_disruptive = " << planted_ids.size() << "\n";
    os << "planted_effect = " << format_real(params.planted_effect) << "\n";
    std::string joined;
    for (const auto& id : planted_ids) {
        if (!joined.empty()) joined += ",";
        joined += id;
    }
    os << "planted_ids = " << joined << "\n";
    return os.str();
}

void write_corpus_files(const GeneratedCorpus& corpus, const std::string& papers_path,
                        const std::string& citations_path, const std::string& manifest_path) {
    {
        AtomicWriter w(papers_path);
        w.stream() << "id,year,journal,doc_type,milestone,n_authors,n_pages,n_countries,usa,china,eu28\n";
        for (const auto& m : corpus.papers) {
            w.stream() << m.id << ',' << m.year << ',' << m.journal << ',' << m.doc_type << ','
                       << (m.milestone ? 1 : 0) << ',' << m.n_authors << ',' << m.n_pages << ','
                       << m.n_countries << ',' << (m.usa ? 1 : 0) << ',' << (m.china ? 1 : 0)
                       << ',' << (m.eu28 ? 1 : 0) << '\n';
        }
        w.commit();
    }
    {
        AtomicWriter w(citations_path);
        w.stream() << "citing,cited\n";
        for (const auto& [u, v] : corpus.edges)
            w.stream() << corpus.papers[static_cast<size_t>(u)].id << ','
                       << corpus.papers[static_cast<size_t>(v)].id << '\n';
        w.commit();
    }
    {
        AtomicWriter w(manifest_path);
        w.stream() << corpus.manifest_text();
        w.commit();
    }
}

Corpus to_corpus(const GeneratedCorpus& generated) {
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(generated.edges.size());
    for (const auto& [u, v] : generated.edges)
        edges.emplace_back(generated.papers[static_cast<size_t>(u)].id,
                           generated.papers[static_cast<size_t>(v)].id);
    return build_corpus(generated.papers, std::move(edges), LoadOptions{}, nullptr);
}

std::vector<std::pair<std::string, std::string>> read_manifest(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> out;
    const std::string text = slurp_file(path);
    for (const auto line : split_lines(text)) {
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos) continue;
        out.emplace_back(std::string(trim(line.substr(0, eq))),
                         std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

}  // namespace disrupt
