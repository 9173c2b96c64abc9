#include "disrupt/corpus.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"

namespace disrupt {

std::string LoadReport::summary() const {
    std::ostringstream os;
    os << "papers: " << papers_loaded << " loaded of " << paper_rows << " rows";
    if (filtered_doc_type) os << " (" << filtered_doc_type << " filtered by doc_type)";
    os << "; edges: " << edges_kept << " kept of " << edge_rows << " rows (" << duplicate_edges
       << " duplicates, " << self_loops << " self-loops dropped)";
    if (stub_papers) os << "; " << stub_papers << " stub papers materialized";
    return os.str();
}

PaperIndex Corpus::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? kNoPaper : it->second;
}

PaperIndex Corpus::require(std::string_view id) const {
    const PaperIndex p = find(id);
    if (p == kNoPaper) throw UserError("unknown paper id: " + std::string(id));
    return p;
}

int32_t Corpus::find_cohort(std::string_view journal, int year) const {
    auto jt = journal_ids_.find(std::string(journal));
    if (jt == journal_ids_.end()) return -1;
    auto ct = cohort_lookup_.find({jt->second, year});
    return ct == cohort_lookup_.end() ? -1 : ct->second;
}

void Corpus::serialize(std::ostream& os) const {
    os << "# papers " << metas_.size() << "\n";
    os << "id,year,journal,doc_type,milestone,n_authors,n_pages,n_countries,usa,china,eu28,stub\n";
    for (const auto& m : metas_) {
        os << m.id << ',';
        if (m.year != kNoYear) os << m.year;
        os << ',' << m.journal << ',' << m.doc_type << ',' << (m.milestone ? 1 : 0) << ','
           << m.n_authors << ',' << m.n_pages << ',' << m.n_countries << ',' << (m.usa ? 1 : 0)
           << ',' << (m.china ? 1 : 0) << ',' << (m.eu28 ? 1 : 0) << ',' << (m.stub ? 1 : 0)
           << '\n';
    }
    os << "# edges " << out_targets_.size() << "\n";
    os << "citing,cited\n";
    for (size_t u = 0; u < metas_.size(); ++u)
        for (const PaperIndex v : out_edges(static_cast<PaperIndex>(u)))
            os << metas_[u].id << ',' << metas_[static_cast<size_t>(v)].id << '\n';
}

Corpus build_corpus(std::vector<PaperMeta> papers,
                    std::vector<std::pair<std::string, std::string>> edges,
                    const LoadOptions& options, LoadReport* report) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep.paper_rows = papers.size();
    rep.edge_rows = edges.size();

    // doc-type filter applies to the metadata table, before any indexing;
    // edges touching filtered papers then follow the unknown-endpoint policy
    if (!options.doc_type_filter.empty()) {
        auto keep = std::remove_if(papers.begin(), papers.end(), [&](const PaperMeta& m) {
            return !m.stub && m.doc_type != options.doc_type_filter;
        });
        rep.filtered_doc_type = static_cast<size_t>(papers.end() - keep);
        papers.erase(keep, papers.end());
    }

    for (auto& m : papers) {
        if (m.id.empty()) throw UserError("empty paper id in metadata table");
        if (!m.stub && m.year != kNoYear &&
            (m.year < options.min_year || m.year > options.max_year))
            throw UserError("paper " + m.id + ": year " + std::to_string(m.year) +
                            " outside plausible range [" + std::to_string(options.min_year) +
                            ", " + std::to_string(options.max_year) + "]");
    }

    // stubs for unknown endpoints (lenient) are appended before sorting
    std::unordered_map<std::string, size_t> known;
    known.reserve(papers.size() * 2);
    for (size_t i = 0; i < papers.size(); ++i) {
        auto [it, fresh] = known.emplace(papers[i].id, i);
        if (!fresh) throw UserError("duplicate paper id: " + papers[i].id);
    }
    size_t self_loops = 0;
    std::vector<std::pair<std::string, std::string>> kept_edges;
    kept_edges.reserve(edges.size());
    for (auto& e : edges) {
        if (e.first == e.second) {
            ++self_loops;
            continue;
        }
        for (const std::string* endpoint : {&e.first, &e.second}) {
            if (known.contains(*endpoint)) continue;
            if (!options.lenient_edges)
                throw UserError("edge references unknown paper id: " + *endpoint);
            PaperMeta stub;
            stub.id = *endpoint;
            stub.stub = true;
            papers.push_back(std::move(stub));
            known.emplace(papers.back().id, papers.size() - 1);
            ++rep.stub_papers;
        }
        kept_edges.push_back(std::move(e));
    }
    rep.self_loops = self_loops;

    Corpus c;
    c.metas_ = std::move(papers);
    std::sort(c.metas_.begin(), c.metas_.end(),
              [](const PaperMeta& a, const PaperMeta& b) { return a.id < b.id; });
    c.index_.reserve(c.metas_.size() * 2);
    for (size_t i = 0; i < c.metas_.size(); ++i)
        c.index_.emplace(c.metas_[i].id, static_cast<PaperIndex>(i));
    rep.papers_loaded = c.metas_.size() - rep.stub_papers;

    std::vector<std::pair<PaperIndex, PaperIndex>> idx_edges;
    idx_edges.reserve(kept_edges.size());
    for (const auto& e : kept_edges)
        idx_edges.emplace_back(c.index_.at(e.first), c.index_.at(e.second));
    std::sort(idx_edges.begin(), idx_edges.end());
    idx_edges.erase(std::unique(idx_edges.begin(), idx_edges.end()), idx_edges.end());
    rep.duplicate_edges = kept_edges.size() - idx_edges.size();
    rep.edges_kept = idx_edges.size();

    const size_t n = c.metas_.size();
    c.out_offsets_.assign(n + 1, 0);
    c.in_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : idx_edges) {
        ++c.out_offsets_[static_cast<size_t>(u) + 1];
        ++c.in_offsets_[static_cast<size_t>(v) + 1];
    }
    for (size_t i = 0; i < n; ++i) {
        c.out_offsets_[i + 1] += c.out_offsets_[i];
        c.in_offsets_[i + 1] += c.in_offsets_[i];
    }
    c.out_targets_.resize(idx_edges.size());
    c.in_targets_.resize(idx_edges.size());
    {
        std::vector<size_t> pos = c.out_offsets_;
        for (const auto& [u, v] : idx_edges) c.out_targets_[pos[static_cast<size_t>(u)]++] = v;
        // idx_edges is sorted by (u, v), so each out list lands ascending
        pos = c.in_offsets_;
        for (const auto& [u, v] : idx_edges) c.in_targets_[pos[static_cast<size_t>(v)]++] = u;
        // in lists receive u in ascending-u order, likewise ascending
    }

    // cohorts over non-stub papers with a journal and a year
    c.cohort_of_.assign(n, -1);
    for (size_t i = 0; i < n; ++i) {
        const PaperMeta& m = c.metas_[i];
        if (m.stub || m.journal.empty() || m.year == kNoYear) continue;
        auto [jt, fresh] = c.journal_ids_.try_emplace(
            m.journal, static_cast<int32_t>(c.journal_names_.size()));
        if (fresh) c.journal_names_.push_back(m.journal);
        const std::pair<int32_t, int> key{jt->second, m.year};
        auto [ct, new_cohort] =
            c.cohort_lookup_.try_emplace(key, static_cast<int32_t>(c.cohorts_.size()));
        if (new_cohort) c.cohorts_.push_back({jt->second, m.year, {}});
        c.cohorts_[static_cast<size_t>(ct->second)].members.push_back(static_cast<PaperIndex>(i));
        c.cohort_of_[i] = ct->second;
    }
    return c;
}

namespace {

constexpr std::string_view kPapersHeader =
    "id,year,journal,doc_type,milestone,n_authors,n_pages,n_countries,usa,china,eu28";
constexpr std::string_view kCitationsHeader = "citing,cited";

bool parse_flag(std::string_view s, bool& out) {
    s = trim(s);
    if (s == "0") {
        out = false;
        return true;
    }
    if (s == "1") {
        out = true;
        return true;
    }
    return false;
}

int parse_count(std::string_view s, const std::string& file, size_t line, const char* what) {
    long long v;
    if (!parse_i64(s, v) || v < 0)
        throw UserError(file + ":" + std::to_string(line) + ": bad " + what + " '" +
                        std::string(s) + "'");
    return static_cast<int>(v);
}

std::string expected_header(std::string_view canon, char delim) {
    std::string h(canon);
    if (delim != ',') std::replace(h.begin(), h.end(), ',', delim);
    return h;
}

}  // namespace

Corpus load_corpus(const std::string& papers_path, const std::string& citations_path,
                   const LoadOptions& options, LoadReport* report) {
    const std::string papers_text = slurp_file(papers_path);
    const auto paper_lines = split_lines(papers_text);
    if (paper_lines.empty()) throw UserError(papers_path + ": empty file");
    {
        std::string want = expected_header(kPapersHeader, options.delimiter);
        if (std::string(trim(paper_lines[0])) != want)
            throw UserError(papers_path + ": bad header, expected '" + want + "'");
    }

    std::vector<PaperMeta> papers;
    papers.reserve(paper_lines.size() - 1);
    std::vector<std::string_view> f;
    std::string storage;
    for (size_t li = 1; li < paper_lines.size(); ++li) {
        if (trim(paper_lines[li]).empty()) continue;
        split_fields(paper_lines[li], options.delimiter, f, storage);
        if (f.size() != 11)
            throw UserError(papers_path + ":" + std::to_string(li + 1) + ": expected 11 fields, got " +
                            std::to_string(f.size()));
        PaperMeta m;
        m.id = std::string(trim(f[0]));
        long long year;
        if (!parse_i64(f[1], year))
            throw UserError(papers_path + ":" + std::to_string(li + 1) + ": unparseable year '" +
                            std::string(f[1]) + "'");
        m.year = static_cast<int>(year);
        m.journal = std::string(trim(f[2]));
        m.doc_type = std::string(trim(f[3]));
        const size_t line = li + 1;
        if (!parse_flag(f[4], m.milestone))
            throw UserError(papers_path + ":" + std::to_string(line) + ": milestone must be 0 or 1");
        m.n_authors = parse_count(f[5], papers_path, line, "n_authors");
        m.n_pages = parse_count(f[6], papers_path, line, "n_pages");
        m.n_countries = parse_count(f[7], papers_path, line, "n_countries");
        if (!parse_flag(f[8], m.usa) || !parse_flag(f[9], m.china) || !parse_flag(f[10], m.eu28))
            throw UserError(papers_path + ":" + std::to_string(line) +
                            ": region flags must be 0 or 1");
        papers.push_back(std::move(m));
    }

    const std::string cite_text = slurp_file(citations_path);
    const auto cite_lines = split_lines(cite_text);
    if (cite_lines.empty()) throw UserError(citations_path + ": empty file");
    {
        std::string want = expected_header(kCitationsHeader, options.delimiter);
        if (std::string(trim(cite_lines[0])) != want)
            throw UserError(citations_path + ": bad header, expected '" + want + "'");
    }
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(cite_lines.size() - 1);
    for (size_t li = 1; li < cite_lines.size(); ++li) {
        if (trim(cite_lines[li]).empty()) continue;
        split_fields(cite_lines[li], options.delimiter, f, storage);
        if (f.size() != 2)
            throw UserError(citations_path + ":" + std::to_string(li + 1) +
                            ": expected 2 fields, got " + std::to_string(f.size()));
        edges.emplace_back(std::string(trim(f[0])), std::string(trim(f[1])));
        if (edges.back().first.empty() || edges.back().second.empty())
            throw UserError(citations_path + ":" + std::to_string(li + 1) + ": empty paper id");
    }
    return build_corpus(std::move(papers), std::move(edges), options, report);
}

std::vector<PaperIndex> cited_references(const Corpus& corpus, PaperIndex focal) {
    const auto out = corpus.out_edges(focal);
    return {out.begin(), out.end()};
}

std::vector<PaperIndex> citing_papers(const Corpus& corpus, PaperIndex focal,
                                      std::optional<int> window) {
    const auto in = corpus.in_edges(focal);
    if (!window) return {in.begin(), in.end()};
    std::vector<PaperIndex> out;
    if (!corpus.has_year(focal)) return out;
    const long long bound = static_cast<long long>(corpus.meta(focal).year) + *window;
    for (const PaperIndex c : in)
        if (corpus.has_year(c) && corpus.meta(c).year <= bound) out.push_back(c);
    return out;
}

int64_t citation_count(const Corpus& corpus, PaperIndex focal, std::optional<int> window) {
    if (!window) return static_cast<int64_t>(corpus.in_edges(focal).size());
    return static_cast<int64_t>(citing_papers(corpus, focal, window).size());
}

std::span<const PaperIndex> CohortUnions::union_for(int32_t cohort_index) {
    auto it = cache_.find(cohort_index);
    if (it == cache_.end()) {
        std::vector<PaperIndex> u;
        for (const PaperIndex m : corpus_.cohorts()[static_cast<size_t>(cohort_index)].members) {
            const auto refs = corpus_.out_edges(m);
            u.insert(u.end(), refs.begin(), refs.end());
        }
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        it = cache_.emplace(cohort_index, std::move(u)).first;
    }
    return it->second;
}

std::span<const PaperIndex> CohortUnions::union_for(std::string_view journal, int year) {
    const int32_t idx = corpus_.find_cohort(journal, year);
    if (idx < 0) throw UserError("no such cohort: (" + std::string(journal) + ", " +
                                 std::to_string(year) + ")");
    return union_for(idx);
}

}  // namespace disrupt
