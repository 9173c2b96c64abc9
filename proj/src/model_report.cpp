#include "disrupt/model_report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>

#include "disrupt/csv.hpp"

namespace disrupt {

ModelResult from_fit(std::string name, const OlsFit& fit) {
    ModelResult r;
    r.name = std::move(name);
    r.family = "ols";
    r.terms = fit.terms;
    r.n = fit.n;
    r.r2 = fit.r2;
    return r;
}

ModelResult from_fit(std::string name, const LogitFit& fit) {
    ModelResult r;
    r.name = std::move(name);
    r.family = "logit";
    r.terms = fit.odds_terms;
    r.n = fit.n;
    r.r2 = fit.pseudo_r2;
    return r;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

namespace {

std::string fixed5(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

}  // namespace

void write_models_csv(const std::vector<ModelResult>& models, std::ostream& os) {
    os << "model,term,estimate,se,p,stars,n,r2\n";
    for (const auto& m : models) {
        if (!m.error.empty()) {
            os << m.name << ",_error,,,,," << m.n << ",\n";
            continue;
        }
        for (const auto& t : m.terms)
            os << m.name << ',' << t.name << ',' << format_real(t.estimate) << ','
               << format_real(t.se) << ',' << format_real(t.p) << ','
               << significance_stars(t.p) << ',' << m.n << ',' << format_real(m.r2) << '\n';
    }
}

void render_models_text(const std::vector<ModelResult>& models, std::ostream& os) {
    for (const auto& m : models) {
        os << "model " << m.name << " (" << m.family << ")";
        if (!m.error.empty()) {
            os << "  -- failed: " << m.error << "\n\n";
            continue;
        }
        os << "  n=" << m.n << "  " << (m.family == "logit" ? "pseudo-R2" : "R2") << "="
           << fixed5(m.r2) << '\n';
        size_t width = 10;
        for (const auto& t : m.terms) width = std::max(width, t.name.size());
        for (const auto& t : m.terms) {
            os << "  " << std::left << std::setw(static_cast<int>(width + 2)) << t.name
               << std::right << std::setw(12) << fixed5(t.estimate) << std::setw(12)
               << fixed5(t.se) << std::setw(10) << fixed5(t.p) << ' ' << std::left
               << std::setw(3) << significance_stars(t.p) << std::right << '\n';
        }
        os << '\n';
    }
    os << "* p<0.05, ** p<0.01, *** p<0.001\n";
}

void render_models_wide(const std::vector<ModelResult>& models, std::ostream& os) {
    // row order: union of term names in first-appearance order, _cons last
    std::vector<std::string> rows;
    for (const auto& m : models)
        for (const auto& t : m.terms)
            if (t.name != "_cons" &&
                std::find(rows.begin(), rows.end(), t.name) == rows.end())
                rows.push_back(t.name);
    rows.push_back("_cons");

    const size_t label_w = std::max<size_t>(
        14, std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                return a.size() < b.size();
            })->size() + 2);
    const size_t col_w = 16;

    os << std::left << std::setw(static_cast<int>(label_w)) << "";
    for (const auto& m : models) {
        std::string name = m.name;
        if (name.size() > col_w - 2) name = name.substr(0, col_w - 2);
        os << std::right << std::setw(static_cast<int>(col_w)) << name;
    }
    os << '\n';

    auto find_term = [](const ModelResult& m, const std::string& name) -> const FitTerm* {
        for (const auto& t : m.terms)
            if (t.name == name) return &t;
        return nullptr;
    };

    for (const auto& row : rows) {
        os << std::left << std::setw(static_cast<int>(label_w))
           << (row == "_cons" ? "Constant" : row);
        for (const auto& m : models) {
            const FitTerm* t = m.error.empty() ? find_term(m, row) : nullptr;
            os << std::right << std::setw(static_cast<int>(col_w))
               << (t ? fixed5(t->estimate) + significance_stars(t->p) : "");
        }
        os << '\n';
        os << std::left << std::setw(static_cast<int>(label_w)) << "";
        for (const auto& m : models) {
            const FitTerm* t = m.error.empty() ? find_term(m, row) : nullptr;
            os << std::right << std::setw(static_cast<int>(col_w))
               << (t ? "(" + fixed5(t->se) + ")" : "");
        }
        os << '\n';
    }
    os << std::left << std::setw(static_cast<int>(label_w)) << "R2";
    for (const auto& m : models)
        os << std::right << std::setw(static_cast<int>(col_w))
           << (m.error.empty() ? fixed5(m.r2) : "");
    os << '\n';
    os << std::left << std::setw(static_cast<int>(label_w)) << "N";
    for (const auto& m : models)
        os << std::right << std::setw(static_cast<int>(col_w)) << m.n;
    os << '\n';
    os << "* p<0.05, ** p<0.01, *** p<0.001; standard errors in parentheses\n";
}

}  // namespace disrupt
