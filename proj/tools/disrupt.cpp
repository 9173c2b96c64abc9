// disrupt: citation-graph disruption analytics.
//
// Subcommands compose into the full pipeline:
//   generate -> ingest -> indicators -> summarize / regress / cem -> report
// plus oracle-check, which replays the indicator engine against the brute-force
// reference on small corpora. Every flag can also be set from a key = value
// config file (--config), with command-line values taking precedence.
// Exit codes: 0 success, 1 user error, 2 internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "disrupt/corpus.hpp"
#include "disrupt/csv.hpp"
#include "disrupt/diagnostics.hpp"
#include "disrupt/errors.hpp"
#include "disrupt/indicators.hpp"
#include "disrupt/logit.hpp"
#include "disrupt/margins.hpp"
#include "disrupt/matching.hpp"
#include "disrupt/model_report.hpp"
#include "disrupt/ols.hpp"
#include "disrupt/oracle.hpp"
#include "disrupt/rng.hpp"
#include "disrupt/summaries.hpp"
#include "disrupt/svg.hpp"
#include "disrupt/synth.hpp"
#include "disrupt/table.hpp"

namespace fs = std::filesystem;
using namespace disrupt;

namespace {

struct CorpusArgs {
    std::string papers_path;
    std::string citations_path;
    std::string delimiter = ",";
    bool lenient = false;
    std::string doc_type_filter;
};

void add_corpus_flags(CLI::App* cmd, CorpusArgs& args) {
    cmd->add_option("--papers", args.papers_path, "papers metadata file")->required();
    cmd->add_option("--citations", args.citations_path, "citations edge file")->required();
    cmd->add_option("--delimiter", args.delimiter, "field delimiter (default ,)");
    cmd->add_flag("--lenient", args.lenient,
                  "materialize stub papers for unknown edge endpoints instead of failing");
    cmd->add_option("--doc-type", args.doc_type_filter,
                    "keep only metadata rows with this doc_type before indexing");
}

Corpus load_from_args(const CorpusArgs& args, LoadReport* report) {
    LoadOptions opt;
    if (args.delimiter.size() != 1) throw UserError("--delimiter must be a single character");
    opt.delimiter = args.delimiter[0];
    opt.lenient_edges = args.lenient;
    opt.doc_type_filter = args.doc_type_filter;
    return load_corpus(args.papers_path, args.citations_path, opt, report);
}

struct IndicatorArgs {
    std::vector<int> thresholds{1, 5};
    std::string dep_mode = "mean";
    int window = -1;  // <0 = none
    std::string focal_doc_type;
    std::string focal_journal;
    int focal_year_min = 0;
    int focal_year_max = 0;
    int workers = 0;
};

void add_indicator_flags(CLI::App* cmd, IndicatorArgs& args) {
    cmd->add_option("--thresholds", args.thresholds, "link thresholds (default 1,5)")
        ->delimiter(',');
    cmd->add_option("--dep-mode", args.dep_mode, "DEP mode: mean or total")
        ->check(CLI::IsMember({"mean", "total"}));
    cmd->add_option("--window", args.window, "citation window in years (omit for none)");
    cmd->add_option("--focal-doc-type", args.focal_doc_type, "restrict focal papers by doc_type");
    cmd->add_option("--focal-journal", args.focal_journal, "restrict focal papers by journal");
    cmd->add_option("--focal-year-min", args.focal_year_min, "restrict focal papers by year");
    cmd->add_option("--focal-year-max", args.focal_year_max, "restrict focal papers by year");
    cmd->add_option("--workers", args.workers, "indicator worker threads (0 = all cores)");
}

IndicatorConfig to_config(const IndicatorArgs& args) {
    IndicatorConfig cfg;
    cfg.thresholds = args.thresholds;
    cfg.dep_mode = args.dep_mode == "total" ? DepMode::total_links : DepMode::mean_per_citer;
    if (args.window >= 0) cfg.window = args.window;
    cfg.focal_doc_type = args.focal_doc_type;
    cfg.focal_journal = args.focal_journal;
    if (args.focal_year_min > 0) cfg.focal_year_min = args.focal_year_min;
    if (args.focal_year_max > 0) cfg.focal_year_max = args.focal_year_max;
    cfg.workers = args.workers;
    return cfg;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UserError("cannot create output directory " + dir + ": " + ec.message());
}

// indicator table joined with the paper metadata needed by the statistics
// stages; derives n_years = reference_year - year
DataTable analysis_table(const std::string& papers_path, const std::string& indicators_path,
                         int reference_year) {
    const std::string text = slurp_file(papers_path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw UserError(papers_path + ": empty file");
    std::vector<std::string_view> f;
    std::string storage;
    split_fields(lines[0], ',', f, storage);
    const std::vector<std::string> want{"id",        "year",      "journal",     "doc_type",
                                        "milestone", "n_authors", "n_pages",     "n_countries",
                                        "usa",       "china",     "eu28"};
    if (f.size() != want.size())
        throw UserError(papers_path + ": unexpected header for a papers file");
    for (size_t j = 0; j < want.size(); ++j)
        if (trim(f[j]) != want[j])
            throw UserError(papers_path + ": unexpected header column '" + std::string(f[j]) +
                            "', expected '" + want[j] + "'");

    DataTable meta;
    meta.names = {"milestone", "n_authors", "n_pages", "n_countries", "usa", "china", "eu28"};
    meta.cols.resize(meta.names.size());
    const size_t src[] = {4, 5, 6, 7, 8, 9, 10};
    for (size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        split_fields(lines[li], ',', f, storage);
        if (f.size() != want.size())
            throw UserError(papers_path + ":" + std::to_string(li + 1) + ": bad field count");
        meta.row_ids.emplace_back(trim(f[0]));
        for (size_t j = 0; j < meta.names.size(); ++j) {
            double v;
            if (!parse_f64(f[src[j]], v))
                throw UserError(papers_path + ":" + std::to_string(li + 1) + ": bad value in " +
                                meta.names[j]);
            meta.cols[j].push_back(v);
        }
    }

    DataTable ind = read_table(indicators_path);
    DataTable joined = inner_join(ind, meta);

    const int yc = joined.require_col("year");
    int ref = reference_year;
    if (ref <= 0) {
        double best = 0;
        bool any = false;
        for (size_t i = 0; i < joined.n_rows(); ++i) {
            const double y = joined.cell(i, yc);
            if (!is_missing(y) && (!any || y > best)) {
                best = y;
                any = true;
            }
        }
        if (!any) throw UserError("no publication years present; cannot derive n_years");
        ref = static_cast<int>(best);
    }
    auto& ny = joined.add_col("n_years");
    for (size_t i = 0; i < joined.n_rows(); ++i) {
        const double y = joined.cell(i, yc);
        ny[i] = is_missing(y) ? kMissing : static_cast<double>(ref) - y;
    }
    return joined;
}

std::vector<std::string> indicator_outcomes(const DataTable& t) {
    // the six outcome columns of the paired-model preset, in table order
    std::vector<std::string> out;
    for (const auto& name : t.names)
        if (name.size() > 2 && name.substr(0, 2) == "di") out.push_back(name);
    out.push_back("dep_inverse");
    out.push_back("log_citations");
    return out;
}

std::vector<std::string> read_id_file(const std::string& path) {
    std::vector<std::string> ids;
    const std::string text = slurp_file(path);
    for (const auto line : split_lines(text)) {
        const auto t = trim(line);
        if (!t.empty()) ids.emplace_back(t);
    }
    return ids;
}

int run_app(int argc, char** argv) {
    CLI::App app{"citation-graph disruption analytics"};
    app.set_config("--config", "", "key = value configuration file with [subcommand] sections");
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "write a seeded synthetic corpus");
    GeneratorParams gp;
    std::string gen_out = ".";
    std::string attachment = "preferential";
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--n", gp.n_papers, "number of papers");
    gen->add_option("--year-min", gp.year_min);
    gen->add_option("--year-max", gp.year_max);
    gen->add_option("--journals", gp.journals);
    gen->add_option("--mean-out-degree", gp.mean_out_degree);
    gen->add_option("--attachment", attachment)->check(CLI::IsMember({"uniform", "preferential"}));
    gen->add_option("--planted", gp.planted_disruptive, "planted disruptive milestone papers");
    gen->add_option("--planted-effect", gp.planted_effect, "extra citing edges per planted paper");
    gen->add_option("--seed", gp.seed);
    gen->callback([&] {
        gp.attachment = attachment == "uniform" ? GeneratorParams::Attachment::uniform
                                                : GeneratorParams::Attachment::preferential;
        ensure_out_dir(gen_out);
        const GeneratedCorpus g = generate_corpus(gp);
        write_corpus_files(g, gen_out + "/papers.csv", gen_out + "/citations.csv",
                           gen_out + "/manifest.txt");
        std::cout << "generate: " << g.papers.size() << " papers, " << g.edges.size()
                  << " edges, " << g.planted_ids.size() << " planted -> " << gen_out << "\n";
    });

    // ---- ingest ----
    auto* ing = app.add_subcommand("ingest", "validate a corpus and report");
    CorpusArgs ing_corpus;
    std::string ing_out = ".";
    bool ing_normalize = false;
    add_corpus_flags(ing, ing_corpus);
    ing->add_option("--out", ing_out, "output directory");
    ing->add_flag("--emit-normalized", ing_normalize,
                  "write the canonical serialized corpus (corpus_normalized.txt)");
    ing->callback([&] {
        ensure_out_dir(ing_out);
        LoadReport rep;
        const Corpus corpus = load_from_args(ing_corpus, &rep);
        {
            AtomicWriter w(ing_out + "/ingest_report.txt");
            w.stream() << rep.summary() << "\n";
            w.commit();
        }
        if (ing_normalize) {
            AtomicWriter w(ing_out + "/corpus_normalized.txt");
            corpus.serialize(w.stream());
            w.commit();
        }
        std::cout << "ingest: " << rep.summary() << "\n";
    });

    // ---- indicators ----
    auto* indc = app.add_subcommand("indicators", "compute the indicator table");
    CorpusArgs ind_corpus;
    IndicatorArgs ind_args;
    std::string ind_out = ".";
    add_corpus_flags(indc, ind_corpus);
    add_indicator_flags(indc, ind_args);
    indc->add_option("--out", ind_out, "output directory");
    indc->callback([&] {
        ensure_out_dir(ind_out);
        LoadReport rep;
        const Corpus corpus = load_from_args(ind_corpus, &rep);
        const IndicatorTable table = compute_all(corpus, to_config(ind_args));
        {
            AtomicWriter w(ind_out + "/indicators.csv");
            write_indicator_table(table, corpus, w.stream());
            w.commit();
        }
        {
            AtomicWriter w(ind_out + "/indicators_report.txt");
            w.stream() << rep.summary() << "\n" << table.report.summary() << "\n";
            w.commit();
        }
        std::cout << "indicators: " << table.report.summary() << "\n";
    });

    // ---- summarize ----
    auto* sum = app.add_subcommand("summarize", "percentile timelines, milestone medians, histograms");
    std::string sum_papers, sum_indicators, sum_out = ".";
    std::vector<std::string> sum_cols;
    int sum_bins = 40;
    bool sum_svg = false;
    sum->add_option("--papers", sum_papers, "papers metadata file")->required();
    sum->add_option("--indicators", sum_indicators, "indicator table from the indicators stage")
        ->required();
    sum->add_option("--out", sum_out, "output directory");
    sum->add_option("--columns", sum_cols, "indicator columns to summarize")->delimiter(',');
    sum->add_option("--bins", sum_bins, "histogram bins");
    sum->add_flag("--svg", sum_svg, "also write one percentile chart per indicator");
    sum->callback([&] {
        ensure_out_dir(sum_out);
        const DataTable t = analysis_table(sum_papers, sum_indicators, 0);
        std::vector<std::string> cols = sum_cols;
        if (cols.empty()) {
            for (const auto& name : t.names)
                if (name.size() > 2 && name.substr(0, 2) == "di") cols.push_back(name);
            cols.push_back("dep_inverse");
            cols.push_back("log_citations");
        }
        std::vector<YearlyPercentiles> pct;
        std::vector<MilestoneMedians> med;
        std::vector<HistogramSummary> hist;
        for (const auto& c : cols) {
            pct.push_back(yearly_percentiles(t, c));
            med.push_back(milestone_annual_medians(t, c));
            hist.push_back(histogram(t, c, static_cast<size_t>(sum_bins)));
        }
        {
            AtomicWriter w(sum_out + "/percentiles.csv");
            write_percentiles(pct, w.stream());
            w.commit();
        }
        {
            AtomicWriter w(sum_out + "/milestone_medians.csv");
            write_milestone_medians(med, w.stream());
            w.commit();
        }
        {
            AtomicWriter w(sum_out + "/histograms.csv");
            write_histograms(hist, w.stream());
            w.commit();
        }
        if (sum_svg) {
            for (size_t i = 0; i < cols.size(); ++i) {
                AtomicWriter w(sum_out + "/percentiles_" + cols[i] + ".svg");
                write_percentile_chart(pct[i], med[i], w.stream());
                w.commit();
            }
        }
        std::cout << "summarize: " << cols.size() << " indicators over " << t.n_rows()
                  << " rows -> " << sum_out << "\n";
    });

    // ---- regress ----
    auto* reg = app.add_subcommand("regress", "fit the model presets or a custom model");
    std::string reg_papers, reg_indicators, reg_out = ".";
    std::string reg_preset = "both";
    std::string reg_outcome, reg_family = "ols";
    std::vector<std::string> reg_predictors;
    std::string reg_exclude_file;
    bool reg_no_robust = false, reg_diagnostics = false, reg_margins = false;
    bool reg_t_reference = false;
    int reg_reference_year = 0;
    reg->add_option("--papers", reg_papers, "papers metadata file")->required();
    reg->add_option("--indicators", reg_indicators, "indicator table")->required();
    reg->add_option("--out", reg_out, "output directory");
    reg->add_option("--preset", reg_preset,
                    "paired-models | milestone-logit | both | custom")
        ->check(CLI::IsMember({"paired-models", "milestone-logit", "both", "custom"}));
    reg->add_option("--outcome", reg_outcome, "custom model outcome column");
    reg->add_option("--predictors", reg_predictors, "custom model predictors")->delimiter(',');
    reg->add_option("--family", reg_family, "custom model family")
        ->check(CLI::IsMember({"ols", "logit"}));
    reg->add_option("--exclude-ids", reg_exclude_file,
                    "file with one row id per line to exclude before fitting");
    reg->add_flag("--no-robust", reg_no_robust, "classical instead of HC1 standard errors");
    reg->add_flag("--t-reference", reg_t_reference,
                  "exact t p-values instead of the normal approximation (small n)");
    reg->add_flag("--diagnostics", reg_diagnostics,
                  "VIF, Breusch-Pagan, normality and Cook's distance per OLS model");
    reg->add_flag("--margins", reg_margins, "predicted milestone/other means by year");
    reg->add_option("--reference-year", reg_reference_year,
                    "reference year for n_years (default: corpus maximum)");
    reg->callback([&] {
        ensure_out_dir(reg_out);
        const DataTable t = analysis_table(reg_papers, reg_indicators, reg_reference_year);
        std::vector<std::string> exclude;
        if (!reg_exclude_file.empty()) exclude = read_id_file(reg_exclude_file);

        const std::vector<std::string> controls{"n_years",     "log_citations", "n_authors",
                                                "n_pages",     "n_countries",   "usa",
                                                "china",       "eu28"};
        std::vector<ModelResult> models;
        std::ostringstream diag, marg;
        auto run_ols = [&](const std::string& name, const ModelSpec& spec) {
            try {
                const OlsFit fit = ols_fit(t, spec);
                models.push_back(from_fit(name, fit));
                if (reg_diagnostics) {
                    diag << "model " << name << " (n=" << fit.n << ")\n";
                    if (spec.predictors.size() >= 2) {
                        for (const auto& v : vif(t, spec.predictors))
                            diag << "  vif " << v.predictor << " = " << format_real(v.vif) << "\n";
                    }
                    try {
                        const BreuschPagan bp = breusch_pagan(fit, t);
                        diag << "  breusch_pagan LM = " << format_real(bp.statistic)
                             << " df = " << bp.df << " p = " << format_real(bp.p_value) << "\n";
                    } catch (const DegenerateError& e) {
                        diag << "  breusch_pagan: " << e.what() << "\n";
                    }
                    try {
                        const NormalityTest nt = skew_kurt_normality(fit.residuals);
                        diag << "  normality K2 = " << format_real(nt.statistic)
                             << " p = " << format_real(nt.p_value) << "\n";
                    } catch (const std::exception& e) {
                        diag << "  normality: " << e.what() << "\n";
                    }
                    const CooksDistances cd = cooks_distance(fit);
                    diag << "  cooks_distance: " << cd.flagged_ids.size()
                         << " observations above cutoff " << format_real(cd.cutoff);
                    size_t shown = 0;
                    for (const auto& id : cd.flagged_ids) {
                        if (shown++ == 10) {
                            diag << " ...";
                            break;
                        }
                        diag << (shown == 1 ? ": " : ", ") << id;
                    }
                    diag << "\n";
                }
                if (reg_margins) {
                    for (const auto& gm : predict_group_means(fit, t, "milestone", "year"))
                        marg << name << ',' << (gm.by_level ? format_real(*gm.by_level) : "")
                             << ',' << gm.group << ',' << gm.n << ',' << format_real(gm.estimate)
                             << ',' << format_real(gm.ci_lo) << ',' << format_real(gm.ci_hi)
                             << '\n';
                }
            } catch (const ModelError& e) {
                ModelResult r;
                r.name = name;
                r.family = "ols";
                r.error = e.what();
                models.push_back(std::move(r));
            }
        };

        if (reg_preset == "custom") {
            if (reg_outcome.empty() || reg_predictors.empty())
                throw UserError("--preset custom requires --outcome and --predictors");
            ModelSpec spec;
            spec.outcome = reg_outcome;
            spec.predictors = reg_predictors;
            spec.robust = !reg_no_robust;
            spec.exclude_rows = exclude;
            spec.t_reference = reg_t_reference;
            if (reg_family == "logit") {
                const LogitFit fit = logit_fit(t, spec);
                models.push_back(from_fit(reg_outcome + "~custom", fit));
                if (reg_margins)
                    for (const auto& gm : predict_group_means(fit, t, "milestone", "year"))
                        marg << models.back().name << ','
                             << (gm.by_level ? format_real(*gm.by_level) : "") << ',' << gm.group
                             << ',' << gm.n << ',' << format_real(gm.estimate) << ','
                             << format_real(gm.ci_lo) << ',' << format_real(gm.ci_hi) << '\n';
            } else {
                run_ols(reg_outcome + "~custom", spec);
            }
        }
        if (reg_preset == "paired-models" || reg_preset == "both") {
            // per outcome: milestone alone, then milestone plus the controls
            // (log_citations is dropped from its own model's control set)
            for (const auto& outcome : indicator_outcomes(t)) {
                ModelSpec base;
                base.outcome = outcome;
                base.predictors = {"milestone"};
                base.robust = !reg_no_robust;
                base.exclude_rows = exclude;
                base.t_reference = reg_t_reference;
                run_ols(outcome + ":milestone", base);

                ModelSpec full = base;
                for (const auto& c : controls)
                    if (c != outcome) full.predictors.push_back(c);
                run_ols(outcome + ":full", full);
            }
        }
        if (reg_preset == "milestone-logit" || reg_preset == "both") {
            // direction flip: milestone as the outcome, one indicator at a time
            for (const auto& indicator : indicator_outcomes(t)) {
                ModelSpec spec;
                spec.outcome = "milestone";
                spec.predictors = {indicator};
                spec.robust = !reg_no_robust;
                spec.exclude_rows = exclude;
                try {
                    const LogitFit fit = logit_fit(t, spec);
                    models.push_back(from_fit("milestone~" + indicator, fit));
                    if (reg_margins)
                        for (const auto& gm : predict_group_means(fit, t, "milestone", "year"))
                            marg << models.back().name << ','
                                 << (gm.by_level ? format_real(*gm.by_level) : "") << ','
                                 << gm.group << ',' << gm.n << ',' << format_real(gm.estimate)
                                 << ',' << format_real(gm.ci_lo) << ','
                                 << format_real(gm.ci_hi) << '\n';
                } catch (const ModelError& e) {
                    ModelResult r;
                    r.name = "milestone~" + indicator;
                    r.family = "logit";
                    r.error = e.what();
                    models.push_back(std::move(r));
                }
            }
        }

        {
            AtomicWriter w(reg_out + "/models.csv");
            write_models_csv(models, w.stream());
            w.commit();
        }
        {
            AtomicWriter w(reg_out + "/models.txt");
            render_models_text(models, w.stream());
            w.commit();
        }
        if (reg_diagnostics) {
            AtomicWriter w(reg_out + "/diagnostics.txt");
            w.stream() << diag.str();
            w.commit();
        }
        if (reg_margins) {
            AtomicWriter w(reg_out + "/margins.csv");
            w.stream() << "model,by,group,n,estimate,ci_lo,ci_hi\n" << marg.str();
            w.commit();
        }
        size_t failed = 0;
        for (const auto& m : models)
            if (!m.error.empty()) ++failed;
        std::cout << "regress: " << models.size() << " models fitted";
        if (failed) std::cout << " (" << failed << " failed; see models.txt)";
        std::cout << " -> " << reg_out << "\n";
    });

    // ---- cem ----
    auto* cem = app.add_subcommand("cem", "coarsened exact matching and treatment effects");
    std::string cem_papers, cem_indicators, cem_out = ".";
    std::vector<std::string> cem_outcomes;
    std::vector<std::string> cem_covariates;
    uint64_t cem_seed = 1;
    cem->add_option("--papers", cem_papers, "papers metadata file")->required();
    cem->add_option("--indicators", cem_indicators, "indicator table")->required();
    cem->add_option("--out", cem_out, "output directory");
    cem->add_option("--outcomes", cem_outcomes, "outcome columns (default: all indicators)")
        ->delimiter(',');
    cem->add_option("--covariates", cem_covariates,
                    "matching covariates (default: the regression control set)")
        ->delimiter(',');
    cem->add_option("--seed", cem_seed, "control-draw seed");
    cem->callback([&] {
        ensure_out_dir(cem_out);
        const DataTable t = analysis_table(cem_papers, cem_indicators, 0);
        std::vector<std::string> outcomes =
            cem_outcomes.empty() ? indicator_outcomes(t) : cem_outcomes;

        std::ostringstream ate_rows;
        for (const auto& outcome : outcomes) {
            // continuous covariates are binned into quintiles, the 0/1 region
            // flags match exactly; log citations join the covariate set except
            // when they are the outcome
            std::vector<std::string> covs = cem_covariates;
            if (covs.empty()) {
                covs = {"n_authors", "n_pages", "year", "n_countries", "usa", "china", "eu28"};
                if (outcome != "log_citations") covs.push_back("log_citations");
            }
            CoarseningSpec spec;
            for (const auto& c : covs) {
                CoarseningRule rule;
                rule.kind = (c == "usa" || c == "china" || c == "eu28" || c == "milestone")
                                ? CoarseningRule::Kind::identity
                                : CoarseningRule::Kind::quintile;
                spec.covariates.emplace_back(c, rule);
            }
            const MatchedSample matched = cem_match(t, "milestone", spec, cem_seed);
            const AteResult r = ate(matched, t, outcome);
            {
                AtomicWriter w(cem_out + "/pairs_" + outcome + ".csv");
                write_pairs(matched, t, w.stream());
                w.commit();
            }
            write_ate_row(r, outcome, ate_rows);
        }
        {
            AtomicWriter w(cem_out + "/ate.csv");
            write_ate_header(w.stream());
            w.stream() << ate_rows.str();
            w.commit();
        }
        std::cout << "cem: " << outcomes.size() << " outcomes matched -> " << cem_out << "\n";
    });

    // ---- oracle-check ----
    auto* orc = app.add_subcommand("oracle-check",
                                   "replay the engine against the brute-force reference");
    CorpusArgs orc_corpus;
    IndicatorArgs orc_args;
    int64_t orc_sample = 0;
    uint64_t orc_seed = 1;
    add_corpus_flags(orc, orc_corpus);
    add_indicator_flags(orc, orc_args);
    orc->add_option("--sample", orc_sample,
                    "check only this many focal papers, seeded (0 = all)");
    orc->add_option("--seed", orc_seed, "sampling seed");
    orc->callback([&] {
        LoadReport rep;
        const Corpus corpus = load_from_args(orc_corpus, &rep);
        if (corpus.size() > kOracleGuard)
            throw UserError("oracle-check: corpus exceeds the " +
                            std::to_string(kOracleGuard) + "-paper oracle guard");
        const IndicatorConfig cfg = to_config(orc_args);
        const IndicatorTable table = compute_all(corpus, cfg);

        OracleConfig ocfg;
        ocfg.thresholds = cfg.thresholds;
        ocfg.dep_mode = cfg.dep_mode;
        ocfg.window = cfg.window;

        std::vector<size_t> rows(table.rows.size());
        for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        if (orc_sample > 0 && static_cast<size_t>(orc_sample) < rows.size()) {
            SplitMix64 rng(mix_seed(orc_seed, 7));
            for (size_t i = 0; i < static_cast<size_t>(orc_sample); ++i) {
                const size_t j = i + rng.next_below(rows.size() - i);
                std::swap(rows[i], rows[j]);
            }
            rows.resize(static_cast<size_t>(orc_sample));
        }

        auto same = [](const std::optional<double>& a, const std::optional<double>& b) {
            if (a.has_value() != b.has_value()) return false;
            if (!a) return true;
            return std::abs(*a - *b) <= 1e-12;
        };
        size_t mismatches = 0;
        for (const size_t i : rows) {
            const IndicatorRecord& rec = table.rows[i];
            const OracleRecord ref = brute_force_indicators(corpus, rec.paper, ocfg);
            bool ok = rec.citations == ref.citations;
            for (size_t ti = 0; ok && ti < cfg.thresholds.size(); ++ti)
                ok = same(rec.di[ti], ref.di[ti]) && same(rec.di_n[ti], ref.di_n[ti]);
            ok = ok && same(rec.dep, ref.dep);
            if (!ok) {
                ++mismatches;
                std::cerr << "mismatch at " << corpus.id(rec.paper) << "\n";
            }
        }
        std::cout << "oracle-check: " << rows.size() << " papers checked, " << mismatches
                  << " mismatches\n";
        if (mismatches > 0) throw UserError("oracle-check failed");
    });

    // ---- report ----
    auto* repc = app.add_subcommand("report", "collate stage outputs into one text report");
    std::string rep_in = ".", rep_out;
    repc->add_option("--in", rep_in, "directory with models.csv / ate.csv / percentiles.csv");
    repc->add_option("--out", rep_out, "report file (default <in>/report.txt)");
    repc->callback([&] {
        const std::string out_path = rep_out.empty() ? rep_in + "/report.txt" : rep_out;
        std::ostringstream body;

        const std::string models_path = rep_in + "/models.csv";
        if (fs::exists(models_path)) {
            // rebuild ModelResults from the long format to re-render wide
            std::vector<ModelResult> models;
            std::vector<std::string_view> f;
            std::string storage;
            const std::string text = slurp_file(models_path);
            const auto lines = split_lines(text);
            for (size_t li = 1; li < lines.size(); ++li) {
                if (trim(lines[li]).empty()) continue;
                split_fields(lines[li], ',', f, storage);
                if (f.size() != 8) continue;
                const std::string name(f[0]);
                if (models.empty() || models.back().name != name) {
                    models.push_back({});
                    models.back().name = name;
                    models.back().family = name.find("milestone~") == 0 ? "logit" : "ols";
                }
                if (f[1] == "_error") {
                    models.back().error = "fit failed";
                    continue;
                }
                FitTerm t;
                t.name = std::string(f[1]);
                parse_f64(f[2], t.estimate);
                parse_f64(f[3], t.se);
                parse_f64(f[4], t.p);
                long long n = 0;
                parse_i64(f[6], n);
                models.back().n = static_cast<size_t>(n);
                parse_f64(f[7], models.back().r2);
                models.back().terms.push_back(std::move(t));
            }
            std::vector<ModelResult> ols_models, logit_models;
            for (auto& m : models)
                (m.family == "logit" ? logit_models : ols_models).push_back(m);
            if (!ols_models.empty()) {
                body << "== regression models ==\n\n";
                render_models_wide(ols_models, body);
                body << '\n';
            }
            if (!logit_models.empty()) {
                body << "== milestone prediction (odds ratios) ==\n\n";
                render_models_wide(logit_models, body);
                body << '\n';
            }
        }
        const std::string ate_path = rep_in + "/ate.csv";
        if (fs::exists(ate_path)) {
            body << "== matched treatment effects ==\n\n";
            body << slurp_file(ate_path) << '\n';
        }
        const std::string pct_path = rep_in + "/percentiles.csv";
        if (fs::exists(pct_path)) {
            body << "== yearly percentiles ==\n\n";
            body << slurp_file(pct_path) << '\n';
        }
        if (body.str().empty())
            throw UserError("report: nothing to collate in " + rep_in);
        {
            AtomicWriter w(out_path);
            w.stream() << body.str();
            w.commit();
        }
        std::cout << body.str();
        std::cout << "report -> " << out_path << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
