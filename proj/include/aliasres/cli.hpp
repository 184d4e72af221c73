// Batch front door: one subcommand per step of the annotation workflow.
// Results go to stdout, diagnostics to stderr. Exit codes: 0 clean, 1 when
// processing succeeded but found errors or a non-empty diff, 2 on usage,
// parse or I/O failures.

#ifndef ALIASRES_CLI_HPP
#define ALIASRES_CLI_HPP

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aliasres/alias_table.hpp"
#include "aliasres/canon_rules.hpp"
#include "aliasres/conll.hpp"
#include "aliasres/graph.hpp"
#include "aliasres/listing.hpp"
#include "aliasres/resolver.hpp"
#include "aliasres/validation.hpp"

namespace aliasres::cli {

namespace fs = std::filesystem;

inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitFailure = 2;

namespace cli_detail {

inline LintConfig config_from(const std::string& path) {
    return path.empty() ? default_lint_config() : load_lint_config(path);
}

inline void print_findings(const std::vector<Finding>& findings, std::ostream& out) {
    for (const Finding& f : findings) out << format_finding(f) << "\n";
}

inline void maybe_report(const std::string& path, const std::string& content) {
    if (!path.empty()) io::write_file_atomic(path, content);
}

inline void print_diff(const DiffReport& report, std::ostream& out) {
    for (const auto& m : report.mismatches)
        out << "~ (" << m.key.surface << ", " << to_string(m.key.etype) << "): \""
            << m.canonical_v1 << "\" -> \"" << m.canonical_v2 << "\"\n";
    for (const auto& k : report.only_in_v1)
        out << "- only in v1: (" << k.surface << ", " << to_string(k.etype) << ")\n";
    for (const auto& k : report.only_in_v2)
        out << "+ only in v2: (" << k.surface << ", " << to_string(k.etype) << ")\n";
}

}  // namespace cli_detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"alias-resolution annotation toolkit"};
    app.require_subcommand(1);

    // extract
    std::string x_corpus, x_out;
    auto* extract = app.add_subcommand("extract", "write the entity and mention list CSVs");
    extract->add_option("corpus_dir", x_corpus, "directory of chapter_NN.conll files")->required();
    extract->add_option("out_dir", x_out, "output directory")->required();

    // validate
    std::string v_corpus, v_table, v_report;
    auto* validate = app.add_subcommand("validate", "run coverage, unicity, suspect and consistency checks");
    validate->add_option("corpus_dir", v_corpus)->required();
    validate->add_option("alias_csv", v_table)->required();
    validate->add_option("--report", v_report, "write machine-readable findings to this file");

    // diff
    std::string d_v1, d_v2, d_report;
    auto* diff = app.add_subcommand("diff", "compare two alias tables by entity key");
    diff->add_option("v1_csv", d_v1)->required();
    diff->add_option("v2_csv", d_v2)->required();
    diff->add_option("--report", d_report, "write machine-readable mismatches to this file");

    // verify
    std::string f_corpus, f_v1, f_report;
    auto* verify = app.add_subcommand("verify", "regenerate the entity list and diff it against v1");
    verify->add_option("corpus_dir", f_corpus)->required();
    verify->add_option("v1_csv", f_v1)->required();
    verify->add_option("--report", f_report, "write machine-readable mismatches to this file");

    // lint
    std::string l_table, l_report, l_config;
    auto* lint = app.add_subcommand("lint", "check canonical forms against the naming conventions");
    lint->add_option("alias_csv", l_table)->required();
    lint->add_option("--report", l_report, "write machine-readable findings to this file");
    lint->add_option("--config", l_config, "lint configuration file");

    // suggest
    std::string s_table, s_out, s_config;
    auto* suggest = app.add_subcommand("suggest", "suggest alias clusters from an entity list");
    suggest->add_option("entity_csv", s_table)->required();
    suggest->add_option("--out", s_out, "write the review CSV here instead of stdout");
    suggest->add_option("--config", s_config, "lint configuration file");

    // finalize
    std::string z_table, z_title, z_guidelines, z_updated, z_out;
    std::vector<std::string> z_annotators;
    auto* finalize = app.add_subcommand("finalize", "stamp metadata and write alias_resolution.csv");
    finalize->add_option("alias_csv", z_table)->required();
    finalize->add_option("--title", z_title, "novel title")->required();
    finalize->add_option("--annotator", z_annotators, "annotator name (repeatable)")->required();
    finalize->add_option("--guidelines", z_guidelines, "guidelines version (major.minor.patch)")->required();
    finalize->add_option("--updated", z_updated, "date of last update (YYYY-MM-DD)")->required();
    finalize->add_option("--out", z_out, "output path (default: alias_resolution.csv next to the input)");

    // graph
    std::string g_corpus, g_table, g_format = "graphml", g_out;
    std::size_t g_window = 10;
    auto* graph = app.add_subcommand("graph", "export the character co-occurrence network");
    graph->add_option("corpus_dir", g_corpus)->required();
    graph->add_option("alias_csv", g_table)->required();
    graph->add_option("--window", g_window, "co-occurrence window in sentences (default 10)");
    graph->add_option("--format", g_format, "graphml or edgelist")
        ->check(CLI::IsMember({"graphml", "edgelist"}));
    graph->add_option("--out", g_out, "write the graph here instead of stdout");

    // locate
    std::string c_corpus, c_surface;
    int c_chapter = 0, c_line = 0;
    auto* locate = app.add_subcommand("locate", "find a mention and print its context");
    locate->add_option("corpus_dir", c_corpus)->required();
    locate->add_option("chapter", c_chapter)->required();
    locate->add_option("line", c_line)->required();
    locate->add_option("surface", c_surface)->required();

    try {
        std::vector<const char*> argv;
        argv.push_back("aliasres");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return kExitFailure;
    }

    try {
        if (*extract) {
            Corpus corpus = parse_corpus(x_corpus);
            fs::create_directories(x_out);
            auto records = build_entity_list(corpus);
            io::write_file_atomic(fs::path(x_out) / "entity_list.csv", write_entity_csv(records));
            io::write_file_atomic(fs::path(x_out) / "mention_list.csv",
                                  write_mention_csv(build_mention_list(corpus)));
            cli_detail::print_findings(corpus.findings, err);
            out << "entity_list.csv: " << records.size() << " entities\n";
            out << "mention_list.csv: " << corpus.mentions.size() << " mentions\n";
            return kExitClean;
        }

        if (*validate) {
            Corpus corpus = parse_corpus(v_corpus);
            AliasTable table = load_alias_table(v_table);
            std::vector<Finding> findings = corpus.findings;
            for (auto& f : check_coverage(table)) findings.push_back(std::move(f));
            for (auto& f : check_unicity(table)) findings.push_back(std::move(f));
            for (auto& f : check_suspect_names(table.records)) findings.push_back(std::move(f));
            for (auto& f : check_consistency(corpus, table)) findings.push_back(std::move(f));
            sort_findings(findings);
            cli_detail::print_findings(findings, out);
            cli_detail::maybe_report(v_report, findings_report(findings));
            return has_errors(findings) ? kExitFindings : kExitClean;
        }

        if (*diff) {
            DiffReport report = diff_tables(load_alias_table(d_v1), load_alias_table(d_v2));
            cli_detail::print_diff(report, out);
            cli_detail::maybe_report(d_report, diff_report_json(report));
            if (report.empty()) {
                out << "tables agree\n";
                return kExitClean;
            }
            return kExitFindings;
        }

        if (*verify) {
            Corpus corpus = parse_corpus(f_corpus);
            AliasTable v1 = load_alias_table(f_v1);
            AliasTable v2 = regenerate_table(corpus, v1);
            DiffReport report = diff_tables(v1, v2);
            cli_detail::maybe_report(f_report, diff_report_json(report));
            if (report.empty()) {
                out << "fixpoint reached\n";
                return kExitClean;
            }
            out << "fixpoint not reached\n";
            cli_detail::print_diff(report, out);
            return kExitFindings;
        }

        if (*lint) {
            AliasTable table = load_alias_table(l_table);
            LintConfig cfg = cli_detail::config_from(l_config);
            auto findings = lint_table(table, cfg);
            cli_detail::print_findings(findings, out);
            cli_detail::maybe_report(l_report, findings_report(findings));
            return has_errors(findings) ? kExitFindings : kExitClean;
        }

        if (*suggest) {
            AliasTable table = load_alias_table(s_table);
            LintConfig cfg = cli_detail::config_from(s_config);
            std::string csv_text = write_suggestions_csv(suggest_clusters_by_type(table.records, cfg));
            if (s_out.empty()) out << csv_text;
            else io::write_file_atomic(s_out, csv_text);
            return kExitClean;
        }

        if (*finalize) {
            AliasTable table = load_alias_table(z_table);
            Metadata m{z_title, z_annotators, z_guidelines, z_updated};
            table = set_metadata(std::move(table), std::move(m));
            fs::path dest = z_out.empty() ? fs::path(z_table).parent_path() / "alias_resolution.csv"
                                          : fs::path(z_out);
            save_alias_table(table, dest);
            out << "wrote " << dest.string() << "\n";
            return kExitClean;
        }

        if (*graph) {
            Corpus corpus = parse_corpus(g_corpus);
            AliasTable table = load_alias_table(g_table);
            CharacterGraph cg = build_cooccurrence(corpus, table, g_window);
            GraphFormat fmt = g_format == "edgelist" ? GraphFormat::EdgeList : GraphFormat::GraphML;
            if (g_out.empty()) out << write_graph_text(cg, fmt);
            else write_graph(cg, fmt, g_out);
            return kExitClean;
        }

        if (*locate) {
            Corpus corpus = parse_corpus(c_corpus);
            auto hits = locate_mention(corpus, c_chapter, c_line, c_surface);
            for (const auto& h : hits) {
                out << h.mention.surface << " (" << to_string(h.mention.etype) << ") ch "
                    << h.mention.chapter << " line " << h.mention.line << " tokens "
                    << h.mention.token_start << "-" << h.mention.token_end << "\n";
                out << h.context;
            }
            if (hits.empty()) err << "no mentions found\n";
            return kExitClean;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;  // unreachable: a subcommand is required
}

}  // namespace aliasres::cli

#endif
