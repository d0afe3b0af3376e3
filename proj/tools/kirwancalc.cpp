// Command-line front end: stratification search, series evaluation, and
// worksheet ledgers.
#include "CLI11.hpp"

#include "kirwan/equivariant.hpp"
#include "kirwan/expr.hpp"
#include "kirwan/strata.hpp"
#include "kirwan/worksheet.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace kirwan;

int main(int argc, char** argv) {
    CLI::App app{"Equivariant Poincare series calculator for hypersurface GIT quotients"};
    app.require_subcommand(1);

    // search
    auto* search = app.add_subcommand("search", "Enumerate the Kirwan index set");
    int vars = 4, degree = 3, cutoff = -1, jobs = 1;
    std::string codim_mode = "rootcount", frame = "invariant", fmt = "text", out_path;
    std::string max_norm;
    bool no_weyl = false, annotate = false;
    search->add_option("--vars", vars, "number of variables")->required();
    search->add_option("--degree", degree, "form degree")->required();
    search->add_option("--cutoff", cutoff, "codimension cutoff (-1: none)");
    search->add_option("--codim-mode", codim_mode, "rootcount|paper");
    search->add_option("--frame", frame, "invariant|paper (dropped-coordinate metric)");
    search->add_option("--jobs", jobs, "worker threads");
    search->add_option("--max-norm-sq", max_norm,
                       "pruning bound on |beta|^2 in the scaled search metric, e.g. 11 or 54/5");
    search->add_flag("--no-weyl-reduction", no_weyl, "disable anchored enumeration");
    search->add_flag("--annotate-emptiness", annotate,
                     "compute the rigorous branch-based emptiness flag (invariant frame)");
    search->add_option("--format", fmt, "text|json");
    search->add_option("--out", out_path, "write the report to a file");

    // series
    auto* series = app.add_subcommand("series", "Evaluate a series expression");
    std::string expr_text;
    int trunc = 20;
    std::string series_fmt = "text";
    series->add_option("expr", expr_text, "series expression")->required();
    series->add_option("--truncation", trunc, "truncation order");
    series->add_option("--format", series_fmt, "text|json");

    // evaluate / verify
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a worksheet ledger");
    std::string ws_path, step_name, eval_fmt = "text";
    evaluate->add_option("--worksheet", ws_path, "worksheet file")->required();
    evaluate->add_option("--step", step_name, "print only this step");
    evaluate->add_option("--format", eval_fmt, "text|json");

    auto* verify = app.add_subcommand("verify", "Check a worksheet against its goldens");
    std::string ws_path2;
    verify->add_option("--worksheet", ws_path2, "worksheet file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*search) {
            SearchOptions so;
            so.codim_cutoff = cutoff;
            so.codim_mode = codim_mode == "paper" ? CodimMode::PaperOverride : CodimMode::Rootcount;
            if (frame == "paper") {
                // the dropped coordinate follows the published tables: the
                // first variable for six, the last one otherwise
                so.frame = Frame::eliminated(vars == 6 ? 0 : vars - 1);
            }
            so.jobs = jobs;
            so.weyl_reduction = !no_weyl;
            if (!max_norm.empty()) so.max_norm_sq = Rat(max_norm);
            StratificationReport rep = index_set_search(vars, degree, so);
            std::string body;
            if (fmt == "json") {
                body = rep.to_json();
            } else {
                std::string s;
                EquivariantEngine eng;
                for (const IndexVector& iv : rep.index_vectors) {
                    s += "beta = " + vec_to_string(iv.beta) +
                         "  |beta|^2 = " + iv.norm_sq.to_string() +
                         "  codim(rootcount) = " + std::to_string(iv.codim_rootcount);
                    if (iv.codim_override)
                        s += "  codim(pinned) = " + std::to_string(*iv.codim_override);
                    s += "\n  z-support:";
                    for (int i : iv.z_support) s += " " + rep.table.monomials[i].to_string();
                    s += "\n";
                    if (annotate && so.frame.kind == Frame::Kind::Invariant) {
                        s += std::string("  critical semistable locus: ") +
                             (stratum_is_nonempty(eng, iv, rep.table) ? "nonempty" : "empty") +
                             "\n";
                    }
                }
                s += std::to_string(rep.index_vectors.size()) + " index vectors\n";
                body = s;
            }
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << body;
            } else {
                std::cout << body;
            }
            return 0;
        }
        if (*series) {
            EquivariantEngine engine;
            ExprEnv env{trunc, nullptr, &engine};
            TruncatedSeries s = eval_series_expr(expr_text, env);
            std::cout << (series_fmt == "json" ? s.to_json() : s.to_pretty_string()) << "\n";
            return 0;
        }
        if (*evaluate) {
            Worksheet w = load_worksheet(ws_path);
            Report rep = evaluate_worksheet(w);
            if (!step_name.empty()) {
                const StepReport* sr = rep.find(step_name);
                if (!sr) {
                    std::cerr << "no step named '" << step_name << "'\n";
                    return 2;
                }
                std::cout << (eval_fmt == "json" ? sr->value.to_json()
                                                 : sr->value.to_pretty_string())
                          << "\n";
            } else {
                std::cout << (eval_fmt == "json" ? rep.render_json() : rep.render_text());
            }
            return 0;
        }
        if (*verify) {
            Worksheet w = load_worksheet(ws_path2);
            std::string diag;
            int rc = verify_golden(w, &diag);
            if (!diag.empty()) std::cout << diag;
            std::cout << (rc == 0 ? "PASS" : rc == 1 ? "MISMATCH" : "ERROR") << "\n";
            return rc;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
