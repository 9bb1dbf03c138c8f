#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifista/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"inexact accelerated proximal gradient runner"};
    app.require_subcommand(1);

    std::string spec_path, out_dir = ".", param, corpus_path, suite;
    std::vector<std::string> values;
    bool quiet = false, bound_csv = false;

    auto* solve = app.add_subcommand("solve", "run one spec and write trace + report");
    solve->add_option("spec", spec_path, "run spec file")->required();
    solve->add_option("--out-dir", out_dir, "output directory");
    solve->add_flag("--quiet", quiet, "suppress the summary line");
    solve->add_flag("--bound-csv", bound_csv, "also write the per-iteration bound curve");

    auto* sweep = app.add_subcommand("sweep", "re-run a spec across parameter values");
    sweep->add_option("spec", spec_path, "run spec file")->required();
    sweep->add_option("--param", param, "parameter: r, omega-fill, seed, L")->required();
    sweep->add_option("--values", values, "comma-separated values to sweep")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out-dir", out_dir, "output directory");
    sweep->add_flag("--quiet", quiet, "suppress per-value rows");

    auto* verify = app.add_subcommand("verify", "run oracle suites over a corpus directory");
    verify->add_option("corpus", corpus_path, "directory of instance .txt files")->required();
    verify->add_option("--suite", suite, "restrict to one suite");
    verify->add_flag("--quiet", quiet, "print failures only");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return ifista::cmd_solve(spec_path, out_dir, quiet, bound_csv);
    if (sweep->parsed()) return ifista::cmd_sweep(spec_path, param, values, out_dir, quiet);
    return ifista::cmd_verify(corpus_path, suite, quiet);
}
