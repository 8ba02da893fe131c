// folkso: folksonomy community-detection pipeline.
//
// Subcommands:
//   synth       generate a planted-partition folksonomy
//   run         full pipeline (ingest -> similarity -> spectral -> report)
//   similarity  similarity matrices + strength histogram only
//   spectrum    eigendecomposition of a saved matrix
//   report      re-render heatmaps and report.html from saved artifacts

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folksograph.h"

namespace {

int fail(fg_status status) {
    std::fprintf(stderr, "error: %s\n", fg_last_error());
    return static_cast<int>(status);
}

struct CommonOpts {
    std::vector<std::string> inputs;
    std::string format = "jsonl";
    double gamma = 0.1;
    int k = 0;
    int d = 0;
    double zero_tol = 1e-8;
    std::size_t top_n = 30;
    std::uint64_t seed = 0;
    int max_k = 20;
    int bins_per_decade = 10;
    bool normalize_rows = false;
    std::string out_dir = ".";
};

void add_pipeline_opts(CLI::App* cmd, CommonOpts& o, bool full) {
    cmd->add_option("--input", o.inputs, "Input post file(s)")->required();
    cmd->add_option("--format", o.format, "Input format: jsonl or tsv")
        ->check(CLI::IsMember({"jsonl", "tsv"}));
    cmd->add_option("--gamma", o.gamma, "Power-transform exponent (0, 1]");
    cmd->add_option("--bins-per-decade", o.bins_per_decade, "Histogram bins per decade");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
    if (full) {
        cmd->add_option("--k", o.k, "Community count (0 = auto by eigengap)");
        cmd->add_option("--d", o.d, "Embedding dimension (0 = auto)");
        cmd->add_option("--max-k", o.max_k, "Auto-k search window");
        cmd->add_option("--zero-tol", o.zero_tol, "Zero-eigenvalue tolerance");
        cmd->add_option("--top-n", o.top_n, "Tags per community tag-cloud");
        cmd->add_option("--seed", o.seed, "k-means seed");
        cmd->add_flag("--normalize-rows", o.normalize_rows, "Unit-norm embedding rows");
    }
}

fg_run_config to_config(const CommonOpts& o, std::vector<const char*>& input_ptrs) {
    fg_run_config cfg;
    fg_run_config_init(&cfg);
    for (const auto& s : o.inputs) input_ptrs.push_back(s.c_str());
    cfg.inputs = input_ptrs.data();
    cfg.input_count = input_ptrs.size();
    cfg.format = o.format.c_str();
    cfg.gamma = o.gamma;
    cfg.k = o.k;
    cfg.d = o.d;
    cfg.zero_tol = o.zero_tol;
    cfg.top_n = o.top_n;
    cfg.seed = o.seed;
    cfg.max_k = o.max_k;
    cfg.bins_per_decade = o.bins_per_decade;
    cfg.normalize_rows = o.normalize_rows ? 1 : 0;
    cfg.out_dir = o.out_dir.c_str();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"folkso: emergent resource communities from social tagging data"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    auto* run_cmd = app.add_subcommand("run", "Full pipeline");
    add_pipeline_opts(run_cmd, run_opts, true);

    CommonOpts sim_opts;
    auto* sim_cmd = app.add_subcommand("similarity", "Similarity matrices + histogram");
    add_pipeline_opts(sim_cmd, sim_opts, false);

    std::string spectrum_matrix, spectrum_out = ".";
    auto* spec_cmd = app.add_subcommand("spectrum", "Eigendecomposition of a saved matrix");
    spec_cmd->add_option("--matrix", spectrum_matrix, "Matrix file (.fsm or CSV)")->required();
    spec_cmd->add_option("--out-dir", spectrum_out, "Output directory");

    std::string report_dir = ".";
    auto* report_cmd = app.add_subcommand("report", "Re-render report from saved artifacts");
    report_cmd->add_option("--out-dir", report_dir, "Directory holding run artifacts");

    fg_synth_config synth_cfg;
    fg_synth_config_init(&synth_cfg);
    std::string synth_out = ".";
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted folksonomy");
    synth_cmd->add_option("--communities", synth_cfg.communities, "Number of planted communities");
    synth_cmd->add_option("--resources", synth_cfg.resources_per_community,
                          "Resources per community");
    synth_cmd->add_option("--vocab-size", synth_cfg.vocabulary_size,
                          "Exclusive tags per community");
    synth_cmd->add_option("--shared-vocab-size", synth_cfg.shared_vocabulary_size,
                          "Shared noise-pool tags");
    synth_cmd->add_option("--taggings", synth_cfg.taggings_per_resource,
                          "Distinct users tagging each resource");
    synth_cmd->add_option("--tags-per-post", synth_cfg.tags_per_post, "Tags per post");
    synth_cmd->add_option("--users", synth_cfg.users, "User pool size");
    synth_cmd->add_option("--noise", synth_cfg.noise_rate, "Shared-pool draw probability [0,1)");
    synth_cmd->add_option("--seed", synth_cfg.seed, "Generator seed");
    synth_cmd->add_option("--out-dir", synth_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (synth_cmd->parsed()) {
        synth_cfg.out_dir = synth_out.c_str();
        fg_status st = fg_synth(&synth_cfg);
        if (st != FG_OK) return fail(st);
        std::printf("wrote posts.jsonl and ground_truth.csv to %s\n", synth_out.c_str());
        return 0;
    }

    if (run_cmd->parsed()) {
        std::vector<const char*> ptrs;
        fg_run_config cfg = to_config(run_opts, ptrs);
        fg_run_summary summary{};
        std::printf("running pipeline on %zu input file(s)\n", cfg.input_count);
        fg_status st = fg_run(&cfg, &summary);
        if (st != FG_OK) return fail(st);
        std::printf("resources: %zu\ncommunities: %d%s\n", summary.resources, summary.k,
                    summary.k_degenerate ? " (degenerate spectrum)" : "");
        if (summary.k >= 2)
            std::printf("block contrast: within %.4f, between %.4f\n",
                        summary.within_mean, summary.between_mean);
        std::printf("artifacts written to %s\n", run_opts.out_dir.c_str());
        return 0;
    }

    if (sim_cmd->parsed()) {
        std::vector<const char*> ptrs;
        fg_run_config cfg = to_config(sim_opts, ptrs);
        fg_status st = fg_similarity(&cfg);
        if (st != FG_OK) return fail(st);
        std::printf("similarity matrices written to %s\n", sim_opts.out_dir.c_str());
        return 0;
    }

    if (spec_cmd->parsed()) {
        fg_status st = fg_spectrum(spectrum_matrix.c_str(), spectrum_out.c_str());
        if (st != FG_OK) return fail(st);
        std::printf("spectrum written to %s\n", spectrum_out.c_str());
        return 0;
    }

    if (report_cmd->parsed()) {
        fg_status st = fg_report(report_dir.c_str());
        if (st != FG_OK) return fail(st);
        std::printf("report written to %s\n", report_dir.c_str());
        return 0;
    }

    return 0;
}
