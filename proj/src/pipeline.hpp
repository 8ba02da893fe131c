#pragma once

#include "ingest.hpp"
#include "report.hpp"
#include "synth.hpp"

namespace folkso {

struct RunConfig {
    std::vector<std::string> inputs;
    PostFormat format = PostFormat::jsonl;
    double gamma = 0.1;
    int k = 0;            // 0 = auto (eigengap rule)
    int d = 0;            // 0 = auto (k minus component count, at least 1)
    double zero_tol = 1e-8;
    std::size_t top_n = 30;
    std::uint64_t seed = 0;
    int max_k = 20;       // auto-k search window
    int bins_per_decade = 10;
    bool normalize_rows = false;
    std::string out_dir = ".";
};

struct RunSummary {
    std::size_t resources = 0;
    int k = 0;
    bool k_degenerate = false;
    double within_mean = 0.0;
    double between_mean = 0.0;
    std::vector<int> labels;                 // final size-ordered labels
    std::vector<std::string> resource_order; // original matrix order
};

// Full pipeline: ingest -> similarity -> power transform -> Laplacian ->
// eigendecomposition -> clustering -> reorder -> reports. All intermediate
// artifacts are written to out_dir.
RunSummary run_pipeline(const RunConfig& config);

// Matrix-only and spectrum-only stages for the corresponding subcommands.
void run_similarity(const RunConfig& config);
void run_spectrum(const std::string& matrix_path, const std::string& out_dir);

// Re-render heatmaps and the HTML report from artifacts saved by a prior run.
void run_report(const std::string& out_dir);

// Generate planted data; writes posts.jsonl and ground_truth.csv to out_dir.
void run_synth(const PlantedSpec& spec, const std::string& out_dir);

// Load a matrix by extension: .fsm binary, anything else CSV.
SimilarityMatrix load_matrix(const std::string& path);

Corpus load_corpus(const RunConfig& config, std::vector<std::string>& order_out);

}  // namespace folkso
