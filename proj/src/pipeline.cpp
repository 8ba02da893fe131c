#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace folkso {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p, bool binary = false) {
    std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + p.string() + "' for writing");
    return out;
}

std::ifstream open_in(const fs::path& p, bool binary = false) {
    std::ifstream in(p, binary ? std::ios::binary : std::ios::in);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + p.string() + "' for reading");
    return in;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create directory '" + dir + "'");
}

std::vector<double> read_spectrum_csv(std::istream& in) {
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> eigenvalues;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorCode::parse, "spectrum CSV: bad row: " + line);
        eigenvalues.push_back(std::stod(line.substr(comma + 1)));
    }
    return eigenvalues;
}

StrengthHistogram read_histogram_csv(std::istream& in) {
    std::string line;
    std::getline(in, line);  // header
    StrengthHistogram h;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string lo, hi, count, density;
        std::getline(ls, lo, ',');
        std::getline(ls, hi, ',');
        std::getline(ls, count, ',');
        std::getline(ls, density, ',');
        if (first) {  // zero-width row carries the zero-pair count
            h.zero_count = std::stoull(count);
            first = false;
            continue;
        }
        h.bins.push_back({std::stod(lo), std::stod(hi), std::stoull(count), std::stod(density)});
    }
    return h;
}

CommunityAssignment read_assignment_csv(std::istream& in, std::vector<std::string>& resources) {
    std::string line;
    std::getline(in, line);  // header
    struct Row {
        std::string id;
        int community;
        std::size_t pos;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string id, community, pos;
        std::getline(ls, id, ',');
        std::getline(ls, community, ',');
        std::getline(ls, pos, ',');
        rows.push_back({id, std::stoi(community), std::stoull(pos)});
    }
    CommunityAssignment a;
    a.labels.resize(rows.size());
    a.permutation.resize(rows.size());
    resources.resize(rows.size());
    int kmax = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        resources[i] = rows[i].id;
        a.labels[i] = rows[i].community;
        a.permutation[rows[i].pos] = i;
        kmax = std::max(kmax, rows[i].community);
    }
    a.k = kmax + 1;
    return a;
}

}  // namespace

Corpus load_corpus(const RunConfig& config, std::vector<std::string>& order_out) {
    if (config.inputs.empty()) throw Error(ErrorCode::config, "no input files");
    std::stringstream combined;
    for (const auto& path : config.inputs) {
        auto in = open_in(path);
        combined << in.rdbuf();
        combined << '\n';
    }
    ParseResult parsed = parse_posts(combined, config.format);
    if (parsed.rejected_empty > 0)
        std::fputs(("warning: rejected " + std::to_string(parsed.rejected_empty) +
                    " record(s) with no usable tags\n")
                       .c_str(),
                   stderr);
    Corpus corpus = build_corpus(parsed.posts);
    order_out.clear();
    for (const auto& [id, cloud] : corpus.clouds) order_out.push_back(id);
    return corpus;
}

void run_similarity(const RunConfig& config) {
    ensure_dir(config.out_dir);
    fs::path dir(config.out_dir);
    std::vector<std::string> order;
    Corpus corpus = load_corpus(config, order);

    SimilarityMatrix raw = build_matrix(corpus, order);
    {
        auto out = open_out(dir / "similarity_raw.csv");
        write_matrix_csv(raw, out);
    }
    {
        auto out = open_out(dir / "similarity_raw.fsm", true);
        write_matrix_binary(raw, out);
    }
    SimilarityMatrix transformed = power_transform(raw, config.gamma);
    {
        auto out = open_out(dir / "similarity_transformed.csv");
        write_matrix_csv(transformed, out);
    }
    {
        auto out = open_out(dir / "similarity_transformed.fsm", true);
        write_matrix_binary(transformed, out);
    }
    if (raw.n >= 2) {
        auto hist = strength_histogram(raw, config.bins_per_decade);
        auto out = open_out(dir / "histogram.csv");
        write_histogram_csv(hist, out);
    }
}

SimilarityMatrix load_matrix(const std::string& path) {
    if (fs::path(path).extension() == ".fsm") {
        auto in = open_in(path, true);
        return read_matrix_binary(in);
    }
    auto in = open_in(path);
    return read_matrix_csv(in);
}

void run_spectrum(const std::string& matrix_path, const std::string& out_dir) {
    ensure_dir(out_dir);
    fs::path dir(out_dir);
    SimilarityMatrix m = load_matrix(matrix_path);
    LaplacianMatrix q = build_q(m);
    SpectralResult r = eigendecompose(q);
    {
        auto out = open_out(dir / "spectrum.csv");
        write_spectrum_csv(r, out);
    }
    {
        auto out = open_out(dir / "eigenvectors.csv");
        write_eigenvectors_csv(r, out);
    }
}

RunSummary run_pipeline(const RunConfig& config) {
    ensure_dir(config.out_dir);
    fs::path dir(config.out_dir);

    std::vector<std::string> order;
    Corpus corpus = load_corpus(config, order);
    const std::size_t n = order.size();

    SimilarityMatrix raw = build_matrix(corpus, order);
    {
        auto out = open_out(dir / "similarity_raw.csv");
        write_matrix_csv(raw, out);
    }
    {
        auto out = open_out(dir / "similarity_raw.fsm", true);
        write_matrix_binary(raw, out);
    }
    SimilarityMatrix transformed = power_transform(raw, config.gamma);
    {
        auto out = open_out(dir / "similarity_transformed.csv");
        write_matrix_csv(transformed, out);
    }
    {
        auto out = open_out(dir / "similarity_transformed.fsm", true);
        write_matrix_binary(transformed, out);
    }
    StrengthHistogram hist;
    if (n >= 2) {
        hist = strength_histogram(raw, config.bins_per_decade);
        auto out = open_out(dir / "histogram.csv");
        write_histogram_csv(hist, out);
    }

    LaplacianMatrix q = build_q(transformed);
    SpectralResult spectral = eigendecompose(q);
    {
        auto out = open_out(dir / "spectrum.csv");
        write_spectrum_csv(spectral, out);
    }
    {
        auto out = open_out(dir / "eigenvectors.csv");
        write_eigenvectors_csv(spectral, out);
    }

    RunSummary summary;
    summary.resources = n;
    summary.resource_order = order;

    int zeros = count_zero_eigenvalues(spectral, config.zero_tol);
    int k = config.k;
    if (k == 0) {
        if (n < 2) {
            k = 1;
        } else {
            KSelection sel = select_k(spectral, config.max_k, config.zero_tol);
            k = sel.k;
            summary.k_degenerate = sel.degenerate;
        }
    }
    if (k > static_cast<int>(n)) throw Error(ErrorCode::config, "k exceeds resource count");
    summary.k = k;

    std::size_t nontrivial = n - static_cast<std::size_t>(zeros);
    // auto d: one informative direction per split beyond the component count;
    // extra bulk eigenvectors only add noise to k-means
    std::size_t d = config.d > 0 ? static_cast<std::size_t>(config.d)
                                 : static_cast<std::size_t>(std::max(k - zeros, 1));
    if (d > nontrivial) d = nontrivial;

    std::vector<int> labels;
    if (k <= 1 || d == 0) {
        labels.assign(n, 0);
    } else {
        Embedding e = embed(spectral, d, config.zero_tol);
        if (config.normalize_rows) normalize_rows(e);
        {
            auto out = open_out(dir / "embedding.csv");
            write_embedding_csv(e, order, out);
        }
        labels = cluster(e, k, config.seed);
    }

    CommunityAssignment assignment = make_assignment(labels);
    summary.labels = assignment.labels;
    {
        auto out = open_out(dir / "assignment.csv");
        write_assignment_csv(assignment, order, out);
    }

    SimilarityMatrix reordered = reorder_matrix(transformed, assignment);
    {
        auto out = open_out(dir / "similarity_reordered.csv");
        write_matrix_csv(reordered, out);
    }
    {
        auto out = open_out(dir / "similarity_reordered.fsm", true);
        write_matrix_binary(reordered, out);
    }
    render_heatmap(transformed, (dir / "heatmap_unordered.pgm").string());
    render_heatmap(reordered, (dir / "heatmap_ordered.pgm").string());

    if (assignment.k >= 2) {
        try {
            // contrast on raw strengths: the power transform deliberately
            // compresses the dynamic range it would otherwise measure
            auto [within, between] = block_contrast(raw, assignment);
            summary.within_mean = within;
            summary.between_mean = between;
        } catch (const Error&) {
            // all-singleton communities: contrast undefined, left at 0
        }
    }

    auto clouds = community_tagclouds(corpus, assignment, order, config.top_n);
    {
        auto out = open_out(dir / "tagclouds.csv");
        write_tagclouds_csv(clouds, out);
    }

    ReportInputs report;
    report.tagclouds = std::move(clouds);
    report.eigenvalues = spectral.eigenvalues;
    report.histogram = hist;
    report.heatmaps = {{"Similarity matrix (original order)", "heatmap_unordered.pgm"},
                       {"Similarity matrix (community order)", "heatmap_ordered.pgm"}};
    render_report(report, (dir / "report.html").string());

    return summary;
}

void run_report(const std::string& out_dir) {
    fs::path dir(out_dir);

    SimilarityMatrix transformed;
    {
        auto in = open_in(dir / "similarity_transformed.fsm", true);
        transformed = read_matrix_binary(in);
    }
    std::vector<std::string> resources;
    CommunityAssignment assignment;
    {
        auto in = open_in(dir / "assignment.csv");
        assignment = read_assignment_csv(in, resources);
    }
    SimilarityMatrix reordered = reorder_matrix(transformed, assignment);
    render_heatmap(transformed, (dir / "heatmap_unordered.pgm").string());
    render_heatmap(reordered, (dir / "heatmap_ordered.pgm").string());

    ReportInputs report;
    {
        auto in = open_in(dir / "tagclouds.csv");
        report.tagclouds = read_tagclouds_csv(in);
    }
    {
        auto in = open_in(dir / "spectrum.csv");
        report.eigenvalues = read_spectrum_csv(in);
    }
    if (fs::exists(dir / "histogram.csv")) {
        auto in = open_in(dir / "histogram.csv");
        report.histogram = read_histogram_csv(in);
    }
    report.heatmaps = {{"Similarity matrix (original order)", "heatmap_unordered.pgm"},
                       {"Similarity matrix (community order)", "heatmap_ordered.pgm"}};
    render_report(report, (dir / "report.html").string());
}

void run_synth(const PlantedSpec& spec, const std::string& out_dir) {
    ensure_dir(out_dir);
    fs::path dir(out_dir);
    SynthResult result = generate(spec);
    {
        auto out = open_out(dir / "posts.jsonl");
        serialize_posts(result.posts, PostFormat::jsonl, out);
    }
    {
        auto out = open_out(dir / "ground_truth.csv");
        write_ground_truth_csv(result, out);
    }
}

}  // namespace folkso
