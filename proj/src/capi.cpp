#include "folksograph.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <string>

#include "pipeline.hpp"

using namespace folkso;

namespace {

thread_local std::string g_last_error;

fg_status to_status(const Error& e) {
    g_last_error = e.what();
    return static_cast<fg_status>(static_cast<int>(e.code()));
}

template <typename F>
fg_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return FG_OK;
    } catch (const Error& e) {
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FG_ERR_NUMERIC;
    }
}

RunConfig to_run_config(const fg_run_config* cfg) {
    if (!cfg) throw Error(ErrorCode::config, "null config");
    RunConfig rc;
    for (size_t i = 0; i < cfg->input_count; ++i) {
        if (!cfg->inputs || !cfg->inputs[i])
            throw Error(ErrorCode::config, "null input path");
        rc.inputs.emplace_back(cfg->inputs[i]);
    }
    rc.format = parse_format(cfg->format ? cfg->format : "jsonl");
    rc.gamma = cfg->gamma;
    rc.k = cfg->k;
    rc.d = cfg->d;
    rc.zero_tol = cfg->zero_tol;
    rc.top_n = cfg->top_n;
    rc.seed = cfg->seed;
    rc.max_k = cfg->max_k;
    rc.bins_per_decade = cfg->bins_per_decade;
    rc.normalize_rows = cfg->normalize_rows != 0;
    if (!cfg->out_dir) throw Error(ErrorCode::config, "out_dir is required");
    rc.out_dir = cfg->out_dir;
    return rc;
}

std::vector<std::string> make_vocab(const std::string& prefix, size_t count) {
    std::vector<std::string> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

}  // namespace

struct fg_corpus {
    Corpus corpus;
    std::vector<std::string> order;
};

struct fg_matrix {
    SimilarityMatrix m;
};

struct fg_spectral {
    SpectralResult r;
};

extern "C" {

const char* fg_last_error(void) { return g_last_error.c_str(); }

void fg_run_config_init(fg_run_config* cfg) {
    if (!cfg) return;
    *cfg = fg_run_config{};
    cfg->format = "jsonl";
    cfg->gamma = 0.1;
    cfg->zero_tol = 1e-8;
    cfg->top_n = 30;
    cfg->max_k = 20;
    cfg->bins_per_decade = 10;
}

fg_status fg_run(const fg_run_config* cfg, fg_run_summary* summary) {
    return guarded([&] {
        RunSummary s = run_pipeline(to_run_config(cfg));
        if (summary) {
            summary->resources = s.resources;
            summary->k = s.k;
            summary->k_degenerate = s.k_degenerate ? 1 : 0;
            summary->within_mean = s.within_mean;
            summary->between_mean = s.between_mean;
        }
    });
}

fg_status fg_similarity(const fg_run_config* cfg) {
    return guarded([&] { run_similarity(to_run_config(cfg)); });
}

fg_status fg_spectrum(const char* matrix_path, const char* out_dir) {
    return guarded([&] {
        if (!matrix_path || !out_dir)
            throw Error(ErrorCode::config, "matrix_path and out_dir are required");
        run_spectrum(matrix_path, out_dir);
    });
}

fg_status fg_report(const char* out_dir) {
    return guarded([&] {
        if (!out_dir) throw Error(ErrorCode::config, "out_dir is required");
        run_report(out_dir);
    });
}

void fg_synth_config_init(fg_synth_config* cfg) {
    if (!cfg) return;
    *cfg = fg_synth_config{};
    cfg->communities = 2;
    cfg->resources_per_community = 200;
    cfg->vocabulary_size = 50;
    cfg->shared_vocabulary_size = 30;
    cfg->taggings_per_resource = 10;
    cfg->tags_per_post = 3;
    cfg->users = 1000;
    cfg->noise_rate = 0.2;
}

fg_status fg_synth(const fg_synth_config* cfg) {
    return guarded([&] {
        if (!cfg || !cfg->out_dir) throw Error(ErrorCode::config, "out_dir is required");
        PlantedSpec spec;
        for (size_t c = 0; c < cfg->communities; ++c)
            spec.communities.push_back({cfg->resources_per_community,
                                        make_vocab("c" + std::to_string(c) + "_t",
                                                   cfg->vocabulary_size),
                                        cfg->taggings_per_resource});
        spec.shared_vocabulary = make_vocab("shared_t", cfg->shared_vocabulary_size);
        spec.noise_rate = cfg->noise_rate;
        spec.users = cfg->users;
        spec.tags_per_post = cfg->tags_per_post;
        spec.seed = cfg->seed;
        run_synth(spec, cfg->out_dir);
    });
}

fg_status fg_corpus_load(const char* path, const char* format, fg_corpus** out) {
    return guarded([&] {
        if (!path || !out) throw Error(ErrorCode::config, "null argument");
        RunConfig rc;
        rc.inputs = {path};
        rc.format = parse_format(format ? format : "jsonl");
        auto handle = std::make_unique<fg_corpus>();
        handle->corpus = load_corpus(rc, handle->order);
        *out = handle.release();
    });
}

size_t fg_corpus_resource_count(const fg_corpus* c) {
    return c ? c->corpus.clouds.size() : 0;
}

void fg_corpus_free(fg_corpus* c) { delete c; }

fg_status fg_matrix_build(const fg_corpus* c, fg_matrix** out) {
    return guarded([&] {
        if (!c || !out) throw Error(ErrorCode::config, "null argument");
        auto handle = std::make_unique<fg_matrix>();
        handle->m = build_matrix(c->corpus, c->order);
        *out = handle.release();
    });
}

fg_status fg_matrix_power(const fg_matrix* m, double gamma, fg_matrix** out) {
    return guarded([&] {
        if (!m || !out) throw Error(ErrorCode::config, "null argument");
        auto handle = std::make_unique<fg_matrix>();
        handle->m = power_transform(m->m, gamma);
        *out = handle.release();
    });
}

size_t fg_matrix_size(const fg_matrix* m) { return m ? m->m.n : 0; }

double fg_matrix_get(const fg_matrix* m, size_t i, size_t j) {
    return m->m(i, j);
}

const char* fg_matrix_resource(const fg_matrix* m, size_t i) {
    if (!m || i >= m->m.n) return nullptr;
    return m->m.resources[i].c_str();
}

fg_status fg_matrix_save(const fg_matrix* m, const char* path) {
    return guarded([&] {
        if (!m || !path) throw Error(ErrorCode::config, "null argument");
        std::string p(path);
        bool binary = p.size() >= 4 && p.compare(p.size() - 4, 4, ".fsm") == 0;
        std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
        if (!out) throw Error(ErrorCode::io, "cannot open '" + p + "' for writing");
        if (binary)
            write_matrix_binary(m->m, out);
        else
            write_matrix_csv(m->m, out);
    });
}

fg_status fg_matrix_load(const char* path, fg_matrix** out) {
    return guarded([&] {
        if (!path || !out) throw Error(ErrorCode::config, "null argument");
        auto handle = std::make_unique<fg_matrix>();
        handle->m = load_matrix(path);
        *out = handle.release();
    });
}

void fg_matrix_free(fg_matrix* m) { delete m; }

fg_status fg_spectral_compute(const fg_matrix* m, fg_spectral** out) {
    return guarded([&] {
        if (!m || !out) throw Error(ErrorCode::config, "null argument");
        auto handle = std::make_unique<fg_spectral>();
        handle->r = eigendecompose(build_q(m->m));
        *out = handle.release();
    });
}

size_t fg_spectral_size(const fg_spectral* s) { return s ? s->r.n : 0; }

double fg_spectral_eigenvalue(const fg_spectral* s, size_t i) {
    return s->r.eigenvalues[i];
}

double fg_spectral_component(const fg_spectral* s, size_t i, size_t j) {
    return s->r.vec(i, j);
}

void fg_spectral_free(fg_spectral* s) { delete s; }

fg_status fg_cluster_labels(const fg_spectral* s, int k, int max_k, int d,
                            double zero_tol, uint64_t seed, int* labels_out) {
    return guarded([&] {
        if (!s || !labels_out) throw Error(ErrorCode::config, "null argument");
        const auto n = s->r.n;
        if (k == 0) k = select_k(s->r, max_k, zero_tol).k;
        int zeros = count_zero_eigenvalues(s->r, zero_tol);
        auto dim = d > 0 ? static_cast<std::size_t>(d)
                         : static_cast<std::size_t>(std::max(k - zeros, 1));
        std::size_t nontrivial = n - static_cast<std::size_t>(zeros);
        if (dim > nontrivial) dim = nontrivial;
        std::vector<int> labels;
        if (k <= 1 || dim == 0) {
            labels.assign(n, 0);
        } else {
            Embedding e = embed(s->r, dim, zero_tol);
            labels = cluster(e, k, seed);
        }
        CommunityAssignment a = make_assignment(labels);
        for (std::size_t i = 0; i < n; ++i) labels_out[i] = a.labels[i];
    });
}

}  // extern "C"
