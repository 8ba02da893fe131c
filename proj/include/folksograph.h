/* folksograph: tag-cloud similarity networks and spectral community
 * detection for social-tagging (folksonomy) data.
 *
 * C API over the C++ core. All functions returning fg_status set a
 * thread-local error message retrievable via fg_last_error(). Handles are
 * opaque and must be released with the matching *_free function.
 */
#ifndef FOLKSOGRAPH_H
#define FOLKSOGRAPH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    FG_OK = 0,
    FG_ERR_PARSE = 1,
    FG_ERR_CONFIG = 2,
    FG_ERR_NUMERIC = 3,
    FG_ERR_IO = 4
} fg_status;

/* Message for the last failing call on this thread; empty string if none. */
const char* fg_last_error(void);

/* ---- whole-pipeline entry points (used by the CLI) ---- */

typedef struct fg_run_config {
    const char* const* inputs; /* input file paths */
    size_t input_count;
    const char* format;   /* "jsonl" or "tsv" */
    double gamma;         /* power-transform exponent, (0, 1] */
    int k;                /* community count; 0 = auto via eigengap */
    int d;                /* embedding dimension; 0 = auto */
    double zero_tol;      /* |eigenvalue| below this counts as zero */
    size_t top_n;         /* tags per community tag-cloud */
    uint64_t seed;        /* k-means initialization seed */
    int max_k;            /* auto-k search window */
    int bins_per_decade;  /* strength histogram resolution */
    int normalize_rows;   /* nonzero: unit-norm embedding rows */
    const char* out_dir;
} fg_run_config;

/* Fill a config with the defaults (gamma 0.1, zero_tol 1e-8, top_n 30,
 * seed 0, auto k and d). inputs/out_dir are left null. */
void fg_run_config_init(fg_run_config* cfg);

typedef struct fg_run_summary {
    size_t resources;
    int k;
    int k_degenerate; /* nonzero: no informative eigengap, k fell back to 1 */
    double within_mean;
    double between_mean;
} fg_run_summary;

/* Full pipeline; writes all artifacts to cfg->out_dir. summary may be null. */
fg_status fg_run(const fg_run_config* cfg, fg_run_summary* summary);

/* Similarity matrices + histogram only. */
fg_status fg_similarity(const fg_run_config* cfg);

/* Eigendecomposition of the Laplacian of a saved matrix (.fsm or CSV). */
fg_status fg_spectrum(const char* matrix_path, const char* out_dir);

/* Re-render heatmaps and report.html from artifacts saved by fg_run. */
fg_status fg_report(const char* out_dir);

typedef struct fg_synth_config {
    size_t communities;
    size_t resources_per_community;
    size_t vocabulary_size;        /* exclusive tags per community */
    size_t shared_vocabulary_size; /* noise pool shared across communities */
    size_t taggings_per_resource;  /* distinct users tagging each resource */
    size_t tags_per_post;
    size_t users;
    double noise_rate; /* per tag slot, [0, 1) */
    uint64_t seed;
    const char* out_dir;
} fg_synth_config;

void fg_synth_config_init(fg_synth_config* cfg);

/* Planted-partition folksonomy; writes posts.jsonl and ground_truth.csv. */
fg_status fg_synth(const fg_synth_config* cfg);

/* ---- stage-level handles ---- */

typedef struct fg_corpus fg_corpus;
typedef struct fg_matrix fg_matrix;
typedef struct fg_spectral fg_spectral;

fg_status fg_corpus_load(const char* path, const char* format, fg_corpus** out);
size_t fg_corpus_resource_count(const fg_corpus* c);
void fg_corpus_free(fg_corpus* c);

/* Raw tag-cloud-overlap similarity matrix, resources in sorted id order. */
fg_status fg_matrix_build(const fg_corpus* c, fg_matrix** out);
fg_status fg_matrix_power(const fg_matrix* m, double gamma, fg_matrix** out);
size_t fg_matrix_size(const fg_matrix* m);
double fg_matrix_get(const fg_matrix* m, size_t i, size_t j);
const char* fg_matrix_resource(const fg_matrix* m, size_t i);
/* Format chosen by extension: .fsm binary, anything else CSV. */
fg_status fg_matrix_save(const fg_matrix* m, const char* path);
fg_status fg_matrix_load(const char* path, fg_matrix** out);
void fg_matrix_free(fg_matrix* m);

/* Laplacian eigendecomposition of a (transformed) similarity matrix. */
fg_status fg_spectral_compute(const fg_matrix* m, fg_spectral** out);
size_t fg_spectral_size(const fg_spectral* s);
double fg_spectral_eigenvalue(const fg_spectral* s, size_t i);
/* Component i of eigenvector j (ascending eigenvalue order). */
double fg_spectral_component(const fg_spectral* s, size_t i, size_t j);
void fg_spectral_free(fg_spectral* s);

/* Spectral embedding + seeded k-means. labels_out must hold n ints; the
 * labels written are size-ordered community ids in 0..k-1. k = 0 selects
 * the community count by the eigengap rule (window max_k). */
fg_status fg_cluster_labels(const fg_spectral* s, int k, int max_k, int d,
                            double zero_tol, uint64_t seed, int* labels_out);

#ifdef __cplusplus
}
#endif

#endif /* FOLKSOGRAPH_H */
