#pragma once

#include <iosfwd>

#include "types.hpp"

namespace folkso {

enum class MatrixKind { raw, transformed };

// Dense symmetric matrix of pairwise resource similarities in [0,1].
struct SimilarityMatrix {
    std::size_t n = 0;
    std::vector<std::string> resources;  // index -> resource id
    std::vector<double> values;          // row-major, n*n
    MatrixKind kind = MatrixKind::raw;
    double gamma = 0.0;  // meaningful only when kind == transformed

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

struct HistogramBin {
    double lower;
    double upper;
    std::uint64_t count;
    double density;  // count / (total pairs * bin width)
};

struct StrengthHistogram {
    std::vector<HistogramBin> bins;
    std::uint64_t zero_count = 0;  // pairs with similarity exactly 0, kept out of the log bins
};

// Weighted tag-cloud overlap between two resources. The intersection is
// weighted by the lower of the two per-resource frequencies, the union by
// the higher, each normalized by the tag's global frequency.
double pair_similarity(const TagCloud& c1, const TagCloud& c2,
                       const std::map<std::string, std::uint64_t>& global);

SimilarityMatrix build_matrix(const Corpus& corpus,
                              const std::vector<std::string>& resource_order);

// Element-wise v^gamma, 0 < gamma <= 1. Compresses the dynamic range of
// strengths while avoiding the log's divergence at zero.
SimilarityMatrix power_transform(const SimilarityMatrix& m, double gamma);

// Logarithmically-binned histogram of the off-diagonal upper-triangle
// strengths. Zero-valued pairs are counted separately.
StrengthHistogram strength_histogram(const SimilarityMatrix& m,
                                     int bins_per_decade);

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out);
SimilarityMatrix read_matrix_csv(std::istream& in);

// Compact binary format: magic "FSM1", u32 n, resource-id table
// (u32 length + bytes each), then row-major little-endian f64 values.
void write_matrix_binary(const SimilarityMatrix& m, std::ostream& out);
SimilarityMatrix read_matrix_binary(std::istream& in);

void write_histogram_csv(const StrengthHistogram& h, std::ostream& out);

}  // namespace folkso
