#pragma once

#include "spectral.hpp"

namespace folkso {

// Rows of the low-eigenvalue eigenvector components: row i is resource i's
// coordinates along the d lowest non-trivial eigenvectors.
struct Embedding {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> points;  // row-major, n*d

    double operator()(std::size_t i, std::size_t j) const { return points[i * d + j]; }
};

struct CommunityAssignment {
    std::vector<int> labels;  // community ids 0..k-1, by decreasing size
    int k = 0;
    std::vector<std::size_t> permutation;  // permutation[new_pos] = original index
};

Embedding embed(const SpectralResult& r, std::size_t d, double zero_tol);

// Optionally scale each row to unit norm (zero rows left untouched).
void normalize_rows(Embedding& e);

// Seeded k-means: first centroid drawn from the seeded generator, the rest
// by greedy farthest-point; Lloyd iterations to an assignment fixpoint
// (cap 500). Empty clusters are repaired by splitting the largest cluster
// at its farthest point. Identical (e, k, seed) gives identical labels.
std::vector<int> cluster(const Embedding& e, int k, std::uint64_t seed);

// Relabel by decreasing community size (ties: smaller original id first)
// and build the grouping permutation: primary key community size
// descending, secondary key original index ascending.
CommunityAssignment make_assignment(const std::vector<int>& labels);

SimilarityMatrix reorder_matrix(const SimilarityMatrix& m,
                                const CommunityAssignment& a);

// Mean off-diagonal strength inside communities vs across them.
std::pair<double, double> block_contrast(const SimilarityMatrix& m,
                                         const CommunityAssignment& a);

void write_assignment_csv(const CommunityAssignment& a,
                          const std::vector<std::string>& resources,
                          std::ostream& out);
void write_embedding_csv(const Embedding& e,
                         const std::vector<std::string>& resources,
                         std::ostream& out);

}  // namespace folkso
