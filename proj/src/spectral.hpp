#pragma once

#include "similarity.hpp"

namespace folkso {

// Q = S - W where W is the transformed similarity with zeroed diagonal and
// S holds the row sums of W. Symmetric, positive semidefinite, row sums 0.
struct LaplacianMatrix {
    std::size_t n = 0;
    std::vector<double> values;  // row-major, n*n

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

// Full spectrum of Q: ascending eigenvalues with orthonormal eigenvectors,
// column j of `eigenvectors` paired with eigenvalues[j]. Each column's
// largest-magnitude entry is made positive for determinism.
struct SpectralResult {
    std::size_t n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;  // row-major, n*n; column j = eigenvector j

    double vec(std::size_t i, std::size_t j) const { return eigenvectors[i * n + j]; }
};

struct KSelection {
    int k = 1;
    bool degenerate = false;  // no informative gap found
};

LaplacianMatrix build_q(const SimilarityMatrix& m);

// Cyclic Jacobi on the dense symmetric matrix; converges when the
// off-diagonal Frobenius norm falls below 1e-12 * ||Q||_F, capped at 100
// sweeps. Throws Error(numeric) if the cap is hit first.
SpectralResult eigendecompose(const LaplacianMatrix& q);

// Eigenvalues with |lambda| <= zero_tol; equals the number of connected
// components of the weight graph.
int count_zero_eigenvalues(const SpectralResult& r, double zero_tol);

// Community count from the largest relative eigengap among candidate
// counts 1..max_k, skipping the zero eigenspace (additive gap while the
// reference eigenvalue is below zero_tol). Ties break toward smaller k.
KSelection select_k(const SpectralResult& r, int max_k, double zero_tol);

void write_spectrum_csv(const SpectralResult& r, std::ostream& out);
void write_eigenvectors_csv(const SpectralResult& r, std::ostream& out);

}  // namespace folkso
