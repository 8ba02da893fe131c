#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spectral.hpp"

using namespace folkso;

namespace {

SimilarityMatrix from_values(std::vector<double> values, std::size_t n) {
    SimilarityMatrix m;
    m.n = n;
    m.kind = MatrixKind::transformed;
    m.gamma = 0.1;
    m.values = std::move(values);
    for (std::size_t i = 0; i < n; ++i) m.resources.push_back("r" + std::to_string(i));
    return m;
}

// symmetric matrix with random [0,1] off-diagonal weights, some zeroed
SimilarityMatrix random_weights(std::mt19937_64& rng, std::size_t n, double density) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double w = unit(rng) < density ? unit(rng) : 0.0;
            v[i * n + j] = w;
            v[j * n + i] = w;
        }
    }
    return from_values(std::move(v), n);
}

double inf_norm(const LaplacianMatrix& q) {
    double best = 0.0;
    for (std::size_t i = 0; i < q.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < q.n; ++j) row += std::abs(q(i, j));
        best = std::max(best, row);
    }
    return best;
}

}  // namespace

TEST_CASE("build_q: no off-diagonal weight gives the zero matrix") {
    auto m = from_values({1, 0, 0, 1}, 2);
    auto q = build_q(m);
    for (double v : q.values) CHECK(v == 0.0);
}

TEST_CASE("build_q: single unit edge") {
    auto m = from_values({1, 1, 1, 1}, 2);
    auto q = build_q(m);
    CHECK(q(0, 0) == 1.0);
    CHECK(q(0, 1) == -1.0);
    CHECK(q(1, 0) == -1.0);
    CHECK(q(1, 1) == 1.0);
}

TEST_CASE("build_q: rows sum to zero, signs correct") {
    std::mt19937_64 rng(17);
    auto m = random_weights(rng, 8, 0.7);
    auto q = build_q(m);
    for (std::size_t i = 0; i < q.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < q.n; ++j) {
            row += q(i, j);
            if (i != j) CHECK(q(i, j) <= 0.0);
        }
        CHECK(std::abs(row) < 1e-12);
        CHECK(q(i, i) >= 0.0);
    }
}

TEST_CASE("path graph on 3 nodes has spectrum {0, 1, 3}") {
    // unit edges 0-1 and 1-2; characteristic polynomial lambda(lambda-1)(lambda-3)
    auto m = from_values({1, 1, 0, 1, 1, 1, 0, 1, 1}, 3);
    auto r = eigendecompose(build_q(m));
    CHECK(r.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(r.eigenvalues[0]) < 1e-9);
    CHECK(std::abs(r.eigenvalues[1] - 1.0) < 1e-9);
    CHECK(std::abs(r.eigenvalues[2] - 3.0) < 1e-9);
}

TEST_CASE("zero eigenvalue with constant eigenvector is always present") {
    std::mt19937_64 rng(23);
    auto m = random_weights(rng, 12, 1.0);  // dense: connected
    auto r = eigendecompose(build_q(m));
    CHECK(std::abs(r.eigenvalues[0]) < 1e-8);
    double expected = 1.0 / std::sqrt(static_cast<double>(m.n));
    for (std::size_t i = 0; i < m.n; ++i)
        CHECK(std::abs(r.vec(i, 0) - expected) < 1e-6);
}

TEST_CASE("two disconnected blocks give a doubly degenerate zero eigenvalue") {
    std::mt19937_64 rng(29);
    std::size_t n = 10;
    std::vector<double> v(n * n, 0.0);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j)
            if ((i < 5) == (j < 5)) {
                double w = unit(rng);
                v[i * n + j] = w;
                v[j * n + i] = w;
            }
    }
    auto r = eigendecompose(build_q(from_values(std::move(v), n)));
    CHECK(count_zero_eigenvalues(r, 1e-8) == 2);
}

TEST_CASE("eigendecomposition invariants on random matrices") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 5 + rng() % 20;
        auto m = random_weights(rng, n, 0.8);
        auto q = build_q(m);
        auto r = eigendecompose(q);
        double qn = inf_norm(q);

        // ascending order
        for (std::size_t j = 1; j < n; ++j) CHECK(r.eigenvalues[j] >= r.eigenvalues[j - 1]);
        // positive semidefinite
        CHECK(r.eigenvalues[0] >= -1e-8);

        // residual ||Qv - lambda v||_inf <= 1e-8 ||Q||_inf
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                double qv = 0.0;
                for (std::size_t l = 0; l < n; ++l) qv += q(i, l) * r.vec(l, j);
                CHECK(std::abs(qv - r.eigenvalues[j] * r.vec(i, j)) <= 1e-8 * qn);
            }
        }
        // orthonormal columns
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = j; l < n; ++l) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += r.vec(i, j) * r.vec(i, l);
                CHECK(std::abs(dot - (j == l ? 1.0 : 0.0)) < 1e-8);
            }
        // trace preservation
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += q(i, i);
        for (double l : r.eigenvalues) sum += l;
        CHECK(std::abs(sum - trace) <= 1e-8 * std::max(1.0, trace));
    }
}

TEST_CASE("spectral reconstruction V diag(lambda) V^T recovers Q") {
    std::mt19937_64 rng(37);
    for (std::size_t n : {10ul, 40ul, 100ul}) {
        auto m = random_weights(rng, n, 0.5);
        auto q = build_q(m);
        auto r = eigendecompose(q);
        double qn = inf_norm(q);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double recon = 0.0;
                for (std::size_t l = 0; l < n; ++l)
                    recon += r.vec(i, l) * r.eigenvalues[l] * r.vec(j, l);
                CHECK(std::abs(recon - q(i, j)) <= 1e-7 * qn);
            }
    }
}

TEST_CASE("spectrum is invariant under row/column permutation") {
    std::mt19937_64 rng(41);
    std::size_t n = 15;
    auto m = random_weights(rng, n, 0.6);
    auto r1 = eigendecompose(build_q(m));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SimilarityMatrix pm = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pm.values[i * n + j] = m(perm[i], perm[j]);
    auto r2 = eigendecompose(build_q(pm));
    for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(r1.eigenvalues[j] - r2.eigenvalues[j]) < 1e-8);
}

TEST_CASE("zero-eigenvalue count matches union-find components") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 4 + rng() % 30;
        auto m = random_weights(rng, n, 0.08);
        auto r = eigendecompose(build_q(m));
        auto expected = oracles::graph_components(m.values, n);
        CHECK(static_cast<std::size_t>(count_zero_eigenvalues(r, 1e-8)) == expected);
    }
}

TEST_CASE("select_k: disconnected components push k past the zero space") {
    SpectralResult r;
    r.n = 6;
    r.eigenvalues = {0.0, 1e-12, 1e-12, 5.0, 5.1, 5.2};
    auto sel = select_k(r, 5, 1e-8);
    CHECK(sel.k == 3);
    CHECK_FALSE(sel.degenerate);
}

TEST_CASE("select_k picks the dominant relative gap") {
    SpectralResult r;
    r.n = 10;
    r.eigenvalues = {0.0, 0.01, 0.011, 0.012, 0.013, 0.02, 0.9, 1.0, 1.1, 1.2};
    auto sel = select_k(r, 9, 1e-8);
    CHECK(sel.k == 6);  // 0.02 -> 0.9 dominates every other ratio
    CHECK_FALSE(sel.degenerate);
}

TEST_CASE("select_k flags a degenerate spectrum") {
    SpectralResult r;
    r.n = 4;
    r.eigenvalues = {0.0, 1.0, 1.0, 1.0};
    auto sel = select_k(r, 3, 1e-8);
    CHECK(sel.k == 1);
    CHECK(sel.degenerate);
}

TEST_CASE("graph_components oracle: diagonal does not create edges") {
    // 1x1-block sanity for the oracle itself
    std::vector<double> v = {1.0, 0.0, 0.0, 1.0};
    CHECK(oracles::graph_components(v, 2) == 2);
}
