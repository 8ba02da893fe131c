#include "clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

namespace folkso {

Embedding embed(const SpectralResult& r, std::size_t d, double zero_tol) {
    if (d < 1) throw Error(ErrorCode::config, "embedding dimension must be >= 1");
    std::size_t zeros = 0;
    while (zeros < r.n && std::abs(r.eigenvalues[zeros]) <= zero_tol) ++zeros;
    if (zeros + d > r.n)
        throw Error(ErrorCode::config,
                    "not enough non-trivial eigenvectors for embedding dimension " +
                        std::to_string(d));
    Embedding e;
    e.n = r.n;
    e.d = d;
    e.points.resize(e.n * e.d);
    for (std::size_t i = 0; i < e.n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            e.points[i * d + j] = r.vec(i, zeros + j);
    return e;
}

void normalize_rows(Embedding& e) {
    for (std::size_t i = 0; i < e.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < e.d; ++j) s += e(i, j) * e(i, j);
        if (s == 0.0) continue;
        double inv = 1.0 / std::sqrt(s);
        for (std::size_t j = 0; j < e.d; ++j) e.points[i * e.d + j] *= inv;
    }
}

namespace {

double sq_dist(const Embedding& e, std::size_t i, const std::vector<double>& c,
               std::size_t cj, std::size_t d) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double diff = e(i, j) - c[cj * d + j];
        s += diff * diff;
    }
    return s;
}

}  // namespace

std::vector<int> cluster(const Embedding& e, int k, std::uint64_t seed) {
    const std::size_t n = e.n;
    const std::size_t d = e.d;
    if (k < 1) throw Error(ErrorCode::config, "k must be >= 1");
    if (static_cast<std::size_t>(k) > n)
        throw Error(ErrorCode::config, "k exceeds number of points");

    std::set<std::vector<double>> distinct;
    for (std::size_t i = 0; i < n; ++i)
        distinct.insert({e.points.begin() + static_cast<long>(i * d),
                         e.points.begin() + static_cast<long>((i + 1) * d)});
    if (static_cast<std::size_t>(k) > distinct.size())
        throw Error(ErrorCode::config, "k exceeds number of distinct points");

    if (k == 1) return std::vector<int>(n, 0);

    // init: seeded first centroid, then greedy farthest point (ties -> lower index)
    std::mt19937_64 rng(seed);
    std::vector<double> centroids(static_cast<std::size_t>(k) * d);
    std::size_t first = static_cast<std::size_t>(rng() % n);
    std::copy_n(e.points.begin() + static_cast<long>(first * d), d, centroids.begin());
    std::vector<double> min_d(n, std::numeric_limits<double>::infinity());
    for (int c = 1; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i)
            min_d[i] = std::min(min_d[i],
                                sq_dist(e, i, centroids, static_cast<std::size_t>(c - 1), d));
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (min_d[i] > best) {
                best = min_d[i];
                far = i;
            }
        std::copy_n(e.points.begin() + static_cast<long>(far * d), d,
                    centroids.begin() + static_cast<long>(c) * static_cast<long>(d));
    }

    std::vector<int> labels(n, 0);
    const int max_iters = 500;
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = iter == 0;
        for (std::size_t i = 0; i < n; ++i) {
            int best_c = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                double dist = sq_dist(e, i, centroids, static_cast<std::size_t>(c), d);
                if (dist < best) {  // strict: lowest-index centroid wins ties
                    best = dist;
                    best_c = c;
                }
            }
            if (labels[i] != best_c) {
                labels[i] = best_c;
                changed = true;
            }
        }
        if (!changed) break;

        std::vector<double> sums(static_cast<std::size_t>(k) * d, 0.0);
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[static_cast<std::size_t>(labels[i])];
            for (std::size_t j = 0; j < d; ++j)
                sums[static_cast<std::size_t>(labels[i]) * d + j] += e(i, j);
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) {
                // repair: move this centroid to the farthest point of the largest cluster
                int big = 0;
                for (int c2 = 1; c2 < k; ++c2)
                    if (counts[static_cast<std::size_t>(c2)] > counts[static_cast<std::size_t>(big)])
                        big = c2;
                std::size_t far = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (labels[i] != big) continue;
                    double dist = sq_dist(e, i, centroids, static_cast<std::size_t>(big), d);
                    if (dist > best) {
                        best = dist;
                        far = i;
                    }
                }
                std::copy_n(e.points.begin() + static_cast<long>(far * d), d,
                            centroids.begin() + static_cast<long>(c) * static_cast<long>(d));
            } else {
                for (std::size_t j = 0; j < d; ++j)
                    centroids[static_cast<std::size_t>(c) * d + j] =
                        sums[static_cast<std::size_t>(c) * d + j] /
                        static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
    }
    return labels;
}

CommunityAssignment make_assignment(const std::vector<int>& labels) {
    if (labels.empty()) throw Error(ErrorCode::config, "empty label list");
    std::map<int, std::size_t> sizes;
    std::vector<int> first_seen;  // community ids in order of first appearance
    for (int l : labels) {
        if (sizes.find(l) == sizes.end()) first_seen.push_back(l);
        ++sizes[l];
    }
    // size descending; ties keep first-appearance order (rename-invariant)
    std::stable_sort(first_seen.begin(), first_seen.end(),
                     [&](int a, int b) { return sizes[a] > sizes[b]; });
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < first_seen.size(); ++i)
        relabel[first_seen[i]] = static_cast<int>(i);

    CommunityAssignment a;
    a.k = static_cast<int>(first_seen.size());
    a.labels.reserve(labels.size());
    for (int l : labels) a.labels.push_back(relabel[l]);

    a.permutation.resize(labels.size());
    std::iota(a.permutation.begin(), a.permutation.end(), 0);
    std::stable_sort(a.permutation.begin(), a.permutation.end(),
                     [&](std::size_t x, std::size_t y) {
                         return a.labels[x] < a.labels[y];
                     });
    return a;
}

SimilarityMatrix reorder_matrix(const SimilarityMatrix& m,
                                const CommunityAssignment& a) {
    if (a.permutation.size() != m.n)
        throw Error(ErrorCode::config, "assignment size does not match matrix");
    SimilarityMatrix out;
    out.n = m.n;
    out.kind = m.kind;
    out.gamma = m.gamma;
    out.resources.resize(m.n);
    out.values.resize(m.n * m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        out.resources[i] = m.resources[a.permutation[i]];
        for (std::size_t j = 0; j < m.n; ++j)
            out(i, j) = m(a.permutation[i], a.permutation[j]);
    }
    return out;
}

std::pair<double, double> block_contrast(const SimilarityMatrix& m,
                                         const CommunityAssignment& a) {
    if (a.k < 2) throw Error(ErrorCode::config, "block contrast needs k >= 2");
    double within = 0.0, between = 0.0;
    std::uint64_t nw = 0, nb = 0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) {
            if (a.labels[i] == a.labels[j]) {
                within += m(i, j);
                ++nw;
            } else {
                between += m(i, j);
                ++nb;
            }
        }
    if (nw == 0)
        throw Error(ErrorCode::config, "all communities are singletons; no within-pairs");
    return {within / static_cast<double>(nw),
            nb == 0 ? 0.0 : between / static_cast<double>(nb)};
}

void write_assignment_csv(const CommunityAssignment& a,
                          const std::vector<std::string>& resources,
                          std::ostream& out) {
    out << "resource_id,community,permuted_index\n";
    std::vector<std::size_t> pos(a.permutation.size());
    for (std::size_t p = 0; p < a.permutation.size(); ++p) pos[a.permutation[p]] = p;
    for (std::size_t i = 0; i < resources.size(); ++i)
        out << resources[i] << ',' << a.labels[i] << ',' << pos[i] << '\n';
}

void write_embedding_csv(const Embedding& e,
                         const std::vector<std::string>& resources,
                         std::ostream& out) {
    out << "resource_id";
    for (std::size_t j = 0; j < e.d; ++j) out << ",v" << j + 2;  // V2 is the first non-trivial
    out << '\n';
    for (std::size_t i = 0; i < e.n; ++i) {
        out << resources[i];
        for (std::size_t j = 0; j < e.d; ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", e(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace folkso
