#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace folkso {

LaplacianMatrix build_q(const SimilarityMatrix& m) {
    LaplacianMatrix q;
    q.n = m.n;
    q.values.assign(m.n * m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) {
            if (i == j) continue;
            double w = m(i, j);
            q(i, j) = -w;
            row_sum += w;
        }
        q(i, i) = row_sum;
    }
    return q;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

}  // namespace

SpectralResult eigendecompose(const LaplacianMatrix& q) {
    const std::size_t n = q.n;
    std::vector<double> a = q.values;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-12 * frob;
    const int max_sweeps = 100;

    bool converged = frob == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                double apq = a[p * n + r];
                if (apq == 0.0) continue;
                double app = a[p * n + p];
                double aqq = a[r * n + r];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i * n + p];
                    double aiq = a[i * n + r];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + r] = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    double apj = a[p * n + j];
                    double aqj = a[r * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[r * n + j] = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v[i * n + p];
                    double viq = v[i * n + r];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + r] = s * vip + c * viq;
                }
            }
        }
        if (off_diagonal_norm(a, n) < target) converged = true;
    }
    if (!converged) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Jacobi failed to converge in %d sweeps; off-diagonal norm %.3e",
                      max_sweeps, off_diagonal_norm(a, n));
        throw Error(ErrorCode::numeric, buf);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x] < a[y * n + y];
    });

    SpectralResult r;
    r.n = n;
    r.eigenvalues.resize(n);
    r.eigenvectors.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        r.eigenvalues[j] = a[src * n + src];
        // sign convention: largest-magnitude entry positive
        std::size_t imax = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double x = std::abs(v[i * n + src]);
            if (x > best) {
                best = x;
                imax = i;
            }
        }
        double sign = v[imax * n + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i)
            r.eigenvectors[i * n + j] = sign * v[i * n + src];
    }
    return r;
}

int count_zero_eigenvalues(const SpectralResult& r, double zero_tol) {
    if (!(zero_tol > 0.0)) throw Error(ErrorCode::config, "zero_tol must be positive");
    int count = 0;
    for (double l : r.eigenvalues)
        if (std::abs(l) <= zero_tol) ++count;
    return count;
}

KSelection select_k(const SpectralResult& r, int max_k, double zero_tol) {
    const std::size_t n = r.n;
    if (n < 2) throw Error(ErrorCode::config, "need at least 2 resources to select k");
    if (max_k < 1) throw Error(ErrorCode::config, "max_k must be positive");
    std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(max_k), n - 1);

    // all non-trivial eigenvalues equal -> no informative gap
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (double l : r.eigenvalues)
        if (std::abs(l) > zero_tol) {
            if (!any) lo = hi = l;
            lo = std::min(lo, l);
            hi = std::max(hi, l);
            any = true;
        }
    if (!any || hi - lo <= zero_tol) return {1, true};

    // Relative gaps only: k=i scores lambda_i / lambda_{i-1}, with zero_tol as
    // a floor on the denominator so the zero/non-zero boundary (k = component
    // count) dominates for disconnected graphs. Gaps entirely inside the zero
    // eigenspace carry no information, and k=1 is reachable only via the
    // degenerate path above.
    int best_k = 0;
    double best_score = 0.0;
    for (std::size_t i = 2; i <= limit; ++i) {
        double cur = r.eigenvalues[i];
        if (std::abs(cur) <= zero_tol) continue;
        double score = cur / std::max(r.eigenvalues[i - 1], zero_tol);
        if (score > best_score) {
            best_score = score;
            best_k = static_cast<int>(i);
        }
    }
    if (best_k == 0) return {1, true};
    return {best_k, false};
}

void write_spectrum_csv(const SpectralResult& r, std::ostream& out) {
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < r.n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", r.eigenvalues[i]);
        out << i << ',' << buf << '\n';
    }
}

void write_eigenvectors_csv(const SpectralResult& r, std::ostream& out) {
    for (std::size_t j = 0; j < r.n; ++j) {
        if (j) out << ',';
        out << 'v' << j;
    }
    out << '\n';
    for (std::size_t i = 0; i < r.n; ++i) {
        for (std::size_t j = 0; j < r.n; ++j) {
            if (j) out << ',';
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", r.vec(i, j));
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace folkso
