#include "similarity.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace folkso {

namespace {

// Kahan compensated accumulator. Clouds can hold thousands of tags and the
// oracle tolerance is 1e-12, so naive summation drift is not acceptable.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

double global_freq(const std::map<std::string, std::uint64_t>& global,
                   const std::string& tag) {
    auto it = global.find(tag);
    if (it == global.end())
        throw Error(ErrorCode::parse, "tag '" + tag + "' missing from global frequencies");
    return static_cast<double>(it->second);
}

}  // namespace

double pair_similarity(const TagCloud& c1, const TagCloud& c2,
                       const std::map<std::string, std::uint64_t>& global) {
    if (c1.freqs.empty() && c2.freqs.empty())
        throw Error(ErrorCode::parse, "similarity of two empty tag-clouds is undefined");
    KahanSum num, den;
    auto it1 = c1.freqs.begin(), it2 = c2.freqs.begin();
    while (it1 != c1.freqs.end() || it2 != c2.freqs.end()) {
        if (it2 == c2.freqs.end() ||
            (it1 != c1.freqs.end() && it1->first < it2->first)) {
            den.add(static_cast<double>(it1->second) / global_freq(global, it1->first));
            ++it1;
        } else if (it1 == c1.freqs.end() || it2->first < it1->first) {
            den.add(static_cast<double>(it2->second) / global_freq(global, it2->first));
            ++it2;
        } else {
            double ft = global_freq(global, it1->first);
            double f1 = static_cast<double>(it1->second);
            double f2 = static_cast<double>(it2->second);
            num.add(std::min(f1, f2) / ft);
            den.add(std::max(f1, f2) / ft);
            ++it1;
            ++it2;
        }
    }
    return num.value() / den.value();
}

SimilarityMatrix build_matrix(const Corpus& corpus,
                              const std::vector<std::string>& resource_order) {
    std::set<std::string> uniq(resource_order.begin(), resource_order.end());
    if (uniq.size() != resource_order.size())
        throw Error(ErrorCode::config, "duplicate resource in order list");
    std::vector<const TagCloud*> clouds;
    clouds.reserve(resource_order.size());
    for (const auto& r : resource_order) {
        auto it = corpus.clouds.find(r);
        if (it == corpus.clouds.end())
            throw Error(ErrorCode::config, "resource '" + r + "' not in corpus");
        clouds.push_back(&it->second);
    }

    SimilarityMatrix m;
    m.n = resource_order.size();
    m.resources = resource_order;
    m.values.assign(m.n * m.n, 0.0);
    m.kind = MatrixKind::raw;
    for (std::size_t i = 0; i < m.n; ++i) {
        m(i, i) = 1.0;  // self-similarity; Eq. applied to (R,R) gives the same
        for (std::size_t j = i + 1; j < m.n; ++j) {
            double w = pair_similarity(*clouds[i], *clouds[j], corpus.global_freqs);
            m(i, j) = w;
            m(j, i) = w;
        }
    }
    return m;
}

SimilarityMatrix power_transform(const SimilarityMatrix& m, double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw Error(ErrorCode::config, "gamma must be in (0, 1]");
    SimilarityMatrix out = m;
    out.kind = MatrixKind::transformed;
    out.gamma = gamma;
    for (auto& v : out.values) v = v == 0.0 ? 0.0 : std::pow(v, gamma);
    return out;
}

StrengthHistogram strength_histogram(const SimilarityMatrix& m,
                                     int bins_per_decade) {
    if (m.n < 2)
        throw Error(ErrorCode::config, "histogram needs at least 2 resources");
    if (bins_per_decade < 1)
        throw Error(ErrorCode::config, "bins_per_decade must be positive");

    const double bpd = static_cast<double>(bins_per_decade);
    auto lower_edge = [&](long long i) { return std::pow(10.0, static_cast<double>(i) / bpd); };

    std::vector<double> positives;
    StrengthHistogram h;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) {
            double v = m(i, j);
            if (v > 0.0)
                positives.push_back(v);
            else
                ++h.zero_count;
        }
    if (positives.empty()) return h;

    auto bin_index = [&](double v) {
        long long i = static_cast<long long>(std::floor(std::log10(v) * bpd));
        // settle values that land on an edge within rounding error
        while (v < lower_edge(i)) --i;
        while (v >= lower_edge(i + 1)) ++i;
        return i;
    };

    long long imin = std::numeric_limits<long long>::max();
    long long imax = std::numeric_limits<long long>::min();
    for (double v : positives) {
        long long i = bin_index(v);
        imin = std::min(imin, i);
        imax = std::max(imax, i);
    }
    std::map<long long, std::uint64_t> counts;
    for (double v : positives) ++counts[bin_index(v)];

    const double total_pairs = static_cast<double>(m.n * (m.n - 1) / 2);
    for (long long i = imin; i <= imax; ++i) {
        HistogramBin b;
        b.lower = lower_edge(i);
        b.upper = lower_edge(i + 1);
        auto it = counts.find(i);
        b.count = it == counts.end() ? 0 : it->second;
        b.density = static_cast<double>(b.count) / (total_pairs * (b.upper - b.lower));
        h.bins.push_back(b);
    }
    return h;
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.n; ++i) {
        if (i) out << ',';
        out << m.resources[i];
    }
    out << '\n';
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            if (j) out << ',';
            write_double(out, m(i, j));
        }
        out << '\n';
    }
}

SimilarityMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::parse, "matrix CSV: missing header");
    SimilarityMatrix m;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) m.resources.push_back(cell);
    m.n = m.resources.size();
    m.values.reserve(m.n * m.n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) m.values.push_back(std::stod(cell));
    }
    if (m.values.size() != m.n * m.n)
        throw Error(ErrorCode::parse, "matrix CSV: value count does not match header");
    return m;
}

void write_matrix_binary(const SimilarityMatrix& m, std::ostream& out) {
    out.write("FSM1", 4);
    auto put_u32 = [&](std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        out.write(reinterpret_cast<const char*>(b), 4);
    };
    put_u32(static_cast<std::uint32_t>(m.n));
    for (const auto& r : m.resources) {
        put_u32(static_cast<std::uint32_t>(r.size()));
        out.write(r.data(), static_cast<std::streamsize>(r.size()));
    }
    for (double v : m.values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        unsigned char b[8];
        for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
        out.write(reinterpret_cast<const char*>(b), 8);
    }
}

SimilarityMatrix read_matrix_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "FSM1", 4) != 0)
        throw Error(ErrorCode::parse, "bad matrix file magic");
    auto get_u32 = [&]() {
        unsigned char b[4];
        in.read(reinterpret_cast<char*>(b), 4);
        if (!in) throw Error(ErrorCode::parse, "truncated matrix file");
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };
    SimilarityMatrix m;
    m.n = get_u32();
    for (std::size_t i = 0; i < m.n; ++i) {
        std::uint32_t len = get_u32();
        std::string s(len, '\0');
        in.read(s.data(), len);
        if (!in) throw Error(ErrorCode::parse, "truncated matrix file");
        m.resources.push_back(std::move(s));
    }
    m.values.resize(m.n * m.n);
    for (auto& v : m.values) {
        unsigned char b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        if (!in) throw Error(ErrorCode::parse, "truncated matrix file");
        std::uint64_t bits = 0;
        for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
        std::memcpy(&v, &bits, 8);
    }
    return m;
}

void write_histogram_csv(const StrengthHistogram& h, std::ostream& out) {
    out << "lower,upper,count,density\n";
    // zero-strength pairs sit outside the log bins; reported as a 0-width row
    out << "0,0," << h.zero_count << ",0\n";
    for (const auto& b : h.bins) {
        write_double(out, b.lower);
        out << ',';
        write_double(out, b.upper);
        out << ',' << b.count << ',';
        write_double(out, b.density);
        out << '\n';
    }
}

}  // namespace folkso
