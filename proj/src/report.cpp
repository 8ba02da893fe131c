#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace folkso {

std::vector<CommunityTagCloud> community_tagclouds(
    const Corpus& corpus, const CommunityAssignment& a,
    const std::vector<std::string>& resource_order, std::size_t top_n,
    FontRange fonts) {
    if (top_n < 1) throw Error(ErrorCode::config, "top_n must be >= 1");

    std::vector<std::map<std::string, std::uint64_t>> sums(static_cast<std::size_t>(a.k));
    std::vector<std::size_t> sizes(static_cast<std::size_t>(a.k), 0);
    for (std::size_t i = 0; i < resource_order.size(); ++i) {
        auto c = static_cast<std::size_t>(a.labels[i]);
        ++sizes[c];
        auto it = corpus.clouds.find(resource_order[i]);
        if (it == corpus.clouds.end())
            throw Error(ErrorCode::config, "resource '" + resource_order[i] + "' not in corpus");
        for (const auto& [tag, f] : it->second.freqs) sums[c][tag] += f;
    }

    std::vector<CommunityTagCloud> out;
    for (int c = 0; c < a.k; ++c) {  // labels are already size-ordered
        CommunityTagCloud cloud;
        cloud.community = c;
        cloud.size = sizes[static_cast<std::size_t>(c)];
        std::vector<std::pair<std::string, std::uint64_t>> entries(
            sums[static_cast<std::size_t>(c)].begin(), sums[static_cast<std::size_t>(c)].end());
        std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        if (entries.size() > top_n) entries.resize(top_n);

        double max_log = 0.0;
        for (const auto& [tag, f] : entries)
            max_log = std::max(max_log, std::log(static_cast<double>(f)));
        for (const auto& [tag, f] : entries) {
            double w = fonts.min_font;
            if (max_log > 0.0)
                w = fonts.min_font + (fonts.max_font - fonts.min_font) *
                                         std::log(static_cast<double>(f)) / max_log;
            cloud.entries.push_back({tag, f, w});
        }
        out.push_back(std::move(cloud));
    }
    return out;
}

void render_heatmap(const SimilarityMatrix& m, const std::string& path) {
    if (m.n < 1) throw Error(ErrorCode::config, "empty matrix");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << "P5\n" << m.n << ' ' << m.n << "\n255\n";
    std::vector<unsigned char> row(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            double v = std::clamp(m(i, j), 0.0, 1.0);
            row[j] = static_cast<unsigned char>(std::lround(255.0 * v));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw Error(ErrorCode::io, "write failed for '" + path + "'");
}

namespace {

std::string html_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void render_report(const ReportInputs& inputs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");

    out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n"
        << "<title>Resource community report</title>\n"
        << "<style>body{font-family:sans-serif;margin:2em}"
        << ".tagcloud span{margin:0 0.3em}"
        << "table{border-collapse:collapse}td,th{border:1px solid #999;padding:2px 8px}"
        << "</style>\n</head>\n<body>\n<h1>Resource community report</h1>\n";

    if (inputs.tagclouds.empty()) {
        out << "<p>no communities</p>\n";
    } else {
        for (const auto& c : inputs.tagclouds) {
            out << "<section class=\"tagcloud\">\n<h2>Community " << c.community
                << " (" << c.size << " resources)</h2>\n<p>";
            for (const auto& e : c.entries) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.1f", e.display_weight);
                out << "<span style=\"font-size:" << buf << "px\" title=\""
                    << e.frequency << "\">" << html_escape(e.tag) << "</span> ";
            }
            out << "</p>\n</section>\n";
        }
    }

    for (const auto& [title, img] : inputs.heatmaps)
        out << "<section>\n<h2>" << html_escape(title) << "</h2>\n<img src=\""
            << html_escape(img) << "\" alt=\"" << html_escape(title) << "\"/>\n</section>\n";

    if (!inputs.eigenvalues.empty()) {
        out << "<section>\n<h2>Eigenvalue spectrum</h2>\n<table>\n"
            << "<tr><th>index</th><th>eigenvalue</th></tr>\n";
        for (std::size_t i = 0; i < inputs.eigenvalues.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", inputs.eigenvalues[i]);
            out << "<tr><td>" << i << "</td><td>" << buf << "</td></tr>\n";
        }
        out << "</table>\n</section>\n";
    }

    if (!inputs.histogram.bins.empty() || inputs.histogram.zero_count > 0) {
        out << "<section>\n<h2>Link strength histogram</h2>\n<table>\n"
            << "<tr><th>lower</th><th>upper</th><th>count</th><th>density</th></tr>\n"
            << "<tr><td>0</td><td>0</td><td>" << inputs.histogram.zero_count
            << "</td><td>0</td></tr>\n";
        for (const auto& b : inputs.histogram.bins) {
            char lo[32], hi[32], de[32];
            std::snprintf(lo, sizeof lo, "%.6g", b.lower);
            std::snprintf(hi, sizeof hi, "%.6g", b.upper);
            std::snprintf(de, sizeof de, "%.6g", b.density);
            out << "<tr><td>" << lo << "</td><td>" << hi << "</td><td>" << b.count
                << "</td><td>" << de << "</td></tr>\n";
        }
        out << "</table>\n</section>\n";
    }

    out << "</body>\n</html>\n";
    if (!out) throw Error(ErrorCode::io, "write failed for '" + path + "'");
}

void write_tagclouds_csv(const std::vector<CommunityTagCloud>& clouds,
                         std::ostream& out) {
    out << "community,size,tag,frequency,display_weight\n";
    for (const auto& c : clouds)
        for (const auto& e : c.entries) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", e.display_weight);
            out << c.community << ',' << c.size << ',' << e.tag << ',' << e.frequency
                << ',' << buf << '\n';
        }
}

std::vector<CommunityTagCloud> read_tagclouds_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::parse, "tagclouds CSV: missing header");
    std::vector<CommunityTagCloud> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string community, size, tag, freq, weight;
        if (!std::getline(ls, community, ',') || !std::getline(ls, size, ',') ||
            !std::getline(ls, tag, ',') || !std::getline(ls, freq, ',') ||
            !std::getline(ls, weight, ','))
            throw Error(ErrorCode::parse, "tagclouds CSV: bad row: " + line);
        int c = std::stoi(community);
        if (out.empty() || out.back().community != c) {
            CommunityTagCloud cloud;
            cloud.community = c;
            cloud.size = static_cast<std::size_t>(std::stoull(size));
            out.push_back(std::move(cloud));
        }
        out.back().entries.push_back(
            {tag, std::stoull(freq), std::stod(weight)});
    }
    return out;
}

}  // namespace folkso
