#pragma once

#include "clustering.hpp"

namespace folkso {

struct TagEntry {
    std::string tag;
    std::uint64_t frequency;
    double display_weight;  // font size in px, log-scaled into [min_font, max_font]
};

struct CommunityTagCloud {
    int community = 0;
    std::size_t size = 0;  // member resource count
    std::vector<TagEntry> entries;
};

struct FontRange {
    double min_font = 10.0;
    double max_font = 40.0;
};

// Per-community tag-clouds: frequencies summed over member resources,
// top_n most frequent retained (ties broken lexicographically), output
// ordered by decreasing community size. Font size grows with the log of
// the frequency; frequency-1 tags clamp to min_font.
std::vector<CommunityTagCloud> community_tagclouds(
    const Corpus& corpus, const CommunityAssignment& a,
    const std::vector<std::string>& resource_order, std::size_t top_n,
    FontRange fonts = {});

// Grayscale PGM (P5, maxval 255), one pixel per cell, intensity
// round(255 * value), row 0 at top.
void render_heatmap(const SimilarityMatrix& m, const std::string& path);

struct ReportInputs {
    std::vector<CommunityTagCloud> tagclouds;
    std::vector<double> eigenvalues;
    StrengthHistogram histogram;
    std::vector<std::pair<std::string, std::string>> heatmaps;  // (title, relative path)
};

// Single static HTML page embedding the tag-clouds, spectrum table,
// histogram table and heatmap links. No external resources.
void render_report(const ReportInputs& inputs, const std::string& path);

void write_tagclouds_csv(const std::vector<CommunityTagCloud>& clouds,
                         std::ostream& out);
std::vector<CommunityTagCloud> read_tagclouds_csv(std::istream& in);

}  // namespace folkso
