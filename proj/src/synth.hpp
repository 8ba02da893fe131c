#pragma once

#include "types.hpp"

namespace folkso {

struct PlantedCommunity {
    std::size_t resource_count = 0;
    std::vector<std::string> vocabulary;
    std::size_t taggings_per_resource = 1;
};

// Planted-partition folksonomy: each resource is tagged by several distinct
// users; each tag slot draws from the resource's community vocabulary, or
// from the shared pool with probability noise_rate. Fully determined by the
// seed (std::mt19937_64, so reproducible across platforms).
struct PlantedSpec {
    std::vector<PlantedCommunity> communities;
    std::vector<std::string> shared_vocabulary;
    double noise_rate = 0.0;  // in [0, 1)
    std::size_t users = 1;
    std::size_t tags_per_post = 3;
    std::uint64_t seed = 0;
};

struct SynthResult {
    std::vector<Post> posts;
    std::vector<std::string> resources;
    std::vector<int> ground_truth;  // community per resource, aligned with `resources`
};

SynthResult generate(const PlantedSpec& spec);

// Adjusted Rand Index via the standard pair-counting contingency formula.
double ari(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

void write_ground_truth_csv(const SynthResult& r, std::ostream& out);

}  // namespace folkso
