#include "synth.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace folkso {

namespace {

void validate(const PlantedSpec& spec) {
    if (spec.communities.empty())
        throw Error(ErrorCode::config, "planted spec needs at least one community");
    if (!(spec.noise_rate >= 0.0) || spec.noise_rate >= 1.0)
        throw Error(ErrorCode::config, "noise_rate must be in [0, 1)");
    if (spec.users < 1) throw Error(ErrorCode::config, "users must be positive");
    if (spec.tags_per_post < 1)
        throw Error(ErrorCode::config, "tags_per_post must be positive");
    if (spec.noise_rate > 0.0 && spec.shared_vocabulary.empty())
        throw Error(ErrorCode::config, "noise_rate > 0 needs a shared vocabulary");

    std::set<std::string> seen(spec.shared_vocabulary.begin(),
                               spec.shared_vocabulary.end());
    if (seen.size() != spec.shared_vocabulary.size())
        throw Error(ErrorCode::config, "duplicate tag in shared vocabulary");
    for (const auto& c : spec.communities) {
        if (c.resource_count < 1)
            throw Error(ErrorCode::config, "community resource_count must be positive");
        if (c.vocabulary.empty())
            throw Error(ErrorCode::config, "community vocabulary must be non-empty");
        if (c.taggings_per_resource < 1 || c.taggings_per_resource > spec.users)
            throw Error(ErrorCode::config,
                        "taggings_per_resource must be in [1, users]");
        for (const auto& t : c.vocabulary)
            if (!seen.insert(t).second)
                throw Error(ErrorCode::config, "vocabulary overlap on tag '" + t + "'");
    }
}

}  // namespace

SynthResult generate(const PlantedSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SynthResult result;
    std::size_t resource_idx = 0;
    for (std::size_t ci = 0; ci < spec.communities.size(); ++ci) {
        const auto& comm = spec.communities[ci];
        for (std::size_t r = 0; r < comm.resource_count; ++r, ++resource_idx) {
            std::string rid = "r" + std::to_string(resource_idx);
            result.resources.push_back(rid);
            result.ground_truth.push_back(static_cast<int>(ci));

            // distinct users for this resource: partial Fisher-Yates draw
            std::vector<std::size_t> user_pool(spec.users);
            for (std::size_t u = 0; u < spec.users; ++u) user_pool[u] = u;
            for (std::size_t t = 0; t < comm.taggings_per_resource; ++t) {
                std::size_t pick = t + rng() % (spec.users - t);
                std::swap(user_pool[t], user_pool[pick]);

                Post p;
                p.user = "u" + std::to_string(user_pool[t]);
                p.resource = rid;
                std::set<std::string> tags;
                std::size_t attempts = 0;
                const std::size_t max_attempts = 100 * spec.tags_per_post;
                while (tags.size() < spec.tags_per_post && attempts < max_attempts) {
                    ++attempts;
                    const auto& pool = unit(rng) < spec.noise_rate
                                           ? spec.shared_vocabulary
                                           : comm.vocabulary;
                    tags.insert(pool[rng() % pool.size()]);
                }
                p.tags.assign(tags.begin(), tags.end());
                result.posts.push_back(std::move(p));
            }
        }
    }
    return result;
}

double ari(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
    if (labels_a.empty() || labels_a.size() != labels_b.size())
        throw Error(ErrorCode::config, "label vectors must be non-empty and equal length");
    const std::size_t n = labels_a.size();

    std::map<int, std::size_t> ia, ib;
    for (int l : labels_a) ia.emplace(l, ia.size());
    for (int l : labels_b) ib.emplace(l, ib.size());
    std::vector<std::vector<std::uint64_t>> cont(ia.size(),
                                                 std::vector<std::uint64_t>(ib.size(), 0));
    for (std::size_t i = 0; i < n; ++i)
        ++cont[ia[labels_a[i]]][ib[labels_b[i]]];

    auto choose2 = [](std::uint64_t x) {
        return static_cast<double>(x) * static_cast<double>(x - (x > 0 ? 1 : 0)) / 2.0;
    };
    double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
    std::vector<std::uint64_t> row_sums(ia.size(), 0), col_sums(ib.size(), 0);
    for (std::size_t i = 0; i < cont.size(); ++i)
        for (std::size_t j = 0; j < cont[i].size(); ++j) {
            sum_ij += choose2(cont[i][j]);
            row_sums[i] += cont[i][j];
            col_sums[j] += cont[i][j];
        }
    for (auto s : row_sums) sum_a += choose2(s);
    for (auto s : col_sums) sum_b += choose2(s);

    double total = choose2(n);
    double expected = sum_a * sum_b / total;
    double max_index = (sum_a + sum_b) / 2.0;
    if (max_index == expected) return 1.0;  // both labelings trivial
    return (sum_ij - expected) / (max_index - expected);
}

void write_ground_truth_csv(const SynthResult& r, std::ostream& out) {
    out << "resource_id,community\n";
    for (std::size_t i = 0; i < r.resources.size(); ++i)
        out << r.resources[i] << ',' << r.ground_truth[i] << '\n';
}

}  // namespace folkso
