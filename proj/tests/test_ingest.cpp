#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ingest.hpp"

using namespace folkso;

TEST_CASE("single jsonl record parses to one post") {
    std::istringstream in(R"({"user":"u1","resource":"r1","tags":["a","b"]})");
    auto result = parse_posts(in, PostFormat::jsonl);
    REQUIRE(result.posts.size() == 1);
    CHECK(result.posts[0].user == "u1");
    CHECK(result.posts[0].resource == "r1");
    CHECK(result.posts[0].tags == std::vector<std::string>{"a", "b"});
    CHECK(result.rejected_empty == 0);
}

TEST_CASE("duplicate (user, resource) records merge by tag union") {
    std::istringstream in(
        "{\"user\":\"u1\",\"resource\":\"r1\",\"tags\":[\"a\"]}\n"
        "{\"user\":\"u1\",\"resource\":\"r1\",\"tags\":[\"b\"]}\n");
    auto result = parse_posts(in, PostFormat::jsonl);
    REQUIRE(result.posts.size() == 1);
    CHECK(result.posts[0].tags == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty tag list rejects the record with a warning count") {
    std::istringstream in(R"({"user":"u1","resource":"r1","tags":[]})");
    auto result = parse_posts(in, PostFormat::jsonl);
    CHECK(result.posts.empty());
    CHECK(result.rejected_empty == 1);
}

TEST_CASE("malformed jsonl reports the line number") {
    std::istringstream in(
        "{\"user\":\"u1\",\"resource\":\"r1\",\"tags\":[\"a\"]}\n"
        "not json\n");
    try {
        parse_posts(in, PostFormat::jsonl);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("tags are trimmed, lowercased, deduplicated") {
    std::istringstream in(R"({"user":"u1","resource":"r1","tags":[" Web ","web","DESIGN"]})");
    auto result = parse_posts(in, PostFormat::jsonl);
    REQUIRE(result.posts.size() == 1);
    CHECK(result.posts[0].tags == std::vector<std::string>{"design", "web"});
}

TEST_CASE("tsv with and without header") {
    std::istringstream with_header(
        "user\tresource\ttags\tts\n"
        "u1\tr1\ta,b\t2006-10-01T00:00:00Z\n");
    auto r1 = parse_posts(with_header, PostFormat::tsv);
    REQUIRE(r1.posts.size() == 1);
    CHECK(r1.posts[0].tags == std::vector<std::string>{"a", "b"});
    CHECK(r1.posts[0].timestamp == "2006-10-01T00:00:00Z");

    std::istringstream bare("u1\tr1\ta,b\n");
    auto r2 = parse_posts(bare, PostFormat::tsv);
    REQUIRE(r2.posts.size() == 1);
}

TEST_CASE("build_corpus counts distinct users per resource-tag pair") {
    std::vector<Post> posts{{"u1", "r1", {"a"}, {}}, {"u2", "r1", {"a", "b"}, {}}};
    Corpus c = build_corpus(posts);
    CHECK(c.clouds.at("r1").freqs.at("a") == 2);
    CHECK(c.clouds.at("r1").freqs.at("b") == 1);
    CHECK(c.global_freqs.at("a") == 2);
    CHECK(c.global_freqs.at("b") == 1);
}

TEST_CASE("global frequency sums over resources") {
    std::vector<Post> posts{{"u1", "r1", {"a"}, {}}, {"u1", "r2", {"a"}, {}}};
    Corpus c = build_corpus(posts);
    CHECK(c.global_freqs.at("a") == 2);
    CHECK(c.clouds.at("r1").freqs.at("a") == 1);
    CHECK(c.clouds.at("r2").freqs.at("a") == 1);
}

TEST_CASE("build_corpus rejects an empty post list") {
    CHECK_THROWS_AS(build_corpus({}), Error);
}

namespace {

std::vector<Post> random_posts(std::mt19937_64& rng, size_t count) {
    // distinct (user, resource) pairs by construction
    std::vector<Post> posts;
    for (size_t i = 0; i < count; ++i) {
        Post p;
        p.user = "u" + std::to_string(i % 17);
        p.resource = "r" + std::to_string(i);
        size_t ntags = 1 + rng() % 5;
        std::set<std::string> tags;
        while (tags.size() < ntags) tags.insert("t" + std::to_string(rng() % 30));
        p.tags.assign(tags.begin(), tags.end());
        posts.push_back(p);
    }
    return posts;
}

}  // namespace

TEST_CASE("corpus invariant: global equals independent recount over clouds") {
    std::mt19937_64 rng(7);
    auto posts = random_posts(rng, 100);
    Corpus c = build_corpus(posts);

    // independent recount oracle
    std::map<std::string, std::uint64_t> recount;
    for (const auto& [rid, cloud] : c.clouds)
        for (const auto& [tag, f] : cloud.freqs) recount[tag] += f;
    CHECK(recount == c.global_freqs);

    std::uint64_t total_global = 0, total_clouds = 0;
    for (const auto& [tag, f] : c.global_freqs) total_global += f;
    for (const auto& [rid, cloud] : c.clouds)
        for (const auto& [tag, f] : cloud.freqs) total_clouds += f;
    CHECK(total_global == total_clouds);
}

TEST_CASE("build_corpus is permutation-invariant") {
    std::mt19937_64 rng(11);
    auto posts = random_posts(rng, 60);
    Corpus a = build_corpus(posts);
    std::shuffle(posts.begin(), posts.end(), rng);
    Corpus b = build_corpus(posts);
    CHECK(a.global_freqs == b.global_freqs);
    REQUIRE(a.clouds.size() == b.clouds.size());
    for (const auto& [rid, cloud] : a.clouds) CHECK(b.clouds.at(rid).freqs == cloud.freqs);
}

TEST_CASE("serialize then parse round-trips posts in both formats") {
    std::mt19937_64 rng(3);
    auto posts = random_posts(rng, 40);
    posts[0].timestamp = "2006-10-15T12:00:00Z";
    for (auto format : {PostFormat::jsonl, PostFormat::tsv}) {
        std::stringstream buf;
        serialize_posts(posts, format, buf);
        auto parsed = parse_posts(buf, format);
        REQUIRE(parsed.posts.size() == posts.size());
        for (size_t i = 0; i < posts.size(); ++i) {
            CHECK(parsed.posts[i].user == posts[i].user);
            CHECK(parsed.posts[i].resource == posts[i].resource);
            CHECK(parsed.posts[i].tags == posts[i].tags);
            CHECK(parsed.posts[i].timestamp == posts[i].timestamp);
        }
    }
}
