#include "ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

namespace folkso {

std::string normalize_tag(const std::string& raw) {
    size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string out = raw.substr(b, e - b);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

PostFormat parse_format(const std::string& name) {
    if (name == "jsonl") return PostFormat::jsonl;
    if (name == "tsv") return PostFormat::tsv;
    throw Error(ErrorCode::config, "unknown format: " + name);
}

namespace {

std::vector<std::string> normalize_tags(const std::vector<std::string>& raw) {
    std::set<std::string> uniq;
    for (const auto& t : raw) {
        std::string n = normalize_tag(t);
        if (!n.empty()) uniq.insert(n);
    }
    return {uniq.begin(), uniq.end()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

struct RawRecord {
    Post post;
    bool empty_tags;
};

RawRecord parse_jsonl_line(const std::string& line, std::uint64_t lineno) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(ErrorCode::parse,
                    "line " + std::to_string(lineno) + ": invalid JSON object");
    if (!j.contains("user") || !j["user"].is_string() ||
        !j.contains("resource") || !j["resource"].is_string() ||
        !j.contains("tags") || !j["tags"].is_array())
        throw Error(ErrorCode::parse,
                    "line " + std::to_string(lineno) +
                        ": missing or mistyped user/resource/tags");
    Post p;
    p.user = j["user"].get<std::string>();
    p.resource = j["resource"].get<std::string>();
    std::vector<std::string> raw;
    for (const auto& t : j["tags"]) {
        if (!t.is_string())
            throw Error(ErrorCode::parse,
                        "line " + std::to_string(lineno) + ": non-string tag");
        raw.push_back(t.get<std::string>());
    }
    p.tags = normalize_tags(raw);
    if (j.contains("ts") && j["ts"].is_string())
        p.timestamp = j["ts"].get<std::string>();
    bool empty = p.tags.empty();
    return {std::move(p), empty};
}

RawRecord parse_tsv_line(const std::string& line, std::uint64_t lineno) {
    auto cols = split(line, '\t');
    if (cols.size() < 3)
        throw Error(ErrorCode::parse,
                    "line " + std::to_string(lineno) + ": expected >= 3 columns");
    Post p;
    p.user = cols[0];
    p.resource = cols[1];
    p.tags = normalize_tags(split(cols[2], ','));
    if (cols.size() >= 4 && !cols[3].empty()) p.timestamp = cols[3];
    bool empty = p.tags.empty();
    return {std::move(p), empty};
}

}  // namespace

ParseResult parse_posts(std::istream& in, PostFormat format) {
    ParseResult result;
    // (user, resource) -> index into result.posts
    std::map<std::pair<std::string, std::string>, size_t> seen;
    std::string line;
    std::uint64_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (format == PostFormat::tsv && first) {
            first = false;
            auto cols = split(line, '\t');
            if (!cols.empty() && cols[0] == "user") continue;  // header row
        }
        first = false;
        RawRecord rec = format == PostFormat::jsonl
                            ? parse_jsonl_line(line, lineno)
                            : parse_tsv_line(line, lineno);
        if (rec.empty_tags) {
            ++result.rejected_empty;
            continue;
        }
        auto key = std::make_pair(rec.post.user, rec.post.resource);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, result.posts.size());
            result.posts.push_back(std::move(rec.post));
        } else {
            Post& existing = result.posts[it->second];
            std::set<std::string> merged(existing.tags.begin(), existing.tags.end());
            merged.insert(rec.post.tags.begin(), rec.post.tags.end());
            existing.tags.assign(merged.begin(), merged.end());
        }
    }
    return result;
}

void serialize_posts(const std::vector<Post>& posts, PostFormat format,
                     std::ostream& out) {
    for (const auto& p : posts) {
        if (format == PostFormat::jsonl) {
            nlohmann::json j;
            j["user"] = p.user;
            j["resource"] = p.resource;
            j["tags"] = p.tags;
            if (p.timestamp) j["ts"] = *p.timestamp;
            out << j.dump() << '\n';
        } else {
            out << p.user << '\t' << p.resource << '\t';
            for (size_t i = 0; i < p.tags.size(); ++i) {
                if (i) out << ',';
                out << p.tags[i];
            }
            if (p.timestamp) out << '\t' << *p.timestamp;
            out << '\n';
        }
    }
}

Corpus build_corpus(const std::vector<Post>& posts) {
    if (posts.empty())
        throw Error(ErrorCode::parse, "no posts to build a corpus from");
    Corpus c;
    for (const auto& p : posts) {
        TagCloud& cloud = c.clouds[p.resource];
        cloud.resource = p.resource;
        for (const auto& t : p.tags) {
            ++cloud.freqs[t];
            ++c.global_freqs[t];
        }
    }
    return c;
}

}  // namespace folkso
