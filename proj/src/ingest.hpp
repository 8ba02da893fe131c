#pragma once

#include <istream>
#include <ostream>

#include "types.hpp"

namespace folkso {

enum class PostFormat { jsonl, tsv };

struct ParseResult {
    std::vector<Post> posts;
    std::uint64_t rejected_empty = 0;  // records dropped for having no usable tags
};

// Normalize a tag: trim surrounding whitespace, lowercase (ASCII).
std::string normalize_tag(const std::string& raw);

// Parse posts from a stream. Duplicate (user, resource) records are merged
// by tag-set union; otherwise the order of first appearance is preserved.
// Throws Error(parse) with a line number on malformed input.
ParseResult parse_posts(std::istream& in, PostFormat format);

// Write posts back out in the given format (inverse of parse_posts on
// valid input).
void serialize_posts(const std::vector<Post>& posts, PostFormat format,
                     std::ostream& out);

// Aggregate deduplicated posts into per-resource tag-clouds and global
// tag frequencies. Throws Error(parse) on an empty post list.
Corpus build_corpus(const std::vector<Post>& posts);

PostFormat parse_format(const std::string& name);

}  // namespace folkso
