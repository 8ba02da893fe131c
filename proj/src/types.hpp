#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folkso {

// Error categories map 1:1 onto CLI exit codes and C API status codes.
enum class ErrorCode { parse = 1, config = 2, numeric = 3, io = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// One tagging event: a user attaching a set of tags to a resource.
// Tags are stored normalized (trimmed, lowercased), sorted, without duplicates.
struct Post {
    std::string user;
    std::string resource;
    std::vector<std::string> tags;
    std::optional<std::string> timestamp;  // informational only, never used downstream
};

// Per-resource weighted tag set: count = number of distinct users who
// assigned the tag to this resource.
struct TagCloud {
    std::string resource;
    std::map<std::string, std::uint64_t> freqs;
};

// All tag-clouds plus global tag frequencies over the analysis set.
struct Corpus {
    std::map<std::string, TagCloud> clouds;
    std::map<std::string, std::uint64_t> global_freqs;
};

}  // namespace folkso
