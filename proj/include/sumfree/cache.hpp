#pragma once

// Append-only JSON-lines result cache. One record per line:
//   {"kind": ..., "params": {...}, "result": {...}, "version": ..., "timestamp": ...}
// Unknown fields survive a read/write cycle; corrupt lines are skipped.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sumfree::cache {

using nlohmann::json;

struct CacheRecord {
    std::string kind;  // continuous | discrete | certify
    json params = json::object();
    json result = json::object();
    std::string version;
    std::string timestamp;
    json extra = json::object();  // fields this version does not know

    /// kind + params; identical keys denote the same experiment.
    std::string key() const;

    json to_json() const;
    /// Throws Error when required fields are missing or mistyped.
    static CacheRecord from_json(const json& j);

    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

/// $SUMFREE_CACHE, else "sumfree-cache.jsonl" in the working directory.
std::string default_path();

/// UTC, ISO 8601.
std::string now_timestamp();

class Cache {
public:
    explicit Cache(std::string path, std::ostream* warnings = nullptr)
        : path_(std::move(path)), warnings_(warnings) {}

    const std::string& path() const { return path_; }

    /// Records deduplicated by key (last line wins), ordered by key.
    /// A missing file is an empty cache.
    std::vector<CacheRecord> load() const;

    std::optional<CacheRecord> find(const std::string& kind, const json& params) const;

    /// Appends one line; throws Error when the file cannot be written.
    void append(const CacheRecord& record) const;

private:
    std::string path_;
    std::ostream* warnings_;
};

}  // namespace sumfree::cache
