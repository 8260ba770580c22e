#include "sumfree/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>

#include "sumfree/rational.hpp"

namespace sumfree::cache {

std::string CacheRecord::key() const { return kind + " " + params.dump(); }

json CacheRecord::to_json() const {
    json j = extra;
    j["kind"] = kind;
    j["params"] = params;
    j["result"] = result;
    j["version"] = version;
    j["timestamp"] = timestamp;
    return j;
}

CacheRecord CacheRecord::from_json(const json& j) {
    if (!j.is_object()) throw Error("cache record is not an object");
    CacheRecord r;
    try {
        r.kind = j.at("kind").get<std::string>();
        r.params = j.at("params");
        r.result = j.at("result");
        r.version = j.value("version", std::string());
        r.timestamp = j.value("timestamp", std::string());
    } catch (const json::exception& e) {
        throw Error(std::string("malformed cache record: ") + e.what());
    }
    if (!r.params.is_object() || !r.result.is_object()) throw Error("malformed cache record: params/result must be objects");
    for (const auto& [name, value] : j.items())
        if (name != "kind" && name != "params" && name != "result" && name != "version" && name != "timestamp")
            r.extra[name] = value;
    return r;
}

std::string default_path() {
    if (const char* env = std::getenv("SUMFREE_CACHE"); env && *env) return env;
    return "sumfree-cache.jsonl";
}

std::string now_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<CacheRecord> Cache::load() const {
    std::ifstream in(path_);
    std::map<std::string, CacheRecord> by_key;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            CacheRecord rec = CacheRecord::from_json(json::parse(line));
            std::string key = rec.key();
            by_key.insert_or_assign(std::move(key), std::move(rec));
        } catch (const std::exception& e) {
            if (warnings_) *warnings_ << "warning: " << path_ << ":" << line_no << ": skipping corrupt record (" << e.what() << ")\n";
        }
    }
    std::vector<CacheRecord> out;
    out.reserve(by_key.size());
    for (auto& [key, rec] : by_key) out.push_back(std::move(rec));
    return out;
}

std::optional<CacheRecord> Cache::find(const std::string& kind, const json& params) const {
    CacheRecord probe;
    probe.kind = kind;
    probe.params = params;
    const std::string key = probe.key();
    for (auto& rec : load())
        if (rec.key() == key) return rec;
    return std::nullopt;
}

void Cache::append(const CacheRecord& record) const {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cannot open cache file " + path_ + " for writing");
    out << record.to_json().dump() << '\n';
    if (!out) throw Error("failed writing cache file " + path_);
}

}  // namespace sumfree::cache
