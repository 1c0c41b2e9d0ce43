#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bvhh/errors.hpp"

namespace bvhh {

inline constexpr const char* kCacheVersion = "bvhh-cache/1";

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/* Content-addressed result cache: one JSON file per key, wrapped in a
   versioned envelope. Entries whose version or recorded key do not match are
   treated as absent, so stale or colliding files are recomputed rather than
   trusted. Writes go through a temp file and an atomic rename; a cache
   failure after construction is never an error, only a missed optimization. */
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw InputError("cannot create cache directory: " + dir_.string());
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<nlohmann::json> get(const std::string& key) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
        if (doc.value("cache_version", std::string{}) != kCacheVersion) return std::nullopt;
        if (doc.value("key", std::string{}) != key) return std::nullopt;
        if (!doc.contains("payload")) return std::nullopt;
        return doc["payload"];
    }

    void put(const std::string& key, const nlohmann::json& payload) const {
        nlohmann::json doc{{"cache_version", kCacheVersion}, {"key", key}, {"payload", payload}};
        auto dest = path_for(key);
        auto tmp = dest;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << doc.dump();
            if (!out) {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                return;
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, dest, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

private:
    std::filesystem::path path_for(const std::string& key) const {
        return dir_ / (fnv1a_hex(key) + ".json");
    }

    std::filesystem::path dir_;
};

inline std::string file_content_hash(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read file for hashing: " + p.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a_hex(data);
}

} // namespace bvhh
