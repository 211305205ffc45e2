#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "afk/serialize.hpp"

namespace afk {

inline constexpr int kCacheSchemaVersion = 1;

/// Cache IO failure (unreadable directory, failed write or rename).
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CacheKey {
    int n = 0;
    std::string kind;
    int degree = 0;

    std::string file_name() const;
    /// Inverse of file_name(); nullopt for other files.
    static std::optional<CacheKey> from_file_name(const std::string& name);
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheEntry {
    int schema_version = kCacheSchemaVersion;
    CacheKey key;
    Json payload;
    std::string digest;  // SHA-256 of payload.dump()

    bool digest_ok() const;
    friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

std::string sha256_hex(const std::string& data);

/// Entry at the current schema version with a fresh digest.
CacheEntry make_cache_entry(CacheKey key, Json payload);

Json to_json(const CacheEntry& entry);
/// Throws InvalidArgument on a malformed document.
CacheEntry cache_entry_from_json(const Json& j);

enum class CacheStatus { hit, miss, stale, corrupt };
std::string_view cache_status_name(CacheStatus status);

class Cache {
public:
    explicit Cache(std::filesystem::path dir);

    /// --cache-dir if given, else $AFK_CACHE_DIR, else no cache.
    static std::optional<Cache> from_options(const std::string& flag);

    const std::filesystem::path& dir() const { return dir_; }

    struct Lookup {
        CacheStatus status = CacheStatus::miss;
        std::optional<CacheEntry> entry;
        std::filesystem::path quarantined;  // set when a corrupt file was moved aside
    };

    /// Hits require a matching key, schema version and digest.  Corrupt files
    /// are renamed to *.corrupt[-N]; stale versions are left for overwrite.
    Lookup load(const CacheKey& key) const;
    /// Same classification as load() without touching the file.
    CacheStatus peek(const CacheKey& key) const;
    /// Write to a temporary file, then rename over the target.
    void store(const CacheEntry& entry) const;
    /// Keys of all entry files present, sorted by file name.
    std::vector<CacheKey> keys() const;

private:
    std::filesystem::path path_for(const CacheKey& key) const;
    std::filesystem::path quarantine(const std::filesystem::path& file) const;
    std::pair<CacheStatus, std::optional<CacheEntry>> read(const CacheKey& key) const;

    std::filesystem::path dir_;
};

}  // namespace afk
