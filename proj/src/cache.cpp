#include "afk/cache.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>
#include <tuple>

#include "afk/errors.hpp"

namespace afk {

namespace fs = std::filesystem;

std::string CacheKey::file_name() const { return kind + "-n" + std::to_string(n) + "-d" + std::to_string(degree) + ".json"; }

std::optional<CacheKey> CacheKey::from_file_name(const std::string& name) {
    static const std::regex pattern(R"(([a-z][a-z-]*)-n([0-9]+)-d([0-9]+)\.json)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) return std::nullopt;
    return CacheKey{std::stoi(m[2]), m[1], std::stoi(m[3])};
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw CacheError("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

bool CacheEntry::digest_ok() const { return digest == sha256_hex(payload.dump()); }

CacheEntry make_cache_entry(CacheKey key, Json payload) {
    CacheEntry entry;
    entry.key = std::move(key);
    entry.payload = std::move(payload);
    entry.digest = sha256_hex(entry.payload.dump());
    return entry;
}

Json to_json(const CacheEntry& entry) {
    return Json{{"schema_version", entry.schema_version},
                {"key", {{"n", entry.key.n}, {"kind", entry.key.kind}, {"degree", entry.key.degree}}},
                {"digest", entry.digest},
                {"payload", entry.payload}};
}

CacheEntry cache_entry_from_json(const Json& j) {
    try {
        CacheEntry entry;
        entry.schema_version = j.at("schema_version").get<int>();
        const auto& key = j.at("key");
        entry.key = {key.at("n").get<int>(), key.at("kind").get<std::string>(), key.at("degree").get<int>()};
        entry.digest = j.at("digest").get<std::string>();
        entry.payload = j.at("payload");
        return entry;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed cache entry: ") + e.what());
    }
}

std::string_view cache_status_name(CacheStatus status) {
    switch (status) {
        case CacheStatus::hit: return "hit";
        case CacheStatus::miss: return "miss";
        case CacheStatus::stale: return "stale";
        case CacheStatus::corrupt: return "corrupt";
    }
    return "?";
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw CacheError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::optional<Cache> Cache::from_options(const std::string& flag) {
    if (!flag.empty()) return Cache(flag);
    if (const char* env = std::getenv("AFK_CACHE_DIR"); env && *env) return Cache(env);
    return std::nullopt;
}

fs::path Cache::path_for(const CacheKey& key) const { return dir_ / key.file_name(); }

fs::path Cache::quarantine(const fs::path& file) const {
    fs::path target = file;
    target += ".corrupt";
    for (int i = 1; fs::exists(target); ++i) {
        target = file;
        target += ".corrupt-" + std::to_string(i);
    }
    std::error_code ec;
    fs::rename(file, target, ec);
    if (ec) throw CacheError("cannot quarantine " + file.string() + ": " + ec.message());
    return target;
}

std::pair<CacheStatus, std::optional<CacheEntry>> Cache::read(const CacheKey& key) const {
    const fs::path file = path_for(key);
    if (!fs::exists(file)) return {CacheStatus::miss, std::nullopt};
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CacheError("cannot read " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw CacheError("read failed for " + file.string());
    std::optional<CacheEntry> entry;
    try {
        entry = cache_entry_from_json(Json::parse(buffer.str()));
    } catch (const std::exception&) {
        return {CacheStatus::corrupt, std::nullopt};
    }
    if (entry->schema_version != kCacheSchemaVersion) return {CacheStatus::stale, std::nullopt};
    if (!(entry->key == key) || !entry->digest_ok()) return {CacheStatus::corrupt, std::nullopt};
    return {CacheStatus::hit, std::move(entry)};
}

CacheStatus Cache::peek(const CacheKey& key) const { return read(key).first; }

Cache::Lookup Cache::load(const CacheKey& key) const {
    Lookup out;
    std::tie(out.status, out.entry) = read(key);
    if (out.status == CacheStatus::corrupt) out.quarantined = quarantine(path_for(key));
    return out;
}

std::vector<CacheKey> Cache::keys() const {
    std::vector<std::pair<std::string, CacheKey>> found;
    std::error_code ec;
    for (fs::directory_iterator it(dir_, ec), end; !ec && it != end; it.increment(ec)) {
        const std::string name = it->path().filename().string();
        if (auto key = CacheKey::from_file_name(name)) found.emplace_back(name, *key);
    }
    if (ec) throw CacheError("cannot list " + dir_.string() + ": " + ec.message());
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CacheKey> out;
    for (auto& [name, key] : found) out.push_back(std::move(key));
    return out;
}

void Cache::store(const CacheEntry& entry) const {
    static std::atomic<unsigned> counter{0};
    const fs::path file = path_for(entry.key);
    std::ostringstream suffix;
    suffix << ".tmp-" << std::this_thread::get_id() << "-" << counter++;
    fs::path tmp = file;
    tmp += suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + tmp.string());
        out << to_json(entry).dump(1) << '\n';
        out.flush();
        if (!out) throw CacheError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CacheError("cannot move cache entry into place at " + file.string());
    }
}

}  // namespace afk
