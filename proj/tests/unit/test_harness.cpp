#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

#include "afk/errors.hpp"
#include "afk/harness.hpp"

using namespace afk;
namespace fs = std::filesystem;

namespace {

AffinePermutation W(int n, std::initializer_list<int> word) { return AffinePermutation::from_word(n, word); }

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("afk-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

void overwrite(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

std::size_t count_quarantined(const fs::path& dir) {
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename().string().find(".corrupt") != std::string::npos) ++count;
    return count;
}

}  // namespace

TEST_CASE("integer lists") {
    CHECK(parse_int_list("") == std::vector<int>{});
    CHECK(parse_int_list("2,1,0") == std::vector<int>{2, 1, 0});
    CHECK(parse_int_list("-1, 0,9") == std::vector<int>{-1, 0, 9});
    CHECK_THROWS_AS(parse_int_list("2,,1"), InvalidArgument);
    CHECK_THROWS_AS(parse_int_list("2,x"), InvalidArgument);
    CHECK_THROWS_AS(parse_int_list("2,"), InvalidArgument);
}

TEST_CASE("serialization") {
    CHECK(word_name(W(3, {2, 1, 0})) == "s2s1s0");
    CHECK(word_name(AffinePermutation::identity(3)) == "id");
    CHECK(to_json(W(3, {1, 0})) == Json::parse(R"({"window": [0, 1, 5], "word": [1, 0]})"));
    CHECK(permutation_from_json(3, to_json(W(3, {2, 1, 0}))) == W(3, {2, 1, 0}));
    CHECK_THROWS_AS(permutation_from_json(4, to_json(W(3, {1}))), InvalidArgument);
    for (const auto& w : elements_up_to_length(3, 4)) {
        const auto& s = affine_schubert(w);
        CHECK(rn_element_from_json(to_json(s)) == s);
    }
    // p_1^2/2 + p_1 x_1, with x_1 = -x_0 in R_2
    const auto j = to_json(affine_schubert(W(2, {0, 1})));
    CHECK(j.dump() == R"({"n":2,"terms":[{"p":[1],"x":[1,0],"coeff":"-1"},{"p":[1,1],"x":[0,0],"coeff":"1/2"}]})");
    CHECK_THROWS_AS(rn_element_from_json(Json::parse(R"({"n": 3})")), InvalidArgument);
}

TEST_CASE("cache keys and digests") {
    const CacheKey key{3, "schubert-table", 4};
    CHECK(key.file_name() == "schubert-table-n3-d4.json");
    CHECK(CacheKey::from_file_name(key.file_name()) == key);
    CHECK_FALSE(CacheKey::from_file_name("schubert-table-n3-d4.json.corrupt"));
    CHECK_FALSE(CacheKey::from_file_name("notes.txt"));
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto entry = make_cache_entry(key, Json{{"x", 1}});
    CHECK(entry.digest_ok());
    CHECK(cache_entry_from_json(to_json(entry)) == entry);
    CHECK_THROWS_AS(cache_entry_from_json(Json::parse(R"({"schema_version": 1})")), InvalidArgument);
}

TEST_CASE("cache round trip of a degree-4 Schubert table") {
    TempDir tmp;
    Cache cache(tmp.path);
    const CacheKey key{3, "schubert-table", 4};
    CHECK(cache.load(key).status == CacheStatus::miss);
    const auto entry = make_cache_entry(key, schubert_table_payload(3, 4));
    cache.store(entry);
    const auto back = cache.load(key);
    REQUIRE(back.status == CacheStatus::hit);
    CHECK(*back.entry == entry);
    CHECK(back.entry->payload.at("elements").size() == elements_of_length(3, 4).size());
    CHECK(cache.keys() == std::vector<CacheKey>{key});
}

TEST_CASE("tampered entries are quarantined and recomputed") {
    TempDir tmp;
    Cache cache(tmp.path);
    const auto w = W(3, {2, 1, 0});
    const Json fresh = schubert_json(w, nullptr);
    CHECK(schubert_json(w, &cache) == fresh);
    const fs::path file = tmp.path / "schubert-table-n3-d3.json";
    REQUIRE(fs::exists(file));

    // change one coefficient but keep the old digest
    std::string text = slurp(file);
    const auto pos = text.find("\"1/6\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "\"1/7\"");
    overwrite(file, text);
    CHECK(cache.peek({3, "schubert-table", 3}) == CacheStatus::corrupt);

    std::vector<std::string> log;
    CHECK(schubert_json(w, &cache, &log) == fresh);
    CHECK(log.size() == 1);
    CHECK(count_quarantined(tmp.path) == 1);
    CHECK(cache.peek({3, "schubert-table", 3}) == CacheStatus::hit);

    // unparseable files too; earlier quarantined copies are kept
    overwrite(file, "{ not json");
    CHECK(schubert_json(w, &cache) == fresh);
    CHECK(count_quarantined(tmp.path) == 2);
}

TEST_CASE("schema version bumps are cache misses") {
    TempDir tmp;
    Cache cache(tmp.path);
    const CacheKey key{2, "schubert-table", 2};
    auto entry = make_cache_entry(key, schubert_table_payload(2, 2));
    entry.schema_version = kCacheSchemaVersion + 1;
    cache.store(entry);
    const auto found = cache.load(key);
    CHECK(found.status == CacheStatus::stale);
    CHECK_FALSE(found.entry);
    CHECK(count_quarantined(tmp.path) == 0);
    const auto w = W(2, {1, 0});
    CHECK(schubert_json(w, &cache) == schubert_json(w, nullptr));
    CHECK(cache.peek(key) == CacheStatus::hit);
}

TEST_CASE("cache IO failures are reported") {
    TempDir tmp;
    fs::create_directories(tmp.path);
    overwrite(tmp.path / "plain-file", "x");
    CHECK_THROWS_AS(Cache(tmp.path / "plain-file" / "sub"), CacheError);
    Cache cache(tmp.path / "dir");
    fs::remove_all(tmp.path / "dir");
    CHECK_THROWS_AS(cache.store(make_cache_entry({2, "schubert-table", 1}, Json::object())), CacheError);
}

TEST_CASE("cache on and off give identical output") {
    TempDir tmp;
    Cache cache(tmp.path);
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : elements_up_to_length(n, 4)) {
            CHECK(schubert_json(w, &cache) == schubert_json(w, nullptr));
            CHECK(schubert_json(w, &cache).dump() == schubert_json(w, nullptr).dump());
        }
    for (const auto& u : elements_up_to_length(3, 2))
        for (const auto& v : elements_up_to_length(3, 2)) {
            const Json off = structure_json(u, v, nullptr);
            CHECK(structure_json(u, v, &cache) == off);
            CHECK(structure_json(u, v, &cache).dump() == off.dump());
        }
    CHECK(structure_json(W(2, {0}), W(2, {0}), nullptr).at("constants") == Json::parse(R"({"s1s0": "2"})"));
}

TEST_CASE("parallel map keeps order and propagates errors") {
    for (int threads : {1, 2, 7}) {
        const auto squares = parallel_map(50, threads, [](std::size_t i) { return i * i; });
        REQUIRE(squares.size() == 50);
        for (std::size_t i = 0; i < 50; ++i) CHECK(squares[i] == i * i);
        CHECK_THROWS_WITH(parallel_map(20, threads,
                                       [](std::size_t i) -> int {
                                           if (i == 5 || i == 13) throw std::runtime_error(std::to_string(i));
                                           return 0;
                                       }),
                          "5");
    }
    CHECK(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
}

TEST_CASE("suite options") {
    CHECK_NOTHROW(check_options({3, 6, 6, 1}));
    CHECK_THROWS_AS(check_options({9, {}, {}, 1}), BoundExceeded);
    CHECK_THROWS_AS(check_options({3, 9, {}, 1}), BoundExceeded);
    CHECK_THROWS_AS(check_options({3, {}, 9, 1}), BoundExceeded);
    CHECK_THROWS_AS(check_options({1, {}, {}, 1}), InvalidArgument);
    CHECK_THROWS_AS(check_options({3, {}, {}, 0}), InvalidArgument);
    CHECK_THROWS_AS(run_suite("no-such-suite", {}), InvalidArgument);
    CHECK_THROWS_AS(run_suite("schubert-table", {4, {}, {}, 1}), InvalidArgument);
    CHECK(suite_names().size() == 10);
}

TEST_CASE("reports do not depend on the thread count") {
    for (const std::string suite : {"main-theorem", "mn-rule", "positivity"}) {
        const SuiteOptions one{3, 4, 4, 1}, many{3, 4, 4, 4};
        const auto a = run_suite(suite, one), b = run_suite(suite, many);
        CHECK(a.passed());
        CHECK(a.to_json().dump() == b.to_json().dump());
        CHECK(a.to_text() == b.to_text());
    }
}

TEST_CASE("report serialization") {
    VerificationReport r;
    r.suite = "demo";
    r.ranges = {{3, 4, -1}};
    r.checks = {{"good", 5, 0, {}}, {"bad", 5, 2, "n=3 w=s0"}};
    CHECK_FALSE(r.passed());
    CHECK(r.check("bad").witness == "n=3 w=s0");
    CHECK_THROWS_AS(r.check("missing"), InvalidArgument);
    const Json j = r.to_json();
    CHECK(j.at("status") == "fail");
    CHECK(j.at("parameters")[0].at("max_degree").is_null());
    CHECK(j.at("checks")[1].at("witness") == "n=3 w=s0");
    CHECK_FALSE(j.at("checks")[0].contains("witness"));
    CHECK_FALSE(j.contains("wall_time_seconds"));
    CHECK(r.to_json(true).contains("wall_time_seconds"));
    CHECK(r.to_text().find("first failure: n=3 w=s0") != std::string::npos);
}
