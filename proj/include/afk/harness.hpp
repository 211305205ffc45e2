#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "afk/cache.hpp"
#include "afk/serialize.hpp"

namespace afk {

// Hard ceilings on user-supplied bounds.
inline constexpr int kMaxN = 5;
inline constexpr int kMaxLength = 8;
inline constexpr int kMaxDegree = 8;
inline constexpr int kMaxThreads = 256;

struct SuiteOptions {
    std::optional<int> n;
    std::optional<int> max_length;
    std::optional<int> max_degree;
    int threads = 1;
};

/// Throws BoundExceeded (naming the bound) or InvalidArgument.
void check_options(const SuiteOptions& options);

struct ResolvedRange {
    int n = 0;
    int max_length = 0;
    int max_degree = 0;
};

struct CheckResult {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string witness;  // first failing instance in enumeration order

    bool passed() const { return failures == 0; }
};

struct VerificationReport {
    std::string suite;
    std::vector<ResolvedRange> ranges;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    double wall_seconds = 0;

    bool passed() const;
    /// Throws InvalidArgument for an unknown check.
    const CheckResult& check(std::string_view name) const;
    /// Wall time is left out unless asked for, so that reports are byte-stable.
    Json to_json(bool timing = false) const;
    std::string to_text(bool timing = false) const;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite, BoundExceeded past a ceiling.
VerificationReport run_suite(std::string_view name, const SuiteOptions& options);

/// f(0), ..., f(count - 1) on up to `threads` workers; results keep index order.
/// The exception of the smallest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t count, int threads, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

// Cache-backed computations.  Output is identical with and without a cache;
// `log` receives quarantine and rebuild notices.

/// {"n", "degree", "elements": [{"w", "polynomial"}]} for every w of length d.
Json schubert_table_payload(int n, int d);
Json schubert_json(const AffinePermutation& w, const Cache* cache, std::vector<std::string>* log = nullptr);
/// {"u", "v", "constants": {"s1s0": "2"}}
Json structure_json(const AffinePermutation& u, const AffinePermutation& v, const Cache* cache,
                    std::vector<std::string>* log = nullptr);

}  // namespace afk
