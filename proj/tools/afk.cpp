// afk: compute affine Schubert data, run verification suites, manage the cache.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "afk/errors.hpp"
#include "afk/harness.hpp"

using namespace afk;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kInternal = 3 };

struct Options {
    std::string format = "json";
    std::string cache_dir;
    int threads = 1;
    std::optional<int> n;
    std::optional<int> max_length;
    std::optional<int> max_degree;
    bool timing = false;

    std::string kind;
    std::string word, window, partition, weight, u, v;
    std::optional<int> m;
    bool table = false;

    std::string suite;
};

bool text(const Options& o) { return o.format == "text"; }
bool csv(const Options& o) { return o.format == "csv"; }

void emit(const Options& o, const Json& j, const std::string& plain) {
    if (text(o) || csv(o)) std::cout << plain << '\n';
    else std::cout << j.dump(2) << '\n';
}

void flush_log(const std::vector<std::string>& log) {
    for (const auto& line : log) std::cerr << "afk: " << line << '\n';
}

int require_n(const Options& o) {
    if (!o.n) throw InvalidArgument("--n is required");
    check_options({o.n, o.max_length, o.max_degree, o.threads});
    return *o.n;
}

int length_bound(const Options& o, int n) { return o.max_length.value_or(n >= 4 ? 5 : 6); }
int degree_bound_for(const Options& o) { return o.max_degree.value_or(kMaxDegree); }

AffinePermutation bounded(const Options& o, AffinePermutation w, const std::string& what) {
    if (w.length() > length_bound(o, w.n()))
        throw BoundExceeded(what + " has length " + std::to_string(w.length()) + ", above --max-length " +
                            std::to_string(length_bound(o, w.n())));
    return w;
}

AffinePermutation permutation_arg(const Options& o, int n) {
    if (!o.window.empty() && !o.word.empty()) throw InvalidArgument("give --word or --window, not both");
    if (!o.window.empty()) {
        auto w = AffinePermutation::from_window(parse_int_list(o.window));
        if (w.n() != n) throw InvalidArgument("--window must have n entries");
        return bounded(o, w, "w");
    }
    return bounded(o, AffinePermutation::from_word(n, parse_int_list(o.word)), "w");
}

Partition partition_arg(const Options& o) {
    if (o.partition.empty()) throw InvalidArgument("--partition is required");
    Partition lambda(parse_int_list(o.partition));
    if (lambda.size() > degree_bound_for(o))
        throw BoundExceeded("|lambda| = " + std::to_string(lambda.size()) + " exceeds --max-degree " +
                            std::to_string(degree_bound_for(o)));
    return lambda;
}

std::optional<Cache> open_cache(const Options& o) { return Cache::from_options(o.cache_dir); }

std::string chain_path(const RibbonChain& chain) {
    std::string out;
    for (const auto& cover : chain.covers)
        out += "[" + std::to_string(cover.index.j1) + "," + std::to_string(cover.index.j2) + "] ";
    return out + "-> " + chain.outside().to_string();
}

std::string chain_text(const RibbonChain& chain) { return (chain.sign > 0 ? "+1 " : "-1 ") + chain_path(chain); }

int cmd_compute(const Options& o) {
    const int n = require_n(o);
    const auto cache = open_cache(o);
    std::vector<std::string> log;
    if (csv(o) && o.kind != "structure") throw InvalidArgument("--format csv is only available for structure constants");
    Json out{{"kind", o.kind}, {"n", n}};
    std::string plain;
    if (o.kind == "schubert") {
        const auto w = permutation_arg(o, n);
        const Json poly = schubert_json(w, cache ? &*cache : nullptr, &log);
        out["w"] = to_json(w);
        out["polynomial"] = poly;
        plain = rn_element_from_json(poly).to_string();
    } else if (o.kind == "stanley") {
        const auto w = permutation_arg(o, n);
        const SymFunc f = affine_stanley(w);
        out["w"] = to_json(w);
        out["function"] = to_json(f);
        plain = f.to_string();
    } else if (o.kind == "kschur" || o.kind == "affschur") {
        const Partition lambda = partition_arg(o);
        if (!lambda.is_bounded(n - 1))
            throw InvalidArgument("partition " + lambda.to_string() + " is not " + std::to_string(n - 1) + "-bounded");
        const SymFunc f = o.kind == "kschur" ? k_schur_via_ribbons(grassmannian_from_partition(n, lambda))
                                             : affine_schur(n - 1, lambda);
        out["partition"] = to_json(lambda);
        out["w"] = to_json(grassmannian_from_partition(n, lambda));
        out["function"] = to_json(f);
        plain = f.to_string();
    } else if (o.kind == "ribbons") {
        const auto w = permutation_arg(o, n);
        out["w"] = to_json(w);
        if (o.m && !o.weight.empty()) throw InvalidArgument("give --m or --weight, not both");
        if (o.m) {
            if (*o.m < 1 || *o.m >= n) throw InvalidArgument("--m must satisfy 1 <= m < n");
            out["m"] = *o.m;
            Json list = Json::array();
            for (const auto& chain : ribbons(w, *o.m)) {
                list.push_back(to_json(chain));
                plain += chain_text(chain) + '\n';
            }
            out["ribbons"] = std::move(list);
        } else if (!o.weight.empty()) {
            const Composition weight = parse_int_list(o.weight);
            check_composition(weight);
            Json list = Json::array();
            long character = 0;
            for (const auto& t : ribbon_tableaux(w, weight)) {
                list.push_back(to_json(t));
                character += t.sigma;
                plain += (t.sigma > 0 ? "+1 |" : "-1 |");
                for (const auto& chain : t.ribbons) plain += " " + chain_path(chain) + " |";
                plain += '\n';
            }
            out["weight"] = weight;
            out["tableaux"] = std::move(list);
            out["character"] = character;
            plain += "character " + std::to_string(character);
        } else {
            throw InvalidArgument("ribbons needs --m or --weight");
        }
        if (!plain.empty() && plain.back() == '\n') plain.pop_back();
    } else if (o.kind == "structure") {
        std::vector<std::pair<AffinePermutation, AffinePermutation>> pairs;
        if (o.table) {
            if (!o.u.empty() || !o.v.empty()) throw InvalidArgument("--table takes no --u or --v");
            const auto ws = elements_up_to_length(n, std::min(degree_bound_for(o), kMaxLength));
            for (const auto& u : ws)
                for (const auto& v : ws)
                    if (u <= v && u.length() + v.length() <= degree_bound_for(o)) pairs.emplace_back(u, v);
        } else {
            const auto u = bounded(o, AffinePermutation::from_word(n, parse_int_list(o.u)), "u");
            const auto v = bounded(o, AffinePermutation::from_word(n, parse_int_list(o.v)), "v");
            if (u.length() + v.length() > degree_bound_for(o))
                throw BoundExceeded("l(u) + l(v) = " + std::to_string(u.length() + v.length()) +
                                    " exceeds --max-degree " + std::to_string(degree_bound_for(o)));
            pairs.emplace_back(u, v);
        }
        Json rows = Json::array();
        std::string table_csv = "u,v,w,value";
        for (const auto& [u, v] : pairs) {
            const Json s = structure_json(u, v, cache ? &*cache : nullptr, &log);
            rows.push_back({{"u", to_json(u)}, {"v", to_json(v)}, {"constants", s.at("constants")}});
            std::string line;
            for (const auto& [w, c] : s.at("constants").items()) {
                line += (line.empty() ? "" : " + ") + c.get<std::string>() + "*S~[" + w + "]";
                table_csv += "\n" + word_name(u) + "," + word_name(v) + "," + w + "," + c.get<std::string>();
            }
            if (o.table) plain += word_name(u) + " * " + word_name(v) + " = ";
            plain += (line.empty() ? "0" : line) + (o.table ? "\n" : "");
        }
        if (o.table) {
            if (!plain.empty()) plain.pop_back();
            out["max_degree"] = degree_bound_for(o);
            out["table"] = std::move(rows);
        } else {
            out["u"] = rows[0]["u"];
            out["v"] = rows[0]["v"];
            out["constants"] = rows[0]["constants"];
        }
        if (csv(o)) plain = table_csv;
    } else {
        throw InvalidArgument("unknown kind '" + o.kind + "'");
    }
    flush_log(log);
    emit(o, out, plain);
    return kPass;
}

int cmd_verify(const Options& o) {
    if (csv(o)) throw InvalidArgument("--format csv is only available for structure constants");
    const SuiteOptions options{o.n, o.max_length, o.max_degree, o.threads};
    check_options(options);
    std::vector<std::string> suites;
    if (o.suite == "all") suites = suite_names();
    else suites = {o.suite};
    bool passed = true;
    Json reports = Json::array();
    for (const auto& name : suites) {
        if (o.suite == "all" && o.n && name == "schubert-table" && *o.n != 2 && *o.n != 3) continue;
        const auto report = run_suite(name, options);
        passed = passed && report.passed();
        if (text(o)) std::cout << report.to_text(o.timing);
        else reports.push_back(report.to_json(o.timing));
    }
    if (!text(o)) std::cout << (o.suite == "all" ? reports : reports.front()).dump(2) << '\n';
    return passed ? kPass : kCheckFailure;
}

int cmd_cache(const Options& o, const std::string& action) {
    if (csv(o)) throw InvalidArgument("--format csv is only available for structure constants");
    const auto cache = open_cache(o);
    if (!cache) throw InvalidArgument("no cache directory: pass --cache-dir or set AFK_CACHE_DIR");
    check_options({o.n, o.max_length, o.max_degree, o.threads});
    Json out{{"dir", cache->dir().string()}};
    std::string plain;
    int code = kPass;
    if (action == "build") {
        const std::vector<int> ns = o.n ? std::vector<int>{*o.n} : std::vector<int>{2, 3, 4};
        Json built = Json::array(), reused = Json::array();
        for (int n : ns)
            for (int d = 0; d <= o.max_degree.value_or(n >= 4 ? 5 : 6); ++d) {
                const CacheKey key{n, "schubert-table", d};
                const auto found = cache->load(key);
                if (found.status == CacheStatus::corrupt)
                    std::cerr << "afk: quarantined " << found.quarantined.string() << '\n';
                if (found.status == CacheStatus::hit) {
                    reused.push_back(key.file_name());
                    continue;
                }
                cache->store(make_cache_entry(key, schubert_table_payload(n, d)));
                built.push_back(key.file_name());
            }
        out["built"] = built;
        out["reused"] = reused;
        plain = "built " + std::to_string(built.size()) + ", reused " + std::to_string(reused.size());
    } else if (action == "show") {
        Json entries = Json::array();
        for (const auto& key : cache->keys()) {
            const auto status = cache->peek(key);
            entries.push_back({{"file", key.file_name()},
                               {"n", key.n},
                               {"kind", key.kind},
                               {"degree", key.degree},
                               {"status", cache_status_name(status)}});
            plain += key.file_name() + "  " + std::string(cache_status_name(status)) + '\n';
        }
        out["entries"] = std::move(entries);
        if (!plain.empty()) plain.pop_back();
    } else if (action == "check") {
        Json entries = Json::array();
        for (const auto& key : cache->keys()) {
            const auto found = cache->load(key);
            Json e{{"file", key.file_name()}, {"status", cache_status_name(found.status)}};
            std::string action_taken;
            if (found.status == CacheStatus::corrupt) {
                code = kCheckFailure;
                e["quarantined"] = found.quarantined.filename().string();
            }
            if (found.status != CacheStatus::hit) {
                if (key.kind == "schubert-table") {
                    cache->store(make_cache_entry(key, schubert_table_payload(key.n, key.degree)));
                    action_taken = "recomputed";
                } else {
                    action_taken = "recomputed on demand";
                }
                e["action"] = action_taken;
            }
            plain += key.file_name() + "  " + std::string(cache_status_name(found.status)) +
                     (action_taken.empty() ? "" : "  (" + action_taken + ")") + '\n';
            entries.push_back(std::move(e));
        }
        out["entries"] = std::move(entries);
        if (!plain.empty()) plain.pop_back();
    }
    emit(o, out, plain);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine Schubert calculus: compute, verify, cache"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--cache-dir", o.cache_dir, "Cache directory (default: $AFK_CACHE_DIR, else no cache)");
    app.add_option("--threads", o.threads, "Worker threads");
    app.add_option("--n", o.n, "Rank n of the affine symmetric group");
    app.add_option("--max-length", o.max_length, "Length bound");
    app.add_option("--max-degree", o.max_degree, "Degree bound");

    auto* compute = app.add_subcommand("compute", "Compute one object");
    compute->fallthrough();
    compute->add_option("kind", o.kind, "schubert | stanley | kschur | affschur | ribbons | structure")
        ->required()
        ->check(CLI::IsMember({"schubert", "stanley", "kschur", "affschur", "ribbons", "structure"}));
    compute->add_option("--word", o.word, "Reduced or unreduced word, e.g. 2,1,0");
    compute->add_option("--window", o.window, "Window notation, e.g. -1,0,2,9");
    compute->add_option("--partition", o.partition, "Partition, e.g. 2,1");
    compute->add_option("--m", o.m, "Ribbon size");
    compute->add_option("--weight", o.weight, "Tableau weight, e.g. 2,1");
    compute->add_option("--u", o.u, "Word of u");
    compute->add_option("--v", o.v, "Word of v");
    compute->add_flag("--table", o.table, "All structure constants with l(u) + l(v) <= --max-degree");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->fallthrough();
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.push_back("all");
    verify->add_option("suite", o.suite, "Suite name or 'all'")->required()->check(CLI::IsMember(suite_choices));
    verify->add_flag("--timing", o.timing, "Include wall time in the report");

    auto* cache = app.add_subcommand("cache", "Manage the cache");
    cache->fallthrough();
    std::string action;
    cache->add_option("action", action, "build | show | check")->required()->check(CLI::IsMember({"build", "show", "check"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(o);
        if (verify->parsed()) return cmd_verify(o);
        return cmd_cache(o, action);
    } catch (const InvalidArgument& e) {
        std::cerr << "afk: " << e.what() << '\n';
        return kUsage;
    } catch (const BoundExceeded& e) {
        std::cerr << "afk: bound exceeded: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalInconsistency& e) {
        std::cerr << "afk: internal inconsistency: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "afk: error: " << e.what() << '\n';
        return kInternal;
    }
}
