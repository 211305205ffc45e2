#include "afk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "afk/errors.hpp"
#include "afk/linalg.hpp"

namespace afk {

namespace {

std::string describe(const AffinePermutation& w) { return word_name(w) + " " + w.to_string(); }

std::string at(int n, const AffinePermutation& w) { return "n=" + std::to_string(n) + " w=" + describe(w); }

NilCoxElement basis_element(const AffinePermutation& w) { return NilCoxElement::basis(w); }

Composition hook(int m, int i) {
    Composition J{m - i};
    J.insert(J.end(), i, 1);
    return J;
}

Rational alternating(int i) { return Rational(i % 2 == 0 ? 1 : -1); }

void check_bound(const char* flag, std::optional<int> value, int lo, int ceiling) {
    if (!value) return;
    if (*value > ceiling)
        throw BoundExceeded(std::string(flag) + " " + std::to_string(*value) + " exceeds the hard ceiling " +
                            std::to_string(ceiling));
    if (*value < lo) throw InvalidArgument(std::string(flag) + " must be at least " + std::to_string(lo));
}

// Per-work-item check counters; merged in item order so witnesses are deterministic.
class Tally {
public:
    explicit Tally(std::size_t checks) : results_(checks) {}

    template <class Witness>
    void record(std::size_t check, bool ok, Witness&& witness) {
        auto& r = results_.at(check);
        ++r.instances;
        if (ok) return;
        if (r.failures++ == 0) r.witness = witness();
    }

    void merge_into(std::vector<CheckResult>& out) const {
        for (std::size_t c = 0; c < results_.size(); ++c) {
            out[c].instances += results_[c].instances;
            if (results_[c].failures && out[c].failures == 0) out[c].witness = results_[c].witness;
            out[c].failures += results_[c].failures;
        }
    }

private:
    std::vector<CheckResult> results_;
};

class SuiteRun {
public:
    SuiteRun(std::string name, std::vector<std::string> checks, int threads)
        : threads_(threads), start_(std::chrono::steady_clock::now()) {
        report_.suite = std::move(name);
        for (auto& c : checks) report_.checks.push_back({std::move(c), 0, 0, {}});
    }

    void add_range(ResolvedRange r) { report_.ranges.push_back(r); }
    void note(std::string text) { report_.notes.push_back(std::move(text)); }

    /// f(i, tally) for i < count, in parallel.
    template <class F>
    void for_each(std::size_t count, F&& f) {
        const std::size_t checks = report_.checks.size();
        auto tallies = parallel_map(count, threads_, [&](std::size_t i) {
            Tally t(checks);
            f(i, t);
            return t;
        });
        for (const auto& t : tallies) t.merge_into(report_.checks);
    }

    VerificationReport finish() {
        report_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    VerificationReport report_;
    int threads_;
    std::chrono::steady_clock::time_point start_;
};

constexpr auto kUnused = [](int) { return -1; };

// Default enumeration bounds: length 6 (5 for n = 4).
int default_length(int n) { return n >= 4 ? 5 : 6; }

std::vector<ResolvedRange> resolve(const SuiteOptions& o, std::vector<int> default_ns,
                                   const std::function<int(int)>& length, const std::function<int(int)>& degree) {
    std::vector<ResolvedRange> out;
    if (o.n) default_ns = {*o.n};
    for (int n : default_ns)
        out.push_back({n, o.max_length.value_or(length(n)), o.max_degree.value_or(degree(n))});
    return out;
}

// ---------------------------------------------------------------------------

VerificationReport suite_main_theorem(const SuiteOptions& o) {
    SuiteRun run("main-theorem",
                 {"MN operator equals alternating hook BSS sum", "MN operator equals alternating cap operator sum",
                  "cap operator of rho equals hook BSS operator"},
                 o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, default_length, kUnused)) {
        run.add_range(r);
        const int n = r.n;
        const auto ws = elements_up_to_length(n, r.max_length);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            const auto a = basis_element(w);
            for (int m = 1; m < n; ++m) {
                const auto mn = act_mn(a, m, 0);
                NilCoxElement bss(n), cap(n);
                for (int i = 0; i < m; ++i) {
                    const auto b = bss_apply(a, hook(m, i), 0);
                    const auto c = cap_apply(rho_element(n, i, m), a);
                    t.record(2, b == c, [&] { return at(n, w) + " m=" + std::to_string(m) + " i=" + std::to_string(i); });
                    bss += b * alternating(i);
                    cap += c * alternating(i);
                }
                t.record(0, mn == bss, [&] { return at(n, w) + " m=" + std::to_string(m); });
                t.record(1, mn == cap, [&] { return at(n, w) + " m=" + std::to_string(m); });
            }
        });
    }
    return run.finish();
}

VerificationReport suite_chevalley(const SuiteOptions& o) {
    SuiteRun run("chevalley",
                 {"degree one MN operator equals marked cover sum", "degree one MN operator equals cap of s_a",
                  "Dunkl operator equals difference of degree one MN operators"},
                 o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, default_length, kUnused)) {
        run.add_range(r);
        const int n = r.n;
        const auto ws = elements_up_to_length(n, r.max_length);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            const auto x = basis_element(w);
            for (long a = 0; a < n; ++a) {
                const auto here = act_mn(x, 1, a);
                const auto next = act_mn(x, 1, a + 1);
                NilCoxElement covers(n);
                for (const auto& cover : marked_covers(w, a)) covers.add_term(cover.lower, 1);
                auto witness = [&] { return at(n, w) + " a=" + std::to_string(a); };
                t.record(0, here == covers, witness);
                t.record(1, next == cap_apply(AffinePermutation::from_word(n, {static_cast<int>((a + 1) % n)}), x),
                         [&] { return at(n, w) + " a=" + std::to_string(a + 1); });
                t.record(2, next - here == act_dunkl(x, a + 1), witness);
            }
        });
    }
    return run.finish();
}

VerificationReport suite_leibniz(const SuiteOptions& o) {
    SuiteRun run("leibniz", {"MN operators lower h_i", "Leibniz rule on B times A", "pass-through of finite factors"},
                 o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, [](int) { return 4; }, [](int) { return 4; })) {
        run.add_range(r);
        const int n = r.n;
        run.for_each(1, [&](std::size_t, Tally& t) {
            for (int i = 1; i < n; ++i)
                for (int m = 1; m <= i; ++m)
                    for (long a = 0; a < n; ++a)
                        t.record(0, act_mn(h_element(n, i), m, a) == h_element(n, i - m), [&] {
                            return "n=" + std::to_string(n) + " i=" + std::to_string(i) + " m=" + std::to_string(m) +
                                   " a=" + std::to_string(a);
                        });
        });
        const auto ws = elements_up_to_length(n, r.max_length);
        std::vector<AffinePermutation> finite;
        for (const auto& v : elements_up_to_length(n, n * (n - 1) / 2))
            if (v.is_finite()) finite.push_back(v);
        std::vector<Partition> mus;
        for (int d = 1; d <= r.max_degree; ++d)
            for (const auto& mu : partitions_of(d, n - 1)) mus.push_back(mu);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            const auto x = basis_element(w);
            for (int m = 1; m < n; ++m) {
                const auto dx = act_mn(x, m, 0);
                for (const auto& mu : mus) {
                    const NilCoxElement& h = h_product(n, mu);
                    t.record(1, act_mn(h * x, m, 0) == act_mn(h, m, 0) * x + h * dx,
                             [&] { return at(n, w) + " m=" + std::to_string(m) + " h=" + mu.to_string(); });
                }
                for (const auto& v : finite)
                    t.record(2, act_mn(x * basis_element(v), m, 0) == dx * basis_element(v),
                             [&] { return at(n, w) + " m=" + std::to_string(m) + " v=" + describe(v); });
            }
        });
    }
    return run.finish();
}

VerificationReport suite_commutativity(const SuiteOptions& o) {
    SuiteRun run("commutativity",
                 {"Dunkl operators commute", "Dunkl and MN operators commute", "MN operators commute",
                  "Dunkl powers sum to zero over a period", "Dunkl powers of order at least n vanish"},
                 o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, [](int) { return 6; }, kUnused)) {
        run.add_range(r);
        const int n = r.n;
        const auto ws = elements_up_to_length(n, r.max_length);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            const auto x = basis_element(w);
            std::vector<NilCoxElement> theta;
            for (long i = 0; i <= n; ++i) theta.push_back(act_dunkl(x, i));
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j <= n; ++j)
                    t.record(0, act_dunkl(theta[j], i) == act_dunkl(theta[i], j), [&] {
                        return at(n, w) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
                    });
            for (int m = 1; m < n; ++m) {
                const auto p = act_mn(x, m, 0);
                for (long i = 0; i < n; ++i) {
                    t.record(1, act_mn(theta[i], m, 0) == act_dunkl(p, i), [&] {
                        return at(n, w) + " m=" + std::to_string(m) + " i=" + std::to_string(i);
                    });
                    for (int m2 = 1; m2 < n; ++m2)
                        t.record(2, act_mn(p, m2, i) == act_mn(act_mn(x, m2, i), m, 0), [&] {
                            return at(n, w) + " m=" + std::to_string(m) + " m'=" + std::to_string(m2) +
                                   " a=" + std::to_string(i);
                        });
                }
            }
            for (int m = 1; m <= n; ++m) {
                NilCoxElement total(n);
                for (long i = 1; i <= n; ++i) total += act_dunkl_power(x, i, m);
                t.record(3, total.is_zero(), [&] { return at(n, w) + " m=" + std::to_string(m); });
            }
            for (int m = n; m <= n + 1; ++m)
                for (long i = 0; i < n; ++i)
                    t.record(4, act_dunkl_power(x, i, m).is_zero(), [&] {
                        return at(n, w) + " m=" + std::to_string(m) + " i=" + std::to_string(i);
                    });
        });
    }
    return run.finish();
}

RnElement power(const RnElement& f, int e) {
    RnElement out = RnElement::constant(f.n(), 1);
    for (int i = 0; i < e; ++i) out = out * f;
    return out;
}

VerificationReport suite_schubert_table(const SuiteOptions& o) {
    SuiteRun run("schubert-table", {"n = 3 table", "n = 2 family"}, o.threads);
    const std::vector<int> ns = o.n ? std::vector<int>{*o.n} : std::vector<int>{3, 2};
    for (int n : ns)
        if (n != 2 && n != 3) throw InvalidArgument("schubert-table covers n = 2 and n = 3 only");
    auto mismatch = [](const AffinePermutation& w, const RnElement& got, const RnElement& want) {
        return word_name(w) + ": got " + got.to_string() + ", expected " + want.to_string();
    };
    for (int n : ns) {
        if (n == 3) {
            run.add_range({3, -1, -1});
            const auto p1 = RnElement::p(3, 1), p2 = RnElement::p(3, 2), p3 = RnElement::p(3, 3);
            const auto x1 = RnElement::x(3, 1), x2 = RnElement::x(3, 2);
            const Rational half(1, 2), third(1, 3), sixth(1, 6);
            const std::vector<std::pair<std::vector<int>, RnElement>> rows{
                {{}, RnElement::constant(3, 1)},
                {{0}, p1},
                {{1}, p1 + x1},
                {{2}, p1 + x1 + x2},
                {{1, 0}, (p1 * p1 + p2) * half},
                {{2, 1}, ((p1 + x1) * (p1 + x1) + (p2 + x1 * x1)) * half},
                {{2, 1, 0}, p3 * third + p2 * p1 * half + p1 * p1 * p1 * sixth},
            };
            run.for_each(1, [&](std::size_t, Tally& t) {
                for (const auto& [word, want] : rows) {
                    const auto w = AffinePermutation::from_word(3, word);
                    const auto& got = affine_schubert(w);
                    t.record(0, got == want && to_json(got) == to_json(want), [&] { return mismatch(w, got, want); });
                }
            });
            run.note("p_3 is zero in R_3 (parts above k = 2 vanish), so the cubic row reduces to p_2 p_1/2 + p_1^3/6");
        } else {
            const int top = o.max_length.value_or(3);
            run.add_range({2, top, -1});
            const auto p1 = RnElement::p(2, 1), x1 = RnElement::x(2, 1);
            run.for_each(1, [&](std::size_t, Tally& t) {
                Rational fact = 1;
                for (int a = 1; a <= top; ++a) {
                    fact *= a;
                    // w_{a,0} ends in s_0, w_{a,1} ends in s_1
                    std::vector<int> word0, word1;
                    for (int i = a - 1; i >= 0; --i) {
                        word0.push_back(i % 2);
                        word1.push_back((i + 1) % 2);
                    }
                    const auto w0 = AffinePermutation::from_word(2, word0);
                    const auto w1 = AffinePermutation::from_word(2, word1);
                    const RnElement want0 = power(p1, a) * (1 / fact);
                    const RnElement want1 = want0 + power(p1, a - 1) * x1 * (a / fact);
                    const auto& got0 = affine_schubert(w0);
                    const auto& got1 = affine_schubert(w1);
                    t.record(1, w0.length() == a && got0 == want0, [&] { return mismatch(w0, got0, want0); });
                    t.record(1, w1.length() == a && got1 == want1, [&] { return mismatch(w1, got1, want1); });
                }
            });
            run.note("n = 2 family read with exponent a (the length): S~_{w_{a,0}} = p_1^a/a!, "
                     "S~_{w_{a,1}} = p_1^a/a! + p_1^{a-1} x_1/(a-1)!; exponent n = 2 would give p_1^2/2 for every a and fails for a != 2");
        }
    }
    return run.finish();
}

VerificationReport suite_mn_rule(const SuiteOptions& o) {
    SuiteRun run("mn-rule",
                 {"worked example chains", "worked example in Lambda^(3)", "MN coefficients match the MN operator",
                  "MN rule for affine Stanley functions", "MN rule for xi classes in R_n"},
                 o.threads);
    const auto ranges = resolve(o, {2, 3, 4}, default_length, kUnused);
    if (std::any_of(ranges.begin(), ranges.end(), [](const auto& r) { return r.n == 4; })) {
        run.for_each(1, [&](std::size_t, Tally& t) {
            struct Example {
                std::vector<int> word;
                std::vector<TranspositionIndex> indices;
                int c;
                int sign;
            };
            const std::vector<Example> examples{
                {{1, 2, 3, 1, 0}, {{-2, 1}, {-4, 1}, {-1, 1}}, 3, 1},
                {{2, 0, 3, 1, 0}, {{-4, 1}, {-1, 2}, {-1, 1}}, 2, -1},
                {{0, 3, 2, 1, 0}, {{0, 6}, {0, 5}, {0, 3}}, 1, 1},
            };
            const auto target = AffinePermutation::from_word(4, {1, 0});
            SymFunc rhs(Basis::m);
            for (const auto& ex : examples) {
                const auto w = AffinePermutation::from_word(4, ex.word);
                bool found = false;
                for (const auto& chain : ribbons(w, 3)) {
                    std::vector<TranspositionIndex> idx;
                    for (const auto& cover : chain.covers) idx.push_back(cover.index);
                    if (idx == ex.indices)
                        found = chain.outside() == target && chain.tree.c == ex.c && chain.sign == ex.sign;
                }
                t.record(0, found && mn_coefficient(w, 3, target) == ex.sign, [&] { return "n=4 w=" + describe(w); });
                rhs += affine_stanley(w) * Rational(ex.sign);
            }
            const SymFunc lhs = multiply(SymFunc::single(Basis::p, {3}), affine_stanley(target));
            t.record(1, project_to_quotient(lhs, 3) == project_to_quotient(rhs, 3), [] {
                return std::string("p_3 F~_{s1s0} differs from F~_{s1s2s3s1s0} - F~_{s2s0s3s1s0} + F~_{s0s3s2s1s0}");
            });
        });
    }
    for (const auto& r : ranges) {
        run.add_range(r);
        const int n = r.n;
        const auto ws = elements_up_to_length(n, r.max_length);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            for (int m = 1; m < n && m <= w.length(); ++m) {
                const auto image = act_mn(basis_element(w), m, 0);
                for (const auto& v : elements_of_length(n, w.length() - m))
                    t.record(2, Rational(mn_coefficient(w, m, v)) == image.coeff(v), [&] {
                        return at(n, w) + " m=" + std::to_string(m) + " v=" + describe(v);
                    });
            }
        });
        // v runs over elements with l(v) + m within the length bound
        const auto vs = elements_up_to_length(n, std::max(r.max_length - 1, 0));
        run.for_each(vs.size(), [&](std::size_t idx, Tally& t) {
            const auto& v = vs[idx];
            for (int m = 1; m < n && v.length() + m <= r.max_length; ++m) {
                SymFunc rhs(Basis::m);
                std::map<AffinePermutation, long> coeffs;
                for (const auto& w : elements_of_length(n, v.length() + m))
                    if (long c = mn_coefficient(w, m, v); c != 0) {
                        coeffs.emplace(w, c);
                        rhs += affine_stanley(w) * Rational(c);
                    }
                const SymFunc lhs = multiply(SymFunc::single(Basis::p, {m}), affine_stanley(v));
                t.record(3, project_to_quotient(lhs, n - 1) == project_to_quotient(rhs, n - 1),
                         [&] { return at(n, v) + " m=" + std::to_string(m); });

                const auto& basis = schubert_basis(n, v.length() + m);
                const auto expansion = basis.expand(xi_class(n, m).representative() * affine_schubert(v));
                bool ok = true;
                for (const auto& w : basis.elements) {
                    auto it = expansion.find(w);
                    auto c = coeffs.find(w);
                    ok = ok && (it == expansion.end() ? Rational(0) : it->second) ==
                                   Rational(c == coeffs.end() ? 0 : c->second);
                }
                t.record(4, ok, [&] { return at(n, v) + " m=" + std::to_string(m); });
            }
        });
    }
    return run.finish();
}

VerificationReport suite_kschur_duality(const SuiteOptions& o) {
    SuiteRun run("kschur-duality", {"ribbon tableaux route equals elimination route"}, o.threads);
    for (const auto& r : resolve(o, {3, 4}, kUnused, [](int) { return 6; })) {
        run.add_range(r);
        const int n = r.n;
        std::vector<Partition> lambdas;
        for (int d = 0; d <= r.max_degree; ++d)
            for (const auto& lambda : partitions_of(d, n - 1)) lambdas.push_back(lambda);
        run.for_each(lambdas.size(), [&](std::size_t idx, Tally& t) {
            const auto& lambda = lambdas[idx];
            const auto u = grassmannian_from_partition(n, lambda);
            t.record(0, k_schur_via_ribbons(u) == convert_basis(k_schur(n - 1, lambda), Basis::p),
                     [&] { return "n=" + std::to_string(n) + " lambda=" + lambda.to_string(); });
        });
    }
    return run.finish();
}

VerificationReport suite_dimensions(const SuiteOptions& o) {
    SuiteRun run("dimensions",
                 {"graded dimension equals number of elements of length d",
                  "Schubert polynomials of length d are linearly independent"},
                 o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, kUnused, [](int) { return 6; })) {
        run.add_range(r);
        const int n = r.n;
        run.for_each(static_cast<std::size_t>(r.max_degree) + 1, [&](std::size_t d, Tally& t) {
            const auto& ws = elements_of_length(n, static_cast<int>(d));
            const std::size_t dim = graded_dimension(n, static_cast<int>(d));
            auto witness = [&] {
                return "n=" + std::to_string(n) + " d=" + std::to_string(d) + " elements=" + std::to_string(ws.size()) +
                       " dim=" + std::to_string(dim);
            };
            t.record(0, dim == ws.size(), witness);
            std::map<RnElement::Key, std::size_t> columns;
            for (const auto& w : ws)
                for (const auto& [key, c] : affine_schubert(w).terms()) columns.emplace(key, columns.size());
            linalg::Matrix m = linalg::zeros(ws.size(), columns.size());
            for (std::size_t i = 0; i < ws.size(); ++i)
                for (const auto& [key, c] : affine_schubert(ws[i]).terms()) m[i][columns.at(key)] = c;
            t.record(1, linalg::rank(m) == ws.size(), witness);
        });
    }
    return run.finish();
}

VerificationReport suite_positivity(const SuiteOptions& o) {
    SuiteRun run("positivity", {"structure constants are nonnegative integers"}, o.threads);
    for (const auto& r : resolve(o, {2, 3, 4}, kUnused, [](int) { return 6; })) {
        run.add_range(r);
        const int n = r.n;
        std::vector<std::pair<AffinePermutation, AffinePermutation>> pairs;
        const auto ws = elements_up_to_length(n, r.max_degree);
        for (const auto& u : ws)
            for (const auto& v : ws)
                if (u <= v && u.length() + v.length() <= r.max_degree) pairs.emplace_back(u, v);
        run.for_each(pairs.size(), [&](std::size_t idx, Tally& t) {
            const auto& [u, v] = pairs[idx];
            std::map<AffinePermutation, Rational> constants;
            std::string error;
            try {
                constants = structure_constants(u, v);
            } catch (const InvalidArgument& e) {
                error = e.what();
            }
            t.record(0, error.empty(), [&] { return "n=" + std::to_string(n) + " u=" + describe(u) + " v=" + describe(v) + ": " + error; });
            for (const auto& [w, c] : constants)
                t.record(0, is_integer(c) && sgn(c) >= 0, [&] {
                    return "n=" + std::to_string(n) + " u=" + describe(u) + " v=" + describe(v) + " w=" + describe(w) +
                           " p=" + to_string(c);
                });
        });
    }
    return run.finish();
}

// Random element of R_n, homogeneous of degree d.
RnElement random_element(int n, int d, std::mt19937& rng) {
    RnElement::Terms raw;
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        const int pdeg = static_cast<int>(rng() % (d + 1));
        const auto ps = partitions_of(pdeg, n - 1);
        const Partition& lambda = ps[rng() % ps.size()];
        std::vector<int> e(n, 0);
        for (int i = pdeg; i < d; ++i) ++e[rng() % n];
        raw[{lambda, e}] += Rational(static_cast<long>(rng() % 7) - 3);
    }
    return RnElement::normal_form(n, raw);
}

FKWord random_word(int n, int degree, std::mt19937& rng) {
    FKWord word;
    while (static_cast<int>(word.size()) < degree) {
        const long i = static_cast<long>(rng() % (2 * n)) - n;
        const long j = i + 1 + static_cast<long>(rng() % (2 * n));
        if (residue(i, n) != residue(j, n)) word.push_back({i, j});
    }
    return word;
}

std::string word_text(const FKWord& word) {
    std::string out;
    for (const auto& l : word) out += "[" + std::to_string(l.i) + "," + std::to_string(l.j) + "]";
    return out;
}

VerificationReport suite_bgg(const SuiteOptions& o) {
    SuiteRun run("bgg",
                 {"identity coefficients match under divided differences", "divided differences square to zero",
                  "divided differences satisfy the braid relations"},
                 o.threads);
    constexpr int kWordDegree = 3;
    constexpr int kSamples = 4;
    for (const auto& r : resolve(o, {2, 3, 4}, [](int) { return 4; }, [](int) { return 5; })) {
        run.add_range(r);
        const int n = r.n;
        const auto ws = elements_up_to_length(n, r.max_length);
        run.for_each(ws.size(), [&](std::size_t idx, Tally& t) {
            const auto& w = ws[idx];
            std::mt19937 rng(static_cast<unsigned>(1000 * n + idx));
            std::vector<FKWord> words;
            for (int d = 1; d <= kWordDegree; ++d)
                for (int s = 0; s < kSamples; ++s) words.push_back(random_word(n, d, rng));
            // words read off descending chains, which reach the identity
            if (w.length() + 1 <= kWordDegree)
                for (const auto& u : elements_of_length(n, w.length() + 1))
                    for (int s = 0; s < 2; ++s) {
                        FKWord word;
                        for (AffinePermutation cur = u; !cur.is_identity();) {
                            const auto inv = covering_inversions(cur);
                            const auto tr = inv[rng() % inv.size()];
                            const long shift = static_cast<long>(rng() % 3) - 1;
                            word.push_back({tr.j1 + shift * n, tr.j2 + shift * n});
                            cur = apply_transposition(cur, tr).first;
                        }
                        words.push_back(word);
                    }
            const auto x = basis_element(w);
            for (int i = 0; i < n; ++i) {
                const auto left = x * NilCoxElement::generator(n, i);
                for (const auto& word : words) {
                    const FKWordSum sum{{word, 1}};
                    t.record(0,
                             coeff_of_identity(act_word_sum(left, sum)) ==
                                 coeff_of_identity(act_word_sum(x, fk_divided_difference(n, sum, i, i + 1))),
                             [&] { return at(n, w) + " i=" + std::to_string(i) + " x=" + word_text(word); });
                }
            }
        });
        constexpr int kElements = 40;
        run.for_each(kElements, [&](std::size_t s, Tally& t) {
            std::mt19937 rng(static_cast<unsigned>(7919 * n + s));
            const int d = static_cast<int>(s % (r.max_degree + 1));
            const RnElement f = random_element(n, d, rng);
            auto dd = [](long i, const RnElement& g) { return divided_difference(i, g); };
            for (long i = 0; i < n; ++i) {
                t.record(1, dd(i, dd(i, f)).is_zero(), [&] { return "i=" + std::to_string(i) + " f=" + f.to_string(); });
                if (n >= 3) {
                    const long j = (i + 1) % n;
                    t.record(2, dd(i, dd(j, dd(i, f))) == dd(j, dd(i, dd(j, f))),
                             [&] { return "i=" + std::to_string(i) + " f=" + f.to_string(); });
                }
                for (long j = i + 2; j < n; ++j)
                    if ((j + 1) % n != i)
                        t.record(2, dd(i, dd(j, f)) == dd(j, dd(i, f)), [&] {
                            return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " f=" + f.to_string();
                        });
            }
        });
    }
    return run.finish();
}

using SuiteFn = VerificationReport (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"main-theorem", suite_main_theorem},     {"chevalley", suite_chevalley},
        {"leibniz", suite_leibniz},               {"commutativity", suite_commutativity},
        {"schubert-table", suite_schubert_table}, {"mn-rule", suite_mn_rule},
        {"kschur-duality", suite_kschur_duality}, {"dimensions", suite_dimensions},
        {"positivity", suite_positivity},         {"bgg", suite_bgg},
    };
    return suites;
}

}  // namespace

void check_options(const SuiteOptions& o) {
    check_bound("--n", o.n, 2, kMaxN);
    check_bound("--max-length", o.max_length, 0, kMaxLength);
    check_bound("--max-degree", o.max_degree, 0, kMaxDegree);
    check_bound("--threads", o.threads, 1, kMaxThreads);
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult& VerificationReport::check(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw InvalidArgument("suite " + suite + " has no check named '" + std::string(name) + "'");
}

Json VerificationReport::to_json(bool timing) const {
    Json ranges_json = Json::array();
    auto bound = [](int b) { return b < 0 ? Json(nullptr) : Json(b); };
    for (const auto& r : ranges)
        ranges_json.push_back({{"n", r.n}, {"max_length", bound(r.max_length)}, {"max_degree", bound(r.max_degree)}});
    Json checks_json = Json::array();
    for (const auto& c : checks) {
        Json j{{"name", c.name}, {"status", c.passed() ? "pass" : "fail"}, {"instances", c.instances},
               {"failures", c.failures}};
        if (!c.passed()) j["witness"] = c.witness;
        checks_json.push_back(std::move(j));
    }
    Json out{{"suite", suite}, {"status", passed() ? "pass" : "fail"}, {"parameters", std::move(ranges_json)},
             {"checks", std::move(checks_json)}, {"notes", notes}};
    if (timing) out["wall_time_seconds"] = wall_seconds;
    return out;
}

std::string VerificationReport::to_text(bool timing) const {
    std::ostringstream os;
    os << suite << ": " << (passed() ? "PASS" : "FAIL");
    for (const auto& r : ranges)
    {
        os << "  [n=" << r.n;
        if (r.max_length >= 0) os << " max-length=" << r.max_length;
        if (r.max_degree >= 0) os << " max-degree=" << r.max_degree;
        os << "]";
    }
    os << '\n';
    for (const auto& c : checks) {
        os << "  " << (c.passed() ? "pass" : "FAIL") << "  " << c.name << " (" << c.instances << " instances";
        if (!c.passed()) os << ", " << c.failures << " failures";
        os << ")\n";
        if (!c.passed()) os << "        first failure: " << c.witness << '\n';
    }
    for (const auto& note : notes) os << "  note: " << note << '\n';
    if (timing) os << "  wall time: " << wall_seconds << " s\n";
    return os.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

VerificationReport run_suite(std::string_view name, const SuiteOptions& options) {
    check_options(options);
    for (const auto& [suite, fn] : registry())
        if (suite == name) return fn(options);
    throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

Json schubert_table_payload(int n, int d) {
    Json elements = Json::array();
    for (const auto& w : elements_of_length(n, d))
        elements.push_back({{"w", to_json(w)}, {"polynomial", to_json(affine_schubert(w))}});
    return Json{{"n", n}, {"degree", d}, {"elements", std::move(elements)}};
}

namespace {

// Loads (or rebuilds and stores) one cache entry.
Json cached_payload(const Cache& cache, const CacheKey& key, const std::function<Json()>& build,
                    std::vector<std::string>* log, const std::function<bool(const Json&)>& usable = {}) {
    auto found = cache.load(key);
    if (log && found.status == CacheStatus::corrupt)
        log->push_back("quarantined corrupt cache entry " + found.quarantined.string() + "; recomputing");
    if (log && found.status == CacheStatus::stale)
        log->push_back("cache entry " + key.file_name() + " has an old schema version; rebuilding");
    if (found.entry && (!usable || usable(found.entry->payload))) return found.entry->payload;
    Json payload = build();
    cache.store(make_cache_entry(key, payload));
    return payload;
}

}  // namespace

Json schubert_json(const AffinePermutation& w, const Cache* cache, std::vector<std::string>* log) {
    if (!cache) return to_json(affine_schubert(w));
    const int n = w.n(), d = w.length();
    const Json payload =
        cached_payload(*cache, {n, "schubert-table", d}, [&] { return schubert_table_payload(n, d); }, log);
    const Json window = to_json(w)["window"];
    for (const auto& e : payload.at("elements"))
        if (e.at("w").at("window") == window) return e.at("polynomial");
    throw InternalInconsistency("cached Schubert table for degree " + std::to_string(d) + " lacks " + word_name(w));
}

Json structure_json(const AffinePermutation& u, const AffinePermutation& v, const Cache* cache,
                    std::vector<std::string>* log) {
    if (u.n() != v.n()) throw InvalidArgument("u and v live in different affine symmetric groups");
    auto compute = [&] {
        return Json{{"u", word_name(u)}, {"v", word_name(v)}, {"constants", to_json(structure_constants(u, v))}};
    };
    if (!cache) return compute();
    const CacheKey key{u.n(), "structure", u.length() + v.length()};
    const std::string name = word_name(u) + "|" + word_name(v);
    Json table = cached_payload(*cache, key, [] { return Json::object(); }, log);
    if (auto it = table.find(name); it != table.end()) return *it;
    Json value = compute();
    table[name] = value;
    cache->store(make_cache_entry(key, std::move(table)));
    return value;
}

}  // namespace afk
