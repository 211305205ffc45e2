#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "afk/errors.hpp"
#include "afk/schubert_ring.hpp"
#include "afk/strong_order.hpp"

using namespace afk;

namespace {

AffinePermutation W(int n, std::initializer_list<int> word) { return AffinePermutation::from_word(n, word); }
NilCoxElement A(const AffinePermutation& w) { return NilCoxElement::basis(w); }

using Raw = RnElement::Terms;
using Exps = std::vector<int>;

RnElement P(int n, int m) { return RnElement::p(n, m); }
RnElement X(int n, long i) { return RnElement::x(n, i); }
RnElement C(int n, Rational c) { return RnElement::constant(n, c); }

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// Unreduced polynomial arithmetic for the divided difference oracle.
Raw raw_mul(const Raw& a, const Raw& b) {
    Raw out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Exps e = ka.second;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.second[i];
            out[{ka.first.concat(kb.first), e}] += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

// s_i on an unreduced polynomial, straight from the substitution rules.
Raw raw_weyl(int n, int i, const Raw& f) {
    const int j = (i + 1) % n;
    Raw out;
    for (const auto& [key, c] : f) {
        Exps e = key.second;
        std::swap(e[i], e[j]);
        Raw term{{{Partition{}, e}, c}};
        for (int m : key.first.parts()) {
            Raw factor{{{Partition{m}, Exps(n, 0)}, 1}};
            if (i == 0) {
                Exps e1(n, 0), e0(n, 0);
                e1[1] = m;
                e0[0] = m;
                factor[{Partition{}, e1}] += 1;
                factor[{Partition{}, e0}] -= 1;
            }
            term = raw_mul(term, factor);
        }
        for (const auto& [k, v] : term) out[k] += v;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

// (f - s_i f) / (x_i - x_{i+1}) by synthetic division in x_i.
RnElement divided_difference_oracle(int n, int i, const RnElement& f) {
    const int j = (i + 1) % n;
    Raw num = f.terms();
    for (const auto& [k, v] : raw_weyl(n, i, f.terms())) num[k] -= v;
    std::erase_if(num, [](const auto& kv) { return sgn(kv.second) == 0; });
    Raw quotient;
    while (true) {
        auto it = std::max_element(num.begin(), num.end(),
                                   [&](const auto& a, const auto& b) { return a.first.second[i] < b.first.second[i]; });
        if (it == num.end() || it->first.second[i] == 0) break;
        auto [key, c] = *it;
        Exps lower = key.second;
        lower[i] -= 1;
        quotient[{key.first, lower}] += c;
        // subtract c * x^lower * (x_i - x_j)
        num[key] -= c;
        Exps shifted = lower;
        shifted[j] += 1;
        num[{key.first, shifted}] += c;
        std::erase_if(num, [](const auto& kv) { return sgn(kv.second) == 0; });
    }
    REQUIRE(num.empty());
    return RnElement::normal_form(n, quotient);
}

RnElement random_element(int n, int max_degree, std::mt19937& rng) {
    Raw raw;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < 6; ++t) {
        Exps e(n, 0);
        std::vector<int> parts;
        int d = static_cast<int>(rng() % (max_degree + 1));
        while (d > 0) {
            if (rng() % 2) {
                const int m = 1 + static_cast<int>(rng() % std::min(d, n - 1));
                parts.push_back(m);
                d -= m;
            } else {
                e[rng() % n] += 1;
                d -= 1;
            }
        }
        raw[{Partition(parts), e}] += coeff(rng);
    }
    return RnElement::normal_form(n, raw);
}

// Schubert polynomial solved from its defining property over the monomial basis.
RnElement schubert_by_linear_system(const AffinePermutation& w) {
    const int n = w.n();
    const int d = w.length();
    std::vector<RnElement> basis;
    for (int j = 0; j <= d; ++j)
        for (const Partition& lambda : partitions_of(j, n - 1)) {
            std::vector<Exps> xs;
            auto rec = [&](auto&& self, Exps& e, int var, int left) -> void {
                if (var == n) {
                    if (left == 0) xs.push_back(e);
                    return;
                }
                for (int a = 0; a <= std::min(left, n - 1 - var); ++a) {
                    e[var] = a;
                    self(self, e, var + 1, left - a);
                }
                e[var] = 0;
            };
            Exps e(n, 0);
            rec(rec, e, 0, d - j);
            for (const auto& x : xs) basis.push_back(RnElement::monomial(n, lambda, x));
        }
    // unknown coefficients c_b with d_i(sum c_b b) = target_i for every i
    std::map<RnElement::Key, std::size_t> rows;
    std::vector<std::vector<RnElement>> images(n);
    std::vector<RnElement> targets;
    for (int i = 0; i < n; ++i) {
        for (const auto& b : basis) images[i].push_back(divided_difference(i, b));
        const auto down = w.right_simple(i);
        targets.push_back(down.length() < w.length() ? affine_schubert(down) : RnElement(n));
    }
    std::vector<std::pair<int, RnElement::Key>> eqs;
    for (int i = 0; i < n; ++i) {
        std::set<RnElement::Key> keys;
        for (const auto& img : images[i])
            for (const auto& [k, c] : img.terms()) keys.insert(k);
        for (const auto& [k, c] : targets[i].terms()) keys.insert(k);
        for (const auto& k : keys) eqs.push_back({i, k});
    }
    linalg::Matrix m = linalg::zeros(eqs.size(), basis.size() + 1);
    for (std::size_t r = 0; r < eqs.size(); ++r) {
        const auto& [i, k] = eqs[r];
        for (std::size_t b = 0; b < basis.size(); ++b) m[r][b] = images[i][b].coeff(k.first, k.second);
        m[r][basis.size()] = targets[i].coeff(k.first, k.second);
    }
    const auto pivots = linalg::row_reduce(m);
    REQUIRE(pivots.size() == basis.size());  // unique solution, consistent system
    RnElement out(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) out += basis[pivots[r]] * m[r][basis.size()];
    return out;
}

}  // namespace

TEST_CASE("normal form") {
    CHECK((X(3, 0) + X(3, 1) + X(3, 2)).is_zero());
    CHECK((X(2, 1) * X(2, 1)).is_zero());
    CHECK(P(3, 1) * C(3, 1) == P(3, 1));
    CHECK(P(3, 3).is_zero());
    CHECK(X(3, 4) == X(3, 1));
    CHECK((P(2, 1) * P(2, 1)).terms().begin()->first.first == Partition{1, 1});
    CHECK(P(3, 2) * P(3, 2) == RnElement::monomial(3, {2, 2}, {0, 0, 0}));
    for (int n = 2; n <= 4; ++n) {
        // e_j and x_i^n vanish
        std::vector<RnElement> e{C(n, 1)};
        for (int i = 0; i < n; ++i) {
            std::vector<RnElement> next(e.size() + 1, RnElement(n));
            for (std::size_t j = 0; j < e.size(); ++j) {
                next[j] += e[j];
                next[j + 1] += e[j] * X(n, i);
            }
            e = next;
        }
        for (int j = 1; j <= n; ++j) CHECK(e[j].is_zero());
        for (int i = 0; i < n; ++i) {
            RnElement power = C(n, 1);
            for (int a = 0; a < n; ++a) power = power * X(n, i);
            CHECK(power.is_zero());
        }
        // staircase terms only, and normal_form is idempotent
        std::mt19937 rng(n);
        for (int t = 0; t < 20; ++t) {
            const RnElement f = random_element(n, 5, rng);
            for (const auto& [key, c] : f.terms())
                for (int i = 0; i < n; ++i) CHECK(key.second[i] <= n - 1 - i);
            CHECK(RnElement::normal_form(n, f.terms()) == f);
        }
    }
    CHECK_THROWS_AS(X(2, 0) + X(3, 0), InvalidArgument);
    CHECK_THROWS_AS(RnElement(1), InvalidArgument);
}

TEST_CASE("ring axioms") {
    std::mt19937 rng(11);
    for (int n = 2; n <= 4; ++n)
        for (int t = 0; t < 15; ++t) {
            const auto a = random_element(n, 3, rng);
            const auto b = random_element(n, 3, rng);
            const auto c = random_element(n, 2, rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
        }
}

TEST_CASE("Weyl group action") {
    CHECK(weyl_action(1, X(3, 1)) == X(3, 2));
    CHECK(weyl_action(0, P(3, 2)) == P(3, 2) + X(3, 1) * X(3, 1) - X(3, 0) * X(3, 0));
    CHECK(weyl_action(2, P(3, 1)) == P(3, 1));
    CHECK(weyl_action(2, X(3, 2)) == X(3, 0));
    std::mt19937 rng(5);
    for (int n = 2; n <= 4; ++n)
        for (int t = 0; t < 10; ++t) {
            const auto f = random_element(n, 4, rng);
            const auto g = random_element(n, 3, rng);
            for (int i = 0; i < n; ++i) {
                CHECK(weyl_action(i, weyl_action(i, f)) == f);
                CHECK(weyl_action(i, f * g) == weyl_action(i, f) * weyl_action(i, g));
                CHECK(RnElement::normal_form(n, raw_weyl(n, i, f.terms())) == weyl_action(i, f));
                if (n > 2) {
                    const int j = (i + 1) % n;
                    CHECK(weyl_action(i, weyl_action(j, weyl_action(i, f))) ==
                          weyl_action(j, weyl_action(i, weyl_action(j, f))));
                }
            }
        }
}

TEST_CASE("divided differences") {
    CHECK(divided_difference(0, P(3, 1)) == C(3, 1));
    CHECK(divided_difference(1, P(3, 1) + X(3, 1)) == C(3, 1));
    CHECK(divided_difference(0, (P(3, 1) * P(3, 1) + P(3, 2)) * q(1, 2)) == P(3, 1) + X(3, 1));
    CHECK(divided_difference(0, P(4, 3)) == X(4, 1) * X(4, 1) + X(4, 1) * X(4, 0) + X(4, 0) * X(4, 0));
    for (int n = 2; n <= 4; ++n)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int expected = (j == i) - (j == (i + 1) % n);
                CHECK(divided_difference(i, X(n, j)) == C(n, expected));
                if (i != 0) CHECK(divided_difference(i, P(n, 1)).is_zero());
            }
    std::mt19937 rng(3);
    for (int n = 2; n <= 4; ++n)
        for (int t = 0; t < 12; ++t) {
            const auto f = random_element(n, 5, rng);
            const auto g = random_element(n, 3, rng);
            for (int i = 0; i < n; ++i) {
                const auto df = divided_difference(i, f);
                CHECK(df == divided_difference_oracle(n, i, f));
                CHECK(divided_difference(i, df).is_zero());
                CHECK(divided_difference(i, f * g) == df * g + weyl_action(i, f) * divided_difference(i, g));
                if (n > 2) {
                    const int j = (i + 1) % n;
                    CHECK(divided_difference(i, divided_difference(j, df)) ==
                          divided_difference(j, divided_difference(i, divided_difference(j, f))));
                }
                if (n == 4) {
                    const int j = (i + 2) % n;
                    CHECK(divided_difference(i, divided_difference(j, f)) ==
                          divided_difference(j, divided_difference(i, f)));
                }
            }
        }
}

TEST_CASE("affine Schubert polynomials, n = 3 table") {
    const int n = 3;
    const auto p1 = P(n, 1), p2 = P(n, 2), p3 = P(n, 3), x1 = X(n, 1), x2 = X(n, 2);
    CHECK(affine_schubert(AffinePermutation::identity(n)) == C(n, 1));
    CHECK(affine_schubert(W(n, {0})) == p1);
    CHECK(affine_schubert(W(n, {1})) == p1 + x1);
    CHECK(affine_schubert(W(n, {2})) == p1 + x1 + x2);
    CHECK(affine_schubert(W(n, {1, 0})) == (p1 * p1 + p2) * q(1, 2));
    CHECK(affine_schubert(W(n, {2, 1})) == ((p1 + x1) * (p1 + x1) + (p2 + x1 * x1)) * q(1, 2));
    CHECK(affine_schubert(W(n, {2, 1, 0})) == p3 * q(1, 3) + p2 * p1 * q(1, 2) + p1 * p1 * p1 * q(1, 6));
    // p_3 vanishes for k = 2
    CHECK(affine_schubert(W(n, {2, 1, 0})) == p2 * p1 * q(1, 2) + p1 * p1 * p1 * q(1, 6));
}

TEST_CASE("affine Schubert polynomials, n = 2 family") {
    const int n = 2;
    const auto p1 = P(n, 1), x1 = X(n, 1);
    for (int a = 1; a <= 4; ++a) {
        AffinePermutation g0 = AffinePermutation::identity(n), g1 = AffinePermutation::identity(n);
        for (int t = 0; t < a; ++t) {
            g0 = g0.left_simple(t % 2 == 0 ? 0 : 1);
            g1 = g1.left_simple(t % 2 == 0 ? 1 : 0);
        }
        REQUIRE(g0.length() == a);
        REQUIRE(g0.right_simple(0).length() < a);
        REQUIRE(g0.right_simple(1).length() > a);
        REQUIRE(g1.right_simple(1).length() < a);
        REQUIRE(g1.right_simple(0).length() > a);
        RnElement power = C(n, 1);
        Rational fact = 1;
        for (int t = 1; t <= a; ++t) {
            power = power * p1;
            fact *= t;
        }
        RnElement lower = C(n, 1);
        for (int t = 1; t < a; ++t) lower = lower * p1;
        CHECK(affine_schubert(g0) == power * (1 / fact));
        CHECK(affine_schubert(g1) == power * (1 / fact) + lower * x1 * (a / fact));
    }
}

TEST_CASE("Schubert polynomials satisfy their defining recursion") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : elements_up_to_length(n, 6)) {
            const auto& s = affine_schubert(w);
            CHECK(s.degrees() == std::vector<int>{static_cast<int>(w.length())});
            for (int i = 0; i < n; ++i) {
                const auto down = w.right_simple(i);
                if (down.length() < w.length()) CHECK(divided_difference(i, s) == affine_schubert(down));
                else CHECK(divided_difference(i, s).is_zero());
            }
        }
}

TEST_CASE("Schubert polynomials agree with the linear-system solution") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : elements_up_to_length(n, 4))
            if (!w.is_identity()) CHECK(affine_schubert(w) == schubert_by_linear_system(w));
}

TEST_CASE("symmetric parts are affine Stanley functions") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : elements_up_to_length(n, 6)) {
            const SymFunc expected = project_to_quotient(affine_stanley(w), n - 1);
            CHECK(affine_stanley_quotient(w) == expected);
            CHECK(affine_schubert(w).symmetric_part() == expected);
            if (w.is_zero_grassmannian()) {
                const auto& s = affine_schubert(w);
                for (const auto& [key, c] : s.terms())
                    CHECK(std::all_of(key.second.begin(), key.second.end(), [](int a) { return a == 0; }));
                CHECK(s.symmetric_part() ==
                      project_to_quotient(affine_schur(n - 1, partition_from_grassmannian(w)), n - 1));
            }
        }
}

TEST_CASE("graded dimensions and Schubert bases") {
    for (int n = 2; n <= 4; ++n)
        for (int d = 0; d <= 6; ++d) {
            CHECK(graded_dimension(n, d) == elements_of_length(n, d).size());
            const auto& basis = schubert_basis(n, d);
            CHECK(basis.elements.size() == graded_dimension(n, d));
        }
    CHECK(schubert_basis(3, 0).polynomials.front() == C(3, 1));
    const auto& b1 = schubert_basis(3, 1);
    std::set<std::string> got, want;
    for (const auto& f : b1.polynomials) got.insert(f.to_string());
    for (const auto& f : {P(3, 1), P(3, 1) + X(3, 1), P(3, 1) + X(3, 1) + X(3, 2)}) want.insert(f.to_string());
    CHECK(got == want);
    const auto& b2 = schubert_basis(2, 2);
    std::set<std::string> got2, want2;
    for (const auto& f : b2.polynomials) got2.insert(f.to_string());
    for (const auto& f : {P(2, 1) * P(2, 1) * q(1, 2), P(2, 1) * P(2, 1) * q(1, 2) + P(2, 1) * X(2, 1)})
        want2.insert(f.to_string());
    CHECK(got2 == want2);
    CHECK_THROWS_AS(schubert_basis(3, degree_bound() + 1), BoundExceeded);
    CHECK_THROWS_AS(schubert_basis(3, 2).expand(P(3, 1)), InvalidArgument);
}

TEST_CASE("structure constants") {
    const auto s0 = W(2, {0});
    auto c = structure_constants(s0, s0);
    CHECK(c[W(2, {1, 0})] == 2);
    CHECK(c.count(W(2, {0, 1})) == 0);
    for (int n = 2; n <= 3; ++n)
        for (const auto& u : elements_up_to_length(n, 3))
            for (const auto& v : elements_up_to_length(n, 3)) {
                const auto uv = structure_constants(u, v);
                CHECK(uv == structure_constants(v, u));
                for (const auto& [w, value] : uv) {
                    CHECK(is_integer(value));
                    CHECK(sgn(value) > 0);
                }
                if (u.is_identity()) CHECK(uv == std::map<AffinePermutation, Rational>{{v, 1}});
            }
}

TEST_CASE("cap operators") {
    const int n = 3;
    CHECK(cap_apply(AffinePermutation::identity(n), A(W(n, {1, 0}))) == A(W(n, {1, 0})));
    CHECK(cap_apply(W(n, {0}), A(W(n, {0}))) == NilCoxElement::one(n));
    CHECK(cap_apply(rho_element(n, 0, 2), A(W(n, {1, 0}))) == NilCoxElement::one(n));
    for (int n2 = 2; n2 <= 3; ++n2)
        for (const auto& u : elements_up_to_length(n2, 3))
            for (const auto& w : elements_up_to_length(n2, 4))
                CHECK(cap_apply(u, A(w)).coeff(AffinePermutation::identity(n2)) == (u == w ? 1 : 0));
}

TEST_CASE("cap operators of simple reflections are degree one MN operators") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : elements_up_to_length(n, n == 4 ? 5 : 6))
            for (long a = 1; a <= n; ++a) CHECK(cap_apply(W(n, {static_cast<int>(a % n)}), A(w)) == act_mn(A(w), 1, a));
}

TEST_CASE("cap operators of rho elements are hook BSS operators") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : elements_up_to_length(n, n == 4 ? 5 : 6))
            for (int m = 1; m < n; ++m) {
                NilCoxElement total(n);
                for (int i = 0; i < m; ++i) {
                    Composition J{m - i};
                    J.insert(J.end(), i, 1);
                    const auto cap = cap_apply(rho_element(n, i, m), A(w));
                    CHECK(cap == bss_apply(A(w), J, 0));
                    total += cap * Rational(i % 2 ? -1 : 1);
                }
                CHECK(total == act_mn(A(w), m, 0));
            }
}

TEST_CASE("xi classes") {
    CHECK(xi_class(3, 1).representative() == P(3, 1));
    const auto xi2 = xi_class(3, 2);
    CHECK(xi2.representative() == affine_schubert(W(3, {1, 0})) - affine_schubert(W(3, {2, 0})));
    CHECK(xi2.representative().symmetric_part() == SymFunc::single(Basis::p, {2}));
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m < n; ++m) CHECK(xi_class(n, m).representative().symmetric_part() == SymFunc::single(Basis::p, {m}));
    CHECK_THROWS_AS(xi_class(3, 3), InvalidArgument);
}

TEST_CASE("MN rule in R_n") {
    const int n = 3;
    for (const auto& v : elements_up_to_length(n, 4))
        for (int m = 1; m < n; ++m) {
            const auto& basis = schubert_basis(n, v.length() + m);
            const auto expansion = basis.expand(xi_class(n, m).representative() * affine_schubert(v));
            for (const auto& w : basis.elements) {
                auto it = expansion.find(w);
                CHECK((it == expansion.end() ? Rational(0) : it->second) == mn_coefficient(w, m, v));
            }
        }
}
