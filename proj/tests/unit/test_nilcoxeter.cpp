#include "doctest.h"

#include <vector>

#include "afk/errors.hpp"
#include "afk/nilcoxeter.hpp"

using namespace afk;

namespace {

AffinePermutation W(int n, std::initializer_list<int> word) { return AffinePermutation::from_word(n, word); }
NilCoxElement A(int n, std::initializer_list<int> word) { return NilCoxElement::basis(W(n, word)); }

// Product of generators A_{i1} ... A_{il} evaluated letter by letter.
NilCoxElement word_product(int n, const std::vector<int>& word) {
    NilCoxElement x = NilCoxElement::one(n);
    for (int i : word) x = x * NilCoxElement::generator(n, i);
    return x;
}

NilCoxElement random_element(int n, unsigned& seed, int max_degree) {
    NilCoxElement x(n);
    for (int t = 0; t < 4; ++t) {
        seed = seed * 1103515245u + 12345u;
        const int degree = static_cast<int>((seed >> 16) % (max_degree + 1));
        const auto& level = elements_of_length(n, degree);
        seed = seed * 1103515245u + 12345u;
        const auto& w = level[(seed >> 16) % level.size()];
        seed = seed * 1103515245u + 12345u;
        Rational c(static_cast<long>((seed >> 16) % 7) - 3, 1 + static_cast<long>((seed >> 8) % 3));
        c.canonicalize();
        x.add_term(w, c);
    }
    return x;
}

}  // namespace

TEST_CASE("basis multiplication") {
    CHECK((A(3, {0}) * A(3, {0})).is_zero());
    CHECK(A(3, {1}) * A(3, {0}) == A(3, {1, 0}));
    CHECK((A(3, {1, 0}) * A(3, {0})).is_zero());
    CHECK((A(3, {1}) * A(3, {2, 1})).is_zero() == false);
    // braid relation A_1 A_2 A_1 = A_2 A_1 A_2
    CHECK(word_product(3, {1, 2, 1}) == word_product(3, {2, 1, 2}));
    CHECK(word_product(4, {1, 3}) == word_product(4, {3, 1}));

    const NilCoxElement h1 = NilCoxElement::generator(3, 0) + NilCoxElement::generator(3, 1) + NilCoxElement::generator(3, 2);
    const NilCoxElement sq = h1 * h1;
    CHECK(sq.terms().size() == 6);
    for (const auto& [w, c] : sq.terms()) {
        CHECK(c == 1);
        CHECK(w.length() == 2);
    }
    CHECK(sq == A(3, {0, 1}) + A(3, {0, 2}) + A(3, {1, 0}) + A(3, {1, 2}) + A(3, {2, 0}) + A(3, {2, 1}));
    CHECK_THROWS_AS(A(3, {0}) * A(4, {0}), InvalidArgument);
}

TEST_CASE("a word product is nonzero iff the word is reduced") {
    for (int n = 2; n <= 4; ++n)
        for (int len = 0; len <= 4; ++len) {
            std::vector<int> word(len, 0);
            while (true) {
                const auto x = word_product(n, word);
                const auto w = AffinePermutation::from_word(n, word);
                if (w.length() == len) CHECK(x == NilCoxElement::basis(w));
                else CHECK(x.is_zero());
                int pos = 0;
                while (pos < len && ++word[pos] == n) word[pos++] = 0;
                if (pos == len) break;
            }
        }
}

TEST_CASE("h elements") {
    CHECK(h_element(3, 1) == A(3, {0}) + A(3, {1}) + A(3, {2}));
    CHECK(h_element(3, 2) == A(3, {1, 0}) + A(3, {2, 1}) + A(3, {0, 2}));
    CHECK(h_element(3, 0) == NilCoxElement::one(3));
    CHECK(h_element(3, -1).is_zero());
    CHECK_THROWS_AS(h_element(3, 3), InvalidArgument);
    const int binom[5][5] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}};
    for (int n = 2; n <= 4; ++n)
        for (int i = 0; i < n; ++i) CHECK(static_cast<int>(h_element(n, i).terms().size()) == binom[n][i]);
}

TEST_CASE("h elements commute") {
    for (int n = 2; n <= 4; ++n)
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(h_element(n, i) * h_element(n, j) == h_element(n, j) * h_element(n, i));
}

TEST_CASE("associativity on random elements") {
    unsigned seed = 2024;
    for (int n = 2; n <= 4; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_element(n, seed, 4);
            const auto y = random_element(n, seed, 4);
            const auto z = random_element(n, seed, 4);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
        }
}

TEST_CASE("identity coefficient") {
    CHECK(coeff_of_identity(NilCoxElement::one(3)) == 1);
    CHECK(coeff_of_identity(A(3, {0})) == 0);
    CHECK(coeff_of_identity(NilCoxElement::one(3) * Rational(3) - A(3, {1}) * Rational(2)) == 3);
}

TEST_CASE("noncommutative k-Schur functions") {
    CHECK(noncommutative_k_schur(3, {1}) == h_element(3, 1));
    CHECK(noncommutative_k_schur(3, {2}) == h_element(3, 2));
    CHECK(noncommutative_k_schur(3, {1, 1}) == h_element(3, 1) * h_element(3, 1) - h_element(3, 2));
    CHECK(noncommutative_k_schur(3, {}) == NilCoxElement::one(3));
    CHECK_THROWS_AS(noncommutative_k_schur(3, {3}), InvalidArgument);
    for (int n = 2; n <= 4; ++n)
        for (int size = 0; size <= 6; ++size)
            for (const auto& lambda : partitions_of(size, n - 1)) {
                const auto s = noncommutative_k_schur(n, lambda);
                const auto target = grassmannian_from_partition(n, lambda);
                int grassmannian_terms = 0;
                for (const auto& [w, c] : s.terms())
                    if (w.is_zero_grassmannian()) {
                        ++grassmannian_terms;
                        CHECK(w == target);
                        CHECK(c == 1);
                    }
                CHECK(grassmannian_terms == 1);
            }
}

TEST_CASE("tensor decomposition") {
    const auto id = AffinePermutation::identity(3);
    CHECK(tensor_decompose(A(3, {1, 2})) == TensorCoordinates{{{id, W(3, {1, 2})}, 1}});
    CHECK(tensor_decompose(h_element(3, 1) * A(3, {1})) == TensorCoordinates{{{W(3, {0}), W(3, {1})}, 1}});
    CHECK(tensor_decompose(h_element(3, 2)) == TensorCoordinates{{{W(3, {1, 0}), id}, 1}});
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : elements_up_to_length(n, 6)) {
            const auto x = NilCoxElement::basis(w);
            CHECK(tensor_reconstruct(n, tensor_decompose(x)) == x);
        }
}
