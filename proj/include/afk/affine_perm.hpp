#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace afk {

class Partition;

/// Element of the affine symmetric group in window notation [w(1), ..., w(n)].
///
/// The bijection of Z is recovered by w(i + n) = w(i) + n.  Permutations act on
/// positions: (u v)(j) = u(v(j)), so right multiplication by s_i swaps the
/// entries in positions i and i + 1 (and all their n-translates).
///
/// Values are immutable; ordering is (length, window) lexicographic.
class AffinePermutation {
public:
    static AffinePermutation identity(int n);

    /// Validates sum(window) = n(n+1)/2 and distinct residues.
    static AffinePermutation from_window(std::vector<int> window);

    /// Product s_{i1} s_{i2} ... s_{il}; the word need not be reduced.
    static AffinePermutation from_word(int n, std::span<const int> word);
    static AffinePermutation from_word(int n, std::initializer_list<int> word) {
        return from_word(n, std::span<const int>(word.begin(), word.size()));
    }

    int n() const { return static_cast<int>(window_.size()); }
    const std::vector<int>& window() const { return window_; }
    int length() const { return length_; }
    bool is_identity() const { return length_ == 0; }

    /// w(i) for any integer i.
    long operator()(long i) const;

    AffinePermutation operator*(const AffinePermutation& rhs) const;
    AffinePermutation inverse() const;

    /// w s_i (right multiplication) and s_i w (left multiplication).
    AffinePermutation right_simple(int i) const;
    AffinePermutation left_simple(int i) const;

    bool has_right_descent(int i) const;  // l(w s_i) < l(w)
    bool has_left_descent(int i) const;   // l(s_i w) < l(w)

    /// Lexicographically smallest reduced word.
    std::vector<int> reduced_word() const;

    /// Minimal length representative of w S_n: the window is increasing.
    bool is_zero_grassmannian() const;

    /// True when w lies in the finite parabolic subgroup generated by s_1..s_{n-1}.
    bool is_finite() const;

    std::string to_string() const;

    friend bool operator==(const AffinePermutation& a, const AffinePermutation& b) {
        return a.window_ == b.window_;
    }
    friend std::strong_ordering operator<=>(const AffinePermutation& a, const AffinePermutation& b) {
        if (auto c = a.length_ <=> b.length_; c != 0) return c;
        return a.window_ <=> b.window_;
    }

private:
    explicit AffinePermutation(std::vector<int> window);

    std::vector<int> window_;
    int length_ = 0;
};

std::ostream& operator<<(std::ostream& os, const AffinePermutation& w);

/// Integer representative (j1, j2) of a reflection, j1 < j2, j1 and j2 in
/// different residue classes.  As a group element (j1, j2) and (j1+n, j2+n)
/// coincide; as a marked index they are distinct.
struct TranspositionIndex {
    long j1 = 0;
    long j2 = 0;

    TranspositionIndex() = default;
    TranspositionIndex(long a, long b);

    TranspositionIndex shifted(long by) const { return {j1 + by, j2 + by}; }

    friend auto operator<=>(const TranspositionIndex&, const TranspositionIndex&) = default;
    friend bool operator==(const TranspositionIndex&, const TranspositionIndex&) = default;
};

/// upper = lower * t_index, l(lower) = l(upper) - 1, label = upper(j1) = lower(j2).
struct MarkedCover {
    AffinePermutation upper;
    AffinePermutation lower;
    TranspositionIndex index;
    long label;
};

/// w * t and l(w t) - l(w).
std::pair<AffinePermutation, int> apply_transposition(const AffinePermutation& w, TranspositionIndex t);

/// Inversion classes (p, q) with 1 <= p <= n, p < q, w(p) > w(q) whose
/// reflection lowers the length by exactly one.
std::vector<TranspositionIndex> covering_inversions(const AffinePermutation& w);

/// All marked strong covers of w with respect to a, sorted by index.
std::vector<MarkedCover> marked_covers(const AffinePermutation& w, long a);

/// w = w0 * w1 with w0 0-Grassmannian and w1 finite, lengths adding.
std::pair<AffinePermutation, AffinePermutation> grassmannian_factorize(const AffinePermutation& w);

/// The cyclically decreasing element using exactly the generators in `residues`.
AffinePermutation cyclically_decreasing(int n, const std::set<int>& residues);

/// w_lambda for a (n-1)-bounded partition: cell residues (col - row) mod n,
/// rows read right to left, last row first.
AffinePermutation grassmannian_from_partition(int n, const Partition& lambda);
Partition partition_from_grassmannian(const AffinePermutation& w);

/// A minimal-length v with w v 0-Grassmannian and l(wv) = l(w) + l(v); ties
/// broken by the lexicographically smallest reduced word of v.
AffinePermutation grassmannian_lift(const AffinePermutation& w);

/// s_{-i} s_{-i+1} ... s_{-1} s_{m-1-i} ... s_1 s_0 for 0 <= i < m < n.
AffinePermutation rho_element(int n, int i, int m);

/// All elements of length exactly `length`, sorted.
const std::vector<AffinePermutation>& elements_of_length(int n, int length);

/// All elements with length <= max_length, sorted.
std::vector<AffinePermutation> elements_up_to_length(int n, int max_length);

inline int residue(long i, int n) {
    const long r = i % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace afk

template <>
struct std::hash<afk::AffinePermutation> {
    std::size_t operator()(const afk::AffinePermutation& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : w.window()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};
