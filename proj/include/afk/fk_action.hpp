#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "afk/affine_perm.hpp"
#include "afk/nilcoxeter.hpp"
#include "afk/rational.hpp"

namespace afk {

/// Generator [ij] of the affine FK algebra, i < j.  [ji] is stored as -[ij].
struct FKLetter {
    long i = 0;
    long j = 0;

    friend auto operator<=>(const FKLetter&, const FKLetter&) = default;
    friend bool operator==(const FKLetter&, const FKLetter&) = default;
};

/// [a b] as (letter, sign) with the letter's endpoints ordered.
std::pair<FKLetter, int> make_letter(long a, long b);

using FKWord = std::vector<FKLetter>;
/// Linear combination of FK words; the empty word is 1.
using FKWordSum = std::map<FKWord, Rational>;

/// A_w . [ij] = A_{w t_ij} when the length drops by one, else 0 (extended linearly).
NilCoxElement act_letter(const NilCoxElement& x, FKLetter letter, int sign = 1);
/// Letters act left to right: A_w . [b1][b2] = (A_w . [b1]) . [b2].
NilCoxElement act_word(const NilCoxElement& x, const FKWord& word);
NilCoxElement act_word_sum(const NilCoxElement& x, const FKWordSum& words);

/// Every nonzero A_w . [i b] (b in any residue class other than i's), with the
/// sign of [i b] relative to its ordered letter.
struct LetterMove {
    long b;
    int sign;
    AffinePermutation lower;
};
std::vector<LetterMove> letter_moves(const AffinePermutation& w, long i);

NilCoxElement act_dunkl(const NilCoxElement& x, long i);
/// m-fold composition of act_dunkl(., i).
NilCoxElement act_dunkl_power(const NilCoxElement& x, long i, int m);
/// Sum of [i a1]...[i am] over a1..am, i of pairwise distinct residues.
NilCoxElement act_dunkl_power_distinct(const NilCoxElement& x, long i, int m);

/// Sum over all integers b_k' = b_k (mod n) and b_k' ' = b_k (mod n) (when
/// sum_leading) of the cyclic words [a b_s][a b_{s+1}]...[a b_{s-1}][a b_s'].
NilCoxElement act_cyclic_sum(const NilCoxElement& x, long a, const std::vector<long>& b, bool sum_leading);

/// Diagram of boxes (i, j), i <= a < j, whose graph is a single tree on
/// vertices of distinct residues.
struct ConnectedTree {
    std::vector<TranspositionIndex> boxes;  // sorted
    long anchor = 0;
    std::set<long> support;
    int c = 0;  // vertices <= anchor

    int rows() const;     // distinct i
    int columns() const;  // distinct j
    int sign() const { return c % 2 == 1 ? 1 : -1; }
};

std::optional<ConnectedTree> connected_tree(int n, const std::vector<TranspositionIndex>& boxes, long a);

/// Labeling patterns on a box sequence with l rows and v + 1 columns.
bool labeling_pattern_one(const std::vector<TranspositionIndex>& labeling);
bool labeling_pattern_two(const std::vector<TranspositionIndex>& labeling);

/// All labelings reachable by swapping adjacent vertex-disjoint boxes.
std::vector<std::vector<TranspositionIndex>> commutation_class(const std::vector<TranspositionIndex>& labeling);

/// True when the labeling is the lexicographically smallest member of its
/// commutation class and that class contains a pattern-one labeling.
bool is_mn_representative(const std::vector<TranspositionIndex>& labeling);

/// Descending chain of m marked covers w.r.t. a whose boxes form a connected
/// tree and whose order is the representative of an admissible class.
struct MNChain {
    std::vector<MarkedCover> covers;
    ConnectedTree tree;
    int sign = 1;

    const AffinePermutation& inside() const { return covers.front().upper; }
    const AffinePermutation& outside() const { return covers.back().lower; }
};

std::vector<MNChain> mn_chains(const AffinePermutation& w, int m, long a);

/// Bruhat action of the MN element p_m(a).
NilCoxElement act_mn(const NilCoxElement& x, int m, long a);

/// t_ij applied letterwise: [ab] -> [t(a) t(b)].
FKWordSum transpose_words(int n, const FKWordSum& x, long i, long j);

/// FK divided difference: Delta([ab]) = 1 iff [ab] = [i+cn, j+cn], and
/// Delta(xy) = Delta(x) y + t_ij(x) Delta(y).
FKWordSum fk_divided_difference(int n, const FKWordSum& x, long i, long j);

}  // namespace afk
