#include "afk/fk_action.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "afk/errors.hpp"

namespace afk {

std::pair<FKLetter, int> make_letter(long a, long b) {
    if (a == b) throw InvalidArgument("FK letter needs distinct endpoints");
    if (a < b) return {{a, b}, 1};
    return {{b, a}, -1};
}

NilCoxElement act_letter(const NilCoxElement& x, FKLetter letter, int sign) {
    const int n = x.n();
    if (residue(letter.i, n) == residue(letter.j, n))
        throw InvalidArgument("FK letter endpoints must have distinct residues");
    NilCoxElement out(n);
    for (const auto& [w, c] : x.terms()) {
        auto [u, delta] = apply_transposition(w, {letter.i, letter.j});
        if (delta == -1) out.add_term(u, sign * c);
    }
    return out;
}

NilCoxElement act_word(const NilCoxElement& x, const FKWord& word) {
    NilCoxElement y = x;
    for (const FKLetter& letter : word) {
        if (y.is_zero()) break;
        y = act_letter(y, letter);
    }
    return y;
}

NilCoxElement act_word_sum(const NilCoxElement& x, const FKWordSum& words) {
    NilCoxElement out(x.n());
    for (const auto& [word, c] : words) out += act_word(x, word) * c;
    return out;
}

std::vector<LetterMove> letter_moves(const AffinePermutation& w, long i) {
    const int n = w.n();
    const int ri = residue(i, n);
    std::vector<LetterMove> moves;
    for (const TranspositionIndex& t : covering_inversions(w)) {
        long b;
        int sign;
        if (residue(t.j1, n) == ri) {
            b = t.j2 + (i - t.j1);
            sign = 1;
        } else if (residue(t.j2, n) == ri) {
            b = t.j1 + (i - t.j2);
            sign = -1;
        } else {
            continue;
        }
        auto [first, second] = std::minmax(i, b);
        moves.push_back({b, sign, apply_transposition(w, {first, second}).first});
    }
    std::sort(moves.begin(), moves.end(), [](const LetterMove& x, const LetterMove& y) { return x.b < y.b; });
    return moves;
}

NilCoxElement act_dunkl(const NilCoxElement& x, long i) {
    NilCoxElement out(x.n());
    for (const auto& [w, c] : x.terms())
        for (const LetterMove& move : letter_moves(w, i)) out.add_term(move.lower, move.sign * c);
    return out;
}

NilCoxElement act_dunkl_power(const NilCoxElement& x, long i, int m) {
    if (m < 0) throw InvalidArgument("Dunkl power must be nonnegative");
    NilCoxElement y = x;
    for (int step = 0; step < m && !y.is_zero(); ++step) y = act_dunkl(y, i);
    return y;
}

NilCoxElement act_dunkl_power_distinct(const NilCoxElement& x, long i, int m) {
    if (m < 0) throw InvalidArgument("Dunkl power must be nonnegative");
    const int n = x.n();
    NilCoxElement out(n);
    std::vector<bool> used(n, false);
    used[residue(i, n)] = true;
    std::function<void(const AffinePermutation&, const Rational&, int)> rec =
        [&](const AffinePermutation& w, const Rational& c, int depth) {
            if (depth == m) {
                out.add_term(w, c);
                return;
            }
            for (const LetterMove& move : letter_moves(w, i)) {
                const int r = residue(move.b, n);
                if (used[r]) continue;
                used[r] = true;
                rec(move.lower, move.sign * c, depth + 1);
                used[r] = false;
            }
        };
    for (const auto& [w, c] : x.terms()) rec(w, c, 0);
    return out;
}

NilCoxElement act_cyclic_sum(const NilCoxElement& x, long a, const std::vector<long>& b, bool sum_leading) {
    const int n = x.n();
    const std::size_t m = b.size();
    NilCoxElement out(n);
    // letter k of the rotation starting at s targets b[(s + k) % m]; the last letter any b' = b[s]
    for (std::size_t s = 0; s < m; ++s) {
        std::function<void(const AffinePermutation&, const Rational&, std::size_t)> rec =
            [&](const AffinePermutation& w, const Rational& c, std::size_t depth) {
                if (depth == m + 1) {
                    out.add_term(w, c);
                    return;
                }
                const long target = depth == m ? b[s] : b[(s + depth) % m];
                const bool whole_class = depth == m || sum_leading;
                for (const LetterMove& move : letter_moves(w, a)) {
                    const bool hit = whole_class ? residue(move.b, n) == residue(target, n) : move.b == target;
                    if (hit) rec(move.lower, move.sign * c, depth + 1);
                }
            };
        for (const auto& [w, c] : x.terms()) rec(w, c, 0);
    }
    return out;
}

int ConnectedTree::rows() const {
    std::set<long> r;
    for (const auto& box : boxes) r.insert(box.j1);
    return static_cast<int>(r.size());
}

int ConnectedTree::columns() const {
    std::set<long> c;
    for (const auto& box : boxes) c.insert(box.j2);
    return static_cast<int>(c.size());
}

std::optional<ConnectedTree> connected_tree(int n, const std::vector<TranspositionIndex>& boxes, long a) {
    if (boxes.empty()) return std::nullopt;
    ConnectedTree tree;
    tree.anchor = a;
    tree.boxes = boxes;
    std::sort(tree.boxes.begin(), tree.boxes.end());
    if (std::adjacent_find(tree.boxes.begin(), tree.boxes.end()) != tree.boxes.end()) return std::nullopt;
    for (const auto& box : tree.boxes) {
        if (!(box.j1 <= a && a < box.j2)) return std::nullopt;
        tree.support.insert(box.j1);
        tree.support.insert(box.j2);
    }
    std::set<int> residues;
    for (long v : tree.support)
        if (!residues.insert(residue(v, n)).second) return std::nullopt;
    if (tree.support.size() != tree.boxes.size() + 1) return std::nullopt;
    // with |V| = |E| + 1, acyclic is the same as connected
    std::map<long, long> parent;
    for (long v : tree.support) parent[v] = v;
    std::function<long(long)> find = [&](long v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& box : tree.boxes) {
        const long x = find(box.j1), y = find(box.j2);
        if (x == y) return std::nullopt;
        parent[x] = y;
    }
    tree.c = static_cast<int>(std::count_if(tree.support.begin(), tree.support.end(), [a](long v) { return v <= a; }));
    return tree;
}

namespace {

struct PatternShape {
    int l;
    int v;
};

std::optional<PatternShape> pattern_shape(const std::vector<TranspositionIndex>& labeling) {
    std::set<long> rows, cols;
    for (const auto& box : labeling) {
        rows.insert(box.j1);
        cols.insert(box.j2);
    }
    const int l = static_cast<int>(rows.size());
    const int v = static_cast<int>(cols.size()) - 1;
    if (l + v != static_cast<int>(labeling.size())) return std::nullopt;
    return PatternShape{l, v};
}

// Boxes [begin, end) have distinct rows (distinct_rows) or distinct columns,
// and the other coordinate weakly increases.
bool block_ok(const std::vector<TranspositionIndex>& lab, int begin, int end, bool distinct_rows) {
    std::set<long> seen;
    for (int k = begin; k < end; ++k) {
        const long distinct = distinct_rows ? lab[k].j1 : lab[k].j2;
        if (!seen.insert(distinct).second) return false;
        if (k > begin) {
            const long prev = distinct_rows ? lab[k - 1].j2 : lab[k - 1].j1;
            const long cur = distinct_rows ? lab[k].j2 : lab[k].j1;
            if (cur < prev) return false;
        }
    }
    return true;
}

bool disjoint(const TranspositionIndex& x, const TranspositionIndex& y) {
    return x.j1 != y.j1 && x.j1 != y.j2 && x.j2 != y.j1 && x.j2 != y.j2;
}

}  // namespace

bool labeling_pattern_one(const std::vector<TranspositionIndex>& labeling) {
    const auto shape = pattern_shape(labeling);
    if (!shape) return false;
    const int total = static_cast<int>(labeling.size());
    return block_ok(labeling, 0, shape->l, true) && block_ok(labeling, shape->l, total, false);
}

bool labeling_pattern_two(const std::vector<TranspositionIndex>& labeling) {
    const auto shape = pattern_shape(labeling);
    if (!shape) return false;
    const int total = static_cast<int>(labeling.size());
    return block_ok(labeling, 0, shape->l - 1, true) && block_ok(labeling, shape->l - 1, total, false);
}

std::vector<std::vector<TranspositionIndex>> commutation_class(const std::vector<TranspositionIndex>& labeling) {
    std::set<std::vector<TranspositionIndex>> seen{labeling};
    std::deque<std::vector<TranspositionIndex>> queue{labeling};
    while (!queue.empty()) {
        auto current = std::move(queue.front());
        queue.pop_front();
        for (std::size_t k = 0; k + 1 < current.size(); ++k) {
            if (!disjoint(current[k], current[k + 1])) continue;
            auto next = current;
            std::swap(next[k], next[k + 1]);
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    return {seen.begin(), seen.end()};
}

bool is_mn_representative(const std::vector<TranspositionIndex>& labeling) {
    const auto cls = commutation_class(labeling);  // sorted, so cls.front() is the minimum
    if (cls.front() != labeling) return false;
    return std::any_of(cls.begin(), cls.end(), [](const auto& lab) { return labeling_pattern_one(lab); });
}

std::vector<MNChain> mn_chains(const AffinePermutation& w, int m, long a) {
    const int n = w.n();
    if (m < 1 || m >= n) throw InvalidArgument("MN degree must satisfy 1 <= m < n");
    std::vector<MNChain> chains;
    std::vector<MarkedCover> path;
    std::map<int, long> vertex_of_residue;
    std::map<long, int> vertex_uses;

    auto try_add = [&](long v) {
        const int r = residue(v, n);
        auto it = vertex_of_residue.find(r);
        if (it != vertex_of_residue.end() && it->second != v) return false;
        vertex_of_residue[r] = v;
        ++vertex_uses[v];
        return true;
    };
    auto remove = [&](long v) {
        if (--vertex_uses[v] == 0) {
            vertex_uses.erase(v);
            vertex_of_residue.erase(residue(v, n));
        }
    };

    std::function<void(const AffinePermutation&)> rec = [&](const AffinePermutation& current) {
        if (static_cast<int>(path.size()) == m) {
            std::vector<TranspositionIndex> labeling;
            for (const auto& cover : path) labeling.push_back(cover.index);
            auto tree = connected_tree(n, labeling, a);
            if (!tree || !is_mn_representative(labeling)) return;
            MNChain chain{path, *tree, tree->sign()};
            chains.push_back(std::move(chain));
            return;
        }
        for (const MarkedCover& cover : marked_covers(current, a)) {
            if (!try_add(cover.index.j1)) continue;
            if (!try_add(cover.index.j2)) {
                remove(cover.index.j1);
                continue;
            }
            path.push_back(cover);
            rec(cover.lower);
            path.pop_back();
            remove(cover.index.j2);
            remove(cover.index.j1);
        }
    };
    rec(w);
    return chains;
}

NilCoxElement act_mn(const NilCoxElement& x, int m, long a) {
    const int n = x.n();
    if (m < 1 || m >= n) throw InvalidArgument("MN degree must satisfy 1 <= m < n");
    NilCoxElement out(n);
    for (const auto& [w, c] : x.terms())
        for (const MNChain& chain : mn_chains(w, m, a)) out.add_term(chain.outside(), chain.sign * c);
    return out;
}

namespace {

long apply_reflection(long x, long i, long j, int n) {
    if (residue(x, n) == residue(i, n)) return x + (j - i);
    if (residue(x, n) == residue(j, n)) return x - (j - i);
    return x;
}

bool same_generator(const FKLetter& letter, long i, long j, int n) {
    const long shift = letter.i - i;
    return shift % n == 0 && letter.j - j == shift;
}

}  // namespace

FKWordSum transpose_words(int n, const FKWordSum& x, long i, long j) {
    FKWordSum out;
    for (const auto& [word, c] : x) {
        FKWord image;
        int sign = 1;
        for (const FKLetter& letter : word) {
            auto [l, s] = make_letter(apply_reflection(letter.i, i, j, n), apply_reflection(letter.j, i, j, n));
            image.push_back(l);
            sign *= s;
        }
        out[image] += sign * c;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

FKWordSum fk_divided_difference(int n, const FKWordSum& x, long i, long j) {
    if (!(i < j) || residue(i, n) == residue(j, n))
        throw InvalidArgument("divided difference needs i < j of distinct residues");
    FKWordSum out;
    for (const auto& [word, c] : x)
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (!same_generator(word[k], i, j, n)) continue;
            FKWordSum prefix{{FKWord(word.begin(), word.begin() + static_cast<long>(k)), c}};
            for (const auto& [twisted, tc] : transpose_words(n, prefix, i, j)) {
                FKWord term = twisted;
                term.insert(term.end(), word.begin() + static_cast<long>(k) + 1, word.end());
                out[term] += tc;
            }
        }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

}  // namespace afk
