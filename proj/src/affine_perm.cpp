#include "afk/affine_perm.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "afk/errors.hpp"
#include "afk/partition.hpp"

namespace afk {
namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int compute_length(const std::vector<int>& window) {
    const long n = static_cast<long>(window.size());
    long len = 0;
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) len += std::labs(floor_div(window[j] - window[i], n));
    return static_cast<int>(len);
}

void check_residue(int i, int n) {
    if (i < 0 || i >= n) throw InvalidArgument("simple generator index out of range 0.." + std::to_string(n - 1));
}

}  // namespace

AffinePermutation::AffinePermutation(std::vector<int> window)
    : window_(std::move(window)), length_(compute_length(window_)) {}

AffinePermutation AffinePermutation::identity(int n) {
    if (n < 2) throw InvalidArgument("modulus n must be at least 2");
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    return AffinePermutation(std::move(w));
}

AffinePermutation AffinePermutation::from_window(std::vector<int> window) {
    const long n = static_cast<long>(window.size());
    if (n < 2) throw InvalidArgument("modulus n must be at least 2");
    long sum = 0;
    std::vector<bool> seen(n, false);
    for (int v : window) {
        sum += v;
        const int r = residue(v, static_cast<int>(n));
        if (seen[r]) throw InvalidArgument("window entries must have distinct residues mod n");
        seen[r] = true;
    }
    if (sum != n * (n + 1) / 2) throw InvalidArgument("window entries must sum to n(n+1)/2");
    return AffinePermutation(std::move(window));
}

AffinePermutation AffinePermutation::from_word(int n, std::span<const int> word) {
    AffinePermutation w = identity(n);
    for (int i : word) w = w.right_simple(i);
    return w;
}

long AffinePermutation::operator()(long i) const {
    const long n = static_cast<long>(window_.size());
    const long q = floor_div(i - 1, n);
    return window_[static_cast<std::size_t>(i - 1 - q * n)] + q * n;
}

AffinePermutation AffinePermutation::operator*(const AffinePermutation& rhs) const {
    if (rhs.n() != n()) throw InvalidArgument("modulus mismatch in product");
    std::vector<int> w(window_.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = static_cast<int>((*this)(rhs.window_[j]));
    return AffinePermutation(std::move(w));
}

AffinePermutation AffinePermutation::inverse() const {
    const int n = this->n();
    std::vector<int> inv(n);
    for (int i = 1; i <= n; ++i) {
        const int v = window_[i - 1];
        const int r = residue(v - 1, n) + 1;
        const int c = (v - r) / n;
        inv[r - 1] = i - c * n;
    }
    return AffinePermutation(std::move(inv));
}

AffinePermutation AffinePermutation::right_simple(int i) const {
    check_residue(i, n());
    std::vector<int> w = window_;
    if (i == 0) {
        const int nn = n();
        const int first = w.front();
        w.front() = w.back() - nn;
        w.back() = first + nn;
    } else {
        std::swap(w[i - 1], w[i]);
    }
    return AffinePermutation(std::move(w));
}

AffinePermutation AffinePermutation::left_simple(int i) const {
    check_residue(i, n());
    const int nn = n();
    const int next = (i + 1) % nn;
    std::vector<int> w = window_;
    for (int& v : w) {
        const int r = residue(v, nn);
        if (r == i)
            v += 1;
        else if (r == next)
            v -= 1;
    }
    return AffinePermutation(std::move(w));
}

bool AffinePermutation::has_right_descent(int i) const {
    check_residue(i, n());
    return (*this)(i) > (*this)(i + 1);
}

bool AffinePermutation::has_left_descent(int i) const {
    check_residue(i, n());
    const AffinePermutation inv = inverse();
    return inv(i) > inv(i + 1);
}

std::vector<int> AffinePermutation::reduced_word() const {
    std::vector<int> word;
    AffinePermutation w = *this;
    while (!w.is_identity()) {
        const AffinePermutation inv = w.inverse();
        int descent = -1;
        for (int i = 0; i < n(); ++i)
            if (inv(i) > inv(i + 1)) {
                descent = i;
                break;
            }
        word.push_back(descent);
        w = w.left_simple(descent);
    }
    return word;
}

bool AffinePermutation::is_zero_grassmannian() const {
    return std::is_sorted(window_.begin(), window_.end());
}

bool AffinePermutation::is_finite() const {
    for (int v : window_)
        if (v < 1 || v > n()) return false;
    return true;
}

std::string AffinePermutation::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const AffinePermutation& w) {
    os << '[';
    for (std::size_t i = 0; i < w.window().size(); ++i) os << (i ? "," : "") << w.window()[i];
    return os << ']';
}

TranspositionIndex::TranspositionIndex(long a, long b) : j1(a), j2(b) {
    if (a >= b) throw InvalidArgument("transposition index requires j1 < j2");
}

std::pair<AffinePermutation, int> apply_transposition(const AffinePermutation& w, TranspositionIndex t) {
    const int n = w.n();
    if (residue(t.j1, n) == residue(t.j2, n))
        throw InvalidArgument("transposition endpoints must have distinct residues");
    const int r1 = residue(t.j1, n);
    const int r2 = residue(t.j2, n);
    std::vector<int> window(n);
    for (long p = 1; p <= n; ++p) {
        long image = p;
        const int r = residue(p, n);
        if (r == r1)
            image = t.j2 + (p - t.j1);
        else if (r == r2)
            image = t.j1 + (p - t.j2);
        window[p - 1] = static_cast<int>(w(image));
    }
    AffinePermutation result = AffinePermutation::from_window(std::move(window));
    const int delta = result.length() - w.length();
    return {std::move(result), delta};
}

std::vector<TranspositionIndex> covering_inversions(const AffinePermutation& w) {
    const int n = w.n();
    const int min_value = *std::min_element(w.window().begin(), w.window().end());
    std::vector<TranspositionIndex> out;
    for (long p = 1; p <= n; ++p) {
        const long wp = w(p);
        for (long q = p + 1; min_value + n * floor_div(q - 1, n) < wp; ++q) {
            if (residue(q, n) == residue(p, n) || w(q) >= wp) continue;
            if (apply_transposition(w, {p, q}).second == -1) out.emplace_back(p, q);
        }
    }
    return out;
}

std::vector<MarkedCover> marked_covers(const AffinePermutation& w, long a) {
    const int n = w.n();
    std::vector<MarkedCover> out;
    for (const TranspositionIndex& cls : covering_inversions(w)) {
        // representatives (p+tn, q+tn) with p+tn <= a < q+tn
        const long t_min = floor_div(a - cls.j2, n) + 1;
        const long t_max = floor_div(a - cls.j1, n);
        if (t_min > t_max) continue;
        AffinePermutation lower = apply_transposition(w, cls).first;
        for (long t = t_min; t <= t_max; ++t) {
            const TranspositionIndex index = cls.shifted(t * n);
            out.push_back(MarkedCover{w, lower, index, w(index.j1)});
        }
    }
    std::sort(out.begin(), out.end(), [](const MarkedCover& x, const MarkedCover& y) { return x.index < y.index; });
    return out;
}

std::pair<AffinePermutation, AffinePermutation> grassmannian_factorize(const AffinePermutation& w) {
    std::vector<int> sorted = w.window();
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> finite(w.n());
    for (int j = 0; j < w.n(); ++j) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), w.window()[j]);
        finite[j] = static_cast<int>(it - sorted.begin()) + 1;
    }
    return {AffinePermutation::from_window(std::move(sorted)), AffinePermutation::from_window(std::move(finite))};
}

AffinePermutation cyclically_decreasing(int n, const std::set<int>& residues) {
    if (static_cast<int>(residues.size()) >= n)
        throw InvalidArgument("cyclically decreasing element needs a proper subset of residues");
    for (int r : residues)
        if (r < 0 || r >= n) throw InvalidArgument("residue out of range");
    if (residues.empty()) return AffinePermutation::identity(n);
    int start = 0;
    while (residues.count(start)) ++start;
    // runs of consecutive residues, walking once around the circle from a gap
    std::vector<int> word;
    std::vector<int> run;
    auto flush = [&] {
        word.insert(word.end(), run.rbegin(), run.rend());
        run.clear();
    };
    for (int step = 1; step <= n; ++step) {
        const int r = (start + step) % n;
        if (residues.count(r))
            run.push_back(r);
        else
            flush();
    }
    flush();
    return AffinePermutation::from_word(n, word);
}

AffinePermutation grassmannian_from_partition(int n, const Partition& lambda) {
    if (!lambda.is_bounded(n - 1))
        throw InvalidArgument("partition " + lambda.to_string() + " is not " + std::to_string(n - 1) + "-bounded");
    std::vector<int> word;
    for (int row = lambda.length(); row >= 1; --row)
        for (int col = lambda.parts()[row - 1]; col >= 1; --col) word.push_back(residue(col - row, n));
    AffinePermutation w = AffinePermutation::from_word(n, word);
    if (!w.is_zero_grassmannian() || w.length() != lambda.size())
        throw InternalInconsistency("residue reading of " + lambda.to_string() + " is not a reduced 0-Grassmannian word");
    return w;
}

Partition partition_from_grassmannian(const AffinePermutation& w) {
    if (!w.is_zero_grassmannian()) throw InvalidArgument("element " + w.to_string() + " is not 0-Grassmannian");
    for (const Partition& lambda : partitions_of(w.length(), w.n() - 1))
        if (grassmannian_from_partition(w.n(), lambda) == w) return lambda;
    throw InternalInconsistency("no bounded partition maps to " + w.to_string());
}

AffinePermutation grassmannian_lift(const AffinePermutation& w) {
    const int n = w.n();
    if (w.is_zero_grassmannian()) return AffinePermutation::identity(n);
    // Breadth-first ascent; each level is kept in lex order of the words.
    struct Node {
        AffinePermutation top;
        std::vector<int> word;
    };
    std::vector<Node> level{{w, {}}};
    std::unordered_set<AffinePermutation> seen{w};
    constexpr int kMaxDepth = 64;
    for (int depth = 1; depth <= kMaxDepth; ++depth) {
        std::vector<Node> next;
        for (const Node& node : level)
            for (int i = 0; i < n; ++i) {
                if (node.top.has_right_descent(i)) continue;
                AffinePermutation up = node.top.right_simple(i);
                if (!seen.insert(up).second) continue;
                std::vector<int> word = node.word;
                word.push_back(i);
                if (up.is_zero_grassmannian()) return AffinePermutation::from_word(n, word);
                next.push_back(Node{std::move(up), std::move(word)});
            }
        level = std::move(next);
    }
    throw InternalInconsistency("grassmannian_lift: search depth exhausted for " + w.to_string());
}

AffinePermutation rho_element(int n, int i, int m) {
    if (!(0 <= i && i < m && m < n))
        throw InvalidArgument("rho_{i,m} requires 0 <= i < m < n");
    std::vector<int> word;
    for (int t = -i; t <= -1; ++t) word.push_back(residue(t, n));
    for (int t = m - 1 - i; t >= 0; --t) word.push_back(t);
    return AffinePermutation::from_word(n, word);
}

const std::vector<AffinePermutation>& elements_of_length(int n, int length) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<AffinePermutation>> cache;
    if (length < 0) throw InvalidArgument("negative length");
    std::lock_guard lock(mutex);
    for (int l = 0; l <= length; ++l) {
        if (cache.count({n, l})) continue;
        if (l == 0) {
            cache[{n, 0}] = {AffinePermutation::identity(n)};
            continue;
        }
        std::set<AffinePermutation> next;
        for (const AffinePermutation& x : cache.at({n, l - 1}))
            for (int i = 0; i < n; ++i)
                if (!x.has_right_descent(i)) next.insert(x.right_simple(i));
        cache[{n, l}] = std::vector<AffinePermutation>(next.begin(), next.end());
    }
    return cache.at({n, length});
}

std::vector<AffinePermutation> elements_up_to_length(int n, int max_length) {
    std::vector<AffinePermutation> out;
    for (int l = 0; l <= max_length; ++l) {
        const auto& level = elements_of_length(n, l);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace afk
