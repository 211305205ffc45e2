#include "afk/nilcoxeter.hpp"

#include <mutex>
#include <vector>

#include "afk/errors.hpp"
#include "afk/linalg.hpp"

namespace afk {

NilCoxElement::NilCoxElement(int n) : n_(n) {
    if (n < 2) throw InvalidArgument("modulus n must be at least 2");
}

NilCoxElement NilCoxElement::basis(const AffinePermutation& w, const Rational& coeff) {
    NilCoxElement x(w.n());
    x.add_term(w, coeff);
    return x;
}

NilCoxElement NilCoxElement::generator(int n, int i) {
    return basis(AffinePermutation::identity(n).right_simple(i));
}

Rational NilCoxElement::coeff(const AffinePermutation& w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void NilCoxElement::add_term(const AffinePermutation& w, const Rational& coeff) {
    if (w.n() != n_) throw InvalidArgument("modulus mismatch");
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

NilCoxElement& NilCoxElement::operator+=(const NilCoxElement& rhs) {
    if (rhs.n_ != n_) throw InvalidArgument("modulus mismatch");
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
}

NilCoxElement& NilCoxElement::operator-=(const NilCoxElement& rhs) {
    if (rhs.n_ != n_) throw InvalidArgument("modulus mismatch");
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
}

NilCoxElement& NilCoxElement::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

NilCoxElement operator*(const NilCoxElement& a, const NilCoxElement& b) {
    if (a.n_ != b.n_) throw InvalidArgument("modulus mismatch in nilCoxeter product");
    NilCoxElement out(a.n_);
    for (const auto& [v, cv] : a.terms_)
        for (const auto& [w, cw] : b.terms_) {
            AffinePermutation vw = v * w;
            if (vw.length() == v.length() + w.length()) out.add_term(vw, cv * cw);
        }
    return out;
}

NilCoxElement h_element(int n, int i) {
    if (i >= n) throw InvalidArgument("h_i requires i < n");
    NilCoxElement h(n);
    if (i < 0) return h;
    // subsets of Z/nZ of size i via bitmasks
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != i) continue;
        std::set<int> subset;
        for (int r = 0; r < n; ++r)
            if (mask & (1u << r)) subset.insert(r);
        h.add_term(cyclically_decreasing(n, subset), 1);
    }
    return h;
}

const NilCoxElement& h_product(int n, const Partition& mu) {
    static std::mutex mutex;
    static std::map<std::pair<int, Partition>, NilCoxElement> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({n, mu}); it != cache.end()) return it->second;
    }
    NilCoxElement product = NilCoxElement::one(n);
    for (int part : mu.parts()) product = product * h_element(n, part);
    std::lock_guard lock(mutex);
    return cache.try_emplace({n, mu}, std::move(product)).first->second;
}

Rational coeff_of_identity(const NilCoxElement& x) { return x.coeff(AffinePermutation::identity(x.n())); }

namespace {

// Inverse of M[nu][mu] = [A_{w_nu}] h_mu over (n-1)-bounded partitions of `size`.
struct KSchurTable {
    std::vector<Partition> partitions;
    std::map<Partition, std::map<Partition, Rational>> coefficients;
};

const KSchurTable& k_schur_table(int n, int size) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, KSchurTable> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({n, size}); it != cache.end()) return it->second;
    }
    KSchurTable table;
    table.partitions = partitions_of(size, n - 1);
    const std::size_t dim = table.partitions.size();
    std::vector<AffinePermutation> grassmannian;
    for (const Partition& nu : table.partitions) grassmannian.push_back(grassmannian_from_partition(n, nu));
    linalg::Matrix m = linalg::zeros(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const NilCoxElement& h = h_product(n, table.partitions[col]);
        for (std::size_t row = 0; row < dim; ++row) m[row][col] = h.coeff(grassmannian[row]);
    }
    const auto inv = linalg::inverse(m);
    if (!inv) throw InternalInconsistency("h-basis restricted to 0-Grassmannian coordinates is singular");
    for (std::size_t target = 0; target < dim; ++target) {
        auto& coeffs = table.coefficients[table.partitions[target]];
        for (std::size_t col = 0; col < dim; ++col)
            if (sgn((*inv)[col][target]) != 0) coeffs[table.partitions[col]] = (*inv)[col][target];
    }
    std::lock_guard lock(mutex);
    return cache.try_emplace({n, size}, std::move(table)).first->second;
}

}  // namespace

const std::map<Partition, Rational>& k_schur_h_coefficients(int n, const Partition& lambda) {
    if (!lambda.is_bounded(n - 1))
        throw InvalidArgument("k-Schur index " + lambda.to_string() + " is not " + std::to_string(n - 1) + "-bounded");
    return k_schur_table(n, lambda.size()).coefficients.at(lambda);
}

NilCoxElement noncommutative_k_schur(int n, const Partition& lambda) {
    NilCoxElement out(n);
    for (const auto& [mu, c] : k_schur_h_coefficients(n, lambda)) out += h_product(n, mu) * c;
    const AffinePermutation target = grassmannian_from_partition(n, lambda);
    for (const auto& [w, c] : out.terms())
        if (w.is_zero_grassmannian() && (w != target || c != 1))
            throw InternalInconsistency("noncommutative k-Schur " + lambda.to_string() +
                                        " has unexpected 0-Grassmannian term " + w.to_string());
    if (out.coeff(target) != 1)
        throw InternalInconsistency("noncommutative k-Schur " + lambda.to_string() + " misses its leading term");
    return out;
}

TensorCoordinates tensor_decompose(const NilCoxElement& x) {
    const int n = x.n();
    TensorCoordinates coords;
    NilCoxElement rest = x;
    while (!rest.is_zero()) {
        // term with the longest 0-Grassmannian factor
        const AffinePermutation* best = nullptr;
        int best_len = -1;
        for (const auto& [w, c] : rest.terms()) {
            const int len = grassmannian_factorize(w).first.length();
            if (len > best_len) {
                best_len = len;
                best = &w;
            }
        }
        const AffinePermutation w = *best;
        const Rational c = rest.coeff(w);
        auto [w0, w1] = grassmannian_factorize(w);
        const NilCoxElement piece = noncommutative_k_schur(n, partition_from_grassmannian(w0)) * NilCoxElement::basis(w1);
        rest -= piece * c;
        if (sgn(rest.coeff(w)) != 0) throw InternalInconsistency("tensor_decompose failed to cancel " + w.to_string());
        coords[{w0, w1}] += c;
    }
    return coords;
}

NilCoxElement tensor_reconstruct(int n, const TensorCoordinates& coords) {
    NilCoxElement out(n);
    for (const auto& [key, c] : coords)
        out += noncommutative_k_schur(n, partition_from_grassmannian(key.first)) * NilCoxElement::basis(key.second) * c;
    return out;
}

}  // namespace afk
