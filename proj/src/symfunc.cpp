#include "afk/symfunc.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <vector>

#include "afk/errors.hpp"
#include "afk/linalg.hpp"
#include "afk/nilcoxeter.hpp"

namespace afk {

std::string_view basis_name(Basis b) {
    switch (b) {
        case Basis::m: return "m";
        case Basis::h: return "h";
        case Basis::p: return "p";
        case Basis::e: return "e";
        case Basis::s: return "s";
        case Basis::kschur: return "kschur";
        case Basis::affschur: return "affschur";
    }
    return "?";
}

Basis parse_basis(std::string_view name) {
    for (Basis b : {Basis::m, Basis::h, Basis::p, Basis::e, Basis::s, Basis::kschur, Basis::affschur})
        if (basis_name(b) == name) return b;
    throw InvalidArgument("unknown basis '" + std::string(name) + "'");
}

namespace {

bool needs_k(Basis b) { return b == Basis::kschur || b == Basis::affschur; }

void check_bounded(Basis basis, std::optional<int> k, const Partition& lambda) {
    if (needs_k(basis) && !lambda.is_bounded(*k))
        throw InvalidArgument(std::string(basis_name(basis)) + " index " + lambda.to_string() + " is not " +
                              std::to_string(*k) + "-bounded");
}

}  // namespace

SymFunc::SymFunc(Basis basis, std::optional<int> k) : basis_(basis), k_(k) {
    if (needs_k(basis) && (!k || *k < 1))
        throw InvalidArgument(std::string(basis_name(basis)) + " basis requires k >= 1");
    if (!needs_k(basis)) k_.reset();
}

SymFunc SymFunc::single(Basis basis, const Partition& lambda, const Rational& coeff, std::optional<int> k) {
    SymFunc f(basis, k);
    f.add_term(lambda, coeff);
    return f;
}

Rational SymFunc::coeff(const Partition& lambda) const {
    const auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

int SymFunc::max_degree() const {
    int d = 0;
    for (const auto& [lambda, c] : terms_) d = std::max(d, lambda.size());
    return d;
}

void SymFunc::add_term(const Partition& lambda, const Rational& coeff) {
    check_bounded(basis_, k_, lambda);
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(lambda, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

SymFunc& SymFunc::operator+=(const SymFunc& rhs) {
    if (rhs.basis_ != basis_ || rhs.k_ != k_) throw InvalidArgument("adding symmetric functions in different bases");
    for (const auto& [lambda, c] : rhs.terms_) add_term(lambda, c);
    return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& rhs) {
    if (rhs.basis_ != basis_ || rhs.k_ != k_) throw InvalidArgument("subtracting symmetric functions in different bases");
    for (const auto& [lambda, c] : rhs.terms_) add_term(lambda, -c);
    return *this;
}

SymFunc& SymFunc::operator*=(const Rational& c) {
    if (sgn(c) == 0) terms_.clear();
    for (auto& [lambda, coeff] : terms_) coeff *= c;
    return *this;
}

std::string SymFunc::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [lambda, c] : terms_) {
        Rational mag = abs(c);
        if (out.empty()) out += sgn(c) < 0 ? "-" : "";
        else out += sgn(c) < 0 ? " - " : " + ";
        if (mag != 1) out += mag.get_str() + "*";
        out += std::string(basis_name(basis_)) + lambda.to_string();
    }
    return out;
}

namespace {

std::atomic<int> g_degree_bound{8};

// Transition data for one degree.  to_p[b] row i holds b_{parts[i]} in p
// coordinates; from_p[b] is its inverse.
struct DegreeTables {
    std::vector<Partition> parts;
    std::map<Partition, std::size_t> index;
    std::map<Basis, linalg::Matrix> to_p;
    std::map<Basis, linalg::Matrix> from_p;
};

std::recursive_mutex g_tables_mutex;
std::map<int, DegreeTables> g_tables;

DegreeTables& tables_locked(int degree) {
    auto [it, inserted] = g_tables.try_emplace(degree);
    if (inserted) {
        it->second.parts = partitions_of(degree);
        for (std::size_t i = 0; i < it->second.parts.size(); ++i) it->second.index[it->second.parts[i]] = i;
    }
    return it->second;
}

// Coefficient of x^mu in p_lambda(x_1, ..., x_l(mu)).
long power_sum_monomial_coeff(const Partition& lambda, const Partition& mu) {
    const auto& target = mu.parts();
    std::map<std::vector<int>, long> states{{std::vector<int>(target.size(), 0), 1}};
    for (int part : lambda.parts()) {
        std::map<std::vector<int>, long> next;
        for (const auto& [state, count] : states)
            for (std::size_t j = 0; j < target.size(); ++j)
                if (state[j] + part <= target[j]) {
                    auto s = state;
                    s[j] += part;
                    next[s] += count;
                }
        states = std::move(next);
    }
    const auto it = states.find(target);
    return it == states.end() ? 0 : it->second;
}

using PExpansion = std::map<Partition, Rational>;

PExpansion p_product(const PExpansion& a, const PExpansion& b) {
    PExpansion out;
    for (const auto& [la, ca] : a)
        for (const auto& [lb, cb] : b) {
            Rational& slot = out[la.concat(lb)];
            slot += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

// h_r (sign = false) or e_r (sign = true) in power sums.
PExpansion complete_or_elementary(int r, bool sign) {
    PExpansion out;
    if (r < 0) return out;
    for (const Partition& mu : partitions_of(r)) {
        Rational c = 1 / mu.z();
        if (sign && (r - mu.length()) % 2 != 0) c = -c;
        out[mu] = c;
    }
    return out;
}

linalg::Matrix rows_from_expansions(const DegreeTables& t, const std::vector<PExpansion>& rows) {
    linalg::Matrix m = linalg::zeros(t.parts.size(), t.parts.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [mu, c] : rows[i]) m[i][t.index.at(mu)] = c;
    return m;
}

// Jacobi-Trudi: s_lambda = det(h_{lambda_i - i + j}) as a combination of h_mu.
std::map<Partition, Rational> jacobi_trudi(const Partition& lambda) {
    const auto& parts = lambda.parts();
    const int l = lambda.length();
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<Partition, Rational> out;
    do {
        std::vector<int> hs;
        bool zero = false;
        for (int i = 0; i < l && !zero; ++i) {
            const int idx = parts[i] - i + perm[i];
            if (idx < 0) zero = true;
            else if (idx > 0) hs.push_back(idx);
        }
        if (zero) continue;
        int inversions = 0;
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) inversions += perm[i] > perm[j];
        out[Partition(hs)] += inversions % 2 ? -1 : 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

const linalg::Matrix& to_p_matrix(int degree, Basis basis);

const linalg::Matrix& to_p_matrix_locked(DegreeTables& t, int degree, Basis basis) {
    if (auto it = t.to_p.find(basis); it != t.to_p.end()) return it->second;
    const std::size_t dim = t.parts.size();
    linalg::Matrix m;
    switch (basis) {
        case Basis::p: m = linalg::identity(dim); break;
        case Basis::m: {
            linalg::Matrix p_to_m = linalg::zeros(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    p_to_m[i][j] = power_sum_monomial_coeff(t.parts[i], t.parts[j]);
            auto inv = linalg::inverse(p_to_m);
            if (!inv) throw InternalInconsistency("power sum to monomial matrix is singular");
            m = std::move(*inv);
            t.from_p[Basis::m] = std::move(p_to_m);
            break;
        }
        case Basis::h:
        case Basis::e: {
            std::vector<PExpansion> rows;
            for (const Partition& lambda : t.parts) {
                PExpansion acc{{Partition{}, Rational(1)}};
                for (int part : lambda.parts()) acc = p_product(acc, complete_or_elementary(part, basis == Basis::e));
                rows.push_back(std::move(acc));
            }
            m = rows_from_expansions(t, rows);
            break;
        }
        case Basis::s: {
            const linalg::Matrix& h = to_p_matrix_locked(t, degree, Basis::h);
            m = linalg::zeros(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (const auto& [mu, c] : jacobi_trudi(t.parts[i])) {
                    const auto& row = h[t.index.at(mu)];
                    for (std::size_t j = 0; j < dim; ++j) m[i][j] += c * row[j];
                }
            break;
        }
        default: throw InvalidArgument("no fixed transition matrix for this basis");
    }
    return t.to_p.emplace(basis, std::move(m)).first->second;
}

const linalg::Matrix& to_p_matrix(int degree, Basis basis) {
    std::lock_guard lock(g_tables_mutex);
    return to_p_matrix_locked(tables_locked(degree), degree, basis);
}

const linalg::Matrix& from_p_matrix(int degree, Basis basis) {
    std::lock_guard lock(g_tables_mutex);
    DegreeTables& t = tables_locked(degree);
    if (auto it = t.from_p.find(basis); it != t.from_p.end()) return it->second;
    auto inv = linalg::inverse(to_p_matrix_locked(t, degree, basis));
    if (!inv) throw InternalInconsistency("transition matrix is singular");
    return t.from_p.emplace(basis, std::move(*inv)).first->second;
}

const std::vector<Partition>& degree_partitions(int degree) {
    std::lock_guard lock(g_tables_mutex);
    return tables_locked(degree).parts;
}

std::size_t index_of(const Partition& lambda) {
    std::lock_guard lock(g_tables_mutex);
    return tables_locked(lambda.size()).index.at(lambda);
}

void check_degree(const SymFunc& f) {
    if (f.max_degree() > degree_bound())
        throw BoundExceeded("degree " + std::to_string(f.max_degree()) + " exceeds the configured bound " +
                            std::to_string(degree_bound()));
}

// Classical-basis expansion in power sums (no bound check).
SymFunc classical_to_p(const SymFunc& f) {
    SymFunc out(Basis::p);
    for (const auto& [lambda, c] : f.terms()) {
        const int d = lambda.size();
        const auto& row = to_p_matrix(d, f.basis())[index_of(lambda)];
        const auto& parts = degree_partitions(d);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (sgn(row[j]) != 0) out.add_term(parts[j], c * row[j]);
    }
    return out;
}

SymFunc p_to_classical(const SymFunc& fp, Basis target) {
    if (target == Basis::p) return fp;
    SymFunc out(target);
    for (const auto& [lambda, c] : fp.terms()) {
        const int d = lambda.size();
        const auto& m = from_p_matrix(d, target);
        const auto& parts = degree_partitions(d);
        const std::size_t i = index_of(lambda);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (sgn(m[i][j]) != 0) out.add_term(parts[j], c * m[i][j]);
    }
    return out;
}

SymFunc to_p(const SymFunc& f) {
    switch (f.basis()) {
        case Basis::kschur: {
            SymFunc h(Basis::h);
            for (const auto& [lambda, c] : f.terms()) h += k_schur(*f.k(), lambda) * c;
            return classical_to_p(h);
        }
        case Basis::affschur: {
            SymFunc m(Basis::m);
            for (const auto& [lambda, c] : f.terms()) m += affine_schur(*f.k(), lambda) * c;
            return classical_to_p(m);
        }
        default: return classical_to_p(f);
    }
}

Rational pairing_in_p(const SymFunc& fp, const SymFunc& gp) {
    Rational total = 0;
    for (const auto& [lambda, c] : fp.terms())
        if (auto other = gp.coeff(lambda); sgn(other) != 0) total += c * other * lambda.z();
    return total;
}

}  // namespace

int degree_bound() { return g_degree_bound.load(); }

void set_degree_bound(int bound) {
    if (bound < 0) throw InvalidArgument("degree bound must be nonnegative");
    g_degree_bound.store(bound);
}

SymFunc convert_basis(const SymFunc& f, Basis target, std::optional<int> k) {
    check_degree(f);
    if (!k) k = f.k();
    if (needs_k(target) && !k) throw InvalidArgument("conversion to " + std::string(basis_name(target)) + " needs k");
    const SymFunc fp = to_p(f);
    switch (target) {
        case Basis::kschur: {
            const SymFunc fh = p_to_classical(fp, Basis::h);
            const int n = *k + 1;
            SymFunc out(Basis::kschur, k);
            for (const auto& [nu, c] : fh.terms()) {
                if (!nu.is_bounded(*k))
                    throw InvalidArgument("element is not in the span of " + std::to_string(*k) + "-bounded h's");
                // h_nu = sum_lambda [A_{w_lambda}] h_nu s^(k)_lambda
                const NilCoxElement& product = h_product(n, nu);
                for (const Partition& lambda : partitions_of(nu.size(), *k))
                    if (auto a = product.coeff(grassmannian_from_partition(n, lambda)); sgn(a) != 0)
                        out.add_term(lambda, c * a);
            }
            return out;
        }
        case Basis::affschur: {
            SymFunc out(Basis::affschur, k);
            std::set<int> degrees;
            for (const auto& [lambda, c] : fp.terms()) degrees.insert(lambda.size());
            for (int d : degrees)
                for (const Partition& lambda : partitions_of(d, *k)) {
                    SymFunc dual = classical_to_p(k_schur(*k, lambda));
                    out.add_term(lambda, pairing_in_p(fp, dual));
                }
            return out;
        }
        default: return p_to_classical(fp, target);
    }
}

Rational hall_inner(const SymFunc& f, const SymFunc& g) {
    check_degree(f);
    check_degree(g);
    return pairing_in_p(to_p(f), to_p(g));
}

SymFunc project_to_quotient(const SymFunc& f, int k) {
    check_degree(f);
    SymFunc out(Basis::p);
    const SymFunc fp = to_p(f);
    for (const auto& [lambda, c] : fp.terms())
        if (lambda.is_bounded(k)) out.add_term(lambda, c);
    return out;
}

SymFunc multiply(const SymFunc& f, const SymFunc& g) {
    check_degree(f);
    check_degree(g);
    const SymFunc fp = to_p(f);
    const SymFunc gp = to_p(g);
    SymFunc out(Basis::p);
    for (const auto& [lambda, a] : fp.terms())
        for (const auto& [mu, b] : gp.terms()) out.add_term(lambda.concat(mu), a * b);
    return out;
}

SymFunc k_schur(int k, const Partition& lambda) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    SymFunc out(Basis::h);
    for (const auto& [mu, c] : k_schur_h_coefficients(k + 1, lambda)) out.add_term(mu, c);
    return out;
}

SymFunc affine_schur(int k, const Partition& lambda) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (!lambda.is_bounded(k))
        throw InvalidArgument("affine Schur index " + lambda.to_string() + " is not " + std::to_string(k) + "-bounded");
    return affine_stanley(grassmannian_from_partition(k + 1, lambda));
}

SymFunc affine_stanley(const AffinePermutation& w) {
    const int n = w.n();
    SymFunc out(Basis::m);
    for (const Partition& nu : partitions_of(w.length(), n - 1)) out.add_term(nu, h_product(n, nu).coeff(w));
    return out;
}

namespace detail {

SymFunc to_power_sums(const SymFunc& f) { return to_p(f); }

}  // namespace detail

}  // namespace afk
