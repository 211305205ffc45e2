#include "afk/schubert_ring.hpp"

#include <algorithm>
#include <mutex>

#include "afk/errors.hpp"

namespace afk {

namespace {

using Exponents = std::vector<int>;
using XPoly = std::vector<std::pair<Exponents, Rational>>;

void check_n(int n) {
    if (n < 2) throw InvalidArgument("R_n needs n >= 2");
}

// Exponent vectors of total degree `degree` supported on variables 0..last.
void monomials_of_degree(int n, int last, int degree, std::vector<Exponents>& out) {
    Exponents e(n, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == last) {
            e[var] = left;
            out.push_back(e);
            e[var] = 0;
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[var] = a;
            self(self, var + 1, left - a);
        }
        e[var] = 0;
    };
    rec(rec, 0, degree);
}

// Reduction of x^e modulo the Groebner basis h_{n-i}(x_0..x_i), i = 0..n-1,
// whose leading terms are x_i^{n-i}.
std::mutex g_reduce_mutex;
std::map<Exponents, XPoly> g_reduce_cache;  // keyed by e, which carries n as its size

XPoly reduce_x(const Exponents& e) {
    {
        std::lock_guard lock(g_reduce_mutex);
        if (auto it = g_reduce_cache.find(e); it != g_reduce_cache.end()) return it->second;
    }
    const int n = static_cast<int>(e.size());
    int var = -1;
    for (int i = n - 1; i >= 0; --i)
        if (e[i] >= n - i) {
            var = i;
            break;
        }
    XPoly out;
    if (var < 0) {
        out.push_back({e, 1});
    } else {
        Exponents base = e;
        base[var] -= n - var;
        std::vector<Exponents> tails;
        monomials_of_degree(n, var, n - var, tails);
        std::map<Exponents, Rational> acc;
        for (const auto& t : tails) {
            if (t[var] == n - var) continue;
            Exponents next = base;
            for (int i = 0; i <= var; ++i) next[i] += t[i];
            for (const auto& [f, c] : reduce_x(next)) acc[f] -= c;
        }
        for (auto& [f, c] : acc)
            if (sgn(c) != 0) out.push_back({f, c});
    }
    std::lock_guard lock(g_reduce_mutex);
    g_reduce_cache.emplace(e, out);
    return out;
}

Partition tail_of(const Partition& lambda) {
    return Partition(std::vector<int>(lambda.parts().begin() + 1, lambda.parts().end()));
}

}  // namespace

RnElement::RnElement(int n) : n_(n) { check_n(n); }

RnElement RnElement::constant(int n, const Rational& c) { return monomial(n, {}, Exponents(n, 0), c); }

RnElement RnElement::p(int n, int m) {
    if (m < 1) throw InvalidArgument("p_m needs m >= 1");
    return monomial(n, Partition{m}, Exponents(n, 0));
}

RnElement RnElement::x(int n, long i) {
    Exponents e(n, 0);
    e[residue(i, n)] = 1;
    return monomial(n, {}, e);
}

RnElement RnElement::monomial(int n, const Partition& lambda, std::vector<int> exponents, const Rational& c) {
    check_n(n);
    if (static_cast<int>(exponents.size()) != n) throw InvalidArgument("exponent vector must have n entries");
    for (int a : exponents)
        if (a < 0) throw InvalidArgument("negative exponent");
    return normal_form(n, {{{lambda, std::move(exponents)}, c}});
}

RnElement RnElement::normal_form(int n, const Terms& raw) {
    RnElement out(n);
    for (const auto& [key, c] : raw) {
        if (static_cast<int>(key.second.size()) != n) throw InvalidArgument("exponent vector must have n entries");
        if (!key.first.is_bounded(n - 1) || sgn(c) == 0) continue;
        for (const auto& [e, r] : reduce_x(key.second)) out.add_reduced({key.first, e}, c * r);
    }
    return out;
}

void RnElement::add_reduced(const Key& key, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void RnElement::check_same(const RnElement& rhs) const {
    if (rhs.n_ != n_) throw InvalidArgument("R_n modulus mismatch");
}

Rational RnElement::coeff(const Partition& lambda, const std::vector<int>& exponents) const {
    auto it = terms_.find({lambda, exponents});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<int> RnElement::degrees() const {
    std::vector<int> out;
    for (const auto& [key, c] : terms_) {
        int d = key.first.size();
        for (int a : key.second) d += a;
        out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SymFunc RnElement::symmetric_part() const {
    SymFunc out(Basis::p);
    for (const auto& [key, c] : terms_)
        if (std::all_of(key.second.begin(), key.second.end(), [](int a) { return a == 0; })) out.add_term(key.first, c);
    return out;
}

RnElement& RnElement::operator+=(const RnElement& rhs) {
    check_same(rhs);
    for (const auto& [key, c] : rhs.terms_) add_reduced(key, c);
    return *this;
}

RnElement& RnElement::operator-=(const RnElement& rhs) {
    check_same(rhs);
    for (const auto& [key, c] : rhs.terms_) add_reduced(key, -c);
    return *this;
}

RnElement& RnElement::operator*=(const Rational& c) {
    if (sgn(c) == 0) terms_.clear();
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

RnElement operator*(const RnElement& a, const RnElement& b) {
    a.check_same(b);
    RnElement::Terms raw;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            Exponents e = ka.second;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.second[i];
            raw[{ka.first.concat(kb.first), e}] += ca * cb;
        }
    return RnElement::normal_form(a.n_, raw);
}

std::string RnElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
        const Rational mag = abs(c);
        if (out.empty()) out += sgn(c) < 0 ? "-" : "";
        else out += sgn(c) < 0 ? " - " : " + ";
        std::string factors;
        if (!key.first.empty()) factors = "p" + key.first.to_string();
        for (std::size_t i = 0; i < key.second.size(); ++i) {
            if (key.second[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "x" + std::to_string(i);
            if (key.second[i] > 1) factors += "^" + std::to_string(key.second[i]);
        }
        if (factors.empty()) out += mag.get_str();
        else out += (mag != 1 ? mag.get_str() + "*" : "") + factors;
    }
    return out;
}

namespace {

using Terms = RnElement::Terms;

RnElement x_power(int n, int i, int a, int j, int b) {
    Exponents e(n, 0);
    e[i] += a;
    e[j] += b;
    return RnElement::monomial(n, {}, e);
}

std::mutex g_p_mutex;
std::map<std::pair<int, Partition>, RnElement> g_s0p, g_d0p;

// s_0(p_lambda) = prod (p_m + x_1^m - x_0^m)
RnElement s0_of_p(int n, const Partition& lambda) {
    {
        std::lock_guard lock(g_p_mutex);
        if (auto it = g_s0p.find({n, lambda}); it != g_s0p.end()) return it->second;
    }
    RnElement out = RnElement::constant(n, 1);
    if (!lambda.empty()) {
        const int m = lambda.parts()[0];
        RnElement first = RnElement::p(n, m) + x_power(n, 1, m, 0, 0) - x_power(n, 0, m, 1, 0);
        out = first * s0_of_p(n, tail_of(lambda));
    }
    std::lock_guard lock(g_p_mutex);
    return g_s0p.emplace(std::pair{n, lambda}, out).first->second;
}

// d_0(p_lambda) by the twisted Leibniz rule over the parts.
RnElement d0_of_p(int n, const Partition& lambda) {
    {
        std::lock_guard lock(g_p_mutex);
        if (auto it = g_d0p.find({n, lambda}); it != g_d0p.end()) return it->second;
    }
    RnElement out(n);
    if (!lambda.empty()) {
        const int m = lambda.parts()[0];
        const Partition rest = tail_of(lambda);
        RnElement dm(n);
        for (int j = 0; j < m; ++j) dm += x_power(n, 1, m - 1 - j, 0, j);
        const RnElement p_rest = RnElement::monomial(n, rest, Exponents(n, 0));
        out = dm * p_rest;
        if (!rest.empty()) out += s0_of_p(n, Partition{m}) * d0_of_p(n, rest);
    }
    std::lock_guard lock(g_p_mutex);
    return g_d0p.emplace(std::pair{n, lambda}, out).first->second;
}

// d_i(x^e) for i != j = i + 1 mod n.
Terms divided_difference_x(const Exponents& e, int i, int j) {
    Terms raw;
    const int a = e[i];
    const int b = e[j];
    if (a == b) return raw;
    Exponents base = e;
    base[i] = base[j] = std::min(a, b);
    const int gap = std::abs(a - b);
    const Rational sign = a > b ? 1 : -1;
    for (int t = 0; t < gap; ++t) {
        Exponents f = base;
        f[i] += gap - 1 - t;
        f[j] += t;
        raw[{Partition{}, f}] += sign;
    }
    return raw;
}

}  // namespace

RnElement weyl_action(long i, const RnElement& f) {
    const int n = f.n();
    const int a = residue(i, n);
    const int b = residue(a + 1, n);
    RnElement out(n);
    for (const auto& [key, c] : f.terms()) {
        Exponents e = key.second;
        std::swap(e[a], e[b]);
        const RnElement x_part = RnElement::monomial(n, {}, e, c);
        if (a == 0) out += s0_of_p(n, key.first) * x_part;
        else out += RnElement::monomial(n, key.first, Exponents(n, 0)) * x_part;
    }
    return out;
}

RnElement divided_difference(long i, const RnElement& f) {
    const int n = f.n();
    const int a = residue(i, n);
    const int b = residue(a + 1, n);
    RnElement out(n);
    for (const auto& [key, c] : f.terms()) {
        const RnElement dx = RnElement::normal_form(n, divided_difference_x(key.second, a, b));
        if (a == 0) {
            out += d0_of_p(n, key.first) * RnElement::monomial(n, {}, key.second, c);
            out += s0_of_p(n, key.first) * dx * c;
        } else {
            out += RnElement::monomial(n, key.first, Exponents(n, 0), c) * dx;
        }
    }
    return out;
}

namespace {

std::mutex g_stanley_mutex;
std::map<std::pair<int, int>, NilCoxElement> g_power_elements;
std::map<std::pair<AffinePermutation, Partition>, Rational> g_power_coeffs;

// p_r as an element of the affine Fomin-Stanley subalgebra, r <= k.
NilCoxElement power_element(int n, int r) {
    {
        std::lock_guard lock(g_stanley_mutex);
        if (auto it = g_power_elements.find({n, r}); it != g_power_elements.end()) return it->second;
    }
    NilCoxElement out(n);
    const SymFunc ph = convert_basis(SymFunc::single(Basis::p, {r}), Basis::h);
    for (const auto& [nu, c] : ph.terms()) out += h_product(n, nu) * c;
    std::lock_guard lock(g_stanley_mutex);
    return g_power_elements.emplace(std::pair{n, r}, out).first->second;
}

// [A_w] p_mu, p_mu read in the affine Fomin-Stanley subalgebra.
Rational power_coefficient(const AffinePermutation& w, const Partition& mu) {
    if (mu.empty()) return w.is_identity() ? 1 : 0;
    {
        std::lock_guard lock(g_stanley_mutex);
        if (auto it = g_power_coeffs.find({w, mu}); it != g_power_coeffs.end()) return it->second;
    }
    Rational total = 0;
    const Partition rest = tail_of(mu);
    const NilCoxElement factor = power_element(w.n(), mu.parts()[0]);
    for (const auto& [u, c] : factor.terms()) {
        const AffinePermutation tail = u.inverse() * w;
        if (tail.length() == w.length() - u.length()) total += c * power_coefficient(tail, rest);
    }
    std::lock_guard lock(g_stanley_mutex);
    g_power_coeffs.emplace(std::pair{w, mu}, total);
    return total;
}

}  // namespace

SymFunc affine_stanley_quotient(const AffinePermutation& w) {
    SymFunc out(Basis::p);
    for (const Partition& mu : partitions_of(w.length(), w.n() - 1))
        if (Rational c = power_coefficient(w, mu); sgn(c) != 0) out.add_term(mu, c / mu.z());
    return out;
}

namespace {

std::mutex g_schubert_mutex;
std::map<AffinePermutation, RnElement> g_schubert;

}  // namespace

const RnElement& affine_schubert(const AffinePermutation& w) {
    {
        std::lock_guard lock(g_schubert_mutex);
        if (auto it = g_schubert.find(w); it != g_schubert.end()) return it->second;
    }
    const int n = w.n();
    RnElement out(n);
    if (w.is_zero_grassmannian()) {
        const SymFunc stanley = affine_stanley_quotient(w);
        for (const auto& [mu, c] : stanley.terms())
            out += RnElement::monomial(n, mu, Exponents(n, 0), c);
    } else {
        // S~_w = d_j S~_{w s_j} with s_j the first letter of a Grassmannian lift
        const int j = grassmannian_lift(w).reduced_word().front();
        const AffinePermutation up = w.right_simple(j);
        if (up.length() != w.length() + 1) throw InternalInconsistency("Grassmannian lift does not start with an ascent");
        out = divided_difference(j, affine_schubert(up));
    }
    std::lock_guard lock(g_schubert_mutex);
    return g_schubert.emplace(w, std::move(out)).first->second;
}

std::size_t graded_dimension(int n, int d) {
    check_n(n);
    if (d < 0) return 0;
    // staircase Hilbert series prod_i (1 + q + ... + q^{n-1-i})
    std::vector<std::size_t> stair{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::size_t> next(stair.size() + n - 1 - i, 0);
        for (std::size_t a = 0; a < stair.size(); ++a)
            for (int b = 0; b <= n - 1 - i; ++b) next[a + b] += stair[a];
        stair = std::move(next);
    }
    std::size_t total = 0;
    for (int j = 0; j <= d; ++j)
        if (std::size_t x = d - j; x < stair.size()) total += partitions_of(j, n - 1).size() * stair[x];
    return total;
}

std::map<AffinePermutation, Rational> SchubertBasis::expand(const RnElement& f) const {
    if (f.n() != n) throw InvalidArgument("R_n modulus mismatch");
    linalg::Vector b;
    for (const auto& key : pivots) b.push_back(f.coeff(key.first, key.second));
    const linalg::Vector c = linalg::apply(inverse, b);
    std::map<AffinePermutation, Rational> out;
    RnElement check(n);
    for (std::size_t r = 0; r < elements.size(); ++r)
        if (sgn(c[r]) != 0) {
            out.emplace(elements[r], c[r]);
            check += polynomials[r] * c[r];
        }
    if (!(check == f))
        throw InvalidArgument("element is not in the span of the degree-" + std::to_string(degree) + " Schubert basis");
    return out;
}

namespace {

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, SchubertBasis> g_bases;

}  // namespace

const SchubertBasis& schubert_basis(int n, int d) {
    check_n(n);
    if (d < 0) throw InvalidArgument("negative degree");
    if (d > degree_bound())
        throw BoundExceeded("degree " + std::to_string(d) + " exceeds the degree bound " + std::to_string(degree_bound()));
    {
        std::lock_guard lock(g_basis_mutex);
        if (auto it = g_bases.find({n, d}); it != g_bases.end()) return it->second;
    }
    SchubertBasis basis;
    basis.n = n;
    basis.degree = d;
    basis.elements = elements_of_length(n, d);
    std::map<RnElement::Key, std::size_t> columns;
    for (const auto& w : basis.elements) {
        basis.polynomials.push_back(affine_schubert(w));
        for (const auto& [key, c] : basis.polynomials.back().terms()) columns.emplace(key, 0);
    }
    std::vector<RnElement::Key> keys;
    for (auto& [key, index] : columns) {
        index = keys.size();
        keys.push_back(key);
    }
    const std::size_t rows = basis.elements.size();
    linalg::Matrix m = linalg::zeros(rows, keys.size());
    for (std::size_t r = 0; r < rows; ++r)
        for (const auto& [key, c] : basis.polynomials[r].terms()) m[r][columns.at(key)] = c;
    if (rows != graded_dimension(n, d))
        throw InternalInconsistency("Schubert basis size differs from the graded dimension in degree " + std::to_string(d));
    linalg::Matrix reduced = m;
    const auto pivot_cols = linalg::row_reduce(reduced);
    if (pivot_cols.size() != rows)
        throw InternalInconsistency("Schubert polynomials of degree " + std::to_string(d) + " are linearly dependent");
    linalg::Matrix square = linalg::zeros(rows, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c) square[r][c] = m[r][pivot_cols[c]];
    for (std::size_t c : pivot_cols) basis.pivots.push_back(keys[c]);
    auto inv = linalg::inverse(linalg::transpose(square));
    if (!inv) throw InternalInconsistency("singular pivot block in the Schubert basis");
    basis.inverse = std::move(*inv);
    std::lock_guard lock(g_basis_mutex);
    return g_bases.emplace(std::pair{n, d}, std::move(basis)).first->second;
}

namespace {

std::mutex g_structure_mutex;
std::map<std::pair<AffinePermutation, AffinePermutation>, std::map<AffinePermutation, Rational>> g_structure;

}  // namespace

std::map<AffinePermutation, Rational> structure_constants(const AffinePermutation& u, const AffinePermutation& v) {
    if (u.n() != v.n()) throw InvalidArgument("modulus mismatch");
    {
        std::lock_guard lock(g_structure_mutex);
        if (auto it = g_structure.find({u, v}); it != g_structure.end()) return it->second;
    }
    const auto& basis = schubert_basis(u.n(), u.length() + v.length());
    auto out = basis.expand(affine_schubert(u) * affine_schubert(v));
    std::lock_guard lock(g_structure_mutex);
    g_structure.emplace(std::pair{u, v}, out);
    return out;
}

NilCoxElement cap_apply(const AffinePermutation& u, const NilCoxElement& x) {
    if (u.n() != x.n()) throw InvalidArgument("modulus mismatch");
    NilCoxElement out(x.n());
    for (const auto& [w, c] : x.terms()) {
        if (w.length() < u.length()) continue;
        for (const auto& v : elements_of_length(x.n(), w.length() - u.length())) {
            const auto constants = structure_constants(u, v);
            if (auto it = constants.find(w); it != constants.end()) out.add_term(v, c * it->second);
        }
    }
    return out;
}

XiClass xi_class(int n, int m) {
    if (m < 1 || m >= n) throw InvalidArgument("xi(m) needs 1 <= m < n");
    XiClass out;
    out.n = n;
    out.m = m;
    for (int i = 0; i < m; ++i) out.terms.push_back({rho_element(n, i, m), i % 2 ? -1 : 1});
    return out;
}

RnElement XiClass::representative() const {
    RnElement out(n);
    for (const auto& [w, sign] : terms) out += affine_schubert(w) * Rational(sign);
    return out;
}

}  // namespace afk
