#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "afk/affine_perm.hpp"
#include "afk/partition.hpp"
#include "afk/rational.hpp"

namespace afk {

enum class Basis { m, h, p, e, s, kschur, affschur };

std::string_view basis_name(Basis b);
Basis parse_basis(std::string_view name);

/// Symmetric function expanded in one of the classical bases, or in the k-Schur
/// / affine Schur bases (which carry k).
class SymFunc {
public:
    using Terms = std::map<Partition, Rational>;

    explicit SymFunc(Basis basis, std::optional<int> k = std::nullopt);
    static SymFunc single(Basis basis, const Partition& lambda, const Rational& coeff = 1,
                          std::optional<int> k = std::nullopt);

    Basis basis() const { return basis_; }
    std::optional<int> k() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Partition& lambda) const;
    int max_degree() const;

    void add_term(const Partition& lambda, const Rational& coeff);

    SymFunc& operator+=(const SymFunc& rhs);
    SymFunc& operator-=(const SymFunc& rhs);
    SymFunc& operator*=(const Rational& c);
    friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
    friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
    friend SymFunc operator*(SymFunc a, const Rational& c) { return a *= c; }
    friend SymFunc operator*(const Rational& c, SymFunc a) { return a *= c; }

    friend bool operator==(const SymFunc&, const SymFunc&) = default;

    std::string to_string() const;

private:
    Basis basis_;
    std::optional<int> k_;
    Terms terms_;
};

/// Degree bound for convert_basis and hall_inner (default 8).
int degree_bound();
void set_degree_bound(int bound);

/// Re-expands f in `target`.  For kschur/affschur targets k defaults to f.k().
/// Throws BoundExceeded above the degree bound and InvalidArgument when f is
/// not in the span of the target basis (kschur needs f in Lambda_(k)).
SymFunc convert_basis(const SymFunc& f, Basis target, std::optional<int> k = std::nullopt);

Rational hall_inner(const SymFunc& f, const SymFunc& g);

/// Normal form in Lambda^(k): p-expansion with every p_lambda having a part > k dropped.
SymFunc project_to_quotient(const SymFunc& f, int k);

/// Product, expanded in the p basis.
SymFunc multiply(const SymFunc& f, const SymFunc& g);

/// s^(k)_lambda in the h basis.
SymFunc k_schur(int k, const Partition& lambda);

/// Affine Schur function in the m basis (k-bounded monomials only).
SymFunc affine_schur(int k, const Partition& lambda);

/// F~_w in the m basis: the coefficient of m_lambda is the coefficient of A_w in h_lambda.
SymFunc affine_stanley(const AffinePermutation& w);

namespace detail {
/// p-expansion without the degree bound; used by the Schubert ring for lifts.
SymFunc to_power_sums(const SymFunc& f);
}  // namespace detail

}  // namespace afk
