#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "afk/affine_perm.hpp"
#include "afk/linalg.hpp"
#include "afk/nilcoxeter.hpp"
#include "afk/partition.hpp"
#include "afk/rational.hpp"
#include "afk/symfunc.hpp"

namespace afk {

/// Element of R_n = Lambda^(k) (x) Q[x_0..x_{n-1}] / <e_1..e_n>, k = n - 1.
///
/// Terms are p_lambda x^e with lambda k-bounded and e in the staircase
/// e_i <= n - 1 - i.  Every constructor and operation returns this normal form.
class RnElement {
public:
    using Key = std::pair<Partition, std::vector<int>>;
    using Terms = std::map<Key, Rational>;

    explicit RnElement(int n);
    static RnElement constant(int n, const Rational& c);
    /// p_m; zero for m > k.
    static RnElement p(int n, int m);
    /// x_{i mod n}
    static RnElement x(int n, long i);
    /// c p_lambda x^e, reduced.
    static RnElement monomial(int n, const Partition& lambda, std::vector<int> exponents, const Rational& c = 1);
    /// Reduces an arbitrary combination of monomials.
    static RnElement normal_form(int n, const Terms& raw);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Partition& lambda, const std::vector<int>& exponents) const;
    /// Degrees of the terms (empty set for zero).
    std::vector<int> degrees() const;

    /// The image under x_i -> 0, as a p-expansion.
    SymFunc symmetric_part() const;

    RnElement& operator+=(const RnElement& rhs);
    RnElement& operator-=(const RnElement& rhs);
    RnElement& operator*=(const Rational& c);
    friend RnElement operator+(RnElement a, const RnElement& b) { return a += b; }
    friend RnElement operator-(RnElement a, const RnElement& b) { return a -= b; }
    friend RnElement operator*(RnElement a, const Rational& c) { return a *= c; }
    friend RnElement operator*(const Rational& c, RnElement a) { return a *= c; }
    friend RnElement operator*(const RnElement& a, const RnElement& b);

    friend bool operator==(const RnElement&, const RnElement&) = default;

    /// e.g. "1/2*p(1,1) - p(1)*x0".
    std::string to_string() const;

private:
    void add_reduced(const Key& key, const Rational& c);
    void check_same(const RnElement& rhs) const;

    int n_;
    Terms terms_;
};

/// Ring automorphism s_i (i taken mod n): swaps x_i and x_{i+1}; s_0 also
/// sends p_m to p_m + x_1^m - x_0^m.
RnElement weyl_action(long i, const RnElement& f);

/// (1 - s_i) / (x_i - x_{i+1}), with d_i(x_j) = [j = i] - [j = i + 1].
RnElement divided_difference(long i, const RnElement& f);

/// Affine Stanley function of w in Lambda^(k), as a p-expansion with k-bounded parts.
SymFunc affine_stanley_quotient(const AffinePermutation& w);

/// Affine Schubert polynomial (cached).
const RnElement& affine_schubert(const AffinePermutation& w);

/// dim of R_n in degree d.
std::size_t graded_dimension(int n, int d);

struct SchubertBasis {
    int n = 0;
    int degree = 0;
    std::vector<AffinePermutation> elements;
    std::vector<RnElement> polynomials;

    /// Coefficients of f (homogeneous of this degree) in the Schubert basis.
    /// Throws InvalidArgument if f is not in the span.
    std::map<AffinePermutation, Rational> expand(const RnElement& f) const;

    // pivot monomials and the inverse of the square block they cut out
    std::vector<RnElement::Key> pivots;
    linalg::Matrix inverse;
};

/// All S~_w with l(w) = d.  Throws BoundExceeded above degree_bound() and
/// InternalInconsistency if the polynomials are dependent or miscounted.
const SchubertBasis& schubert_basis(int n, int d);

/// p^w_{u,v} for all w: the expansion of S~_u S~_v.
std::map<AffinePermutation, Rational> structure_constants(const AffinePermutation& u, const AffinePermutation& v);

/// D_u(A_w) = sum_v p^w_{u,v} A_v.
NilCoxElement cap_apply(const AffinePermutation& u, const NilCoxElement& x);

/// xi(m) = sum_i (-1)^i xi^{rho_{i,m}}.
struct XiClass {
    int n = 0;
    int m = 0;
    std::vector<std::pair<AffinePermutation, int>> terms;

    RnElement representative() const;
};

XiClass xi_class(int n, int m);

}  // namespace afk
