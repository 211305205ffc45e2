#pragma once

#include <map>
#include <utility>

#include "afk/affine_perm.hpp"
#include "afk/partition.hpp"
#include "afk/rational.hpp"

namespace afk {

/// Finitely supported rational combination of the basis elements A_w of the
/// affine nilCoxeter algebra.  No zero coefficients are stored.
class NilCoxElement {
public:
    using Terms = std::map<AffinePermutation, Rational>;

    explicit NilCoxElement(int n);

    static NilCoxElement basis(const AffinePermutation& w, const Rational& coeff = 1);
    static NilCoxElement one(int n) { return basis(AffinePermutation::identity(n)); }
    /// A_i
    static NilCoxElement generator(int n, int i);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const AffinePermutation& w) const;

    void add_term(const AffinePermutation& w, const Rational& coeff);

    NilCoxElement& operator+=(const NilCoxElement& rhs);
    NilCoxElement& operator-=(const NilCoxElement& rhs);
    NilCoxElement& operator*=(const Rational& c);

    friend NilCoxElement operator+(NilCoxElement a, const NilCoxElement& b) { return a += b; }
    friend NilCoxElement operator-(NilCoxElement a, const NilCoxElement& b) { return a -= b; }
    friend NilCoxElement operator*(NilCoxElement a, const Rational& c) { return a *= c; }
    friend NilCoxElement operator*(const Rational& c, NilCoxElement a) { return a *= c; }
    /// Algebra product: A_v A_w = A_{vw} when lengths add, else 0.
    friend NilCoxElement operator*(const NilCoxElement& a, const NilCoxElement& b);

    friend bool operator==(const NilCoxElement&, const NilCoxElement&) = default;

private:
    int n_;
    Terms terms_;
};

/// h_i = sum of A_{w_J} over i-subsets J of Z/nZ; h_0 = 1, h_{i<0} = 0.
NilCoxElement h_element(int n, int i);

/// h_{mu_1} ... h_{mu_l} (cached).
const NilCoxElement& h_product(int n, const Partition& mu);

Rational coeff_of_identity(const NilCoxElement& x);

/// Coefficients c_mu with s^(k)_lambda = sum c_mu h_mu over (n-1)-bounded mu,
/// fixed by requiring the only 0-Grassmannian term to be A_{w_lambda}.
const std::map<Partition, Rational>& k_schur_h_coefficients(int n, const Partition& lambda);

NilCoxElement noncommutative_k_schur(int n, const Partition& lambda);

using TensorCoordinates = std::map<std::pair<AffinePermutation, AffinePermutation>, Rational>;

/// Coordinates of x in the basis s^(k)_{w0} A_{w1} (w0 0-Grassmannian, w1 finite).
TensorCoordinates tensor_decompose(const NilCoxElement& x);
NilCoxElement tensor_reconstruct(int n, const TensorCoordinates& coords);

}  // namespace afk
