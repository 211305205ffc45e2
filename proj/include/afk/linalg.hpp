#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "afk/rational.hpp"

// Small dense exact linear algebra over Q.  Sizes here stay in the hundreds.
namespace afk::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

Matrix zeros(std::size_t rows, std::size_t cols);
Matrix identity(std::size_t size);

std::size_t rank(Matrix m);

// Unique solution of a*x = b, or nullopt when a is singular.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

std::optional<Matrix> inverse(const Matrix& a);

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector apply(const Matrix& a, const Vector& x);

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row.  Columns are visited in `column_order` (all columns if empty).
std::vector<std::size_t> row_reduce(Matrix& m, const std::vector<std::size_t>& column_order = {});

}  // namespace afk::linalg
