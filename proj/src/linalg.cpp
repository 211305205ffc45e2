#include "afk/linalg.hpp"

#include "afk/errors.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace afk {

Rational parse_rational(std::string_view text) {
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
        throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    if (q.get_den() == 0) throw InvalidArgument("zero denominator: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

}  // namespace afk

namespace afk::linalg {

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, Vector(cols)); }

Matrix identity(std::size_t size) {
    Matrix m = zeros(size, size);
    for (std::size_t i = 0; i < size; ++i) m[i][i] = 1;
    return m;
}

std::vector<std::size_t> row_reduce(Matrix& m, const std::vector<std::size_t>& column_order) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m.front().size();
    std::vector<std::size_t> order = column_order;
    if (order.empty()) {
        order.resize(cols);
        std::iota(order.begin(), order.end(), 0);
    }
    std::size_t row = 0;
    for (std::size_t col : order) {
        if (row == m.size()) break;
        std::size_t pivot = row;
        while (pivot < m.size() && sgn(m[pivot][col]) == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        const Rational inv = 1 / m[row][col];
        for (auto& entry : m[row]) entry *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0) continue;
            const Rational factor = m[r][col];
            for (std::size_t c = 0; c < cols; ++c)
                if (sgn(m[row][c]) != 0) m[r][c] -= factor * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InvalidArgument("solve: dimension mismatch");
    Matrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw InvalidArgument("solve: matrix not square");
        aug[i].push_back(b[i]);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (row_reduce(aug, order).size() != n) return std::nullopt;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw InvalidArgument("inverse: matrix not square");
        aug[i].resize(2 * n);
        aug[i][n + i] = 1;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (row_reduce(aug, order).size() != n) return std::nullopt;
    Matrix inv = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix t = zeros(a.front().size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b.front().size();
    Matrix c = zeros(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Vector apply(const Matrix& a, const Vector& x) {
    Vector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (sgn(x[j]) != 0) y[i] += a[i][j] * x[j];
    return y;
}

}  // namespace afk::linalg
