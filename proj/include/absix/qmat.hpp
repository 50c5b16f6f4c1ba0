/**
 * Exact linear algebra over the rationals.
 *
 * Every other part of the engine reduces to the handful of operations in
 * this header: rank, kernel / image / cokernel bases, linear solves and the
 * adjoint of a pullback under two perfect pairings. Elimination is
 * fraction-free (Bareiss) on an integer copy of the matrix, with the pivot
 * always taken as the first nonzero entry in column order, so every basis
 * returned here is a deterministic function of the input.
 */

#ifndef ABSIX_QMAT_HPP
#define ABSIX_QMAT_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace absix {

using Integer = boost::multiprecision::cpp_int;

/// Reduced fraction with a positive denominator.
using Scalar = boost::multiprecision::cpp_rational;

/// Parse "a", "-a" or "a/b". Throws ParseError on anything else.
inline Scalar parse_scalar(const std::string& text)
{
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size())
            return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + text + "'");
    const Integer d(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + text + "'");
    return Scalar(Integer(num[0] == '+' ? num.substr(1) : num), d);
}

inline std::string format_scalar(const Scalar& x)
{
    return x.str();
}

/// Dense row-major matrix of exact rationals. Zero-sized shapes are valid
/// and carry their row/column counts.
class Matrix
{
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Scalar>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init)
        {
            if (row.size() != cols_)
                throw DimensionError("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == 0; });
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw DimensionError("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw DimensionError("block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const
    {
        Matrix s(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                s(i, j) = (*this)(idx[i], j);
        return s;
    }

    Matrix select_cols(const std::vector<std::size_t>& idx) const
    {
        Matrix s(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                s(i, j) = (*this)(i, idx[j]);
        return s;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b)
    {
        if (a.rows() != b.rows())
            throw DimensionError("hstack: row counts differ");
        Matrix m(a.rows(), a.cols() + b.cols());
        m.set_block(0, 0, a);
        m.set_block(0, a.cols(), b);
        return m;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b)
    {
        if (a.cols() != b.cols())
            throw DimensionError("vstack: column counts differ");
        Matrix m(a.rows() + b.rows(), a.cols());
        m.set_block(0, 0, a);
        m.set_block(a.rows(), 0, b);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols() != b.rows())
            throw DimensionError("product of " + a.shape() + " and " + b.shape());
        Matrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const Scalar& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw DimensionError("sum of " + a.shape() + " and " + b.shape());
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw DimensionError("difference of " + a.shape() + " and " + b.shape());
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a)
    {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }

    friend Matrix operator*(const Scalar& s, Matrix a)
    {
        for (auto& x : a.data_)
            x *= s;
        return a;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << "[";
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols(); ++j)
                os << (j ? ", " : "") << m(i, j);
            os << "]";
        }
        return os << "]";
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns (ascending).
struct Echelon
{
    Matrix rref;
    std::vector<std::size_t> pivots;
};

namespace detail {

inline Integer lcm_int(const Integer& a, const Integer& b)
{
    return a / boost::multiprecision::gcd(a, b) * b;
}

}   // namespace detail

/// Fraction-free forward elimination followed by back substitution.
///
/// Rows are first scaled to integers (row scaling preserves the row space),
/// then reduced with Bareiss' update, whose divisions are exact. The result
/// is converted back to the reduced echelon form over the rationals.
inline Echelon reduced_echelon(const Matrix& m)
{
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C));
    for (std::size_t i = 0; i < R; ++i)
    {
        Integer den = 1;
        for (std::size_t j = 0; j < C; ++j)
            den = detail::lcm_int(den, denominator(m(i, j)));
        for (std::size_t j = 0; j < C; ++j)
            a[i][j] = numerator(m(i, j)) * (den / denominator(m(i, j)));
    }

    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c)
    {
        std::size_t p = r;
        while (p < R && a[p][c] == 0)
            ++p;
        if (p == R)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < R; ++i)
        {
            for (std::size_t j = c + 1; j < C; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }

    Matrix rref(R, C);
    for (std::size_t i = 0; i < pivots.size(); ++i)
    {
        const Integer& lead = a[i][pivots[i]];
        for (std::size_t j = 0; j < C; ++j)
            rref(i, j) = lead < 0 ? Scalar(-a[i][j], -lead) : Scalar(a[i][j], lead);
    }
    for (std::size_t k = pivots.size(); k-- > 0;)
    {
        const std::size_t pc = pivots[k];
        for (std::size_t i = 0; i < k; ++i)
        {
            const Scalar f = rref(i, pc);
            if (f == 0)
                continue;
            for (std::size_t j = pc; j < C; ++j)
                rref(i, j) -= f * rref(k, j);
        }
    }
    return {std::move(rref), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m)
{
    return reduced_echelon(m).pivots.size();
}

/// Columns form a basis of ker(m), one per free column in ascending order.
inline Matrix kernel_basis(const Matrix& m)
{
    const auto ech = reduced_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots)
        is_pivot[p] = true;
    Matrix k(m.cols(), m.cols() - ech.pivots.size());
    std::size_t col = 0;
    for (std::size_t f = 0; f < m.cols(); ++f)
    {
        if (is_pivot[f])
            continue;
        k(f, col) = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            k(ech.pivots[i], col) = -ech.rref(i, f);
        ++col;
    }
    return k;
}

/// Pivot columns of m, in pivot order.
inline Matrix image_basis(const Matrix& m)
{
    return m.select_cols(reduced_echelon(m).pivots);
}

/// A surjection out of the codomain of m whose kernel is exactly im(m).
inline Matrix cokernel_projection(const Matrix& m)
{
    return kernel_basis(m.transpose()).transpose();
}

/// Some x with m * x = b (free variables set to zero), or nothing when the
/// system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b)
{
    if (b.rows() != m.rows())
        throw DimensionError("solve: right-hand side has " + std::to_string(b.rows()) +
                             " rows, expected " + std::to_string(m.rows()));
    const auto ech = reduced_echelon(Matrix::hstack(m, b));
    Matrix x(m.cols(), b.cols());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i)
    {
        if (ech.pivots[i] >= m.cols())
            return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(ech.pivots[i], j) = ech.rref(i, m.cols() + j);
    }
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols() || rank(m) != m.rows())
        return std::nullopt;
    return solve(m, Matrix::identity(m.rows()));
}

/// For k with full column rank: s with s * k = id, supported on the pivot
/// rows of k.
inline Matrix left_inverse(const Matrix& k)
{
    const auto rows = reduced_echelon(k.transpose()).pivots;
    if (rows.size() != k.cols())
        throw PreconditionViolated("left_inverse: matrix is not injective");
    const auto inv = inverse(k.select_rows(rows));
    Matrix s(k.cols(), k.rows());
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < k.cols(); ++i)
            s(i, rows[j]) = (*inv)(i, j);
    return s;
}

/// For p with full row rank: t with p * t = id, supported on the pivot
/// columns of p.
inline Matrix right_inverse(const Matrix& p)
{
    const auto cols = reduced_echelon(p).pivots;
    if (cols.size() != p.rows())
        throw PreconditionViolated("right_inverse: matrix is not surjective");
    const auto inv = inverse(p.select_cols(cols));
    Matrix t(p.cols(), p.rows());
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j)
            t(cols[i], j) = (*inv)(i, j);
    return t;
}

/// Standard basis vectors completing the column span of u to the whole
/// space Q^n (first-pivot choice).
inline Matrix complement_basis(const Matrix& u, std::size_t n)
{
    if (u.rows() != n)
        throw DimensionError("complement_basis: ambient dimension mismatch");
    const auto ech = reduced_echelon(Matrix::hstack(u, Matrix::identity(n)));
    std::vector<std::size_t> picked;
    for (auto p : ech.pivots)
        if (p >= u.cols())
            picked.push_back(p - u.cols());
    return Matrix::identity(n).select_cols(picked);
}

/// The pushforward adjoint to the pullback r under perfect pairings.
///
/// With r : H^b(T) -> H^b(S), qSource the pairing H^a(S) x H^b(S) and
/// qTarget the pairing H^{a'}(T) x H^b(T), the result g : H^a(S) -> H^{a'}(T)
/// satisfies g^T * qTarget = qSource * r.
inline Matrix adjoint_pushforward(const Matrix& r, const Matrix& qSource, const Matrix& qTarget)
{
    if (qSource.rows() != qSource.cols() || qTarget.rows() != qTarget.cols())
        throw PairingNotPerfect("pairing matrix is not square");
    if (qSource.cols() != r.rows() || qTarget.cols() != r.cols())
        throw DimensionError("adjoint_pushforward: restriction " + r.shape() +
                             " incompatible with pairings " + qSource.shape() + ", " +
                             qTarget.shape());
    if (rank(qSource) != qSource.rows())
        throw PairingNotPerfect("source pairing is singular");
    const auto qt_inv = inverse(qTarget);
    if (!qt_inv)
        throw PairingNotPerfect("target pairing is singular");
    return (qSource * r * *qt_inv).transpose();
}

}   // namespace absix

#endif
