#ifndef SIMHOL_MATRIX_HPP
#define SIMHOL_MATRIX_HPP

#include <cassert>
#include <vector>

#include "simhol/ratfunc.hpp"

namespace simhol {

inline bool entry_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool entry_is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool entry_is_zero(const Poly& x) { return x.is_zero(); }

template <class T>
struct Mat {
    unsigned rows = 0, cols = 0;
    std::vector<T> data;

    Mat() = default;
    Mat(unsigned r, unsigned c, const T& fill = T()) : rows(r), cols(c), data(r * c, fill) {}

    T& at(unsigned i, unsigned j) { return data[i * cols + j]; }
    const T& at(unsigned i, unsigned j) const { return data[i * cols + j]; }

    static Mat identity(unsigned n, const T& one, const T& zero) {
        Mat m(n, n, zero);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    Mat transpose() const {
        Mat t(cols, rows);
        for (unsigned i = 0; i < rows; ++i)
            for (unsigned j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        assert(a.cols == b.rows);
        Mat r(a.rows, b.cols);
        for (unsigned i = 0; i < a.rows; ++i)
            for (unsigned k = 0; k < a.cols; ++k) {
                const T& aik = a.at(i, k);
                if (entry_is_zero(aik)) continue;
                for (unsigned j = 0; j < b.cols; ++j) {
                    if (entry_is_zero(b.at(k, j))) continue;
                    r.at(i, j) += aik * b.at(k, j);
                }
            }
        return r;
    }
    friend Mat operator+(const Mat& a, const Mat& b) {
        assert(a.rows == b.rows && a.cols == b.cols);
        Mat r = a;
        for (size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        assert(a.rows == b.rows && a.cols == b.cols);
        Mat r = a;
        for (size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
        return r;
    }
    bool operator==(const Mat& o) const = default;
};

inline unsigned pair_index(unsigned i, unsigned j, unsigned n) {
    // index of (i,j), i<j, in lex order over pairs from 0..n-1
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

using MatQ = Mat<Rational>;
using VecQ = std::vector<Rational>;

inline MatQ matq_identity(unsigned n) { return MatQ::identity(n, Rational(1), Rational(0)); }

inline VecQ matq_apply(const MatQ& m, const VecQ& v) {
    assert(m.cols == v.size());
    VecQ r(m.rows, Rational(0));
    for (unsigned i = 0; i < m.rows; ++i)
        for (unsigned j = 0; j < m.cols; ++j)
            if (sgn(m.at(i, j)) != 0 && sgn(v[j]) != 0) r[i] += m.at(i, j) * v[j];
    return r;
}

// Reduced row echelon form. Deterministic: pivot is the first row (top to
// bottom) with a nonzero entry in the first unresolved column.
template <class T>
std::vector<unsigned> rref(Mat<T>& m) {
    std::vector<unsigned> pivots;
    unsigned row = 0;
    for (unsigned col = 0; col < m.cols && row < m.rows; ++col) {
        unsigned sel = row;
        while (sel < m.rows && entry_is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (unsigned j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        T pivot = m.at(row, col);
        for (unsigned j = col; j < m.cols; ++j)
            if (!entry_is_zero(m.at(row, j))) m.at(row, j) = m.at(row, j) / pivot;
        for (unsigned i = 0; i < m.rows; ++i) {
            if (i == row || entry_is_zero(m.at(i, col))) continue;
            T factor = m.at(i, col);
            for (unsigned j = col; j < m.cols; ++j) {
                if (entry_is_zero(m.at(row, j))) continue;
                m.at(i, j) -= factor * m.at(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
unsigned rank(Mat<T> m) {
    return static_cast<unsigned>(rref(m).size());
}

/// Canonical nullspace basis: one vector per free column, with 1 in the free
/// slot and pivot-row entries filled in.
template <class T>
std::vector<std::vector<T>> nullspace(Mat<T> m, const T& one, const T& zero) {
    std::vector<unsigned> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (unsigned p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (unsigned col = 0; col < m.cols; ++col) {
        if (is_pivot[col]) continue;
        std::vector<T> v(m.cols, zero);
        v[col] = one;
        for (unsigned r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - m.at(r, col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<VecQ> nullspace_q(const MatQ& m) {
    return nullspace(m, Rational(1), Rational(0));
}

/// Solves A x = b; nullopt when inconsistent. Free variables are set to 0.
template <class T>
std::optional<std::vector<T>> solve(const Mat<T>& a, const std::vector<T>& b, const T& zero) {
    assert(a.rows == b.size());
    Mat<T> aug(a.rows, a.cols + 1, zero);
    for (unsigned i = 0; i < a.rows; ++i) {
        for (unsigned j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    std::vector<unsigned> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    std::vector<T> x(a.cols, zero);
    for (unsigned r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
    return x;
}

inline std::optional<VecQ> solve_q(const MatQ& a, const VecQ& b) {
    return solve(a, b, Rational(0));
}

template <class T>
Mat<T> inverse(const Mat<T>& a, const T& one, const T& zero) {
    assert(a.rows == a.cols);
    unsigned n = a.rows;
    Mat<T> aug(n, 2 * n, zero);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = one;
    }
    std::vector<unsigned> pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("matrix: singular, cannot invert");
    Mat<T> inv(n, n, zero);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

inline MatQ inverse_q(const MatQ& a) { return inverse(a, Rational(1), Rational(0)); }

/// Fraction-free (Bareiss) determinant; entries stay polynomial throughout.
inline Poly poly_det_bareiss(Mat<Poly> m) {
    assert(m.rows == m.cols);
    unsigned n = m.rows;
    if (n == 0) return Poly::constant(0, 1);
    Poly denom = Poly::constant(m.at(0, 0).nvars(), 1);
    int sign = 1;
    for (unsigned k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            unsigned sel = k + 1;
            while (sel < n && m.at(sel, k).is_zero()) ++sel;
            if (sel == n) return Poly(m.at(0, 0).nvars());
            for (unsigned j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(sel, j));
            sign = -sign;
        }
        for (unsigned i = k + 1; i < n; ++i)
            for (unsigned j = k + 1; j < n; ++j) {
                Poly t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = *divide_exact(t, denom);
            }
        denom = m.at(k, k);
    }
    Poly d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Incremental exact span of rational vectors, kept in echelon form.
class SpanBuilder {
  public:
    explicit SpanBuilder(unsigned dim) : dim_(dim) {}

    /// Adds v to the span; returns true if the dimension grew.
    bool add(VecQ v) {
        reduce_vector(v);
        unsigned p = first_nonzero(v);
        if (p == dim_) return false;
        Rational inv = Rational(1) / v[p];
        for (auto& x : v) x *= inv;
        // back-reduce existing rows to keep echelon canonical
        for (auto& [pc, row] : rows_) {
            if (sgn(row[p]) == 0) continue;
            Rational f = row[p];
            for (unsigned j = 0; j < dim_; ++j) row[j] -= f * v[j];
        }
        rows_.emplace_back(p, std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }

    bool contains(VecQ v) const {
        reduce_vector(v);
        return first_nonzero(v) == dim_;
    }

    unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
    unsigned ambient_dim() const { return dim_; }

    std::vector<VecQ> basis() const {
        std::vector<VecQ> b;
        for (const auto& [p, row] : rows_) b.push_back(row);
        return b;
    }

  private:
    void reduce_vector(VecQ& v) const {
        assert(v.size() == dim_);
        for (const auto& [p, row] : rows_) {
            if (sgn(v[p]) == 0) continue;
            Rational f = v[p];
            for (unsigned j = 0; j < dim_; ++j)
                if (sgn(row[j]) != 0) v[j] -= f * row[j];
        }
    }
    unsigned first_nonzero(const VecQ& v) const {
        for (unsigned i = 0; i < dim_; ++i)
            if (sgn(v[i]) != 0) return i;
        return dim_;
    }

    unsigned dim_;
    std::vector<std::pair<unsigned, VecQ>> rows_;
};

}  // namespace simhol

#endif
