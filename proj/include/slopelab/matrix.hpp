#pragma once

#include "slopelab/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace slopelab {

// Dense matrix over Q, row-major.  Small shapes only (desk scale), so the
// implementation favours clarity and exactness over asymptotics.
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static QMat from_rows(const std::vector<std::vector<Rat>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        QMat m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged row lengths");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    QMat transpose() const {
        QMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    QMat operator*(const QMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        QMat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& x = at(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += x * o.at(k, j);
            }
        return p;
    }

    QMat operator+(const QMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        QMat s = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
        return s;
    }

    QMat operator-(const QMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        QMat s = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
        return s;
    }

    QMat scaled(const Rat& c) const {
        QMat s = *this;
        for (auto& x : s.a_) x *= c;
        return s;
    }

    std::vector<Rat> row(std::size_t i) const {
        std::vector<Rat> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    void set_row(std::size_t i, const std::vector<Rat>& r) {
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = r[j];
    }

    QMat select_rows(const std::vector<std::size_t>& idx) const {
        QMat m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
        return m;
    }

    QMat select_cols(const std::vector<std::size_t>& idx) const {
        QMat m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
        return m;
    }

    // Stack o below this.
    QMat vstack(const QMat& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        if (cols_ != o.cols_) throw std::invalid_argument("vstack width mismatch");
        QMat m(rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
        return m;
    }

    QMat hstack(const QMat& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        if (rows_ != o.rows_) throw std::invalid_argument("hstack height mismatch");
        QMat m(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
        }
        return m;
    }

    bool is_integral() const {
        for (const auto& x : a_)
            if (!is_integer(x)) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// ---- rational linear algebra -------------------------------------------

// Reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref_inplace(QMat& m);

inline QMat rref(const QMat& m) {
    QMat c = m;
    rref_inplace(c);
    return c;
}

std::size_t rank_of(const QMat& m);
Rat det(const QMat& m);
QMat inverse(const QMat& m); // throws std::domain_error on singular input

// Solve x * A = B for x (row-vector convention); throws if inconsistent.
QMat solve_left(const QMat& A, const QMat& B);
// Solve A * x = b with b a column; returns empty optional if inconsistent.
std::optional<std::vector<Rat>> solve_column(const QMat& A, const std::vector<Rat>& b);

// Basis (as rows) of the right kernel {x : M x^T = 0} over Q.
QMat q_kernel(const QMat& m);

// Kronecker product (row-major index pairing: (i,j) -> i*rowsB + j).
QMat kron(const QMat& A, const QMat& B);

// Determinant of the square submatrix on the given rows/columns.
Rat minor_det(const QMat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

// Canonical basis of a row space: RREF rows with zero rows dropped.
QMat row_space_basis(const QMat& m);

// Intersection of two row spaces (rows = basis, RREF-canonical).
QMat row_space_intersection(const QMat& a, const QMat& b);

// Whether the row space of sub is contained in the row space of sup.
bool row_space_contained(const QMat& sub, const QMat& sup);

// Incremental Gaussian elimination over Q.  try_add absorbs the row and
// reports true when it enlarges the span; contains tests membership without
// modifying the accumulator.
class QEchelon {
  public:
    bool try_add(std::vector<Rat> row);
    bool contains(std::vector<Rat> row) const;
    std::size_t size() const { return rows_.size(); }

  private:
    void reduce(std::vector<Rat>& row) const;
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> pivots_;
};

// ---- integer-lattice layer ----------------------------------------------

// Row-style Hermite normal form of an integral matrix: H = U * M with U
// unimodular, pivots positive, entries above each pivot reduced into
// [0, pivot).  Throws "requires integral matrix" on non-integer input.
std::pair<QMat, QMat> hnf(const QMat& m);

// HNF without the transform (same convention).
QMat hnf_only(const QMat& m);

// Basis (rows) of {x in Z^n : M x^T = 0} for integral M; the result is
// saturated (a direct summand) because it comes from a unimodular transform.
QMat integer_kernel(const QMat& m);

// Z-basis of span_Q(generators) intersected with Z^ambientRank, HNF-canonical.
// Throws "empty saturation" when the generators span only {0}.
QMat saturate(const QMat& generators, std::size_t ambient_rank);

// For a saturated integral basis B (k x n rows), return integer row vectors
// (n-k x n) whose classes form a Z-basis of Z^n / rowspace(B).
QMat quotient_lifts(const QMat& B);

// Exact content of a rational matrix: the positive rational c such that
// M / c is integral with coprime entries.  Zero matrix -> 0.
Rat content(const QMat& m);

} // namespace slopelab
