#include "slopelab/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace slopelab {

std::string QMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<std::size_t> rref_inplace(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank_of(const QMat& m) {
    QMat c = m;
    return rref_inplace(c).size();
}

Rat det(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    QMat a = m;
    std::size_t n = a.rows();
    Rat d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a.at(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
            d = -d;
        }
        d *= a.at(c, c);
        Rat inv = 1 / a.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a.at(i, c) == 0) continue;
            Rat f = a.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return d;
}

QMat inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    QMat aug = m.hstack(QMat::identity(n));
    auto piv = rref_inplace(aug);
    if (piv.size() != n || piv.back() != n - 1)
        throw std::domain_error("matrix is singular");
    std::vector<std::size_t> right(n);
    for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
    return aug.select_cols(right);
}

QMat solve_left(const QMat& A, const QMat& B) {
    // x * A = B  <=>  A^T x^T = B^T.
    QMat At = A.transpose(), Bt = B.transpose();
    if (At.rows() != Bt.rows()) throw std::invalid_argument("solve_left shape mismatch");
    QMat aug = At.hstack(Bt);
    auto piv = rref_inplace(aug);
    // Consistency: no pivot may fall in the right block.
    for (auto p : piv)
        if (p >= At.cols()) throw std::domain_error("inconsistent linear system");
    QMat x(Bt.cols(), At.cols());
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t j = 0; j < Bt.cols(); ++j) x.at(j, piv[k]) = aug.at(k, At.cols() + j);
    return x;
}

std::optional<std::vector<Rat>> solve_column(const QMat& A, const std::vector<Rat>& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("solve_column shape mismatch");
    QMat rhs(A.rows(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
    QMat aug = A.hstack(rhs);
    auto piv = rref_inplace(aug);
    for (auto p : piv)
        if (p >= A.cols()) return std::nullopt;
    std::vector<Rat> x(A.cols(), Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(k, A.cols());
    return x;
}

QMat q_kernel(const QMat& m) {
    QMat r = m;
    auto piv = rref_inplace(r);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    QMat k(free_cols.size(), m.cols());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        std::size_t f = free_cols[t];
        k.at(t, f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k.at(t, piv[i]) = -r.at(i, f);
    }
    return k;
}

QMat kron(const QMat& A, const QMat& B) {
    QMat k(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (A.at(i, j) == 0) continue;
            for (std::size_t p = 0; p < B.rows(); ++p)
                for (std::size_t q = 0; q < B.cols(); ++q)
                    k.at(i * B.rows() + p, j * B.cols() + q) = A.at(i, j) * B.at(p, q);
        }
    return k;
}

Rat minor_det(const QMat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor must be square");
    QMat s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = m.at(rows[i], cols[j]);
    return det(s);
}

QMat row_space_basis(const QMat& m) {
    QMat r = m;
    auto piv = rref_inplace(r);
    QMat b(piv.size(), m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) b.at(i, j) = r.at(i, j);
    return b;
}

QMat row_space_intersection(const QMat& a, const QMat& b) {
    // Zassenhaus: rows [A|A] and [B|0]; kernel trick is equivalent but this
    // keeps everything in one RREF.  Row space of the right half of the
    // echelon rows whose left half is zero equals the intersection.
    if (a.rows() == 0 || b.rows() == 0) return QMat(0, a.cols() ? a.cols() : b.cols());
    if (a.cols() != b.cols()) throw std::invalid_argument("intersection width mismatch");
    std::size_t n = a.cols();
    QMat big(a.rows() + b.rows(), 2 * n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            big.at(i, j) = a.at(i, j);
            big.at(i, n + j) = a.at(i, j);
        }
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) big.at(a.rows() + i, j) = b.at(i, j);
    rref_inplace(big);
    std::vector<std::vector<Rat>> out;
    for (std::size_t i = 0; i < big.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (big.at(i, j) != 0) left_zero = false;
        if (!left_zero) continue;
        std::vector<Rat> r(n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = big.at(i, n + j);
            if (r[j] != 0) nonzero = true;
        }
        if (nonzero) out.push_back(std::move(r));
    }
    if (out.empty()) return QMat(0, n);
    return row_space_basis(QMat::from_rows(out));
}

bool row_space_contained(const QMat& sub, const QMat& sup) {
    if (sub.rows() == 0) return true;
    return rank_of(sup.vstack(sub)) == rank_of(sup);
}

// ---- integer layer --------------------------------------------------------

std::pair<QMat, QMat> hnf(const QMat& m) {
    if (!m.is_integral()) throw std::domain_error("requires integral matrix");
    QMat h = m;
    QMat u = QMat::identity(m.rows());
    std::size_t r = 0;
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < h.cols(); ++j) std::swap(h.at(a, j), h.at(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    auto addmul = [&](std::size_t dst, std::size_t src, const Rat& f) {
        for (std::size_t j = 0; j < h.cols(); ++j) h.at(dst, j) += f * h.at(src, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(dst, j) += f * u.at(src, j);
    };
    auto negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < h.cols(); ++j) h.at(i, j) = -h.at(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
    };
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        // Euclidean elimination below row r in column c.
        while (true) {
            std::size_t best = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                if (best == m.rows() || abs(h.at(i, c).get_num()) < abs(h.at(best, c).get_num())) best = i;
            }
            if (best == m.rows()) break; // column is zero below r
            swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Rat q(floor_div(h.at(i, c).get_num(), h.at(r, c).get_num()));
                addmul(i, r, -q);
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) negate(r);
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            if (h.at(i, c) == 0) continue;
            Rat q(floor_div(h.at(i, c).get_num(), h.at(r, c).get_num()));
            if (q != 0) addmul(i, r, -q);
        }
        ++r;
    }
    return {h, u};
}

QMat hnf_only(const QMat& m) { return hnf(m).first; }

QMat integer_kernel(const QMat& m) {
    if (!m.is_integral()) throw std::domain_error("requires integral matrix");
    // Rows x with x * M^T = 0: run HNF on M^T and keep the transform rows
    // that map to zero rows.
    auto [h, u] = hnf(m.transpose());
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (std::size_t j = 0; j < h.cols() && z; ++j)
            if (h.at(i, j) != 0) z = false;
        if (z) zero_rows.push_back(i);
    }
    QMat k = u.select_rows(zero_rows);
    if (k.rows() == 0) return QMat(0, m.cols());
    return hnf_only(k);
}

QMat saturate(const QMat& generators, std::size_t ambient_rank) {
    if (generators.cols() != ambient_rank)
        throw std::invalid_argument("generator width differs from ambient rank");
    QMat basis = row_space_basis(generators);
    if (basis.rows() == 0) throw std::domain_error("empty saturation");
    // Clear denominators row by row; the row space is unchanged.
    QMat zbasis(basis.rows(), ambient_rank);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        Int l(1);
        for (std::size_t j = 0; j < ambient_rank; ++j) l = lcm(l, basis.at(i, j).get_den());
        for (std::size_t j = 0; j < ambient_rank; ++j) zbasis.at(i, j) = basis.at(i, j) * Rat(l);
    }
    if (zbasis.rows() == ambient_rank) return QMat::identity(ambient_rank);
    // span_Q(B) ∩ Z^n is the integer kernel of the integer kernel of B.
    QMat k = integer_kernel(zbasis);
    QMat sat = integer_kernel(k);
    return sat; // integer_kernel output is already HNF-canonical
}

QMat quotient_lifts(const QMat& B) {
    if (!B.is_integral()) throw std::domain_error("requires integral matrix");
    std::size_t n = B.cols(), k = B.rows();
    if (k > n) throw std::invalid_argument("too many rows for a basis");
    auto [h, u] = hnf(B.transpose()); // h = u * B^T, u unimodular n x n
    // B * u^T = h^T = [T | 0] with T k x k; if B is saturated, |det T| = 1 and
    // the last n-k rows of (u^T)^{-1} represent a basis of Z^n / rowspace(B).
    QMat w = inverse(u.transpose());
    std::vector<std::size_t> tail;
    for (std::size_t i = k; i < n; ++i) tail.push_back(i);
    QMat lifts = w.select_rows(tail);
    if (!lifts.is_integral()) throw std::domain_error("quotient has torsion");
    // Torsion check: T must be unimodular for the quotient to be free.
    std::vector<std::size_t> head;
    for (std::size_t i = 0; i < k; ++i) head.push_back(i);
    QMat t = h.select_rows(head);
    QMat tt(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) tt.at(i, j) = t.at(i, j);
    Rat d = det(tt);
    if (d != 1 && d != -1) throw std::domain_error("quotient has torsion");
    return lifts;
}

void QEchelon::reduce(std::vector<Rat>& row) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rat& x = row[pivots_[k]];
        if (x == 0) continue;
        Rat f = x / rows_[k][pivots_[k]];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows_[k][j];
    }
}

bool QEchelon::try_add(std::vector<Rat> row) {
    reduce(row);
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0) {
            pivots_.push_back(j);
            rows_.push_back(std::move(row));
            return true;
        }
    }
    return false;
}

bool QEchelon::contains(std::vector<Rat> row) const {
    reduce(row);
    for (const auto& x : row)
        if (x != 0) return false;
    return true;
}

Rat content(const QMat& m) {
    Int l(1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m.at(i, j).get_den());
    Int g(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m.at(i, j) * Rat(l);
            g = gcd(g, scaled.get_num());
        }
    if (g == 0) return Rat(0);
    return make_rat(g, l);
}

} // namespace slopelab
