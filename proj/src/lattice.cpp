#include "slopelab/lattice.hpp"

#include <stdexcept>

namespace slopelab {

Lattice::Lattice(QMat g, std::string name) : rank(g.rows()), gram(std::move(g)), label(std::move(name)) {
    validate();
}

void Lattice::validate() const {
    if (rank == 0 || gram.rows() != rank || gram.cols() != rank)
        throw std::runtime_error("lattice requires a nonempty square gram matrix");
    if (!gram.is_symmetric()) throw std::runtime_error("non-symmetric input");
    // Positive definiteness via exact leading principal minors.
    std::vector<size_t> idx;
    for (size_t k = 0; k < rank; ++k) {
        idx.push_back(k);
        if (minor_det(gram, idx, idx) <= 0)
            throw std::runtime_error("gram matrix is not positive definite");
    }
}

LogRational ndeg(const Lattice& L) {
    Rat d = det(L.gram);
    return LogRational::half_log(Rat(1) / d);
}

LogRational slope(const Lattice& L) {
    if (L.rank == 0) throw std::runtime_error("slope of zero bundle");
    return ndeg(L).scaled(make_rat(1, Int(static_cast<unsigned long>(L.rank))));
}

Lattice induced(const Sublattice& sub) {
    const QMat& B = sub.embedding;
    if (B.rows() == 0) throw std::runtime_error("slope of zero bundle");
    if (B.cols() != sub.parent.rank) throw std::runtime_error("embedding has wrong ambient rank");
    if (rank_of(B) != B.rows()) throw std::runtime_error("dependent rows");
    QMat g = B * sub.parent.gram * B.transpose();
    return Lattice(std::move(g), sub.parent.label + "|sub");
}

Lattice dual(const Lattice& L) {
    return Lattice(inverse(L.gram), "dual(" + L.label + ")");
}

Sublattice orthogonal_complement(const Sublattice& sub) {
    if (rank_of(sub.embedding) != sub.embedding.rows()) throw std::runtime_error("dependent rows");
    if (sub.embedding.rows() >= sub.parent.rank) throw std::runtime_error("zero module");
    // In dual-basis coordinates the pairing with parent coordinates is the
    // standard dot product, so the complement is an integer kernel.
    QMat ker = integer_kernel(sub.embedding);
    return Sublattice(dual(sub.parent), std::move(ker), true);
}

Lattice quotient(const Lattice& L, const QMat& subRows) {
    if (subRows.rows() == 0) return L;
    if (subRows.cols() != L.rank) throw std::runtime_error("embedding has wrong ambient rank");
    if (subRows.rows() >= L.rank) throw std::runtime_error("zero module");
    QMat W = quotient_lifts(subRows); // throws "quotient has torsion" when not saturated
    // Project the lifted basis orthogonally off the span of subRows.
    QMat BG = subRows * L.gram;
    QMat S = BG * subRows.transpose(); // gram of the sub, invertible
    QMat X = W * L.gram * subRows.transpose() * inverse(S);
    QMat Wp = W - X * subRows;
    return Lattice(Wp * L.gram * Wp.transpose(), L.label + "/sub");
}

Lattice tensor(const Lattice& E, const Lattice& F) {
    return Lattice(kron(E.gram, F.gram), E.label + "(x)" + F.label);
}

std::vector<std::vector<size_t>> k_subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Lattice exterior(const Lattice& E, size_t k) {
    if (k > E.rank) throw std::runtime_error("k out of range");
    auto subsets = k_subsets(E.rank, k);
    size_t m = subsets.size();
    QMat g(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g.at(i, j) = minor_det(E.gram, subsets[i], subsets[j]);
    return Lattice(std::move(g), "ext^" + std::to_string(k) + "(" + E.label + ")");
}

Lattice det_line(const Lattice& E) { return exterior(E, E.rank); }

Lattice direct_sum(const Lattice& E, const Lattice& F) {
    size_t n = E.rank + F.rank;
    QMat g(n, n);
    for (size_t i = 0; i < E.rank; ++i)
        for (size_t j = 0; j < E.rank; ++j) g.at(i, j) = E.gram.at(i, j);
    for (size_t i = 0; i < F.rank; ++i)
        for (size_t j = 0; j < F.rank; ++j) g.at(E.rank + i, E.rank + j) = F.gram.at(i, j);
    return Lattice(std::move(g), E.label + "(+)" + F.label);
}

Rat default_height_eps() { return make_rat(1, ipow(2, 40)); }

LogInterval height(const LinearMap& f, const Rat& eps) {
    const QMat& M = f.matrix;
    if (M.rows() != f.source.rank || M.cols() != f.target.rank)
        throw std::runtime_error("map has inconsistent dimensions");
    if (M.is_zero()) throw std::runtime_error("height of zero map");
    Rat c = content(M);
    // Squared archimedean operator norm: largest generalized eigenvalue of
    // (M G_F M^T, G_E).
    QMat A = M * f.target.gram * M.transpose();
    EigenInterval e = max_pencil_eigenvalue(A, f.source.gram, eps);
    LogInterval half = half_log_interval(e);
    LogRational logc = LogRational::log(c);
    return {half.lo - logc, half.hi - logc};
}

QMat gram_identity(size_t n) { return QMat::identity(n); }

QMat gram_An(size_t n) {
    QMat g(n, n);
    for (size_t i = 0; i < n; ++i) {
        g.at(i, i) = 2;
        if (i + 1 < n) {
            g.at(i, i + 1) = -1;
            g.at(i + 1, i) = -1;
        }
    }
    return g;
}

} // namespace slopelab
