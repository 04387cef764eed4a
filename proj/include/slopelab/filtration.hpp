#pragma once

#include "slopelab/lattice.hpp"
#include "slopelab/log_rational.hpp"
#include "slopelab/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace slopelab {

// Weight scalars: plain rationals for the combinatorial calculus, LogRational
// when the jumps are slopes.  Both carry exact +, unary -, and total order.
template <class W> W weight_zero() {
    if constexpr (std::is_same_v<W, Rat>) {
        return Rat(0);
    } else {
        return LogRational::zero();
    }
}

template <class W> W weight_scale(const W& w, const Rat& c) {
    if constexpr (std::is_same_v<W, Rat>) {
        return w * c;
    } else {
        return w.scaled(c);
    }
}

template <class W> W weight_from_rational(const Rat& a) {
    if constexpr (std::is_same_v<W, Rat>) {
        return a;
    } else {
        return LogRational::rational(a);
    }
}

template <class W> double weight_double(const W& w) {
    if constexpr (std::is_same_v<W, Rat>) {
        return rat_to_double(w);
    } else {
        return w.to_double();
    }
}

template <class W> bool weight_eq(const W& a, const W& b) { return !(a < b) && !(b < a); }

// Decreasing R-filtration of Q^n with finitely many jumps: stored as the
// strictly increasing flag of distinct nonzero subspaces (RREF-canonical
// rows) together with the strictly decreasing jump weights.  The last step
// is always the full space, so F^t = full space for t <= weight(last).
template <class W = Rat>
class RFiltration {
  public:
    RFiltration(std::size_t ambientDim, std::vector<QMat> steps, std::vector<W> weights)
        : dim_(ambientDim), steps_(std::move(steps)), weights_(std::move(weights)) {
        if (dim_ == 0) throw std::invalid_argument("filtration needs a positive ambient dimension");
        if (steps_.empty() || steps_.size() != weights_.size())
            throw std::invalid_argument("filtration needs matching steps and weights");
        std::size_t prev = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (steps_[i].cols() != dim_)
                throw std::invalid_argument("filtration step has wrong ambient dimension");
            steps_[i] = row_space_basis(steps_[i]);
            ranks_.push_back(steps_[i].rows());
            if (ranks_[i] <= prev)
                throw std::invalid_argument("filtration steps must be strictly increasing");
            if (i > 0 && !row_space_contained(steps_[i - 1], steps_[i]))
                throw std::invalid_argument("filtration steps must be nested");
            if (i > 0 && !(weights_[i] < weights_[i - 1]))
                throw std::invalid_argument("filtration weights must be strictly decreasing");
            prev = ranks_[i];
        }
        if (ranks_.back() != dim_)
            throw std::invalid_argument("filtration must end at the full space");
    }

    static RFiltration trivial(std::size_t ambientDim, W w = weight_zero<W>()) {
        std::vector<QMat> steps;
        steps.push_back(QMat::identity(ambientDim));
        std::vector<W> ws;
        ws.push_back(std::move(w));
        return RFiltration(ambientDim, std::move(steps), std::move(ws));
    }

    std::size_t ambient_dim() const { return dim_; }
    std::size_t step_count() const { return steps_.size(); }
    const QMat& step(std::size_t i) const { return steps_[i]; }
    const W& weight(std::size_t i) const { return weights_[i]; }
    std::size_t step_rank(std::size_t i) const { return ranks_[i]; }

    bool operator==(const RFiltration& o) const {
        if (dim_ != o.dim_ || steps_.size() != o.steps_.size()) return false;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (steps_[i] != o.steps_[i]) return false;
            if (!weight_eq(weights_[i], o.weights_[i])) return false;
        }
        return true;
    }
    bool operator!=(const RFiltration& o) const { return !(*this == o); }

    // sup{t : x in F^t}; empty optional encodes +infinity (the zero vector).
    std::optional<W> lambda(const std::vector<Rat>& x) const {
        if (x.size() != dim_) throw std::invalid_argument("vector has wrong ambient dimension");
        bool zero = true;
        for (const auto& c : x)
            if (c != 0) { zero = false; break; }
        if (zero) return std::nullopt;
        QMat xm = QMat::from_rows({x});
        for (std::size_t i = 0; i < steps_.size(); ++i)
            if (row_space_contained(xm, steps_[i])) return weights_[i];
        throw std::logic_error("filtration does not exhaust the ambient space");
    }

    // Jump value at each coordinate 1..n, non-increasing: entry i-1 is the
    // weight at which the filtration first reaches rank i.
    std::vector<W> jumps() const {
        std::vector<W> z;
        z.reserve(dim_);
        std::size_t prev = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            for (std::size_t k = prev; k < ranks_[i]; ++k) z.push_back(weights_[i]);
            prev = ranks_[i];
        }
        return z;
    }

    // (1/n) * sum of jump values.
    W expectation() const {
        W acc = weight_zero<W>();
        std::size_t prev = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            Rat frac = make_rat(Int(ranks_[i] - prev), Int(dim_));
            acc = acc + weight_scale(weights_[i], frac);
            prev = ranks_[i];
        }
        return acc;
    }

  private:
    std::size_t dim_;
    std::vector<QMat> steps_;
    std::vector<W> weights_;
    std::vector<std::size_t> ranks_;
};

// New basis rows contributed by each step beyond the previous one (inc_i rows
// for step i); every returned row has lambda equal to that step's weight.
template <class W>
std::vector<QMat> incremental_bases(const RFiltration<W>& f) {
    std::vector<QMat> out;
    QEchelon acc;
    for (std::size_t i = 0; i < f.step_count(); ++i) {
        std::vector<std::vector<Rat>> lift;
        const QMat& s = f.step(i);
        for (std::size_t r = 0; r < s.rows(); ++r) {
            auto row = s.row(r);
            if (acc.try_add(row)) lift.push_back(std::move(row));
        }
        out.push_back(QMat::from_rows(lift));
    }
    return out;
}

// Filtration generated by a weighted spanning family: F^t = span of the
// members with weight >= t.
template <class W>
RFiltration<W> associated_filtration(std::size_t dim,
                                     std::vector<std::pair<std::vector<Rat>, W>> family) {
    std::stable_sort(family.begin(), family.end(),
                     [](const auto& a, const auto& b) { return b.second < a.second; });
    std::vector<QMat> steps;
    std::vector<W> weights;
    QEchelon acc;
    std::vector<std::vector<Rat>> kept;
    std::size_t i = 0;
    while (i < family.size()) {
        std::size_t j = i;
        while (j < family.size() && weight_eq(family[j].second, family[i].second)) ++j;
        std::size_t before = acc.size();
        for (std::size_t k = i; k < j; ++k)
            if (acc.try_add(family[k].first)) kept.push_back(family[k].first);
        if (acc.size() > before) {
            steps.push_back(QMat::from_rows(kept));
            weights.push_back(family[i].second);
        }
        i = j;
    }
    if (acc.size() != dim) throw std::invalid_argument("family does not span the ambient space");
    return RFiltration<W>(dim, std::move(steps), std::move(weights));
}

template <class W>
RFiltration<W> translate(const RFiltration<W>& f, const Rat& a) {
    std::vector<QMat> st;
    std::vector<W> ws;
    for (std::size_t i = 0; i < f.step_count(); ++i) {
        st.push_back(f.step(i));
        ws.push_back(f.weight(i) + weight_from_rational<W>(a));
    }
    return RFiltration<W>(f.ambient_dim(), std::move(st), std::move(ws));
}

template <class W>
RFiltration<W> dilate(const RFiltration<W>& f, const Rat& eps) {
    if (!(eps > 0)) throw std::invalid_argument("dilation requires a positive factor");
    std::vector<QMat> st;
    std::vector<W> ws;
    for (std::size_t i = 0; i < f.step_count(); ++i) {
        st.push_back(f.step(i));
        ws.push_back(weight_scale(f.weight(i), eps));
    }
    return RFiltration<W>(f.ambient_dim(), std::move(st), std::move(ws));
}

// Dual filtration on the dual space (standard-pairing coordinates): the step
// above weight -a_i is the annihilator of the step below weight a_i.
template <class W>
RFiltration<W> dual(const RFiltration<W>& f) {
    std::size_t s = f.step_count();
    std::vector<QMat> st;
    std::vector<W> ws;
    for (std::size_t j = 1; j <= s; ++j) {
        QMat basis = (j == s) ? QMat::identity(f.ambient_dim()) : q_kernel(f.step(s - j - 1));
        st.push_back(std::move(basis));
        ws.push_back(-f.weight(s - j));
    }
    return RFiltration<W>(f.ambient_dim(), std::move(st), std::move(ws));
}

// Restriction to a nonzero subspace, expressed in the coordinates of the
// canonical basis of that subspace.
template <class W>
RFiltration<W> restrict_to(const RFiltration<W>& f, const QMat& sub) {
    QMat vb = row_space_basis(sub);
    if (vb.rows() == 0) throw std::invalid_argument("restriction to the zero space");
    if (vb.cols() != f.ambient_dim())
        throw std::invalid_argument("restriction has wrong ambient dimension");
    std::vector<QMat> st;
    std::vector<W> ws;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < f.step_count(); ++i) {
        QMat x = (i + 1 == f.step_count()) ? vb : row_space_intersection(f.step(i), vb);
        if (x.rows() == prev) continue;
        st.push_back(solve_left(vb, x));
        ws.push_back(f.weight(i));
        prev = x.rows();
    }
    return RFiltration<W>(vb.rows(), std::move(st), std::move(ws));
}

// Quotient filtration on the complement coordinates of sub (free columns of
// its RREF).  Quotient by the zero space returns f itself.
template <class W>
RFiltration<W> quotient(const RFiltration<W>& f, const QMat& sub) {
    QMat vb = row_space_basis(sub);
    if (vb.rows() == 0) return f;
    if (vb.cols() != f.ambient_dim())
        throw std::invalid_argument("quotient has wrong ambient dimension");
    if (vb.rows() == f.ambient_dim()) throw std::invalid_argument("quotient by the full space");
    std::size_t n = f.ambient_dim();
    std::vector<std::size_t> piv;
    std::vector<bool> isPiv(n, false);
    for (std::size_t r = 0; r < vb.rows(); ++r) {
        std::size_t p = 0;
        while (p < n && vb.at(r, p) == 0) ++p;
        piv.push_back(p);
        isPiv[p] = true;
    }
    std::vector<std::size_t> freeCols;
    for (std::size_t j = 0; j < n; ++j)
        if (!isPiv[j]) freeCols.push_back(j);
    auto project = [&](std::vector<Rat> row) {
        for (std::size_t r = 0; r < vb.rows(); ++r) {
            const Rat f0 = row[piv[r]];
            if (f0 == 0) continue;
            for (std::size_t j = 0; j < n; ++j) row[j] -= f0 * vb.at(r, j);
        }
        std::vector<Rat> out(freeCols.size());
        for (std::size_t j = 0; j < freeCols.size(); ++j) out[j] = row[freeCols[j]];
        return out;
    };
    std::vector<QMat> st;
    std::vector<W> ws;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < f.step_count(); ++i) {
        std::vector<std::vector<Rat>> rows;
        for (std::size_t r = 0; r < f.step(i).rows(); ++r) rows.push_back(project(f.step(i).row(r)));
        QMat img = row_space_basis(QMat::from_rows(rows));
        if (img.rows() == prev) continue;
        st.push_back(img);
        ws.push_back(f.weight(i));
        prev = img.rows();
    }
    return RFiltration<W>(n - vb.rows(), std::move(st), std::move(ws));
}

// Tensor product filtration on Q^(n*m) with the row-major index pairing
// (i,j) -> i*m + j, generated by u (x) v over incremental bases with weight
// lambda(u) + lambda(v).
template <class W>
RFiltration<W> tensor(const RFiltration<W>& f, const RFiltration<W>& g) {
    auto lf = incremental_bases(f);
    auto lg = incremental_bases(g);
    std::size_t n = f.ambient_dim(), m = g.ambient_dim();
    std::vector<std::pair<std::vector<Rat>, W>> family;
    family.reserve(n * m);
    for (std::size_t i = 0; i < lf.size(); ++i)
        for (std::size_t r = 0; r < lf[i].rows(); ++r)
            for (std::size_t j = 0; j < lg.size(); ++j)
                for (std::size_t s = 0; s < lg[j].rows(); ++s) {
                    std::vector<Rat> w(n * m);
                    for (std::size_t a = 0; a < n; ++a) {
                        const Rat& ua = lf[i].at(r, a);
                        if (ua == 0) continue;
                        for (std::size_t b = 0; b < m; ++b) w[a * m + b] = ua * lg[j].at(s, b);
                    }
                    family.emplace_back(std::move(w), f.weight(i) + g.weight(j));
                }
    return associated_filtration<W>(n * m, std::move(family));
}

// k-th exterior power on the lex k-subset coordinates (same indexing as the
// lattice-side exterior power).
template <class W>
RFiltration<W> exterior(const RFiltration<W>& f, std::size_t k) {
    std::size_t n = f.ambient_dim();
    if (k == 0 || k > n) throw std::invalid_argument("k out of range");
    auto lf = incremental_bases(f);
    std::vector<std::vector<Rat>> flat;
    std::vector<W> flatW;
    for (std::size_t i = 0; i < lf.size(); ++i)
        for (std::size_t r = 0; r < lf[i].rows(); ++r) {
            flat.push_back(lf[i].row(r));
            flatW.push_back(f.weight(i));
        }
    QMat b = QMat::from_rows(flat);
    auto subs = k_subsets(n, k);
    std::vector<std::pair<std::vector<Rat>, W>> family;
    for (const auto& s : subs) {
        std::vector<Rat> row(subs.size());
        for (std::size_t t = 0; t < subs.size(); ++t) row[t] = minor_det(b, s, subs[t]);
        W w = flatW[s[0]];
        for (std::size_t p = 1; p < s.size(); ++p) w = w + flatW[s[p]];
        family.emplace_back(std::move(row), std::move(w));
    }
    return associated_filtration<W>(subs.size(), std::move(family));
}

template <class W>
RFiltration<W> direct_sum(const RFiltration<W>& f, const RFiltration<W>& g) {
    std::size_t n = f.ambient_dim(), m = g.ambient_dim();
    auto lf = incremental_bases(f);
    auto lg = incremental_bases(g);
    std::vector<std::pair<std::vector<Rat>, W>> family;
    for (std::size_t i = 0; i < lf.size(); ++i)
        for (std::size_t r = 0; r < lf[i].rows(); ++r) {
            std::vector<Rat> row(n + m, Rat(0));
            for (std::size_t a = 0; a < n; ++a) row[a] = lf[i].at(r, a);
            family.emplace_back(std::move(row), f.weight(i));
        }
    for (std::size_t j = 0; j < lg.size(); ++j)
        for (std::size_t s = 0; s < lg[j].rows(); ++s) {
            std::vector<Rat> row(n + m, Rat(0));
            for (std::size_t b = 0; b < m; ++b) row[n + b] = lg[j].at(s, b);
            family.emplace_back(std::move(row), g.weight(j));
        }
    return associated_filtration<W>(n + m, std::move(family));
}

// A basis of the common ambient space compatible with both filtrations:
// exactly rank(F^s) members inside every step of F and likewise for G.
// Cells F^a ∩ G^b are harvested in decreasing joint weight, which visits
// every cell after all of its sub-cells; the resulting counts are verified.
template <class W>
QMat common_compatible_basis(const RFiltration<W>& f, const RFiltration<W>& g) {
    if (f.ambient_dim() != g.ambient_dim())
        throw std::invalid_argument("filtration dimensions differ");
    std::size_t n = f.ambient_dim();
    struct Cell {
        std::size_t i, j;
        W w;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < f.step_count(); ++i)
        for (std::size_t j = 0; j < g.step_count(); ++j)
            cells.push_back({i, j, f.weight(i) + g.weight(j)});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (!weight_eq(a.w, b.w)) return b.w < a.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    QEchelon acc;
    std::vector<std::vector<Rat>> out;
    for (const auto& c : cells) {
        QMat x = row_space_intersection(f.step(c.i), g.step(c.j));
        for (std::size_t r = 0; r < x.rows(); ++r) {
            auto row = x.row(r);
            if (acc.try_add(row)) out.push_back(std::move(row));
        }
    }
    if (out.size() != n) throw std::runtime_error("common compatible basis construction failed");
    QMat basis = QMat::from_rows(out);
    for (const auto* h : {&f, &g}) {
        for (std::size_t i = 0; i < h->step_count(); ++i) {
            std::size_t cnt = 0;
            for (std::size_t r = 0; r < n; ++r)
                if (row_space_contained(QMat::from_rows({basis.row(r)}), h->step(i))) ++cnt;
            if (cnt != h->step_rank(i))
                throw std::runtime_error("common compatible basis construction failed");
        }
    }
    return basis;
}

// Refine each graded step of f by its own filtration (given in the step's
// incremental-basis coordinates); the result carries the refinement weights.
template <class W>
RFiltration<W> refine(const RFiltration<W>& f, const std::vector<RFiltration<W>>& per) {
    if (per.size() != f.step_count()) throw std::invalid_argument("refinement shape mismatch");
    auto lifts = incremental_bases(f);
    std::vector<std::pair<std::vector<Rat>, W>> family;
    for (std::size_t i = 0; i < per.size(); ++i) {
        if (per[i].ambient_dim() != lifts[i].rows())
            throw std::invalid_argument("refinement shape mismatch");
        auto sub = incremental_bases(per[i]);
        for (std::size_t j = 0; j < sub.size(); ++j)
            for (std::size_t r = 0; r < sub[j].rows(); ++r) {
                std::vector<Rat> lifted(f.ambient_dim(), Rat(0));
                for (std::size_t c = 0; c < sub[j].cols(); ++c) {
                    const Rat& coef = sub[j].at(r, c);
                    if (coef == 0) continue;
                    for (std::size_t a = 0; a < f.ambient_dim(); ++a)
                        lifted[a] += coef * lifts[i].at(c, a);
                }
                family.emplace_back(std::move(lifted), per[i].weight(j));
            }
    }
    return associated_filtration<W>(f.ambient_dim(), std::move(family));
}

template <class W> struct ExpectationCheck {
    W lhs; // lambda of the element in the tensor filtration
    W rhs; // E[f] + E[g]
    bool pass = false;
};

// For an element phi of E (x) F whose coefficient matrix is square and
// invertible (so it induces an isomorphism from the dual of E to F), the
// tensor-filtration weight of phi never exceeds E[f] + E[g].
template <class W>
ExpectationCheck<W> semist_expectation_check(const QMat& phi, const RFiltration<W>& f,
                                             const RFiltration<W>& g) {
    if (phi.rows() != f.ambient_dim() || phi.cols() != g.ambient_dim())
        throw std::invalid_argument("element has wrong shape");
    if (phi.rows() != phi.cols() || rank_of(phi) != phi.rows())
        throw std::invalid_argument("expectation check requires an invertible element");
    std::size_t n = phi.rows(), m = phi.cols();
    std::vector<Rat> v(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) v[i * m + j] = phi.at(i, j);
    auto lam = tensor(f, g).lambda(v);
    W lhs = *lam;
    W rhs = f.expectation() + g.expectation();
    bool pass = !(rhs < lhs);
    return {std::move(lhs), std::move(rhs), pass};
}

// Coupled pairing of two rational-weight filtrations over a common
// compatible basis: (1/n) * sum of lambda_f(b) * lambda_g(b).
Rat inner(const RFiltration<Rat>& f, const RFiltration<Rat>& g);

// inner(f, f), computed from the jump values alone.
Rat norm_sq(const RFiltration<Rat>& f);

} // namespace slopelab
