#include "slopelab/filtration.hpp"

namespace slopelab {

Rat inner(const RFiltration<Rat>& f, const RFiltration<Rat>& g) {
    QMat b = common_compatible_basis(f, g);
    Rat acc(0);
    for (std::size_t r = 0; r < b.rows(); ++r) {
        auto row = b.row(r);
        acc += *f.lambda(row) * *g.lambda(row);
    }
    return acc / Rat(Int(f.ambient_dim()));
}

Rat norm_sq(const RFiltration<Rat>& f) {
    Rat acc(0);
    for (const auto& w : f.jumps()) acc += w * w;
    return acc / Rat(Int(f.ambient_dim()));
}

} // namespace slopelab
