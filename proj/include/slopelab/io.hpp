#pragma once

#include <string>

#include "slopelab/filtration.hpp"
#include "slopelab/iq.hpp"
#include "slopelab/lattice.hpp"
#include "slopelab/tensor.hpp"

namespace slopelab {

// JSON readers and writers for the on-disk formats.  Rationals are written
// as plain integers when the denominator is 1 and as {"n": .., "d": ..}
// otherwise; values wider than 64 bits round-trip as digit strings inside
// the same object.  All reader errors are std::runtime_error whose message
// starts with the origin (file name or caller-supplied tag) followed by the
// JSON field path, e.g. `a2.json: $.gram[0][1]: expected an integer or
// {"n", "d"}`; syntax errors keep the parser's line/column report.
//
//   lattice:    {"label": "A2", "gram": [[2, -1], [-1, 2]]}
//   subspace:   {"left": "e.json" | {...}, "right": ..., "generators": [matrix, ...]}
//               (file references are resolved relative to the subspace file)
//   filtration: {"dim": 2, "steps": [{"basis": [[1, 0]], "weight": 1}, ...]}
//   iq vector:  {"ring": "eisenstein", "coords": [[1, 0], [1, 1]]}

Lattice parse_lattice(const std::string& text, const std::string& origin);
Lattice load_lattice(const std::string& path);

TensorSubspace parse_subspace(const std::string& text, const std::string& origin);
TensorSubspace load_subspace(const std::string& path);

RFiltration<Rat> parse_filtration(const std::string& text, const std::string& origin);
RFiltration<Rat> load_filtration(const std::string& path);

IQVector parse_iq_vector(const std::string& text, const std::string& origin);
IQVector load_iq_vector(const std::string& path);

std::string lattice_json(const Lattice& L);
std::string subspace_json(const TensorSubspace& V);
std::string filtration_json(const RFiltration<Rat>& f);
std::string iq_vector_json(const IQVector& v);

} // namespace slopelab
