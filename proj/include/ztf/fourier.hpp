#pragma once

#include "ztf/lattice.hpp"
#include "ztf/torus.hpp"

namespace ztf {

/// F(w_j) = sum_k f(k) e^{-2 pi i k . w_j} on the grid nodes.
TorusFunction dft_lattice_to_torus(const Signal& f, const TorusGrid& grid);

/// f(k) = Q^{-n} sum_j F(w_j) e^{+2 pi i k . w_j} for k in the box. Recovers
/// exact Fourier coefficients when F is a trigonometric polynomial whose
/// frequencies are resolved by the grid (no aliasing against the box).
Signal dft_torus_to_lattice(const TorusFunction& F, const LatticeBox& box);

/// Time-frequency shift: output(k) = e^{2 pi i w . k} g(k - m) for all k.
/// Returned on the centered box just large enough to contain the translated
/// support (radius N_g + max_i |m_i|).
Signal tf_atom(const Signal& g, const LatticePoint& m, const std::vector<double>& w);

}  // namespace ztf
