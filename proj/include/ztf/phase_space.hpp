#pragma once

#include <optional>

#include "ztf/stft.hpp"

namespace ztf {

struct NormReport {
  double p;        // infinity() encodes the sup norm
  double value;
  bool exact;      // quadrature exact vs approximate
  std::optional<double> refinement_delta;  // |value_Q - value_2Q|, only when approximate
};

/// L^p norm of a field under the counting x quadrature measure; p = inf is
/// the max over stored nodes. This is the exact norm of the sampled data, so
/// the report always carries exact = true; bandlimit bookkeeping for
/// continuum-meaning operands lives in modulation_norm_lattice.
NormReport lp_norm_field(const PhaseSpaceField& F, double p);

/// Plain (untwisted) convolution on Z^n x T^n realized on matching grids:
/// (F * G)(m, w_j) = sum_l Q^{-n} sum_i F(l, w_i) G(m - l, w_{j-i}).
/// Output positions live on the Minkowski sum box (radius sum).
PhaseSpaceField ps_convolve(const PhaseSpaceField& F, const PhaseSpaceField& G);

/// Translate by (l, node x): values F(m - l, w_{j-x}) on the box grown to
/// radius R + |l|_inf, so translation and convolution can be compared on
/// identical boxes.
PhaseSpaceField ps_translate(const PhaseSpaceField& F, const LatticePoint& l,
                             std::size_t x_node);

/// Modulation-type norm of a lattice signal: the field L^p norm of V_g f on
/// the full lag box. Exact for even integer p when Q >= p N_f + 1 (the
/// integrand |V|^p is then a resolved trigonometric polynomial); otherwise
/// flagged approximate with the Q -> 2Q refinement delta recorded.
NormReport modulation_norm_lattice(const Signal& f, const Signal& g, double p);
NormReport modulation_norm_lattice(const Signal& f, const Signal& g, double p,
                                   const TorusGrid& grid);

/// Modulation-type norm of a field, realized as the finite STFT on the
/// compact group H = Z_M^n x Z_Q^n (M = position-box side, positions wrap).
/// Measures: weight Q^{-n} per group element, M^{-n} per character; then
/// p = 2 with a unit-norm window reproduces lp_norm_field(F, 2). Exact as a
/// finite-group quantity; documented surrogate for the continuum object.
NormReport modulation_norm_field(const PhaseSpaceField& F, const PhaseSpaceField& G,
                                 double p);

}  // namespace ztf
