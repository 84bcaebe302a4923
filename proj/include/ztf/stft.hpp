#pragma once

#include "ztf/lattice.hpp"
#include "ztf/torus.hpp"

namespace ztf {

/// Samples of a function on Z^n x T^n: positions from mbox, frequency nodes
/// from grid, stored position-major. Carries the counting x quadrature
/// measure: sums over positions are plain, sums over nodes weigh Q^{-n}.
class PhaseSpaceField {
public:
  PhaseSpaceField(const LatticeBox& mbox, const TorusGrid& grid);

  const LatticeBox& mbox() const { return mbox_; }
  const TorusGrid& grid() const { return grid_; }
  int dim() const { return mbox_.dim(); }
  std::size_t positions() const { return mbox_.size(); }
  std::size_t nodes() const { return grid_.size(); }
  std::size_t size() const { return values_.size(); }

  cplx& at(std::size_t m, std::size_t j) { return values_[m * grid_.size() + j]; }
  const cplx& at(std::size_t m, std::size_t j) const { return values_[m * grid_.size() + j]; }
  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

private:
  LatticeBox mbox_;
  TorusGrid grid_;
  std::vector<cplx> values_;
};

/// Lag box outside which V_g f vanishes: radius N_f + N_g.
LatticeBox stft_mbox(const Signal& f, const Signal& g);

/// V_g f(m, w) = sum_k f(k) conj(g(k - m)) e^{-2 pi i w . k}, evaluated per
/// position by a tabulated transform of the windowed slice. Rejects zero or
/// dimension-mismatched windows.
PhaseSpaceField stft(const Signal& f, const Signal& g, const LatticeBox& mbox,
                     const TorusGrid& grid);
PhaseSpaceField stft(const Signal& f, const Signal& g, const TorusGrid& grid);

/// Same values through the sliding correlation e^{-2 pi i w . m}
/// (f * M_w g~)(m), g~(k) = conj(g(-k)); independent evaluation path kept for
/// cross-checks, agreement within 1e-12.
PhaseSpaceField stft_via_convolution(const Signal& f, const Signal& g,
                                     const LatticeBox& mbox, const TorusGrid& grid);

/// Synthesis sum_m Q^{-n} sum_j F(m, w_j) e^{2 pi i w_j . k} gamma(k - m),
/// restricted to out_box.
Signal stft_adjoint(const PhaseSpaceField& F, const Signal& gamma,
                    const LatticeBox& out_box);
/// Default output box: radius mbox + N_gamma (contains the full support).
Signal stft_adjoint(const PhaseSpaceField& F, const Signal& gamma);

/// <F, G> = sum_m Q^{-n} sum_j F conj(G), fixed reduction order. Fields must
/// share mbox and grid.
cplx field_inner(const PhaseSpaceField& F, const PhaseSpaceField& G);

}  // namespace ztf
