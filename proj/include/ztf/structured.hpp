#pragma once

#include "ztf/spectral.hpp"

namespace ztf {

/// Hard time cutoff: keeps samples with |k|_1 <= t, zeroes the rest. Exactly
/// idempotent and self-adjoint.
Signal time_truncate(const Signal& f, int t);

/// Band projection onto {|w|_1 <= omega} through its exact moment kernel:
/// out(k) = sum_l f(l) c(k - l) on out_box. For n >= 2 the moments come from
/// quadrature; the accumulated moment error bound is reported on request.
Signal band_project(const Signal& f, double omega, const LatticeBox& out_box,
                    double* moment_error = nullptr);

/// Side-by-side comparison, in dimension 1, of the localization model (band
/// region symbol with the normalized box window chi_{B_T}/sqrt(C)) against
/// the truncation model Q_{2T} P_Omega Q_{2T}, both as matrices on the box of
/// radius 2T. loc(k, l) factors exactly as c(k - l) * rho(k, l) with
/// rho(k, l) = C^{-1} #{|m|<=T : |k-m|<=T, |l-m|<=T}; rho is returned so the
/// factorization is checkable entrywise.
struct LpsComparison {
  int time_radius = 0;
  double omega = 0.0;
  OperatorMatrix loc;
  OperatorMatrix lps;
  Eigen::MatrixXd weight_profile;  // rho(k, l)
  double difference_operator_norm = 0.0;
};
LpsComparison lps_compare(int time_radius, double omega, const TorusGrid& grid);

/// Frequency-side kernel A(xi_i, eta_j) = int beta(w) conj(g1^(xi_i - w))
/// g2^(eta_j - w) dw on the grid nodes (g^ the lattice-to-torus transform).
struct FrequencyKernel {
  TorusGrid grid;
  Eigen::MatrixXcd values;  // rows xi, cols eta
};
FrequencyKernel paracommutator_kernel(const TorusFunction& beta, const Signal& g1,
                                      const Signal& g2, const TorusGrid& grid);

/// Double quadrature of A(xi, eta) alpha^(eta - xi) f^(xi) conj(h^(eta));
/// equals the weak form of the operator with symbol alpha x beta once the
/// grid resolves every operand (see README for the sizing rule).
cplx paracommutator_form(const FrequencyKernel& A, const Signal& alpha,
                         const Signal& f, const Signal& h);

/// p(f, h)(k) = int (M_w g1~ * f)(k) conj((M_w g2~ * h)(k)) dw by grid
/// quadrature, g~(k) = conj(g(-k)). Pairing against alpha reproduces the weak
/// form with symbol alpha x 1.
Signal paraproduct(const Signal& g1, const Signal& g2, const Signal& f,
                   const Signal& h, const TorusGrid& grid);

/// mu(xi) = int beta(w) conj(g1^(xi - w)) g2^(xi - w) dw sampled on the grid
/// (the frequency kernel's diagonal).
TorusFunction multiplier_symbol(const TorusFunction& beta, const Signal& g1,
                                const Signal& g2, const TorusGrid& grid);

/// Fourier multiplier through the grid transform pair:
/// out = (mu . f^)^{-1} on out_box. Exact once the grid resolves mu . f^
/// against the output box.
Signal multiplier_apply(const TorusFunction& mu, const Signal& f,
                        const LatticeBox& out_box);

}  // namespace ztf
