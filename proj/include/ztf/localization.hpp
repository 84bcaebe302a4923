#pragma once

#include <Eigen/Core>
#include <optional>

#include "ztf/phase_space.hpp"

namespace ztf {

/// Phase-space multiplier driving a localization operator. Five shapes:
///   Grid        explicit samples on (mbox, grid)
///   Separable   alpha(m) * beta(w)
///   TimeOnly    alpha(m)           (beta identically 1)
///   FreqOnly    beta(w)            (every position, reach set by operands)
///   BandRegion  chi_{|m|_1<=T} * chi_{|w|_1<=omega}
/// Frequency factors in band form are integrated with exact moments; sampled
/// factors and the constant 1 use the grid quadrature rule. All evaluation
/// paths of an operator share the per-shape rule, so they agree to rounding.
class Symbol {
public:
  enum class Kind { kGrid, kSeparable, kTimeOnly, kFreqOnly, kBandRegion };

  static Symbol grid(PhaseSpaceField field);
  static Symbol separable(Signal alpha, TorusFunction beta);
  static Symbol time_only(Signal alpha);
  static Symbol freq_only(TorusFunction beta);
  static Symbol band_region(int dim, int time_radius, double omega);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Signal& alpha() const;
  const TorusFunction& beta() const;
  const PhaseSpaceField& field() const;
  int band_time_radius() const;
  double band_omega() const;

  /// Positions where the symbol can live; nullopt for FreqOnly (unbounded).
  std::optional<LatticeBox> position_box() const;

  /// Samples on (mbox, grid); band factors are sampled by their indicator,
  /// so this is exact only for sample-backed shapes. Cross-check helper.
  PhaseSpaceField materialize(const LatticeBox& mbox, const TorusGrid& grid) const;

  Symbol conjugate() const;

  /// sup |sigma| over its domain (max over nodes for sampled factors).
  double sup_norm() const;
  /// L^1 mass under counting x quadrature/m moments; +inf for FreqOnly.
  double l1_norm() const;
  /// True when the symbol is provably real and nonnegative by shape.
  bool is_nonnegative() const;

private:
  Symbol() = default;
  Kind kind_ = Kind::kGrid;
  int dim_ = 0;
  std::optional<PhaseSpaceField> field_;
  std::optional<Signal> alpha_;
  std::optional<TorusFunction> beta_;
  int band_time_radius_ = 0;
  double band_omega_ = 0.0;
};

/// Dense kernel block K(k, l), rows enumerated by out_box, columns by in_box.
struct OperatorMatrix {
  LatticeBox out_box{1, 0};
  LatticeBox in_box{1, 0};
  Eigen::MatrixXcd m;
};

/// Weak form sum_m int sigma(m, w) V_{g1} f(m, w) conj(V_{g2} h(m, w)) dw.
cplx loc_bilinear(const Symbol& sigma, const Signal& g1, const Signal& g2,
                  const Signal& f, const Signal& h, const TorusGrid& grid);

/// Kernel entries K(k, l) = sum_m conj(g1(l - m)) g2(k - m) W_sigma(m, k - l),
/// where W_sigma(m, r) is the w-integral of sigma(m, .) e^{2 pi i w . r}.
OperatorMatrix loc_kernel(const Symbol& sigma, const Signal& g1, const Signal& g2,
                          const LatticeBox& out_box, const LatticeBox& in_box,
                          const TorusGrid& grid);

/// Synthesis path: out(k) = sum_m int sigma(m, w) V_{g1} f(m, w)
/// e^{2 pi i w . k} g2(k - m) dw, returned on the full support box.
Signal loc_apply(const Symbol& sigma, const Signal& g1, const Signal& g2,
                 const Signal& f, const TorusGrid& grid);

/// K f with f read on the kernel's input box; result lives on the output box.
Signal apply_matrix(const OperatorMatrix& K, const Signal& f);

/// <K f, h> helper: applies the kernel and pairs against h.
cplx matrix_bilinear(const OperatorMatrix& K, const Signal& f, const Signal& h);

}  // namespace ztf
