#pragma once

#include <string>
#include <vector>

#include "ztf/localization.hpp"

namespace ztf {

/// Singular values in nonincreasing order.
struct SingularSpectrum {
  std::vector<double> values;
};

SingularSpectrum singular_values(const Eigen::MatrixXcd& K);
SingularSpectrum singular_values(const OperatorMatrix& K);

/// Schatten p-norm (sum_i s_i^p)^{1/p}; p = inf gives the largest singular
/// value. Rejects p < 1.
double schatten_norm(const SingularSpectrum& s, double p);

/// Diagonal sum; defined for square kernels only.
cplx trace(const OperatorMatrix& K);

/// Operator diagonal against the atom family:
/// out(m, w) = <K (M_w T_m g), M_w T_m g> with K the kernel of the operator
/// driven by sigma with window g on both sides, built on a box covering every
/// atom's support.
PhaseSpaceField berezin_symbol(const Symbol& sigma, const Signal& g,
                               const LatticeBox& mbox, const TorusGrid& grid);

struct BoundCheck {
  std::string name;
  bool skipped = false;    // hypotheses not met for this operator
  bool monitored = false;  // reported, never load-bearing
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 1.0;      // checked as lhs <= slack * rhs (+ rounding guard)
  std::string note;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
};

/// Norm inequalities for the operator driven by (sigma, g1, g2):
///   opnorm_le_sup_l1        s_max <= sup|sigma| ||g1|| ||g2||      asserted
///   trace_s1_le_l1          S_1 <= ||sigma||_{L1} ||g||^2          asserted for
///                           nonnegative sigma with equal windows
///   berezin_l1_le_s1        ||sigma~||_{L1} <= ||g||^2 S_1         asserted for
///                           equal windows
/// plus modulation-norm surrogate variants, monitored with slack 2.
BoundReport bounds_report(const Symbol& sigma, const Signal& g1, const Signal& g2,
                          const TorusGrid& grid);

}  // namespace ztf
