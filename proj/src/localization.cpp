#include "ztf/localization.hpp"

#include <algorithm>
#include <cmath>

#include "ztf/reduce.hpp"

namespace ztf {

namespace {

double dot(const LatticePoint& k, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * w[i];
  return s;
}

bool real_nonneg(const std::vector<cplx>& v) {
  for (const cplx& z : v)
    if (z.imag() != 0.0 || z.real() < 0.0) return false;
  return true;
}

double max_abs(const std::vector<cplx>& v) {
  double best = 0.0;
  for (const cplx& z : v) best = std::max(best, std::abs(z));
  return best;
}

}  // namespace

Symbol Symbol::grid(PhaseSpaceField field) {
  Symbol s;
  s.kind_ = Kind::kGrid;
  s.dim_ = field.dim();
  s.field_ = std::move(field);
  return s;
}

Symbol Symbol::separable(Signal alpha, TorusFunction beta) {
  if (alpha.dim() != beta.dim())
    throw DimensionMismatch("symbol: alpha/beta dimension mismatch");
  Symbol s;
  s.kind_ = Kind::kSeparable;
  s.dim_ = alpha.dim();
  s.alpha_ = std::move(alpha);
  s.beta_ = std::move(beta);
  return s;
}

Symbol Symbol::time_only(Signal alpha) {
  Symbol s;
  s.kind_ = Kind::kTimeOnly;
  s.dim_ = alpha.dim();
  s.alpha_ = std::move(alpha);
  return s;
}

Symbol Symbol::freq_only(TorusFunction beta) {
  Symbol s;
  s.kind_ = Kind::kFreqOnly;
  s.dim_ = beta.dim();
  s.beta_ = std::move(beta);
  return s;
}

Symbol Symbol::band_region(int dim, int time_radius, double omega) {
  if (time_radius < 0) throw InvalidArgument("symbol: band region needs T >= 0");
  TorusFunction indicator = TorusFunction::band_indicator(dim, omega);
  Symbol s;
  s.kind_ = Kind::kBandRegion;
  s.dim_ = dim;
  s.band_time_radius_ = time_radius;
  s.band_omega_ = omega;
  s.beta_ = std::move(indicator);
  return s;
}

const Signal& Symbol::alpha() const {
  if (!alpha_) throw InvalidArgument("symbol: no position factor");
  return *alpha_;
}

const TorusFunction& Symbol::beta() const {
  if (!beta_) throw InvalidArgument("symbol: no frequency factor");
  return *beta_;
}

const PhaseSpaceField& Symbol::field() const {
  if (!field_) throw InvalidArgument("symbol: not in grid form");
  return *field_;
}

int Symbol::band_time_radius() const {
  if (kind_ != Kind::kBandRegion) throw InvalidArgument("symbol: not a band region");
  return band_time_radius_;
}

double Symbol::band_omega() const {
  if (kind_ != Kind::kBandRegion) throw InvalidArgument("symbol: not a band region");
  return band_omega_;
}

std::optional<LatticeBox> Symbol::position_box() const {
  switch (kind_) {
    case Kind::kGrid: return field_->mbox();
    case Kind::kSeparable:
    case Kind::kTimeOnly: return alpha_->box();
    case Kind::kFreqOnly: return std::nullopt;
    case Kind::kBandRegion: return LatticeBox(dim_, band_time_radius_);
  }
  return std::nullopt;
}

PhaseSpaceField Symbol::materialize(const LatticeBox& mbox, const TorusGrid& grid) const {
  if (mbox.dim() != dim_ || grid.dim() != dim_)
    throw DimensionMismatch("symbol: materialize dimension mismatch");
  PhaseSpaceField out(mbox, grid);
  switch (kind_) {
    case Kind::kGrid: {
      if (!(grid == field_->grid()))
        throw DimensionMismatch("symbol: grid form cannot be resampled across grids");
      for (std::size_t mi = 0; mi < mbox.size(); ++mi) {
        const std::ptrdiff_t src = field_->mbox().index(mbox.point(mi));
        if (src < 0) continue;
        for (std::size_t j = 0; j < grid.size(); ++j)
          out.at(mi, j) = field_->at(static_cast<std::size_t>(src), j);
      }
      break;
    }
    case Kind::kSeparable: {
      const std::vector<cplx> b = beta_->sample(grid);
      for (std::size_t mi = 0; mi < mbox.size(); ++mi) {
        const cplx a = alpha_->at(mbox.point(mi));
        if (a == cplx{}) continue;
        for (std::size_t j = 0; j < grid.size(); ++j) out.at(mi, j) = a * b[j];
      }
      break;
    }
    case Kind::kTimeOnly: {
      for (std::size_t mi = 0; mi < mbox.size(); ++mi) {
        const cplx a = alpha_->at(mbox.point(mi));
        for (std::size_t j = 0; j < grid.size(); ++j) out.at(mi, j) = a;
      }
      break;
    }
    case Kind::kFreqOnly: {
      const std::vector<cplx> b = beta_->sample(grid);
      for (std::size_t mi = 0; mi < mbox.size(); ++mi)
        for (std::size_t j = 0; j < grid.size(); ++j) out.at(mi, j) = b[j];
      break;
    }
    case Kind::kBandRegion: {
      const std::vector<cplx> b = beta_->sample(grid);
      for (std::size_t mi = 0; mi < mbox.size(); ++mi) {
        if (ztf::l1_norm(mbox.point(mi)) > band_time_radius_) continue;
        for (std::size_t j = 0; j < grid.size(); ++j) out.at(mi, j) = b[j];
      }
      break;
    }
  }
  return out;
}

Symbol Symbol::conjugate() const {
  Symbol s = *this;
  if (s.field_)
    for (cplx& v : s.field_->values()) v = std::conj(v);
  if (s.alpha_)
    for (cplx& v : s.alpha_->values()) v = std::conj(v);
  if (s.beta_) s.beta_ = s.beta_->conjugate();
  return s;
}

double Symbol::sup_norm() const {
  switch (kind_) {
    case Kind::kGrid: return max_abs(field_->values());
    case Kind::kSeparable: {
      const double b = beta_->is_band() ? 1.0 : max_abs(beta_->values());
      return max_abs(alpha_->values()) * b;
    }
    case Kind::kTimeOnly: return max_abs(alpha_->values());
    case Kind::kFreqOnly: return beta_->is_band() ? 1.0 : max_abs(beta_->values());
    case Kind::kBandRegion: return 1.0;
  }
  return 0.0;
}

double Symbol::l1_norm() const {
  switch (kind_) {
    case Kind::kGrid: {
      const PhaseSpaceField& F = *field_;
      const double sum = pairwise_sum<double>(
          F.size(), [&](std::size_t i) { return std::abs(F.values()[i]); });
      return F.grid().weight() * sum;
    }
    case Kind::kSeparable: {
      double b;
      if (beta_->is_band()) {
        b = band_moment(LatticePoint(static_cast<std::size_t>(dim_), 0), beta_->omega());
      } else {
        const std::vector<cplx>& v = beta_->values();
        b = beta_->grid().weight() *
            pairwise_sum<double>(v.size(), [&](std::size_t i) { return std::abs(v[i]); });
      }
      return alpha_->norm(1.0) * b;
    }
    case Kind::kTimeOnly: return alpha_->norm(1.0);
    case Kind::kFreqOnly: return std::numeric_limits<double>::infinity();
    case Kind::kBandRegion: {
      const double vol =
          band_moment(LatticePoint(static_cast<std::size_t>(dim_), 0), band_omega_);
      return static_cast<double>(l1_ball_card(dim_, band_time_radius_)) * vol;
    }
  }
  return 0.0;
}

bool Symbol::is_nonnegative() const {
  switch (kind_) {
    case Kind::kGrid: return real_nonneg(field_->values());
    case Kind::kSeparable:
      return real_nonneg(alpha_->values()) &&
             (beta_->is_band() || real_nonneg(beta_->values()));
    case Kind::kTimeOnly: return real_nonneg(alpha_->values());
    case Kind::kFreqOnly: return beta_->is_band() || real_nonneg(beta_->values());
    case Kind::kBandRegion: return true;
  }
  return false;
}

namespace {

// Frequency-side weights W(m, r) = integral of sigma(m, .) e^{2 pi i w . r}.
// Sampled factors and the constant 1 use the grid quadrature rule; band
// factors use exact moments. Every evaluation path shares this table, which
// is what makes the paths agree to rounding.
struct FreqWeights {
  // One of: per-position rows (grid symbols), a single row (separable /
  // freq-only / band), scaled by the position factor at use sites.
  LatticeBox rbox{1, 0};          // difference box the table covers
  std::vector<cplx> shared;       // B(r), empty for grid symbols
  std::vector<cplx> per_position; // Wg(m, r), position-major, grid symbols
  std::size_t positions = 0;

  cplx row(std::size_t mi, std::size_t ri) const {
    return per_position.empty() ? shared[ri] : per_position[mi * rbox.size() + ri];
  }
};

std::vector<cplx> quadrature_moments(const std::vector<cplx>& samples,
                                     const TorusGrid& grid, const LatticeBox& rbox) {
  std::vector<cplx> out(rbox.size());
  parallel_for(rbox.size(), [&](std::size_t ri) {
    const LatticePoint r = rbox.point(ri);
    const cplx sum = pairwise_sum<cplx>(grid.size(), [&](std::size_t j) {
      return samples[j] * std::polar(1.0, kTwoPi * dot(r, grid.node(j)));
    });
    out[ri] = grid.weight() * sum;
  });
  return out;
}

std::vector<cplx> exact_band_moments(double omega, const LatticeBox& rbox) {
  std::vector<cplx> out(rbox.size());
  for (std::size_t ri = 0; ri < rbox.size(); ++ri) {
    // Canonicalize to absolute components: the moment is even per axis, and
    // canonical evaluation keeps symmetric entries bit-identical.
    LatticePoint r = rbox.point(ri);
    for (int& v : r) v = std::abs(v);
    out[ri] = band_moment(r, omega);
  }
  return out;
}

std::vector<cplx> unit_moments(const TorusGrid& grid, const LatticeBox& rbox) {
  // Quadrature of the constant 1: picks out differences divisible by Q.
  std::vector<cplx> out(rbox.size());
  for (std::size_t ri = 0; ri < rbox.size(); ++ri) {
    const LatticePoint r = rbox.point(ri);
    bool hit = true;
    for (int v : r)
      if (v % grid.resolution() != 0) { hit = false; break; }
    out[ri] = hit ? 1.0 : 0.0;
  }
  return out;
}

FreqWeights make_freq_weights(const Symbol& sigma, const TorusGrid& grid,
                              const LatticeBox& rbox) {
  FreqWeights w;
  w.rbox = rbox;
  switch (sigma.kind()) {
    case Symbol::Kind::kGrid: {
      const PhaseSpaceField& F = sigma.field();
      if (!(grid == F.grid()))
        throw DimensionMismatch("localization: grid symbol must share the operation grid");
      w.positions = F.positions();
      w.per_position.resize(F.positions() * rbox.size());
      parallel_for(F.positions(), [&](std::size_t mi) {
        std::vector<cplx> row(F.nodes());
        for (std::size_t j = 0; j < F.nodes(); ++j) row[j] = F.at(mi, j);
        const std::vector<cplx> mom = quadrature_moments(row, grid, rbox);
        std::copy(mom.begin(), mom.end(), w.per_position.begin() + mi * rbox.size());
      });
      break;
    }
    case Symbol::Kind::kSeparable:
    case Symbol::Kind::kFreqOnly: {
      const TorusFunction& beta = sigma.beta();
      if (beta.is_band()) {
        w.shared = exact_band_moments(beta.omega(), rbox);
      } else {
        if (!(grid == beta.grid()))
          throw DimensionMismatch("localization: sampled factor must share the operation grid");
        w.shared = quadrature_moments(beta.values(), grid, rbox);
      }
      break;
    }
    case Symbol::Kind::kTimeOnly:
      w.shared = unit_moments(grid, rbox);
      break;
    case Symbol::Kind::kBandRegion:
      w.shared = exact_band_moments(sigma.band_omega(), rbox);
      break;
  }
  return w;
}

// Position weight: multiplies the frequency table row. Grid symbols fold the
// position dependence into the table itself.
cplx position_weight(const Symbol& sigma, const LatticePoint& m) {
  switch (sigma.kind()) {
    case Symbol::Kind::kGrid: return 1.0;
    case Symbol::Kind::kSeparable:
    case Symbol::Kind::kTimeOnly: return sigma.alpha().at(m);
    case Symbol::Kind::kFreqOnly: return 1.0;
    case Symbol::Kind::kBandRegion:
      return l1_norm(m) <= sigma.band_time_radius() ? 1.0 : 0.0;
  }
  return 0.0;
}

LatticeBox bilinear_position_box(const Symbol& sigma, const Signal& f, const Signal& g1,
                                 const Signal& h, const Signal& g2) {
  if (auto box = sigma.position_box()) return *box;
  // Freq-only reach: both transforms must be nonzero for a position to count.
  const int r = std::min(f.box().radius() + g1.box().radius(),
                         h.box().radius() + g2.box().radius());
  return LatticeBox(sigma.dim(), r);
}

void check_loc_operands(const Symbol& sigma, const Signal& g1, const Signal& g2,
                        const TorusGrid& grid) {
  if (sigma.dim() != g1.dim() || sigma.dim() != g2.dim() || sigma.dim() != grid.dim())
    throw DimensionMismatch("localization: dimension mismatch");
  if (g1.is_zero() || g2.is_zero())
    throw InvalidArgument("localization: windows must be nonzero");
  // sample-backed factors are tied to the grid they were sampled on
  if (sigma.kind() == Symbol::Kind::kGrid && !(sigma.field().grid() == grid))
    throw DimensionMismatch("localization: symbol sampled on a different grid");
  if ((sigma.kind() == Symbol::Kind::kSeparable || sigma.kind() == Symbol::Kind::kFreqOnly) &&
      !sigma.beta().is_band() && !(sigma.beta().grid() == grid))
    throw DimensionMismatch("localization: symbol sampled on a different grid");
}

}  // namespace

cplx loc_bilinear(const Symbol& sigma, const Signal& g1, const Signal& g2,
                  const Signal& f, const Signal& h, const TorusGrid& grid) {
  check_loc_operands(sigma, g1, g2, grid);
  if (f.dim() != sigma.dim() || h.dim() != sigma.dim())
    throw DimensionMismatch("localization: dimension mismatch");

  const bool band_freq = (sigma.kind() == Symbol::Kind::kBandRegion) ||
                         ((sigma.kind() == Symbol::Kind::kSeparable ||
                           sigma.kind() == Symbol::Kind::kFreqOnly) &&
                          sigma.beta().is_band());
  const LatticeBox mbox = bilinear_position_box(sigma, f, g1, h, g2);

  if (!band_freq) {
    const PhaseSpaceField V1 = stft(f, g1, mbox, grid);
    const PhaseSpaceField V2 = stft(h, g2, mbox, grid);
    const std::size_t nodes = grid.size();
    const bool is_grid = sigma.kind() == Symbol::Kind::kGrid;
    std::vector<cplx> beta_samples;
    if (sigma.kind() == Symbol::Kind::kSeparable || sigma.kind() == Symbol::Kind::kFreqOnly)
      beta_samples = sigma.beta().sample(grid);
    const cplx sum = pairwise_sum<cplx>(V1.size(), [&](std::size_t t) {
      const std::size_t mi = t / nodes;
      const std::size_t j = t % nodes;
      cplx coeff;
      if (is_grid) {
        coeff = sigma.field().at(mi, j);
      } else {
        coeff = position_weight(sigma, mbox.point(mi));
        if (!beta_samples.empty()) coeff *= beta_samples[j];
      }
      if (coeff == cplx{}) return cplx{};
      return coeff * V1.at(mi, j) * std::conj(V2.at(mi, j));
    });
    return grid.weight() * sum;
  }

  // Band frequency factor: integrate the product transform exactly with
  // moments c(v - u) instead of grid quadrature.
  const LatticeBox rbox(sigma.dim(), f.box().radius() + h.box().radius());
  const FreqWeights weights = make_freq_weights(sigma, grid, rbox);
  return pairwise_sum<cplx>(mbox.size(), [&](std::size_t mi) {
    const LatticePoint m = mbox.point(mi);
    const cplx mw = position_weight(sigma, m);
    if (mw == cplx{}) return cplx{};
    const cplx pair_sum = pairwise_sum<cplx>(f.size() * h.size(), [&](std::size_t t) {
      const std::size_t ui = t / h.size();
      const std::size_t vi = t % h.size();
      const cplx fv = f[ui];
      const cplx hv = h[vi];
      if (fv == cplx{} || hv == cplx{}) return cplx{};
      const LatticePoint u = f.box().point(ui);
      const LatticePoint v = h.box().point(vi);
      LatticePoint lag1(u.size()), r(u.size());
      for (std::size_t a = 0; a < u.size(); ++a) {
        lag1[a] = u[a] - m[a];
        r[a] = v[a] - u[a];
      }
      const cplx w1 = g1.at(lag1);
      if (w1 == cplx{}) return cplx{};
      for (std::size_t a = 0; a < u.size(); ++a) lag1[a] = v[a] - m[a];
      const cplx w2 = g2.at(lag1);
      if (w2 == cplx{}) return cplx{};
      const std::ptrdiff_t ri = rbox.index(r);
      return fv * std::conj(w1) * std::conj(hv) * w2 *
             weights.row(0, static_cast<std::size_t>(ri));
    });
    return mw * pair_sum;
  });
}

OperatorMatrix loc_kernel(const Symbol& sigma, const Signal& g1, const Signal& g2,
                          const LatticeBox& out_box, const LatticeBox& in_box,
                          const TorusGrid& grid) {
  check_loc_operands(sigma, g1, g2, grid);
  if (out_box.dim() != sigma.dim() || in_box.dim() != sigma.dim())
    throw DimensionMismatch("localization: dimension mismatch");

  const LatticeBox rbox(sigma.dim(), out_box.radius() + in_box.radius());
  const FreqWeights weights = make_freq_weights(sigma, grid, rbox);

  LatticeBox m_range = sigma.position_box().value_or(
      LatticeBox(sigma.dim(), std::min(in_box.radius() + g1.box().radius(),
                                       out_box.radius() + g2.box().radius())));
  const bool is_grid = sigma.kind() == Symbol::Kind::kGrid;

  OperatorMatrix K{out_box, in_box,
                   Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out_box.size()),
                                          static_cast<Eigen::Index>(in_box.size()))};
  parallel_for(out_box.size(), [&](std::size_t ki) {
    const LatticePoint k = out_box.point(ki);
    LatticePoint lag(k.size()), r(k.size());
    for (std::size_t li = 0; li < in_box.size(); ++li) {
      const LatticePoint l = in_box.point(li);
      for (std::size_t a = 0; a < k.size(); ++a) r[a] = k[a] - l[a];
      const std::size_t ri = static_cast<std::size_t>(rbox.index(r));
      const cplx entry = pairwise_sum<cplx>(m_range.size(), [&](std::size_t mi) {
        const LatticePoint m = m_range.point(mi);
        for (std::size_t a = 0; a < k.size(); ++a) lag[a] = l[a] - m[a];
        const cplx w1 = g1.at(lag);
        if (w1 == cplx{}) return cplx{};
        for (std::size_t a = 0; a < k.size(); ++a) lag[a] = k[a] - m[a];
        const cplx w2 = g2.at(lag);
        if (w2 == cplx{}) return cplx{};
        const cplx wr = weights.row(is_grid ? mi : 0, ri);
        if (wr == cplx{}) return cplx{};
        const cplx mw = is_grid ? cplx{1.0} : position_weight(sigma, m);
        return mw * std::conj(w1) * w2 * wr;
      });
      K.m(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(li)) = entry;
    }
  });
  return K;
}

Signal loc_apply(const Symbol& sigma, const Signal& g1, const Signal& g2,
                 const Signal& f, const TorusGrid& grid) {
  check_loc_operands(sigma, g1, g2, grid);
  if (f.dim() != sigma.dim()) throw DimensionMismatch("localization: dimension mismatch");

  const LatticeBox mbox = sigma.position_box().value_or(
      LatticeBox(sigma.dim(), f.box().radius() + g1.box().radius()));
  const LatticeBox out_box(sigma.dim(), mbox.radius() + g2.box().radius());

  const bool band_freq = (sigma.kind() == Symbol::Kind::kBandRegion) ||
                         ((sigma.kind() == Symbol::Kind::kSeparable ||
                           sigma.kind() == Symbol::Kind::kFreqOnly) &&
                          sigma.beta().is_band());

  Signal out(out_box);
  if (!band_freq) {
    const PhaseSpaceField V1 = stft(f, g1, mbox, grid);
    const bool is_grid = sigma.kind() == Symbol::Kind::kGrid;
    std::vector<cplx> beta_samples;
    if (sigma.kind() == Symbol::Kind::kSeparable || sigma.kind() == Symbol::Kind::kFreqOnly)
      beta_samples = sigma.beta().sample(grid);
    parallel_for(out_box.size(), [&](std::size_t ki) {
      const LatticePoint k = out_box.point(ki);
      LatticePoint lag(k.size());
      out[ki] = pairwise_sum<cplx>(mbox.size(), [&](std::size_t mi) {
        const LatticePoint m = mbox.point(mi);
        for (std::size_t a = 0; a < k.size(); ++a) lag[a] = k[a] - m[a];
        const cplx w2 = g2.at(lag);
        if (w2 == cplx{}) return cplx{};
        const cplx mw = is_grid ? cplx{1.0} : position_weight(sigma, m);
        if (mw == cplx{}) return cplx{};
        const cplx synth = pairwise_sum<cplx>(grid.size(), [&](std::size_t j) {
          cplx coeff = is_grid ? sigma.field().at(mi, j) : cplx{1.0};
          if (!beta_samples.empty()) coeff *= beta_samples[j];
          if (coeff == cplx{}) return cplx{};
          return coeff * V1.at(mi, j) * std::polar(1.0, kTwoPi * dot(k, grid.node(j)));
        });
        return mw * w2 * grid.weight() * synth;
      });
    });
    return out;
  }

  const LatticeBox rbox(sigma.dim(), out_box.radius() + f.box().radius());
  const FreqWeights weights = make_freq_weights(sigma, grid, rbox);
  parallel_for(out_box.size(), [&](std::size_t ki) {
    const LatticePoint k = out_box.point(ki);
    LatticePoint lag(k.size()), r(k.size());
    out[ki] = pairwise_sum<cplx>(mbox.size(), [&](std::size_t mi) {
      const LatticePoint m = mbox.point(mi);
      const cplx mw = position_weight(sigma, m);
      if (mw == cplx{}) return cplx{};
      for (std::size_t a = 0; a < k.size(); ++a) lag[a] = k[a] - m[a];
      const cplx w2 = g2.at(lag);
      if (w2 == cplx{}) return cplx{};
      const cplx inner_sum = pairwise_sum<cplx>(f.size(), [&](std::size_t ui) {
        const cplx fv = f[ui];
        if (fv == cplx{}) return cplx{};
        const LatticePoint u = f.box().point(ui);
        LatticePoint lag1(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
          lag1[a] = u[a] - m[a];
          r[a] = k[a] - u[a];
        }
        const cplx w1 = g1.at(lag1);
        if (w1 == cplx{}) return cplx{};
        const std::ptrdiff_t ri = rbox.index(r);
        return fv * std::conj(w1) * weights.row(0, static_cast<std::size_t>(ri));
      });
      return mw * w2 * inner_sum;
    });
  });
  return out;
}

Signal apply_matrix(const OperatorMatrix& K, const Signal& f) {
  if (K.in_box.dim() != f.dim()) throw DimensionMismatch("apply: dimension mismatch");
  Signal out(K.out_box);
  for (std::size_t ki = 0; ki < K.out_box.size(); ++ki) {
    out[ki] = pairwise_sum<cplx>(K.in_box.size(), [&](std::size_t li) {
      const cplx fv = f.at(K.in_box.point(li));
      if (fv == cplx{}) return cplx{};
      return K.m(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(li)) * fv;
    });
  }
  return out;
}

cplx matrix_bilinear(const OperatorMatrix& K, const Signal& f, const Signal& h) {
  const Signal Kf = apply_matrix(K, f);
  return inner(Kf, h);
}

}  // namespace ztf
