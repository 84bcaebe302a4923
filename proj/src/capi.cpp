#include "ztf.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ztf/reduce.hpp"
#include "ztf/serialize.hpp"
#include "ztf/verify.hpp"

struct ztf_signal {
  ztf::Signal v;
};
struct ztf_torus_function {
  ztf::TorusFunction v;
};
struct ztf_symbol {
  ztf::Symbol v;
};
struct ztf_field {
  ztf::PhaseSpaceField v;
};
struct ztf_matrix {
  ztf::OperatorMatrix v;
};

namespace {

thread_local std::string g_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
ztf_status wrap(Fn&& fn) {
  try {
    fn();
    return ZTF_OK;
  } catch (const ztf::DimensionMismatch& e) {
    g_error = e.what();
    return ZTF_ERROR_DIMENSION_MISMATCH;
  } catch (const ztf::ParseError& e) {
    g_error = e.what();
    return ZTF_ERROR_PARSE;
  } catch (const ztf::InvalidArgument& e) {
    g_error = e.what();
    return ZTF_ERROR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return ZTF_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_error = e.what();
    return ZTF_ERROR_INTERNAL;
  }
}

ztf_status null_argument() {
  g_error = "null argument";
  return ZTF_ERROR_INVALID_ARGUMENT;
}

ztf::TorusGrid resolve_symbol_grid(const ztf::Symbol& s, int fallback_radius,
                                   int resolution) {
  using Kind = ztf::Symbol::Kind;
  if (resolution > 0) return ztf::TorusGrid(s.dim(), resolution);
  if (s.kind() == Kind::kGrid) return s.field().grid();
  if ((s.kind() == Kind::kSeparable || s.kind() == Kind::kFreqOnly) &&
      !s.beta().is_band())
    return s.beta().grid();
  return ztf::TorusGrid(s.dim(), ztf::default_resolution(fallback_radius));
}

ztf::TorusGrid resolve_factor_grid(const ztf::TorusFunction& beta, int fallback_radius,
                                   int resolution) {
  if (resolution > 0) return ztf::TorusGrid(beta.dim(), resolution);
  if (!beta.is_band()) return beta.grid();
  return ztf::TorusGrid(beta.dim(), ztf::default_resolution(fallback_radius));
}

}  // namespace

extern "C" {

const char* ztf_version(void) { return "0.1.0"; }

const char* ztf_last_error(void) { return g_error.c_str(); }

void ztf_set_threads(int workers) { ztf::set_worker_count(workers); }

void ztf_string_free(char* s) { std::free(s); }
void ztf_signal_free(ztf_signal* f) { delete f; }
void ztf_torus_function_free(ztf_torus_function* f) { delete f; }
void ztf_symbol_free(ztf_symbol* s) { delete s; }
void ztf_field_free(ztf_field* f) { delete f; }
void ztf_matrix_free(ztf_matrix* m) { delete m; }

ztf_status ztf_signal_parse(const char* json, ztf_signal** out) {
  if (json == nullptr || out == nullptr) return null_argument();
  return wrap([&] { *out = new ztf_signal{ztf::parse_signal_json(json)}; });
}

ztf_status ztf_signal_format(const ztf_signal* f, char** json_out) {
  if (f == nullptr || json_out == nullptr) return null_argument();
  return wrap([&] { *json_out = copy_string(ztf::signal_to_json(f->v)); });
}

ztf_status ztf_torus_function_parse(const char* json, ztf_torus_function** out) {
  if (json == nullptr || out == nullptr) return null_argument();
  return wrap([&] { *out = new ztf_torus_function{ztf::parse_torus_function_json(json)}; });
}

ztf_status ztf_torus_function_format(const ztf_torus_function* f, char** json_out) {
  if (f == nullptr || json_out == nullptr) return null_argument();
  return wrap([&] { *json_out = copy_string(ztf::torus_function_to_json(f->v)); });
}

ztf_status ztf_symbol_parse(const char* json, ztf_symbol** out) {
  if (json == nullptr || out == nullptr) return null_argument();
  return wrap([&] { *out = new ztf_symbol{ztf::parse_symbol_json(json)}; });
}

int ztf_signal_dim(const ztf_signal* f) { return f ? f->v.dim() : -1; }
int ztf_signal_radius(const ztf_signal* f) { return f ? f->v.box().radius() : -1; }
int ztf_torus_function_dim(const ztf_torus_function* f) { return f ? f->v.dim() : -1; }
int ztf_torus_function_resolution(const ztf_torus_function* f) {
  if (f == nullptr) return -1;
  return f->v.is_band() ? 0 : f->v.grid().resolution();
}
int ztf_symbol_dim(const ztf_symbol* s) { return s ? s->v.dim() : -1; }
int ztf_symbol_position_radius(const ztf_symbol* s) {
  if (s == nullptr) return -1;
  const auto box = s->v.position_box();
  return box ? box->radius() : -1;
}

ztf_status ztf_stft(const ztf_signal* f, const ztf_signal* g, int m_radius,
                    int resolution, ztf_field** out) {
  if (f == nullptr || g == nullptr || out == nullptr) return null_argument();
  return wrap([&] {
    const int lag = f->v.box().radius() + g->v.box().radius();
    const ztf::TorusGrid grid(
        f->v.dim(), resolution > 0 ? resolution : ztf::default_resolution(lag));
    const ztf::LatticeBox mbox(f->v.dim(), m_radius >= 0 ? m_radius : lag);
    *out = new ztf_field{ztf::stft(f->v, g->v, mbox, grid)};
  });
}

ztf_status ztf_field_format_json(const ztf_field* F, char** json_out) {
  if (F == nullptr || json_out == nullptr) return null_argument();
  return wrap([&] { *json_out = copy_string(ztf::field_to_json(F->v)); });
}

ztf_status ztf_field_format_csv(const ztf_field* F, int magnitude_only, char** csv_out) {
  if (F == nullptr || csv_out == nullptr) return null_argument();
  return wrap([&] {
    *csv_out = copy_string(magnitude_only ? ztf::field_magnitude_csv(F->v)
                                          : ztf::field_to_csv(F->v));
  });
}

ztf_status ztf_loc_apply(const ztf_symbol* sigma, const ztf_signal* g1,
                         const ztf_signal* g2, const ztf_signal* f, int resolution,
                         ztf_signal** out) {
  if (sigma == nullptr || g1 == nullptr || g2 == nullptr || f == nullptr ||
      out == nullptr)
    return null_argument();
  return wrap([&] {
    const ztf::TorusGrid grid = resolve_symbol_grid(
        sigma->v, f->v.box().radius() + g1->v.box().radius(), resolution);
    *out = new ztf_signal{ztf::loc_apply(sigma->v, g1->v, g2->v, f->v, grid)};
  });
}

ztf_status ztf_loc_kernel(const ztf_symbol* sigma, const ztf_signal* g1,
                          const ztf_signal* g2, int out_radius, int in_radius,
                          int resolution, ztf_matrix** out) {
  if (sigma == nullptr || g1 == nullptr || g2 == nullptr || out == nullptr)
    return null_argument();
  return wrap([&] {
    const auto pbox = sigma->v.position_box();
    if ((out_radius < 0 || in_radius < 0) && !pbox)
      throw ztf::InvalidArgument(
          "kernel: explicit radii required for a frequency-only symbol");
    const int orad = out_radius >= 0 ? out_radius : pbox->radius() + g2->v.box().radius();
    const int irad = in_radius >= 0 ? in_radius : pbox->radius() + g1->v.box().radius();
    const ztf::TorusGrid grid = resolve_symbol_grid(sigma->v, orad + irad, resolution);
    *out = new ztf_matrix{ztf::loc_kernel(sigma->v, g1->v, g2->v,
                                          ztf::LatticeBox(sigma->v.dim(), orad),
                                          ztf::LatticeBox(sigma->v.dim(), irad), grid)};
  });
}

ztf_status ztf_loc_bilinear(const ztf_symbol* sigma, const ztf_signal* g1,
                            const ztf_signal* g2, const ztf_signal* f,
                            const ztf_signal* h, int resolution, char** json_out) {
  if (sigma == nullptr || g1 == nullptr || g2 == nullptr || f == nullptr ||
      h == nullptr || json_out == nullptr)
    return null_argument();
  return wrap([&] {
    const int lag = std::max(f->v.box().radius() + g1->v.box().radius(),
                             h->v.box().radius() + g2->v.box().radius());
    const ztf::TorusGrid grid = resolve_symbol_grid(sigma->v, lag, resolution);
    const ztf::cplx value = ztf::loc_bilinear(sigma->v, g1->v, g2->v, f->v, h->v, grid);
    *json_out = copy_string("{\"value\":" + ztf::complex_to_json(value) + "}");
  });
}

ztf_status ztf_matrix_format_json(const ztf_matrix* m, char** json_out) {
  if (m == nullptr || json_out == nullptr) return null_argument();
  return wrap([&] { *json_out = copy_string(ztf::matrix_to_json(m->v)); });
}

ztf_status ztf_matrix_format_csv(const ztf_matrix* m, char** csv_out) {
  if (m == nullptr || csv_out == nullptr) return null_argument();
  return wrap([&] { *csv_out = copy_string(ztf::matrix_to_csv(m->v)); });
}

ztf_status ztf_matrix_svd_json(const ztf_matrix* m, char** json_out) {
  if (m == nullptr || json_out == nullptr) return null_argument();
  return wrap([&] {
    *json_out = copy_string(ztf::spectrum_to_json(ztf::singular_values(m->v), m->v));
  });
}

ztf_status ztf_bounds_report(const ztf_symbol* sigma, const ztf_signal* g1,
                             const ztf_signal* g2, int resolution, char** json_out) {
  if (sigma == nullptr || g1 == nullptr || g2 == nullptr || json_out == nullptr)
    return null_argument();
  return wrap([&] {
    const int fallback = sigma->v.position_box()
                             ? sigma->v.position_box()->radius() +
                                   std::max(g1->v.box().radius(), g2->v.box().radius())
                             : g1->v.box().radius() + g2->v.box().radius();
    const ztf::TorusGrid grid = resolve_symbol_grid(sigma->v, fallback, resolution);
    *json_out =
        copy_string(ztf::bound_report_to_json(ztf::bounds_report(sigma->v, g1->v, g2->v, grid)));
  });
}

ztf_status ztf_lps_compare(int time_radius, double omega, int resolution,
                           char** json_out) {
  if (json_out == nullptr) return null_argument();
  return wrap([&] {
    const ztf::TorusGrid grid(1, resolution > 0 ? resolution : 8);
    *json_out = copy_string(ztf::lps_to_json(ztf::lps_compare(time_radius, omega, grid)));
  });
}

ztf_status ztf_para_kernel(const ztf_torus_function* beta, const ztf_signal* g1,
                           const ztf_signal* g2, int resolution, int as_csv,
                           char** out) {
  if (beta == nullptr || g1 == nullptr || g2 == nullptr || out == nullptr)
    return null_argument();
  return wrap([&] {
    const ztf::TorusGrid grid = resolve_factor_grid(
        beta->v, g1->v.box().radius() + g2->v.box().radius(), resolution);
    const ztf::FrequencyKernel A = ztf::paracommutator_kernel(beta->v, g1->v, g2->v, grid);
    *out = copy_string(as_csv ? ztf::frequency_kernel_to_csv(A)
                              : ztf::frequency_kernel_to_json(A));
  });
}

ztf_status ztf_paraproduct(const ztf_signal* g1, const ztf_signal* g2,
                           const ztf_signal* f, const ztf_signal* h, int resolution,
                           ztf_signal** out) {
  if (g1 == nullptr || g2 == nullptr || f == nullptr || h == nullptr || out == nullptr)
    return null_argument();
  return wrap([&] {
    const int lag = std::max(f->v.box().radius() + g1->v.box().radius(),
                             h->v.box().radius() + g2->v.box().radius());
    const ztf::TorusGrid grid(
        f->v.dim(), resolution > 0 ? resolution : ztf::default_resolution(lag));
    *out = new ztf_signal{ztf::paraproduct(g1->v, g2->v, f->v, h->v, grid)};
  });
}

ztf_status ztf_multiplier_symbol(const ztf_torus_function* beta, const ztf_signal* g1,
                                 const ztf_signal* g2, int resolution,
                                 ztf_torus_function** out) {
  if (beta == nullptr || g1 == nullptr || g2 == nullptr || out == nullptr)
    return null_argument();
  return wrap([&] {
    const ztf::TorusGrid grid = resolve_factor_grid(
        beta->v, g1->v.box().radius() + g2->v.box().radius(), resolution);
    *out = new ztf_torus_function{ztf::multiplier_symbol(beta->v, g1->v, g2->v, grid)};
  });
}

ztf_status ztf_multiplier_apply(const ztf_torus_function* mu, const ztf_signal* f,
                                int out_radius, ztf_signal** out) {
  if (mu == nullptr || f == nullptr || out == nullptr) return null_argument();
  return wrap([&] {
    const int radius = out_radius >= 0 ? out_radius : f->v.box().radius();
    *out = new ztf_signal{
        ztf::multiplier_apply(mu->v, f->v, ztf::LatticeBox(f->v.dim(), radius))};
  });
}

ztf_status ztf_verify(uint64_t seed, int dim, int radius, int resolution,
                      int include_timings, char** json_out, int* failures) {
  if (json_out == nullptr) return null_argument();
  return wrap([&] {
    ztf::VerifyOptions options;
    options.seed = seed;
    options.dim = dim;
    options.radius = radius;
    options.resolution = resolution;
    options.include_timings = include_timings != 0;
    const ztf::VerifyReport report = ztf::run_verify_suite(options);
    *json_out = copy_string(ztf::verify_report_to_json(report));
    if (failures != nullptr) *failures = report.failures;
  });
}

}  // extern "C"
