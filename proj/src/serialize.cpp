#include "ztf/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace ztf {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int require_int(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number())
    throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_string())
    throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<cplx> require_values(const json& j, std::size_t expected) {
  const json& v = require_key(j, "values");
  if (!v.is_array())
    throw ParseError("field 'values' must be an array of [re, im] pairs");
  if (v.size() != expected)
    throw ParseError("field 'values' has " + std::to_string(v.size()) +
                     " entries, expected " + std::to_string(expected));
  std::vector<cplx> out;
  out.reserve(expected);
  for (const json& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ParseError("values entries must be [re, im] number pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Signal parse_signal_obj(const json& j) {
  const int n = require_int(j, "n");
  const int radius = require_int(j, "radius");
  const LatticeBox box(n, radius);
  return Signal(box, require_values(j, box.size()));
}

TorusFunction parse_torus_obj(const json& j) {
  const int n = require_int(j, "n");
  if (j.is_object() && j.contains("band")) {
    const json& b = j.at("band");
    return TorusFunction::band_indicator(n, require_number(b, "omega"));
  }
  const int q = require_int(j, "Q");
  const TorusGrid grid(n, q);
  return TorusFunction::grid_samples(grid, require_values(j, grid.size()));
}

void append_complex(std::string& out, const cplx& z) {
  out += '[';
  out += format_double(z.real());
  out += ',';
  out += format_double(z.imag());
  out += ']';
}

void append_values(std::string& out, const std::vector<cplx>& values) {
  out += "\"values\":[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    append_complex(out, values[i]);
  }
  out += ']';
}

std::string quoted(const std::string& s) {
  // Emitted strings are check names and notes: plain ASCII by construction,
  // quotes and backslashes escaped for safety.
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string matrix_values_json(const Eigen::MatrixXcd& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != 0 || c != 0) out += ',';
      append_complex(out, m(r, c));
    }
  out += ']';
  return out;
}

}  // namespace

Signal parse_signal_json(const std::string& text) {
  return parse_signal_obj(parse_text(text));
}

TorusFunction parse_torus_function_json(const std::string& text) {
  return parse_torus_obj(parse_text(text));
}

Symbol parse_symbol_json(const std::string& text) {
  const json j = parse_text(text);
  const std::string kind = require_string(j, "kind");
  if (kind == "grid") {
    const int n = require_int(j, "n");
    const int radius = require_int(j, "m_radius");
    const int q = require_int(j, "Q");
    PhaseSpaceField field{LatticeBox(n, radius), TorusGrid(n, q)};
    std::vector<cplx> values = require_values(j, field.size());
    std::copy(values.begin(), values.end(), field.values().begin());
    return Symbol::grid(std::move(field));
  }
  if (kind == "separable")
    return Symbol::separable(parse_signal_obj(require_key(j, "alpha")),
                             parse_torus_obj(require_key(j, "beta")));
  if (kind == "time_only") return Symbol::time_only(parse_signal_obj(require_key(j, "alpha")));
  if (kind == "freq_only") return Symbol::freq_only(parse_torus_obj(require_key(j, "beta")));
  if (kind == "band_region")
    return Symbol::band_region(require_int(j, "n"), require_int(j, "T"),
                               require_number(j, "omega"));
  throw ParseError("unknown symbol kind '" + kind + "'");
}

std::string signal_to_json(const Signal& f) {
  std::string out = "{\"n\":" + std::to_string(f.dim()) +
                    ",\"radius\":" + std::to_string(f.box().radius()) + ",";
  append_values(out, f.values());
  out += '}';
  return out;
}

std::string torus_function_to_json(const TorusFunction& F) {
  if (F.is_band())
    return "{\"n\":" + std::to_string(F.dim()) +
           ",\"band\":{\"omega\":" + format_double(F.omega()) + "}}";
  std::string out = "{\"n\":" + std::to_string(F.dim()) +
                    ",\"Q\":" + std::to_string(F.grid().resolution()) + ",";
  append_values(out, F.values());
  out += '}';
  return out;
}

std::string field_to_json(const PhaseSpaceField& F) {
  std::string out = "{\"n\":" + std::to_string(F.dim()) +
                    ",\"m_radius\":" + std::to_string(F.mbox().radius()) +
                    ",\"Q\":" + std::to_string(F.grid().resolution()) + ",";
  append_values(out, F.values());
  out += '}';
  return out;
}

namespace {

std::string field_csv(const PhaseSpaceField& F, bool magnitude) {
  std::string out;
  for (int a = 1; a <= F.dim(); ++a) out += "m_" + std::to_string(a) + ",";
  for (int a = 1; a <= F.dim(); ++a) out += "j_" + std::to_string(a) + ",";
  out += magnitude ? "magnitude\n" : "re,im\n";
  for (std::size_t mi = 0; mi < F.positions(); ++mi) {
    const LatticePoint m = F.mbox().point(mi);
    for (std::size_t j = 0; j < F.nodes(); ++j) {
      const std::vector<int> digits = F.grid().digits(j);
      for (int v : m) { out += std::to_string(v); out += ','; }
      for (int v : digits) { out += std::to_string(v); out += ','; }
      const cplx z = F.at(mi, j);
      if (magnitude) {
        out += format_double(std::abs(z));
      } else {
        out += format_double(z.real());
        out += ',';
        out += format_double(z.imag());
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::string field_to_csv(const PhaseSpaceField& F) { return field_csv(F, false); }

std::string field_magnitude_csv(const PhaseSpaceField& F) { return field_csv(F, true); }

std::string matrix_to_json(const OperatorMatrix& K) {
  return "{\"n\":" + std::to_string(K.out_box.dim()) +
         ",\"out_radius\":" + std::to_string(K.out_box.radius()) +
         ",\"in_radius\":" + std::to_string(K.in_box.radius()) +
         ",\"values\":" + matrix_values_json(K.m) + "}";
}

std::string matrix_to_csv(const OperatorMatrix& K) {
  std::string out;
  for (Eigen::Index r = 0; r < K.m.rows(); ++r) {
    for (Eigen::Index c = 0; c < K.m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(K.m(r, c).real());
      out += ',';
      out += format_double(K.m(r, c).imag());
    }
    out += '\n';
  }
  return out;
}

std::string norm_report_to_json(const NormReport& r) {
  std::string out = "{\"p\":";
  out += std::isinf(r.p) ? "\"inf\"" : format_double(r.p);
  out += ",\"value\":" + format_double(r.value);
  out += std::string(",\"exact\":") + (r.exact ? "true" : "false");
  if (r.refinement_delta) out += ",\"refinement_delta\":" + format_double(*r.refinement_delta);
  out += '}';
  return out;
}

std::string bound_report_to_json(const BoundReport& r) {
  std::string out = "{\"checks\":[";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const BoundCheck& c = r.checks[i];
    if (i) out += ',';
    out += "{\"name\":" + quoted(c.name);
    out += std::string(",\"skipped\":") + (c.skipped ? "true" : "false");
    out += std::string(",\"monitored\":") + (c.monitored ? "true" : "false");
    if (!c.skipped) {
      out += std::string(",\"holds\":") + (c.holds ? "true" : "false");
      out += ",\"lhs\":" + format_double(c.lhs);
      out += ",\"rhs\":" + format_double(c.rhs);
      out += ",\"slack\":" + format_double(c.slack);
    }
    if (!c.note.empty()) out += ",\"note\":" + quoted(c.note);
    out += '}';
  }
  out += "]}";
  return out;
}

std::string spectrum_to_json(const SingularSpectrum& s, const OperatorMatrix& K) {
  std::string out = "{\"n\":" + std::to_string(K.out_box.dim()) +
                    ",\"out_radius\":" + std::to_string(K.out_box.radius()) +
                    ",\"in_radius\":" + std::to_string(K.in_box.radius()) +
                    ",\"singular_values\":[";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i) out += ',';
    out += format_double(s.values[i]);
  }
  out += "]";
  out += ",\"op_norm\":" + format_double(s.values.empty() ? 0.0 : s.values.front());
  out += ",\"s1\":" + format_double(schatten_norm(s, 1.0));
  out += ",\"s2\":" + format_double(schatten_norm(s, 2.0));
  if (K.out_box == K.in_box) {
    out += ",\"trace\":";
    std::string t;
    append_complex(t, trace(K));
    out += t;
  }
  out += '}';
  return out;
}

std::string lps_to_json(const LpsComparison& c) {
  std::string out = "{\"T\":" + std::to_string(c.time_radius) +
                    ",\"omega\":" + format_double(c.omega) +
                    ",\"difference_operator_norm\":" +
                    format_double(c.difference_operator_norm);
  out += ",\"loc\":" + matrix_to_json(c.loc);
  out += ",\"truncation\":" + matrix_to_json(c.lps);
  out += ",\"weight_profile\":[";
  for (Eigen::Index r = 0; r < c.weight_profile.rows(); ++r)
    for (Eigen::Index col = 0; col < c.weight_profile.cols(); ++col) {
      if (r != 0 || col != 0) out += ',';
      out += format_double(c.weight_profile(r, col));
    }
  out += "]}";
  return out;
}

std::string frequency_kernel_to_json(const FrequencyKernel& A) {
  return "{\"n\":" + std::to_string(A.grid.dim()) +
         ",\"Q\":" + std::to_string(A.grid.resolution()) +
         ",\"values\":" + matrix_values_json(A.values) + "}";
}

std::string frequency_kernel_to_csv(const FrequencyKernel& A) {
  std::string out;
  for (Eigen::Index r = 0; r < A.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.values.cols(); ++c) {
      if (c) out += ',';
      out += format_double(A.values(r, c).real());
      out += ',';
      out += format_double(A.values(r, c).imag());
    }
    out += '\n';
  }
  return out;
}

std::string complex_to_json(const cplx& z) {
  std::string out;
  append_complex(out, z);
  return out;
}

}  // namespace ztf
