#pragma once

#include <string>

#include "ztf/structured.hpp"

namespace ztf {

/// All emitters format numbers with 17 significant digits (%.17g), enough to
/// round-trip an IEEE double, and are byte-deterministic.

std::string format_double(double v);

// -- parsing (throws ParseError / DimensionMismatch / InvalidArgument) --
Signal parse_signal_json(const std::string& text);
TorusFunction parse_torus_function_json(const std::string& text);
Symbol parse_symbol_json(const std::string& text);

// -- emission --
std::string signal_to_json(const Signal& f);
std::string torus_function_to_json(const TorusFunction& F);
std::string field_to_json(const PhaseSpaceField& F);
/// Rows m_1..m_n, j_1..j_n, re, im (header included).
std::string field_to_csv(const PhaseSpaceField& F);
/// Rows m_1..m_n, j_1..j_n, magnitude.
std::string field_magnitude_csv(const PhaseSpaceField& F);
std::string matrix_to_json(const OperatorMatrix& K);
/// Row-major lines; each row holds re,im pairs for its entries.
std::string matrix_to_csv(const OperatorMatrix& K);
std::string norm_report_to_json(const NormReport& r);
std::string bound_report_to_json(const BoundReport& r);
std::string spectrum_to_json(const SingularSpectrum& s, const OperatorMatrix& K);
std::string lps_to_json(const LpsComparison& c);
std::string frequency_kernel_to_json(const FrequencyKernel& A);
std::string frequency_kernel_to_csv(const FrequencyKernel& A);

std::string complex_to_json(const cplx& z);

}  // namespace ztf
