// Command line front end. Talks to the library exclusively through the C
// interface in ztf.h; every operand is JSON on disk or stdin ("-").
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ztf.h"

namespace {

struct Fail {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw Fail{code, message};
}

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(2, "cannot open '" + path + "'");
    buffer << in.rdbuf();
  }
  return buffer.str();
}

void write_output(const std::string& path, std::string content) {
  if (!content.empty() && content.back() != '\n') content += '\n';
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(2, "cannot write '" + path + "'");
  out << content;
}

void check(ztf_status status) {
  if (status != ZTF_OK) fail(2, ztf_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ztf_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using SignalPtr = std::unique_ptr<ztf_signal, HandleDeleter<ztf_signal, ztf_signal_free>>;
using TorusPtr = std::unique_ptr<ztf_torus_function,
                                 HandleDeleter<ztf_torus_function, ztf_torus_function_free>>;
using SymbolPtr = std::unique_ptr<ztf_symbol, HandleDeleter<ztf_symbol, ztf_symbol_free>>;
using FieldPtr = std::unique_ptr<ztf_field, HandleDeleter<ztf_field, ztf_field_free>>;
using MatrixPtr = std::unique_ptr<ztf_matrix, HandleDeleter<ztf_matrix, ztf_matrix_free>>;

SignalPtr load_signal(const std::string& path) {
  ztf_signal* raw = nullptr;
  check(ztf_signal_parse(read_input(path).c_str(), &raw));
  return SignalPtr(raw);
}

TorusPtr load_torus(const std::string& path) {
  ztf_torus_function* raw = nullptr;
  check(ztf_torus_function_parse(read_input(path).c_str(), &raw));
  return TorusPtr(raw);
}

SymbolPtr load_symbol(const std::string& path) {
  ztf_symbol* raw = nullptr;
  check(ztf_symbol_parse(read_input(path).c_str(), &raw));
  return SymbolPtr(raw);
}

std::string signal_json(const ztf_signal* f) {
  char* s = nullptr;
  check(ztf_signal_format(f, &s));
  return take_string(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"short-time transforms and localization operators on the lattice"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  std::string out_path;

  // stft / spectrogram
  struct {
    std::string signal, window, output, format = "json";
    int m_radius = -1, resolution = 0;
  } stft_args, gram_args;
  CLI::App* stft_cmd = app.add_subcommand("stft", "short-time transform of a signal");
  stft_cmd->add_option("--signal", stft_args.signal, "signal JSON (or -)")->required();
  stft_cmd->add_option("--window", stft_args.window, "window JSON")->required();
  stft_cmd->add_option("--m-radius", stft_args.m_radius,
                       "position range radius (-1 = full support)");
  stft_cmd->add_option("--resolution", stft_args.resolution,
                       "frequency grid Q (0 = default)");
  stft_cmd->add_option("--format", stft_args.format, "json | csv | magnitude")
      ->check(CLI::IsMember({"json", "csv", "magnitude"}));
  stft_cmd->add_option("-o,--output", stft_args.output, "output path (default stdout)");

  CLI::App* gram_cmd =
      app.add_subcommand("spectrogram", "magnitude table of the transform");
  gram_cmd->add_option("--signal", gram_args.signal, "signal JSON (or -)")->required();
  gram_cmd->add_option("--window", gram_args.window, "window JSON")->required();
  gram_cmd->add_option("--m-radius", gram_args.m_radius,
                       "position range radius (-1 = full support)");
  gram_cmd->add_option("--resolution", gram_args.resolution,
                       "frequency grid Q (0 = default)");
  gram_cmd->add_option("-o,--output", gram_args.output, "output path (default stdout)");

  // locop family
  struct {
    std::string symbol, window1, window2, signal, cosignal, output, format = "json";
    int out_radius = -1, in_radius = -1, resolution = 0;
  } loc_args;
  CLI::App* loc_cmd = app.add_subcommand("locop", "time-frequency localization operator");
  loc_cmd->require_subcommand(1);
  CLI::App* loc_apply = loc_cmd->add_subcommand("apply", "apply the operator to a signal");
  CLI::App* loc_kernel = loc_cmd->add_subcommand("kernel", "materialize the kernel matrix");
  CLI::App* loc_bilinear = loc_cmd->add_subcommand("bilinear", "weak form against a pair");
  CLI::App* loc_svd = loc_cmd->add_subcommand("svd", "singular spectrum of the kernel");
  CLI::App* loc_bounds = loc_cmd->add_subcommand("bounds", "norm inequality report");
  for (CLI::App* sub : {loc_apply, loc_kernel, loc_bilinear, loc_svd, loc_bounds}) {
    sub->add_option("--symbol", loc_args.symbol, "symbol JSON")->required();
    sub->add_option("--window1", loc_args.window1, "analysis window JSON")->required();
    sub->add_option("--window2", loc_args.window2, "synthesis window JSON")->required();
    sub->add_option("--resolution", loc_args.resolution, "frequency grid Q (0 = default)");
    sub->add_option("-o,--output", loc_args.output, "output path (default stdout)");
  }
  loc_apply->add_option("--signal", loc_args.signal, "signal JSON")->required();
  loc_bilinear->add_option("--signal", loc_args.signal, "signal JSON")->required();
  loc_bilinear->add_option("--cosignal", loc_args.cosignal, "pairing signal JSON")
      ->required();
  for (CLI::App* sub : {loc_kernel, loc_svd}) {
    sub->add_option("--out-radius", loc_args.out_radius, "row box radius (-1 = natural)");
    sub->add_option("--in-radius", loc_args.in_radius, "column box radius (-1 = natural)");
  }
  loc_kernel->add_option("--format", loc_args.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // lps compare
  struct {
    int time_radius = 0, resolution = 0;
    double omega = 0.25;
    std::string output;
  } lps_args;
  CLI::App* lps_cmd = app.add_subcommand("lps", "band-and-box truncation comparisons");
  lps_cmd->require_subcommand(1);
  CLI::App* lps_compare = lps_cmd->add_subcommand(
      "compare", "localization model vs truncated projection, dimension 1");
  lps_compare->add_option("--T", lps_args.time_radius, "time truncation radius")->required();
  lps_compare->add_option("--omega", lps_args.omega, "band half-width in (0, 1/2]")
      ->required();
  lps_compare->add_option("--resolution", lps_args.resolution, "frequency grid Q");
  lps_compare->add_option("-o,--output", lps_args.output, "output path (default stdout)");

  // para kernel / product
  struct {
    std::string beta, window1, window2, signal, cosignal, output, format = "json";
    int resolution = 0;
  } para_args;
  CLI::App* para_cmd = app.add_subcommand("para", "frequency-side kernels and pairings");
  para_cmd->require_subcommand(1);
  CLI::App* para_kernel =
      para_cmd->add_subcommand("kernel", "two-window kernel on the frequency grid");
  para_kernel->add_option("--beta", para_args.beta, "frequency factor JSON")->required();
  para_kernel->add_option("--window1", para_args.window1, "analysis window JSON")->required();
  para_kernel->add_option("--window2", para_args.window2, "synthesis window JSON")->required();
  para_kernel->add_option("--resolution", para_args.resolution, "frequency grid Q");
  para_kernel->add_option("--format", para_args.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  para_kernel->add_option("-o,--output", para_args.output, "output path (default stdout)");
  CLI::App* para_product =
      para_cmd->add_subcommand("product", "pointwise product of two transforms");
  para_product->add_option("--window1", para_args.window1, "analysis window JSON")->required();
  para_product->add_option("--window2", para_args.window2, "synthesis window JSON")->required();
  para_product->add_option("--signal", para_args.signal, "signal JSON")->required();
  para_product->add_option("--cosignal", para_args.cosignal, "pairing signal JSON")->required();
  para_product->add_option("--resolution", para_args.resolution, "frequency grid Q");
  para_product->add_option("-o,--output", para_args.output, "output path (default stdout)");

  // multiplier
  struct {
    std::string beta, window1, window2, apply, output;
    int resolution = 0, out_radius = -1;
  } mult_args;
  CLI::App* mult_cmd =
      app.add_subcommand("multiplier", "diagonal frequency symbol of the operator");
  mult_cmd->add_option("--beta", mult_args.beta, "frequency factor JSON")->required();
  mult_cmd->add_option("--window1", mult_args.window1, "analysis window JSON")->required();
  mult_cmd->add_option("--window2", mult_args.window2, "synthesis window JSON")->required();
  mult_cmd->add_option("--resolution", mult_args.resolution, "frequency grid Q");
  mult_cmd->add_option("--apply", mult_args.apply, "apply to this signal JSON instead");
  mult_cmd->add_option("--out-radius", mult_args.out_radius,
                       "output box radius when applying (-1 = input box)");
  mult_cmd->add_option("-o,--output", mult_args.output, "output path (default stdout)");

  // verify
  struct {
    std::uint64_t seed = 1;
    int dim = 1, radius = 2, resolution = 0;
    bool timings = false;
    std::string output;
  } verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the library's invariant suite");
  verify_cmd->add_option("--seed", verify_args.seed, "instance seed");
  verify_cmd->add_option("--dim", verify_args.dim, "lattice dimension");
  verify_cmd->add_option("--radius", verify_args.radius, "operand box radius");
  verify_cmd->add_option("--resolution", verify_args.resolution,
                         "frequency grid Q (0 = default)");
  verify_cmd->add_flag("--timings", verify_args.timings,
                       "include per-check wall time in the report");
  verify_cmd->add_option("-o,--output", verify_args.output, "output path (default stdout)");

  // let app-level options (--threads) appear after any subcommand
  for (CLI::App* sub : {stft_cmd, gram_cmd, loc_cmd, loc_apply, loc_kernel, loc_bilinear,
                        loc_svd, loc_bounds, lps_cmd, lps_compare, para_cmd, para_kernel,
                        para_product, mult_cmd, verify_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ztf_set_threads(threads);

  try {
    if (stft_cmd->parsed() || gram_cmd->parsed()) {
      const bool gram = gram_cmd->parsed();
      const auto& a = gram ? gram_args : stft_args;
      const SignalPtr f = load_signal(a.signal);
      const SignalPtr g = load_signal(a.window);
      ztf_field* field = nullptr;
      check(ztf_stft(f.get(), g.get(), a.m_radius, a.resolution, &field));
      const FieldPtr F(field);
      char* text = nullptr;
      if (gram || a.format == "magnitude") {
        check(ztf_field_format_csv(F.get(), 1, &text));
      } else if (a.format == "csv") {
        check(ztf_field_format_csv(F.get(), 0, &text));
      } else {
        check(ztf_field_format_json(F.get(), &text));
      }
      write_output(a.output, take_string(text));
      return 0;
    }

    if (loc_cmd->parsed()) {
      const SymbolPtr sigma = load_symbol(loc_args.symbol);
      const SignalPtr g1 = load_signal(loc_args.window1);
      const SignalPtr g2 = load_signal(loc_args.window2);
      if (loc_apply->parsed()) {
        const SignalPtr f = load_signal(loc_args.signal);
        ztf_signal* result = nullptr;
        check(ztf_loc_apply(sigma.get(), g1.get(), g2.get(), f.get(),
                            loc_args.resolution, &result));
        const SignalPtr out(result);
        write_output(loc_args.output, signal_json(out.get()));
      } else if (loc_bilinear->parsed()) {
        const SignalPtr f = load_signal(loc_args.signal);
        const SignalPtr h = load_signal(loc_args.cosignal);
        char* text = nullptr;
        check(ztf_loc_bilinear(sigma.get(), g1.get(), g2.get(), f.get(), h.get(),
                               loc_args.resolution, &text));
        write_output(loc_args.output, take_string(text));
      } else if (loc_bounds->parsed()) {
        char* text = nullptr;
        check(ztf_bounds_report(sigma.get(), g1.get(), g2.get(), loc_args.resolution,
                                &text));
        write_output(loc_args.output, take_string(text));
      } else {
        ztf_matrix* kernel = nullptr;
        check(ztf_loc_kernel(sigma.get(), g1.get(), g2.get(), loc_args.out_radius,
                             loc_args.in_radius, loc_args.resolution, &kernel));
        const MatrixPtr K(kernel);
        char* text = nullptr;
        if (loc_svd->parsed()) {
          check(ztf_matrix_svd_json(K.get(), &text));
        } else if (loc_args.format == "csv") {
          check(ztf_matrix_format_csv(K.get(), &text));
        } else {
          check(ztf_matrix_format_json(K.get(), &text));
        }
        write_output(loc_args.output, take_string(text));
      }
      return 0;
    }

    if (lps_cmd->parsed()) {
      char* text = nullptr;
      check(ztf_lps_compare(lps_args.time_radius, lps_args.omega, lps_args.resolution,
                            &text));
      write_output(lps_args.output, take_string(text));
      return 0;
    }

    if (para_cmd->parsed()) {
      const SignalPtr g1 = load_signal(para_args.window1);
      const SignalPtr g2 = load_signal(para_args.window2);
      if (para_kernel->parsed()) {
        const TorusPtr beta = load_torus(para_args.beta);
        char* text = nullptr;
        check(ztf_para_kernel(beta.get(), g1.get(), g2.get(), para_args.resolution,
                              para_args.format == "csv" ? 1 : 0, &text));
        write_output(para_args.output, take_string(text));
      } else {
        const SignalPtr f = load_signal(para_args.signal);
        const SignalPtr h = load_signal(para_args.cosignal);
        ztf_signal* result = nullptr;
        check(ztf_paraproduct(g1.get(), g2.get(), f.get(), h.get(),
                              para_args.resolution, &result));
        const SignalPtr out(result);
        write_output(para_args.output, signal_json(out.get()));
      }
      return 0;
    }

    if (mult_cmd->parsed()) {
      const TorusPtr beta = load_torus(mult_args.beta);
      const SignalPtr g1 = load_signal(mult_args.window1);
      const SignalPtr g2 = load_signal(mult_args.window2);
      ztf_torus_function* symbol = nullptr;
      check(ztf_multiplier_symbol(beta.get(), g1.get(), g2.get(), mult_args.resolution,
                                  &symbol));
      const TorusPtr mu(symbol);
      if (mult_args.apply.empty()) {
        char* text = nullptr;
        check(ztf_torus_function_format(mu.get(), &text));
        write_output(mult_args.output, take_string(text));
      } else {
        const SignalPtr f = load_signal(mult_args.apply);
        ztf_signal* result = nullptr;
        check(ztf_multiplier_apply(mu.get(), f.get(), mult_args.out_radius, &result));
        const SignalPtr out(result);
        write_output(mult_args.output, signal_json(out.get()));
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      char* text = nullptr;
      int failures = 0;
      check(ztf_verify(verify_args.seed, verify_args.dim, verify_args.radius,
                       verify_args.resolution, verify_args.timings ? 1 : 0, &text,
                       &failures));
      write_output(verify_args.output, take_string(text));
      return failures > 0 ? 1 : 0;
    }
  } catch (const Fail& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
