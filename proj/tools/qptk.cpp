// qptk: generate signals, run QPFT / QP-WPT transforms, and verify identities.
//
// Exit codes: 0 success (including reproduced expected violations), 1 check
// failure, 2 usage or input error, 3 numerical precondition violation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qptk/error.hpp"
#include "qptk/io.hpp"
#include "qptk/kernels.hpp"
#include "qptk/qpft.hpp"
#include "qptk/qpwpt.hpp"
#include "qptk/signals.hpp"
#include "qptk/suite.hpp"
#include "qptk/wavelet.hpp"

namespace {

using namespace qptk;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kPrecondition = 3;

struct Options {
  std::string out;
  bool exact = false;
  std::string mu;
  std::string preset;
  double alpha = 1.0;
  std::string wavelet = "gaussian";
  std::size_t n = 1024;
  std::string t_span = "-10,10";
  std::string xi_span;
  std::string beta_span;
  std::size_t tf_n = 128;
  std::string signal = "gaussian:1";
  std::string input;
  std::string reference;
  std::string simd = "auto";
  bool all = false;
  bool no_values = false;
  std::vector<std::string> checks;
};

std::pair<double, double> parse_span(const std::string& text, const char* flag) {
  std::vector<double> v;
  try {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects lo,hi");
  }
  if (v.size() != 2 || !(v[0] < v[1])) throw UsageError(std::string(flag) + " expects lo,hi with lo < hi");
  return {v[0], v[1]};
}

ParameterSet resolve_mu(const Options& o) {
  try {
    if (!o.preset.empty()) return parameters_of(parse_preset(o.preset));
    if (!o.mu.empty()) return parse_parameters(o.mu);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
  return {0.0, 1.0, 0.0, 0.0, 0.0};
}

WaveletSpec resolve_wavelet(const Options& o) {
  if (!(o.alpha > 0.0) || !std::isfinite(o.alpha)) throw UsageError("--alpha must be finite and > 0");
  return parse_wavelet(o.wavelet);
}

Grid time_grid(const Options& o) {
  const auto [lo, hi] = parse_span(o.t_span, "--t-span");
  if (o.n < 2) throw UsageError("--n must be at least 2");
  return Grid::half_open(lo, hi, o.n);
}

struct LoadedSignal {
  SampledSignal signal;
  std::string label;
};

LoadedSignal load_signal(const Options& o) {
  if (!o.input.empty()) return {read_signal(o.input), o.input};
  const auto recipe = parse_recipe(o.signal);
  return {generate(recipe, time_grid(o)), to_string(recipe)};
}

template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_json(const std::string& path, const json& j) {
  emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

int cmd_gen(const Options& o) {
  const auto s = load_signal(o);
  emit(o.out, [&](std::ostream& os) { write_signal(s.signal, os); });
  return kOk;
}

int cmd_qpft(const Options& o) {
  const auto mu = resolve_mu(o);
  const auto s = load_signal(o);
  SampledSignal spectrum = [&] {
    if (!o.xi_span.empty()) {
      const auto [lo, hi] = parse_span(o.xi_span, "--xi-span");
      return qpft_direct(s.signal, mu, Grid::closed(lo, hi, s.signal.size()));
    }
    if (o.exact) return qpft_direct(s.signal, mu, fast_xi_grid(s.signal.grid(), mu));
    return qpft_fast(s.signal, mu);
  }();
  emit(o.out, [&](std::ostream& os) { write_signal(spectrum, os); });
  return kOk;
}

int cmd_iqpft(const Options& o) {
  if (o.input.empty()) throw UsageError("iqpft needs --input <spectrum.csv>");
  const auto mu = resolve_mu(o);
  const auto spectrum = read_signal(o.input);
  emit(o.out, [&](std::ostream& os) { write_signal(iqpft(spectrum, mu, time_grid(o)), os); });
  return kOk;
}

int cmd_wpt(const Options& o) {
  if (o.out.empty()) throw UsageError("wpt needs --out <prefix>");
  const auto mu = resolve_mu(o);
  const auto spec = resolve_wavelet(o);
  const auto s = load_signal(o);
  if (o.tf_n < 2) throw UsageError("--tf-n must be at least 2");

  std::optional<TFGrid> suggested;
  auto suggestion = [&]() -> const TFGrid& {
    if (!suggested) suggested = suggest_tf_grid(s.signal, spec, o.alpha, mu, o.tf_n, o.tf_n);
    return *suggested;
  };
  auto beta_grid = [&] {
    if (o.beta_span.empty()) return suggestion().beta;
    const auto [lo, hi] = parse_span(o.beta_span, "--beta-span");
    return Grid::closed(lo, hi, o.tf_n);
  };

  std::optional<TFMap> w;
  if (o.exact || !o.xi_span.empty()) {
    Grid xi = o.xi_span.empty() ? suggestion().xi : [&] {
      const auto [lo, hi] = parse_span(o.xi_span, "--xi-span");
      return Grid::closed(lo, hi, o.tf_n);
    }();
    w = qpwpt_direct(s.signal, spec, TFGrid(xi, beta_grid(), o.alpha), mu);
  } else {
    w = qpwpt_fast(s.signal, spec, beta_grid(), o.alpha, mu);
  }
  write_tfmap(*w, o.out, !o.no_values);
  return kOk;
}

int cmd_reconstruct(const Options& o) {
  if (o.input.empty()) throw UsageError("reconstruct needs --input <tfmap prefix>");
  const auto file = read_tfmap(o.input);
  if (!file.phase_known) throw UsageError("TF map sidecar has no complex values; rerun wpt without --no-values");
  const auto rec = reconstruct(file.map, time_grid(o));
  if (!o.out.empty()) write_signal(rec.signal, std::filesystem::path(o.out));

  json report = {{"schema", 1}, {"edge_fraction", rec.edge_fraction}, {"under_resolved", rec.under_resolved()}};
  std::optional<SampledSignal> reference;
  if (!o.reference.empty()) {
    reference = read_signal(o.reference);
  } else if (o.signal != "none") {
    reference = generate(parse_recipe(o.signal), time_grid(o));
  }
  if (reference) {
    if (!reference->grid().matches(rec.signal.grid())) throw UsageError("reference signal uses a different time grid");
    report["relative_l2_residual"] = relative_l2_error(rec.signal, *reference);
  }
  if (rec.under_resolved()) {
    std::cerr << "warning: TF grid border carries " << format_double(rec.edge_fraction)
              << " of the peak magnitude; reconstruction is under-resolved\n";
  }
  std::cout << report.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names = o.all ? all_check_names() : o.checks;
  if (names.empty()) throw UsageError("verify needs check names or --all");
  for (const auto& n : names) validate_check_name(n);

  SuiteConfig cfg;
  cfg.mu = resolve_mu(o);
  cfg.wavelet = resolve_wavelet(o);
  cfg.alpha = o.alpha;
  auto s = load_signal(o);
  cfg.signal = std::move(s.signal);
  cfg.signal_label = std::move(s.label);
  if (!o.xi_span.empty() || !o.beta_span.empty()) {
    if (o.xi_span.empty() || o.beta_span.empty()) throw UsageError("--xi-span and --beta-span go together");
    const auto [xl, xh] = parse_span(o.xi_span, "--xi-span");
    const auto [bl, bh] = parse_span(o.beta_span, "--beta-span");
    cfg.tf = TFGrid(Grid::closed(xl, xh, o.tf_n), Grid::closed(bl, bh, o.tf_n), o.alpha);
  }

  const json records = run_checks(names, cfg);
  write_json(o.out, records);
  for (const auto& r : records) {
    const std::string outcome = r.value("outcome", "");
    if (outcome != "pass") {
      std::cerr << r.value("check", "") << ": " << r.value("label", r.value("kind", std::string())) << " -> "
                << outcome << '\n';
    }
  }
  return all_passed(records) ? kOk : kCheckFailed;
}

void apply_simd(const std::string& choice) {
  if (choice == "auto") return;
  kernels::Level level;
  if (choice == "scalar") {
    level = kernels::Level::scalar;
  } else if (choice == "avx2") {
    level = kernels::Level::avx2;
  } else {
    throw UsageError("--simd must be auto, scalar or avx2");
  }
  if (!kernels::select_kernels(level)) throw UsageError("--simd " + choice + " is not available on this machine");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Quadratic-phase Fourier and wave packet transforms"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--out", o.out, "Output file (signal/report) or prefix (TF map); stdout when omitted");
  app.add_flag("--exact", o.exact, "Use direct quadrature instead of the FFT path");
  auto* mu_opt = app.add_option("--mu", o.mu, "Parameters a,b,c,d,e");
  auto* preset_opt = app.add_option("--preset", o.preset,
                                    "plain_fourier | classical_wpt | lct:A,B,D | frft:theta | fresnel:b[,d]");
  mu_opt->excludes(preset_opt);
  app.add_option("--alpha", o.alpha, "Wavelet scale (> 0)");
  app.add_option("--wavelet", o.wavelet, "gaussian | mexican_hat | morlet:w0, optional /l1 suffix");
  app.add_option("--n", o.n, "Number of time samples");
  app.add_option("--t-span", o.t_span, "Time interval lo,hi (half-open)");
  app.add_option("--xi-span", o.xi_span, "xi interval lo,hi (closed)");
  app.add_option("--beta-span", o.beta_span, "beta interval lo,hi (closed)");
  app.add_option("--tf-n", o.tf_n, "Points per TF axis for explicit or suggested TF grids");
  app.add_option("--signal", o.signal, "Signal recipe, e.g. gaussian:1, hermite:1,1, chirp:3,2");
  app.add_option("--input", o.input, "Input signal CSV, spectrum CSV, or TF map prefix");
  app.add_option("--simd", o.simd, "Kernel set: auto | scalar | avx2");

  auto* gen = app.add_subcommand("gen", "Write a generated signal as CSV");
  auto* qpft = app.add_subcommand("qpft", "Quadratic-phase Fourier transform of a signal");
  auto* iqpft_cmd = app.add_subcommand("iqpft", "Inverse transform of a spectrum CSV");
  auto* wpt = app.add_subcommand("wpt", "Quadratic-phase wave packet transform; writes <out>.csv and <out>.json");
  wpt->add_flag("--no-values", o.no_values, "Omit complex values from the sidecar");
  auto* rec = app.add_subcommand("reconstruct", "Synthesize a signal from a TF map");
  rec->add_option("--reference", o.reference, "Signal CSV to measure the residual against");
  auto* verify = app.add_subcommand("verify", "Run named checks and write a JSON report");
  verify->add_option("checks", o.checks, "Check names (lieb:<p> for the Lieb bound)");
  verify->add_flag("--all", o.all, "Run every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    apply_simd(o.simd);
    if (gen->parsed()) return cmd_gen(o);
    if (qpft->parsed()) return cmd_qpft(o);
    if (iqpft_cmd->parsed()) return cmd_iqpft(o);
    if (wpt->parsed()) return cmd_wpt(o);
    if (rec->parsed()) return cmd_reconstruct(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const SamplingError& e) {
    std::cerr << "sampling error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ContractError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
