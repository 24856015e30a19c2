#include "qptk/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "parse_util.hpp"
#include "qptk/error.hpp"
#include "qptk/io.hpp"

namespace qptk {

using nlohmann::json;

namespace {

constexpr const char* kFixedNames[] = {"plancherel", "parseval", "identities", "convolution", "spectral",
                                       "moyal",      "energy",   "reproducing", "heisenberg", "log",
                                       "bounds",     "roundtrip", "fast"};

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

const char* outcome_of(bool passed) { return passed ? "pass" : "fail"; }

double window_norm_sq(const SuiteConfig& cfg) {
  const double n = wavelet_lp_norm(cfg.wavelet, 2.0);
  return cfg.wavelet.scaling == WaveletSpec::Scaling::l2 ? n * n : n * n / cfg.alpha;
}

VerificationReport relative_report(std::string label, cplx lhs, cplx rhs, double tol) {
  VerificationReport r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  const double scale = std::abs(rhs);
  r.relative_deviation = scale == 0.0 ? std::abs(lhs) : std::abs(lhs - rhs) / scale;
  r.tolerance = tol;
  r.passed = r.relative_deviation <= tol;
  return r;
}

double frobenius_deviation(std::span<const cplx> a, std::span<const cplx> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

// Lazily computed maps shared by the wave-packet checks.
class Context {
 public:
  explicit Context(const SuiteConfig& cfg) : cfg_(cfg) {}

  const SuiteConfig& cfg() const { return cfg_; }
  const SampledSignal& f() const { return cfg_.signal; }

  const SampledSignal& g() {
    if (!g_) g_ = companion_signal(cfg_.signal);
    return *g_;
  }
  const TFGrid& tf() {
    if (!tf_) tf_ = cfg_.tf ? *cfg_.tf : suggest_tf_grid(cfg_.signal, cfg_.wavelet, cfg_.alpha, cfg_.mu, 128, 128);
    return *tf_;
  }
  const TFMap& wf() {
    if (!wf_) wf_ = qpwpt_direct(cfg_.signal, cfg_.wavelet, tf(), cfg_.mu);
    return *wf_;
  }
  const TFMap& wg() {
    if (!wg_) wg_ = qpwpt_direct(g(), cfg_.wavelet, tf(), cfg_.mu);
    return *wg_;
  }

  /// Five spread-out nodes of the TF grid where |Wf| >= 0.3 max |Wf|.
  std::vector<std::pair<std::size_t, std::size_t>> probe_nodes() {
    const auto& w = wf();
    double peak = 0.0;
    for (const auto& v : w.values()) peak = std::max(peak, std::abs(v));
    std::vector<std::pair<std::size_t, std::size_t>> strong;
    for (std::size_t m = 0; m < w.rows(); ++m) {
      for (std::size_t j = 0; j < w.cols(); ++j) {
        if (std::abs(w.at(m, j)) >= 0.3 * peak) strong.emplace_back(m, j);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (strong.empty()) return out;
    for (std::size_t k = 0; k < 5; ++k) out.push_back(strong[(2 * k + 1) * strong.size() / 10]);
    return out;
  }

 private:
  const SuiteConfig& cfg_;
  std::optional<SampledSignal> g_;
  std::optional<TFGrid> tf_;
  std::optional<TFMap> wf_, wg_;
};

json annotate(json rec, std::string_view check, const SuiteConfig& cfg) {
  rec["schema"] = 1;
  rec["check"] = check;
  rec["mu"] = {cfg.mu.a(), cfg.mu.b(), cfg.mu.c(), cfg.mu.d(), cfg.mu.e()};
  rec["signal"] = cfg.signal_label;
  rec["wavelet"] = to_string(cfg.wavelet);
  rec["alpha"] = cfg.alpha;
  return rec;
}

void run_one(std::string_view name, Context& ctx, json& out) {
  const SuiteConfig& cfg = ctx.cfg();
  auto push = [&](const json& rec) { out.push_back(annotate(rec, name, cfg)); };
  auto push_report = [&](const VerificationReport& r) { push(to_json(r)); };

  if (name == "plancherel") {
    push_report(verify_qpft_identity(QpftIdentity::plancherel, ctx.f(), cfg.mu));
  } else if (name == "parseval") {
    push_report(verify_qpft_identity(QpftIdentity::parseval, ctx.f(), cfg.mu));
  } else if (name == "identities") {
    for (auto id : {QpftIdentity::linearity, QpftIdentity::translation, QpftIdentity::reflection,
                    QpftIdentity::modulation, QpftIdentity::conjugation}) {
      push_report(verify_qpft_identity(id, ctx.f(), cfg.mu));
    }
  } else if (name == "convolution") {
    push_report(verify_qpft_identity(QpftIdentity::convolution, ctx.f(), cfg.mu));
  } else if (name == "spectral") {
    const auto& tf = ctx.tf();
    for (const auto& [m, j] : ctx.probe_nodes()) {
      const double xi = tf.xi.point(m), beta = tf.beta.point(j);
      const Grid wg = spectral_w_grid(ctx.f(), cfg.wavelet, xi, cfg.alpha, cfg.mu, 4096);
      const auto derived = qpwpt_via_spectral(ctx.f(), cfg.wavelet, xi, beta, cfg.alpha, cfg.mu, wg);
      const auto quoted = qpwpt_via_spectral_quoted(ctx.f(), cfg.wavelet, xi, beta, cfg.alpha, cfg.mu, wg);
      const cplx direct = qpwpt_point(ctx.f(), cfg.wavelet, xi, beta, cfg.alpha, cfg.mu);
      auto r = relative_report("qpwpt.spectral_form", derived.value, direct, 1e-4);
      r.quoted_form_deviation = std::abs(quoted.value - direct) / std::abs(direct);
      r.note = "xi = " + format_double(xi) + ", beta = " + format_double(beta);
      if (derived.truncated()) r.note += "; w-grid truncation " + format_double(derived.edge_fraction);
      push_report(r);
    }
  } else if (name == "moyal") {
    const cplx expected = inner_product(ctx.f(), ctx.g()) * window_norm_sq(cfg);
    push_report(relative_report("qpwpt.moyal", moyal(ctx.wf(), ctx.wg()), expected, 1e-3));
  } else if (name == "energy") {
    const double fn = l2_norm(ctx.f());
    push_report(relative_report("qpwpt.energy", energy(ctx.wf()), fn * fn * window_norm_sq(cfg), 1e-3));
  } else if (name == "reproducing") {
    const auto& tf = ctx.tf();
    for (const auto& [m, j] : ctx.probe_nodes()) {
      const double xi = tf.xi.point(m), beta = tf.beta.point(j);
      auto r = relative_report("qpwpt.reproducing", reproduce_at(ctx.wf(), xi, beta, ctx.f().grid()), ctx.wf().at(m, j),
                               1e-2);
      r.note = "xi = " + format_double(xi) + ", beta = " + format_double(beta);
      push_report(r);
    }
  } else if (name == "heisenberg") {
    push(to_json(heisenberg_check(ctx.f(), ctx.wf())));
  } else if (name.starts_with("lieb:")) {
    push(to_json(lieb_check(ctx.f(), ctx.wf(), detail::parse_number(name.substr(5)))));
  } else if (name == "log") {
    push(to_json(log_check(ctx.f(), ctx.wf())));
  } else if (name == "bounds") {
    push_report(pointwise_bound_check(ctx.wf(), ctx.f(), 2.0));
    push_report(beta_lp_bound_check(ctx.wf(), ctx.f(), 2.0));
    push_report(beta_lp_bound_check(ctx.wf(), ctx.f(), 4.0));
  } else if (name == "roundtrip") {
    const Grid xg = spectral_xi_grid(ctx.f(), cfg.mu, ctx.f().size());
    const auto back = iqpft(qpft_direct(ctx.f(), cfg.mu, xg), cfg.mu, ctx.f().grid());
    push_report(relative_report("qpft.roundtrip", relative_l2_error(back, ctx.f()), 0.0, 1e-4));
    const auto rec = reconstruct(ctx.wf(), ctx.f().grid());
    auto r = relative_report("qpwpt.reconstruct", relative_l2_error(rec.signal, ctx.f()), 0.0, 1e-2);
    if (rec.under_resolved()) r.note = "TF-grid border carries " + format_double(rec.edge_fraction) + " of the peak";
    push_report(r);
  } else if (name == "fast") {
    const auto fast = qpft_fast(ctx.f(), cfg.mu);
    const auto direct = qpft_direct(ctx.f(), cfg.mu, fast.grid());
    push_report(relative_report("qpft.fast", relative_l2_error(fast, direct), 0.0, 1e-8));
    const auto& tf = ctx.tf();
    const auto wfast = qpwpt_fast(ctx.f(), cfg.wavelet, tf.beta, cfg.alpha, cfg.mu);
    const auto wdirect = qpwpt_direct(ctx.f(), cfg.wavelet, wfast.tf(), cfg.mu);
    push_report(relative_report("qpwpt.fast", frobenius_deviation(wfast.values(), wdirect.values()), 0.0, 1e-8));
  } else {
    throw UsageError("unknown check '" + std::string(name) + "'");
  }
}

}  // namespace


std::vector<std::string> all_check_names() {
  return {"plancherel", "parseval", "identities", "convolution", "spectral", "moyal",   "energy",   "reproducing",
          "heisenberg", "lieb:2",   "lieb:3",     "lieb:4",      "lieb:6",   "log",     "bounds",   "roundtrip",
          "fast"};
}

void validate_check_name(std::string_view name) {
  if (name.starts_with("lieb:")) {
    const double p = detail::parse_number(name.substr(5));
    if (!(p >= 2.0) || !std::isfinite(p)) throw UsageError("lieb exponent must be finite and >= 2");
    return;
  }
  for (const char* n : kFixedNames) {
    if (name == n) return;
  }
  throw UsageError("unknown check '" + std::string(name) + "'");
}

json run_checks(const std::vector<std::string>& names, const SuiteConfig& config) {
  for (const auto& n : names) validate_check_name(n);
  Context ctx(config);
  json out = json::array();
  for (const auto& n : names) run_one(n, ctx, out);
  return out;
}

bool all_passed(const json& records) {
  return std::none_of(records.begin(), records.end(),
                      [](const json& r) { return r.value("outcome", std::string()) == "fail"; });
}

json to_json(const VerificationReport& r) {
  json j = {
      {"label", r.label},
      {"lhs", complex_json(r.lhs)},
      {"rhs", complex_json(r.rhs)},
      {"relative_deviation", r.relative_deviation},
      {"tolerance", r.tolerance},
      {"passed", r.passed},
      {"outcome", outcome_of(r.passed)},
  };
  if (r.quoted_form_deviation) j["quoted_form_deviation"] = *r.quoted_form_deviation;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const UncertaintyResult& r) {
  json j = {
      {"kind", inequality_name(r.kind)},
      {"lhs", r.lhs},
      {"rhs", r.rhs},
      {"ratio", r.ratio},
      {"passed", r.passed},
      {"outcome", r.passed ? "pass" : (r.expected_violation ? "expected_violation" : "fail")},
  };
  if (r.kind == InequalityKind::lieb) j["p"] = r.p;
  if (r.corrected_rhs) j["corrected_rhs"] = *r.corrected_rhs;
  return j;
}

}  // namespace qptk
