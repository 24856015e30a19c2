#include "qptk/signals.hpp"

#include <cmath>
#include <cstdio>

#include "parse_util.hpp"
#include "qptk/error.hpp"

namespace qptk {

namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("signal width sigma must be finite and > 0");
}

double gaussian_envelope(double x, double sigma) {
  return std::pow(kPi * sigma * sigma, -0.25) * std::exp(-x * x / (2.0 * sigma * sigma));
}

// Normalized Hermite function h_n(x) by the three-term recurrence.
double hermite_function(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

SignalRecipe SignalRecipe::gaussian(double sigma) {
  require_sigma(sigma);
  SignalRecipe r;
  r.sigma = sigma;
  return r;
}

SignalRecipe SignalRecipe::hermite(int n, double sigma) {
  require_sigma(sigma);
  if (n < 0 || n > 6) throw DomainError("hermite order must be in 0..6");
  SignalRecipe r;
  r.kind = Kind::hermite;
  r.order = n;
  r.sigma = sigma;
  return r;
}

SignalRecipe SignalRecipe::linear_chirp(double rate, double sigma) {
  auto r = gaussian(sigma);
  r.kind = Kind::linear_chirp;
  r.rate = rate;
  return r;
}

SignalRecipe SignalRecipe::quadratic_chirp(double rate, double sigma) {
  auto r = gaussian(sigma);
  r.kind = Kind::quadratic_chirp;
  r.rate = rate;
  return r;
}

SignalRecipe SignalRecipe::rect(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("rect width must be finite and > 0");
  SignalRecipe r;
  r.kind = Kind::rect;
  r.width = width;
  return r;
}

SignalRecipe SignalRecipe::tone(double omega, double sigma) {
  auto r = gaussian(sigma);
  r.kind = Kind::tone;
  r.omega = omega;
  return r;
}

cplx SignalRecipe::evaluate(double t) const {
  const double x = t - center;
  cplx v;
  switch (kind) {
    case Kind::gaussian: v = gaussian_envelope(x, sigma); break;
    case Kind::hermite: v = hermite_function(order, x / sigma) / std::sqrt(sigma); break;
    case Kind::linear_chirp: v = std::polar(gaussian_envelope(x, sigma), rate * x * x / 2.0); break;
    case Kind::quadratic_chirp: v = std::polar(gaussian_envelope(x, sigma), rate * x * x * x / 3.0); break;
    case Kind::rect: v = std::abs(x) <= width / 2.0 ? 1.0 / std::sqrt(width) : 0.0; break;
    case Kind::tone: v = std::polar(gaussian_envelope(x, sigma), omega * x); break;
  }
  return amplitude * v;
}

SampledSignal generate(const SignalRecipe& recipe, const Grid& grid) {
  std::vector<cplx> v(grid.count());
  for (std::size_t k = 0; k < grid.count(); ++k) v[k] = recipe.evaluate(grid.point(k));
  SampledSignal out(grid, std::move(v));
  if (recipe.kind != SignalRecipe::Kind::rect) {
    const double edge = edge_fraction(out.values());
    if (edge > 1e-6) {
      throw TruncationError("grid [" + std::to_string(grid.start()) + ", " + std::to_string(grid.last()) +
                            "] truncates signal " + to_string(recipe) + " (edge/peak = " + std::to_string(edge) +
                            ")");
    }
  }
  return out;
}

SignalRecipe parse_recipe(std::string_view text) {
  double center = 0.0;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    center = detail::parse_number(text.substr(at + 1));
    text = text.substr(0, at);
  }
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const auto args =
      colon == std::string_view::npos ? std::vector<double>{} : detail::parse_number_list(text.substr(colon + 1));
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw UsageError("signal '" + std::string(name) + "' takes " + std::to_string(lo) +
                       (lo == hi ? "" : "-" + std::to_string(hi)) + " argument(s)");
    }
  };
  auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };

  SignalRecipe r;
  try {
    if (name == "gaussian") {
      need(0, 1);
      r = SignalRecipe::gaussian(arg(0, 1.0));
    } else if (name == "hermite") {
      need(1, 2);
      if (args[0] != std::floor(args[0])) throw UsageError("hermite order must be an integer");
      r = SignalRecipe::hermite(static_cast<int>(args[0]), arg(1, 1.0));
    } else if (name == "chirp" || name == "linear_chirp") {
      need(1, 2);
      r = SignalRecipe::linear_chirp(args[0], arg(1, 1.0));
    } else if (name == "qchirp" || name == "quadratic_chirp") {
      need(1, 2);
      r = SignalRecipe::quadratic_chirp(args[0], arg(1, 1.0));
    } else if (name == "rect") {
      need(0, 1);
      r = SignalRecipe::rect(arg(0, 1.0));
    } else if (name == "tone") {
      need(1, 2);
      r = SignalRecipe::tone(args[0], arg(1, 1.0));
    } else {
      throw UsageError("unknown signal '" + std::string(name) + "'");
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  r.center = center;
  return r;
}

std::string to_string(const SignalRecipe& r) {
  char buf[160];
  switch (r.kind) {
    case SignalRecipe::Kind::gaussian: std::snprintf(buf, sizeof buf, "gaussian:%.17g", r.sigma); break;
    case SignalRecipe::Kind::hermite: std::snprintf(buf, sizeof buf, "hermite:%d,%.17g", r.order, r.sigma); break;
    case SignalRecipe::Kind::linear_chirp:
      std::snprintf(buf, sizeof buf, "chirp:%.17g,%.17g", r.rate, r.sigma);
      break;
    case SignalRecipe::Kind::quadratic_chirp:
      std::snprintf(buf, sizeof buf, "qchirp:%.17g,%.17g", r.rate, r.sigma);
      break;
    case SignalRecipe::Kind::rect: std::snprintf(buf, sizeof buf, "rect:%.17g", r.width); break;
    case SignalRecipe::Kind::tone: std::snprintf(buf, sizeof buf, "tone:%.17g,%.17g", r.omega, r.sigma); break;
  }
  std::string out(buf);
  if (r.center != 0.0) {
    std::snprintf(buf, sizeof buf, "@%.17g", r.center);
    out += buf;
  }
  return out;
}

}  // namespace qptk
