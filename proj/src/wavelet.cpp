#include "qptk/wavelet.hpp"

#include <cmath>
#include <cstdio>

#include "qptk/error.hpp"
#include "parse_util.hpp"

namespace qptk {

namespace {

// (2/sqrt 3) pi^-1/4
const double kMexicanHatNorm = 2.0 / std::sqrt(3.0) * std::pow(kPi, -0.25);
const double kGaussianNorm = std::pow(kPi, -0.25);

// Admissible complex Morlet: c (exp(i w t) - exp(-w^2/2)) exp(-t^2/2) with
// ||.||^2 = sqrt(pi) (1 + exp(-w^2) - 2 exp(-3 w^2 / 4)).
double morlet_norm(double w) {
  return 1.0 / std::sqrt(std::sqrt(kPi) * (1.0 + std::exp(-w * w) - 2.0 * std::exp(-0.75 * w * w)));
}

}  // namespace

cplx WaveletSpec::evaluate(double t) const {
  const double env = std::exp(-0.5 * t * t);
  switch (kind) {
    case Kind::gaussian_window:
      return kGaussianNorm * env;
    case Kind::mexican_hat:
      return kMexicanHatNorm * (1.0 - t * t) * env;
    case Kind::morlet:
      return morlet_norm(omega0) * (std::polar(1.0, omega0 * t) - std::exp(-0.5 * omega0 * omega0)) * env;
  }
  return 0.0;
}

cplx WaveletSpec::scaled(double t, double alpha) const {
  const double s = scaling == Scaling::l2 ? 1.0 / std::sqrt(alpha) : 1.0 / alpha;
  return s * evaluate(t / alpha);
}

double WaveletSpec::support_radius() const {
  // exp(-t^2/2) < 1e-12 beyond 7.44; the mexican hat's t^2 factor needs a bit more.
  return kind == Kind::mexican_hat ? 8.5 : 7.5;
}

WaveletSpec parse_wavelet(std::string_view text) {
  WaveletSpec spec;
  if (text.ends_with("/l1")) {
    spec.scaling = WaveletSpec::Scaling::l1;
    text.remove_suffix(3);
  }
  if (text == "gaussian" || text == "gaussian_window") {
    spec.kind = WaveletSpec::Kind::gaussian_window;
  } else if (text == "mexican_hat") {
    spec.kind = WaveletSpec::Kind::mexican_hat;
  } else if (text.starts_with("morlet")) {
    spec.kind = WaveletSpec::Kind::morlet;
    if (text.size() > 6) {
      if (text[6] != ':') throw UsageError("morlet wavelet takes the form morlet:omega0");
      spec.omega0 = detail::parse_number(text.substr(7));
    }
  } else {
    throw UsageError("unknown wavelet '" + std::string(text) + "' (gaussian | mexican_hat | morlet:w0)");
  }
  return spec;
}

std::string to_string(const WaveletSpec& spec) {
  std::string out;
  switch (spec.kind) {
    case WaveletSpec::Kind::gaussian_window: out = "gaussian"; break;
    case WaveletSpec::Kind::mexican_hat: out = "mexican_hat"; break;
    case WaveletSpec::Kind::morlet: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "morlet:%.17g", spec.omega0);
      out = buf;
      break;
    }
  }
  if (spec.scaling == WaveletSpec::Scaling::l1) out += "/l1";
  return out;
}

Grid default_grid(const WaveletSpec& spec) {
  const double r = 2.0 * spec.support_radius();
  return Grid::closed(-r, r, 2049);
}

SampledSignal mother(const WaveletSpec& spec, const Grid& grid) {
  std::vector<cplx> v(grid.count());
  for (std::size_t k = 0; k < grid.count(); ++k) v[k] = spec.evaluate(grid.point(k));
  const double edge = edge_fraction(v);
  if (edge > 1e-6) {
    throw TruncationError("grid [" + std::to_string(grid.start()) + ", " + std::to_string(grid.last()) +
                          "] truncates the wavelet (edge/peak = " + std::to_string(edge) + ")");
  }
  return {grid, std::move(v)};
}

double wavelet_lp_norm(const WaveletSpec& spec, double p) { return lp_norm(mother(spec, default_grid(spec)), p); }

cplx qp_atom_value(const WaveletSpec& spec, const QPWaveletAtom& atom, double t) {
  const double a = atom.mu.a(), d = atom.mu.d(), beta = atom.beta;
  return spec.scaled(t - beta, atom.alpha) * std::polar(1.0, -a * (t * t - beta * beta) - d * (t - beta));
}

SampledSignal qp_atom(const WaveletSpec& spec, const QPWaveletAtom& atom, const Grid& t_grid) {
  if (!(atom.alpha > 0.0)) throw DomainError("wavelet scale alpha must be > 0");
  std::vector<cplx> v(t_grid.count());
  for (std::size_t k = 0; k < t_grid.count(); ++k) v[k] = qp_atom_value(spec, atom, t_grid.point(k));
  return {t_grid, std::move(v)};
}

}  // namespace qptk
