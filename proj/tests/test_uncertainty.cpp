#include <doctest.h>

#include "qptk/error.hpp"
#include "qptk/signals.hpp"
#include "qptk/uncertainty.hpp"
#include "test_support.hpp"

using namespace qptk;
using test::pi;

namespace {

const Grid kGrid = Grid::half_open(-10.0, 10.0, 1024);
const WaveletSpec kGauss = WaveletSpec::gaussian();

// Log moments computed once with mpmath at 30 digits:
//   integral ln|t| N(0,1)(t) dt = (-gamma - ln 2)/2
//   integral ln|t| pi^-1/2 exp(-t^2) dt = (-gamma - 2 ln 2)/2
constexpr double kLogMomentVarianceOne = -0.63518142273073909;
constexpr double kLogMomentUnitGaussian = -0.98175501301071174;

TFMap map_for(const SampledSignal& f, const ParameterSet& mu, double alpha = 1.0, std::size_t n = 96) {
  return qpwpt_direct(f, kGauss, suggest_tf_grid(f, kGauss, alpha, mu, n, n), mu);
}

}  // namespace

TEST_SUITE("uncertainty") {
  TEST_CASE("Heisenberg constant by substitution") {
    CHECK(heisenberg_rhs(1.0, 1.0, 1.0) == 0.25);
    CHECK(heisenberg_rhs(2.0, 1.0, 1.0) == 1.0 / 16.0);
    CHECK(heisenberg_rhs(-2.0, 1.0, 1.0) == 1.0 / 16.0);
  }

  TEST_CASE("Heisenberg for the Gaussian pair") {
    const auto f = generate(SignalRecipe::gaussian(1.0), kGrid);
    const auto r = heisenberg_check(f, map_for(f, ParameterSet(0, 1, 0, 0, 0)));
    CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r.passed);
    const auto r2 = heisenberg_check(f, map_for(f, ParameterSet(0, 2, 0, 0, 0)));
    CHECK(r2.rhs == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(r2.passed);
  }

  TEST_CASE("Heisenberg tail precondition") {
    const auto f = generate(SignalRecipe::gaussian(1.0), kGrid);
    const ParameterSet mu(0, 1, 0, 0, 0);
    const auto narrow = qpwpt_direct(f, kGauss, TFGrid(Grid::closed(-2, 2, 32), Grid::closed(-6, 6, 32), 1.0), mu);
    CHECK_THROWS_AS(heisenberg_check(f, narrow), TruncationError);
  }

  TEST_CASE("Heisenberg, logarithmic and corrected Lieb bounds over the battery") {
    auto g = test::rng(42);
    std::vector<ParameterSet> mus;
    for (int k = 0; k < 5; ++k) mus.push_back(test::random_mu(g, 0.4));
    for (const auto& recipe : test::signal_battery(30)) {
      const auto f = generate(recipe, kGrid);
      for (const auto& mu : mus) {
        CAPTURE(to_string(recipe));
        CAPTURE(to_string(mu));
        const auto w = map_for(f, mu, 1.0, 64);
        const auto h = heisenberg_check(f, w);
        CHECK(h.passed);
        CHECK(h.ratio >= 1.0);
        CHECK(log_check(f, w).passed);
        const auto l = lieb_check(f, w, 4.0);
        CHECK(l.lhs <= *l.corrected_rhs * (1.0 + 1e-3));
      }
    }
  }

  TEST_CASE("verdicts are invariant under complex scaling") {
    const auto f = generate(SignalRecipe::hermite(2, 1.1), kGrid);
    const ParameterSet mu(0.2, -1.5, 0.4, 0.1, 0.3);
    const auto w = map_for(f, mu);
    const auto h = heisenberg_check(f, w);
    const auto lg = log_check(f, w);
    for (cplx c : {cplx(2.0, 0.0), cplx(0.0, -0.3), cplx(-1.5, 4.0)}) {
      const auto fs = f.scaled(c);
      const auto ws = w.scaled(c);
      const auto hs = heisenberg_check(fs, ws);
      CHECK(hs.passed == h.passed);
      CHECK(hs.ratio == doctest::Approx(h.ratio).epsilon(1e-9));
      CHECK(hs.lhs == doctest::Approx(h.lhs * std::pow(std::abs(c), 4)).epsilon(1e-9));
      CHECK(log_check(fs, ws).passed == lg.passed);
    }
  }

  TEST_CASE("Lieb bound with the stated constant") {
    const auto f = generate(SignalRecipe::gaussian(1.0), kGrid);
    const auto w = map_for(f, ParameterSet(0, 1, 0, 0, 0));
    const auto r2 = lieb_check(f, w, 2.0);
    CHECK(r2.rhs == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-10));
    CHECK(r2.lhs == doctest::Approx(energy(w)).epsilon(1e-12));
    CHECK(r2.lhs == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_FALSE(r2.passed);
    CHECK(r2.expected_violation);
    for (double p : {3.0, 4.0, 6.0}) {
      const auto r = lieb_check(f, w, p);
      // The matched Gaussian pair sits exactly 2 pi above the stated bound.
      CHECK(r.lhs / r.rhs == doctest::Approx(2 * pi).epsilon(1e-6));
      CHECK(r.expected_violation);
    }
    CHECK_THROWS_AS(lieb_check(f, w, 1.5), DomainError);
    const auto zero = lieb_check(SampledSignal(kGrid), w.scaled(0.0), 3.0);
    CHECK(zero.passed);
    CHECK(zero.lhs == 0.0);
  }

  TEST_CASE("logarithmic bound constant") {
    CHECK(log_rhs_constant(1.0) == doctest::Approx(-5.37218341922566558).epsilon(1e-15));
    CHECK(std::abs(log_rhs_constant(1.0) - (-5.3721834)) < 1e-6);
    CHECK(log_rhs_constant(1.0) - log_rhs_constant(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("Gaussian log moments") {
    // |f|^2 is the N(0,1) density for sigma = sqrt 2
    const auto wide = generate(SignalRecipe::gaussian(std::sqrt(2.0)), kGrid);
    CHECK(std::abs(log_moment(wide) - kLogMomentVarianceOne) <= 1e-4);
    const auto unit = generate(SignalRecipe::gaussian(1.0), kGrid);
    CHECK(std::abs(log_moment(unit) - kLogMomentUnitGaussian) <= 1e-4);
    // grid without a node at 0
    const auto shifted = generate(SignalRecipe::gaussian(1.0), Grid::half_open(-10.0 + 0.3 * kGrid.step(), 10.0, 1024));
    CHECK(std::abs(log_moment(shifted) - kLogMomentUnitGaussian) <= 1e-4);
    const double euler_gamma = 0.57721566490153286;
    CHECK(kLogMomentVarianceOne == doctest::Approx((-euler_gamma - std::log(2.0)) / 2).epsilon(1e-15));
  }

  TEST_CASE("logarithmic inequality for the Gaussian pair") {
    const auto f = generate(SignalRecipe::gaussian(1.0), kGrid);
    const auto r = log_check(f, map_for(f, ParameterSet(0, 1, 0, 0, 0)));
    CHECK(r.passed);
    CHECK(r.rhs == doctest::Approx(-5.37218341922566558).epsilon(1e-6));
    CHECK(r.ratio > 1.0);
  }

  TEST_CASE("preset Heisenberg constants") {
    CHECK(heisenberg_preset_bounds(Preset::classical_wpt()) == 0.25);
    CHECK(heisenberg_preset_bounds(Preset::fractional(pi / 2)) == 0.25);
    CHECK(heisenberg_preset_bounds(Preset::linear_canonical(1.0, 2.0, 3.0)) == 1.0);
    CHECK(heisenberg_preset_bounds(Preset::linear_canonical(1.0, 0.5, 3.0)) == 0.0625);
    for (double theta : {0.3, 1.1, 2.5}) {
      const double s = std::sin(theta) / 2;
      CHECK(heisenberg_preset_bounds(Preset::fractional(theta)) == doctest::Approx(s * s).epsilon(1e-15));
    }
    for (double B : {0.7, -3.0}) {
      const auto preset = Preset::linear_canonical(1.0, B, 2.0);
      CHECK(heisenberg_preset_bounds(preset) == doctest::Approx(B * B / 4).epsilon(1e-15));
      CHECK(heisenberg_preset_bounds(preset) == heisenberg_rhs(parameters_of(preset).b(), 1.0, 1.0));
    }
  }
}
