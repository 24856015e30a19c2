#include <doctest.h>

#include <chrono>

#include "qptk/error.hpp"
#include "qptk/qpwpt.hpp"
#include "qptk/signals.hpp"
#include "test_support.hpp"

using namespace qptk;
using test::pi;

namespace {

const Grid kGrid = Grid::half_open(-10.0, 10.0, 1024);
const WaveletSpec kGauss = WaveletSpec::gaussian();

SampledSignal gaussian() { return generate(SignalRecipe::gaussian(1.0), kGrid); }
SampledSignal hermite(int n) { return generate(SignalRecipe::hermite(n, 1.0), kGrid); }

double frobenius(std::span<const cplx> a, std::span<const cplx> b) {
  return test::rel_l2(test::copy(a), test::copy(b));
}

const TFGrid kSquare(Grid::closed(-8, 8, 128), Grid::closed(-8, 8, 128), 1.0);

}  // namespace

TEST_SUITE("qpwpt") {
  TEST_CASE("direct transform of zero is zero") {
    const auto w = qpwpt_direct(SampledSignal(kGrid), kGauss, TFGrid(Grid::closed(-2, 2, 5), Grid::closed(-2, 2, 4), 1.0),
                                ParameterSet(0.3, 1, 0, 0, 0));
    for (const auto& v : w.values()) CHECK(v == cplx(0.0));
    const auto wf = qpwpt_fast(SampledSignal(kGrid), kGauss, Grid::closed(-2, 2, 4), 1.0, ParameterSet(0.3, 1, 0, 0, 0));
    for (const auto& v : wf.values()) CHECK(v == cplx(0.0));
  }

  TEST_CASE("direct values follow the definition") {
    const auto f = hermite(1);
    const ParameterSet mu(0.3, -1.2, 0.5, 0.4, -0.2);
    const double xi = 0.7, beta = -0.4, alpha = 1.3;
    std::vector<cplx> v(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double t = kGrid.point(k);
      const cplx atom = test::gauss_window((t - beta) / alpha) / std::sqrt(alpha) *
                        std::polar(1.0, -0.3 * (t * t - beta * beta) - 0.4 * (t - beta));
      v[k] = f[k] * std::conj(atom) * test::amplitude(-1.2) *
             std::polar(1.0, 0.3 * t * t - 1.2 * t * xi + 0.5 * xi * xi + 0.4 * t - 0.2 * xi);
    }
    const cplx expect = test::trapezoid(v, kGrid.step());
    const auto w = qpwpt_direct(f, kGauss, TFGrid(Grid(xi, 1.0, 2), Grid(beta, 1.0, 2), alpha), mu);
    CHECK(std::abs(w.at(0, 0) - expect) < 1e-14);
    CHECK(std::abs(qpwpt_point(f, kGauss, xi, beta, alpha, mu) - expect) < 1e-14);
  }

  TEST_CASE("fast path equals direct on the FFT grid") {
    const auto f = generate(SignalRecipe::gaussian(1.0), Grid::half_open(-10, 10, 512));
    for (const auto& mu : {ParameterSet(1, 1, 0, 0, 0), ParameterSet(-0.5, -2, 0.3, 0.7, -1)}) {
      const auto fast = qpwpt_fast(f, kGauss, Grid::closed(-4, 4, 64), 1.0, mu);
      const auto direct = qpwpt_direct(f, kGauss, fast.tf(), mu);
      CHECK(frobenius(fast.values(), direct.values()) <= 1e-8);
    }
  }

  TEST_CASE("chirp resolution precondition") {
    const auto f = gaussian();
    CHECK_THROWS_AS(qpwpt_direct(f, kGauss, kSquare, ParameterSet(3, 1, 0, 0, 0)), SamplingError);
    CHECK_THROWS_AS(qpwpt_fast(f, kGauss, Grid::closed(-1, 1, 3), 1.0, ParameterSet(3, 1, 0, 0, 0)), SamplingError);
    CHECK_NOTHROW(check_chirp_resolution(kGrid, ParameterSet(2, 1, 0, 0, 0)));
  }

  TEST_CASE("spectral form reproduces the direct value") {
    const auto f = gaussian();
    const ParameterSet mu(1, 2, 1, 0, 0);
    struct Point {
      double xi, beta, alpha;
    };
    for (const auto& p : {Point{0, 0, 1}, Point{1, -1, 2}, Point{-0.6, 0.8, 0.7}}) {
      CAPTURE(p.xi);
      CAPTURE(p.alpha);
      const auto wg = spectral_w_grid(f, kGauss, p.xi, p.alpha, mu, 4096);
      const auto s = qpwpt_via_spectral(f, kGauss, p.xi, p.beta, p.alpha, mu, wg);
      const cplx d = qpwpt_point(f, kGauss, p.xi, p.beta, p.alpha, mu);
      CHECK_FALSE(s.truncated());
      CHECK(std::abs(s.value - d) / std::abs(d) <= 1e-4);
    }
    const auto wg = spectral_w_grid(f, kGauss, 0, 1, mu, 1024);
    CHECK(qpwpt_via_spectral(SampledSignal(kGrid), kGauss, 0, 0, 1, mu, wg).value == cplx(0.0));
  }

  TEST_CASE("spectral form without conjugation disagrees for an asymmetric window") {
    const auto f = gaussian();
    const ParameterSet mu(1, 2, 1, 0, 0);
    const auto spec = WaveletSpec::morlet(3.0);
    const auto wg = spectral_w_grid(f, spec, 0.5, 1.0, mu, 4096);
    const cplx d = qpwpt_point(f, spec, 0.5, 0.2, 1.0, mu);
    const auto derived = qpwpt_via_spectral(f, spec, 0.5, 0.2, 1.0, mu, wg);
    const auto quoted = qpwpt_via_spectral_quoted(f, spec, 0.5, 0.2, 1.0, mu, wg);
    CHECK(std::abs(derived.value - d) / std::abs(d) <= 1e-4);
    CHECK(std::abs(quoted.value - d) / std::abs(d) > 1e-2);
  }

  TEST_CASE("boundedness") {
    auto g = test::rng(31);
    for (int trial = 0; trial < 4; ++trial) {
      const auto mu = test::random_mu(g, 0.3);
      const auto f = hermite(trial);
      const auto w = qpwpt_fast(f, kGauss, Grid::closed(-6, 6, 48), test::uniform(g, 0.5, 2.0), mu);
      const auto r = pointwise_bound_check(w, f, 2.0);
      CHECK(r.passed);
      double peak = 0.0;
      for (const auto& v : w.values()) peak = std::max(peak, std::abs(v));
      CHECK(peak <= std::sqrt(std::abs(mu.b()) / (2 * pi)) * l2_norm(f) + 1e-9);
      for (double p : {2.0, 4.0}) CHECK(beta_lp_bound_check(w, f, p).passed);
      CHECK(pointwise_bound_check(w, f, 1.0).passed);
    }
  }

  TEST_CASE("reconstruction on a 128 x 128 grid") {
    for (const auto& f : {gaussian(), hermite(1)}) {
      const auto w = qpwpt_direct(f, kGauss, kSquare, ParameterSet(0, 1, 0, 0, 0));
      const auto rec = reconstruct(w, kGrid);
      CHECK(relative_l2_error(rec.signal, f) <= 1e-2);
      CHECK_FALSE(rec.under_resolved());
    }
    const auto zero = qpwpt_direct(SampledSignal(kGrid), kGauss, kSquare, ParameterSet(0, 1, 0, 0, 0));
    const auto rec_zero = reconstruct(zero, kGrid);
    for (const auto& v : rec_zero.signal.values()) CHECK(v == cplx(0.0));
  }

  TEST_CASE("reconstruction reports a truncated TF grid") {
    const auto f = gaussian();
    const auto w = qpwpt_direct(f, kGauss, TFGrid(Grid::closed(-1, 1, 32), Grid::closed(-1, 1, 32), 1.0),
                                ParameterSet(0, 1, 0, 0, 0));
    const auto rec = reconstruct(w, kGrid);
    CHECK(rec.under_resolved());
    CHECK(relative_l2_error(rec.signal, f) > 1e-2);
  }

  TEST_CASE("reconstruction under a chirped parameter set") {
    const auto f = hermite(2);
    const ParameterSet mu(0.5, 1.5, -0.3, 0.2, 0.4);
    const auto tf = suggest_tf_grid(f, kGauss, 1.0, mu, 128, 128);
    const auto rec = reconstruct(qpwpt_direct(f, kGauss, tf, mu), kGrid);
    CHECK(relative_l2_error(rec.signal, f) <= 1e-2);
  }

  TEST_CASE("Moyal formula and energy") {
    const ParameterSet mu(0.2, 1.5, 0.1, 0, 0);
    const auto tf = suggest_tf_grid(hermite(3), kGauss, 1.0, mu, 128, 128);
    const auto h0 = hermite(0), h1 = hermite(1);
    const auto w0 = qpwpt_direct(h0, kGauss, tf, mu);
    const auto w1 = qpwpt_direct(h1, kGauss, tf, mu);
    CHECK(moyal(w0, w0).real() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(moyal(w0, w0).imag()) < 1e-12);
    CHECK(std::abs(moyal(w0, w1)) < 1e-3);
    CHECK(energy(w0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(energy(w0.scaled(2.0)) == doctest::Approx(4 * energy(w0)).epsilon(1e-12));
    CHECK(moyal(w0, w0).real() == doctest::Approx(energy(w0)).epsilon(1e-12));

    // a pair with a large overlap
    const auto g = generate(SignalRecipe::tone(0.4, 1.2), kGrid);
    const auto wg = qpwpt_direct(g, kGauss, tf, mu);
    const cplx expect = inner_product(h0, g);
    REQUIRE(std::abs(expect) > 0.1);
    CHECK(std::abs(moyal(w0, wg) - expect) <= 1e-3 * std::abs(expect));

    CHECK_THROWS_AS(moyal(w0, qpwpt_direct(h0, kGauss, kSquare, mu)), ContractError);
    CHECK_THROWS_AS(moyal(w0, qpwpt_direct(h0, kGauss, tf, ParameterSet(0.2, 1.5, 0.1, 0, 1))), ContractError);
  }

  TEST_CASE("reproducing kernel") {
    const ParameterSet mu(0.4, -2, 0.3, 0.1, 0.5);
    for (double alpha : {0.5, 1.0, 2.0}) {
      const cplx self = reproducing_kernel(kGauss, mu, 0.3, -0.5, 0.3, -0.5, alpha, kGrid);
      CHECK(std::abs(self) == doctest::Approx(2.0 / (2 * pi)).epsilon(1e-6));
    }
    CHECK(std::abs(reproducing_kernel(kGauss, mu, 0.3, -6, 0.1, 6, 0.5, kGrid)) <= 1e-8);

    const auto f = hermite(1);
    const auto tf = suggest_tf_grid(f, kGauss, 1.0, mu, 128, 128);
    const auto w = qpwpt_direct(f, kGauss, tf, mu);
    auto g = test::rng(32);
    for (int k = 0; k < 5; ++k) {
      const double xi0 = test::uniform(g, -1.0, 1.0), beta0 = test::uniform(g, -1.5, 1.5);
      const cplx direct = qpwpt_point(f, kGauss, xi0, beta0, 1.0, mu);
      REQUIRE(std::abs(direct) > 1e-3);
      CHECK(std::abs(reproduce_at(w, xi0, beta0, kGrid) - direct) <= 1e-2 * std::abs(direct));
    }
  }

  TEST_CASE("analysis atom carries the conjugated kernel constant") {
    const ParameterSet mu(0.4, 3, 0.3, 0.1, 0.5);
    const auto a = analysis_atom(kGauss, mu, 0.2, 0.1, 1.0, kGrid);
    CHECK(l2_norm(a) * l2_norm(a) == doctest::Approx(3.0 / (2 * pi)).epsilon(1e-10));
    const auto f = hermite(2);
    // W(xi, beta) = (|b|/2pi)^-1 ... is not needed: <f, analysis atom> = conj-free definition
    CHECK(std::abs(inner_product(f, a) - qpwpt_point(f, kGauss, 0.2, 0.1, 1.0, mu)) < 1e-13);
  }

  TEST_CASE("specialized transforms") {
    const auto f = generate(SignalRecipe::linear_chirp(0.5, 1.3), kGrid);
    const TFGrid tf(Grid::closed(-3, 3, 7), Grid::closed(-2, 2, 5), 1.4);
    auto compare = [&](const ParameterSet& mu, auto&& oracle) {
      const auto w = qpwpt_direct(f, kGauss, tf, mu);
      double worst = 0.0;
      for (std::size_t m = 0; m < w.rows(); ++m) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
          worst = std::max(worst, std::abs(w.at(m, j) - oracle(tf.xi.point(m), tf.beta.point(j))));
        }
      }
      return worst;
    };
    const double A = 1.5, B = 2.0, D = 0.8;
    CHECK(compare(parameters_of(Preset::linear_canonical(A, B, D)),
                  [&](double xi, double beta) { return test::lct_wpt(f, A, B, D, xi, beta, tf.alpha); }) <= 1e-8);
    const double theta = 0.9;
    CHECK(compare(parameters_of(Preset::fractional(theta)),
                  [&](double xi, double beta) { return test::fractional_wpt(f, theta, xi, beta, tf.alpha); }) <= 1e-8);
    CHECK(compare(parameters_of(Preset::fresnel(1.7, 1.0)),
                  [&](double xi, double beta) { return test::fresnel_wpt(f, 1.7, 1.0, xi, beta, tf.alpha); }) <= 1e-8);
    CHECK(compare(parameters_of(Preset::classical_wpt()),
                  [&](double xi, double beta) { return test::classical_wpt(f, xi, beta, tf.alpha); }) <= 1e-8);
  }

  TEST_CASE("suggested TF grid covers the map") {
    const auto f = hermite(2);
    const ParameterSet mu(0.3, 2, 0, 0, 0);
    const auto tf = suggest_tf_grid(f, kGauss, 1.0, mu, 96, 80);
    CHECK(tf.xi.count() == 96);
    CHECK(tf.beta.count() == 80);
    const auto w = qpwpt_direct(f, kGauss, tf, mu);
    CHECK(energy(w) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("fast path is at least ten times faster") {
    using clock = std::chrono::steady_clock;
    const auto f = gaussian();
    const ParameterSet mu(0.2, 1, 0, 0, 0);
    const auto beta = Grid::closed(-8, 8, 128);
    auto t0 = clock::now();
    const auto fast = qpwpt_fast(f, kGauss, beta, 1.0, mu);
    const double t_fast = std::chrono::duration<double>(clock::now() - t0).count();
    t0 = clock::now();
    const auto direct = qpwpt_direct(f, kGauss, fast.tf(), mu);
    const double t_direct = std::chrono::duration<double>(clock::now() - t0).count();
    MESSAGE("direct/fast time ratio: " << t_direct / t_fast);
    CHECK(t_direct >= 10.0 * t_fast);
    CHECK(frobenius(fast.values(), direct.values()) <= 1e-8);
  }
}
