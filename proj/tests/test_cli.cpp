#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qptk/error.hpp"
#include "qptk/io.hpp"
#include "qptk/suite.hpp"
#include "qptk/signals.hpp"
#include "test_support.hpp"

using namespace qptk;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "qptk_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(QPTK_CLI_PATH) + " " + args;
  cmd += stdout_file.empty() ? " > /dev/null" : " > " + stdout_file;
  cmd += " 2> " + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(run("verify nosuch") == 2);
    CHECK(run("verify lieb:1") == 2);
    CHECK(run("qpft --b 0") == 2);
    CHECK(run("qpft --mu 1,0,1,0,0") == 2);
    CHECK(run("qpft --mu 1,2,3") == 2);
    CHECK(run("qpft --mu 0,1,0,0,0 --preset plain_fourier") == 2);
    CHECK(run("gen --signal sawtooth:1") == 2);
    CHECK(run("gen --t-span 3,1") == 2);
    CHECK(run("") == 2);
    CHECK(run("reconstruct --input " + path("missing")) == 2);
  }

  TEST_CASE("numerical preconditions exit with 3") {
    CHECK(run("wpt --mu 5,1,0,0,0 --out " + path("chirpy")) == 3);
    CHECK(run("gen --signal gaussian:4 --t-span -3,3") == 3);
  }

  TEST_CASE("plain Fourier spectrum of the unit Gaussian") {
    const auto out = path("spec.csv");
    REQUIRE(run("qpft --preset plain_fourier --signal gaussian:1 --n 1024 --out " + out) == 0);
    const auto q = read_signal(fs::path(out));
    double worst = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double xi = q.grid().point(k);
      worst = std::max(worst, std::abs(std::abs(q[k]) - std::pow(test::pi, -0.25) * std::exp(-xi * xi / 2)));
    }
    CHECK(worst <= 1e-6);

    const auto exact = path("spec_exact.csv");
    REQUIRE(run("qpft --preset plain_fourier --signal gaussian:1 --n 1024 --exact --out " + exact) == 0);
    CHECK(relative_l2_error(read_signal(fs::path(exact)), q) <= 1e-8);
  }

  TEST_CASE("qpft then iqpft recovers the signal") {
    const auto sig = path("h2.csv"), spec = path("h2_spec.csv"), back = path("h2_back.csv");
    REQUIRE(run("gen --signal hermite:2 --out " + sig) == 0);
    REQUIRE(run("qpft --mu 0.3,-1.5,0.2,0.1,0.4 --input " + sig + " --out " + spec) == 0);
    REQUIRE(run("iqpft --mu 0.3,-1.5,0.2,0.1,0.4 --input " + spec + " --out " + back) == 0);
    CHECK(relative_l2_error(read_signal(fs::path(back)), read_signal(fs::path(sig))) <= 1e-6);
  }

  TEST_CASE("wpt and reconstruct") {
    const auto prefix = path("map");
    REQUIRE(run("wpt --exact --preset plain_fourier --signal gaussian:1 --xi-span -8,8 --beta-span -8,8 --out " +
                prefix) == 0);
    const auto file = read_tfmap(fs::path(prefix));
    CHECK(file.map.rows() == 128);
    CHECK(file.map.cols() == 128);
    const auto report_path = path("rec.json");
    REQUIRE(run("reconstruct --signal gaussian:1 --input " + prefix + " --out " + path("rec.csv"), report_path) == 0);
    const auto report = json::parse(slurp(report_path));
    CHECK(report["relative_l2_residual"].get<double>() <= 1e-2);
    CHECK_FALSE(report["under_resolved"].get<bool>());

    // fast path with a chirped parameter set
    REQUIRE(run("wpt --mu 0.4,1.5,0.2,0.3,-0.1 --signal hermite:1 --beta-span -8,8 --out " + prefix) == 0);
    REQUIRE(run("reconstruct --signal hermite:1 --input " + prefix, report_path) == 0);
    CHECK(json::parse(slurp(report_path))["relative_l2_residual"].get<double>() <= 1e-2);

    // a cropped map is flagged
    REQUIRE(run("wpt --exact --preset plain_fourier --signal gaussian:1 --xi-span -1,1 --beta-span -1,1 --out " +
                prefix) == 0);
    REQUIRE(run("reconstruct --signal gaussian:1 --input " + prefix, report_path) == 0);
    const auto cropped = json::parse(slurp(report_path));
    CHECK(cropped["under_resolved"].get<bool>());
    CHECK(cropped["relative_l2_residual"].get<double>() > 1e-2);
    CHECK(slurp(path("stderr.txt")).find("warning") != std::string::npos);

    // a magnitude-only map cannot be inverted
    REQUIRE(run("wpt --no-values --preset plain_fourier --out " + prefix) == 0);
    CHECK(run("reconstruct --input " + prefix) == 2);
  }

  TEST_CASE("zero map reconstructs to zero") {
    const TFMap w(TFGrid(Grid::closed(-4, 4, 16), Grid::closed(-4, 4, 16), 1.0), ParameterSet(0, 1, 0, 0, 0),
                  WaveletSpec::gaussian(), std::vector<cplx>(256));
    const auto prefix = path("zero");
    write_tfmap(w, fs::path(prefix));
    REQUIRE(run("reconstruct --signal none --input " + prefix + " --out " + path("zero.csv")) == 0);
    for (const auto& v : read_signal(fs::path(path("zero.csv"))).values()) CHECK(v == cplx(0.0));
  }

  TEST_CASE("verify reports and exit codes") {
    const auto out = path("verify.json");
    REQUIRE(run("verify lieb:2 --signal gaussian:1 --out " + out) == 0);
    const auto lieb = json::parse(slurp(out));
    REQUIRE(lieb.size() == 1);
    CHECK(lieb[0]["outcome"] == "expected_violation");
    CHECK(lieb[0]["schema"] == 1);
    CHECK(lieb[0]["lhs"].get<double>() > lieb[0]["rhs"].get<double>());

    REQUIRE(run("verify --all --mu 1,2,1,1,1 --signal gaussian:1 --out " + out) == 0);
    const auto all = json::parse(slurp(out));
    CHECK(all.size() > 20);
    for (const auto& r : all) {
      CHECK(r["schema"] == 1);
      CHECK(r["outcome"] != "fail");
      CHECK(r.contains("mu"));
      CHECK(r.contains("signal"));
      CHECK(r.contains("wavelet"));
    }

    // A TF grid too narrow for the Heisenberg tail check is a precondition failure.
    CHECK(run("verify heisenberg --preset plain_fourier --xi-span -1,1 --beta-span -8,8 --out " + out) == 3);
  }

  TEST_CASE("identical invocations write identical files") {
    const std::string args = "wpt --mu 0.2,1.3,0.1,0,0 --wavelet morlet:5 --signal chirp:1,1.2 --beta-span -6,6 --out ";
    REQUIRE(run(args + path("det_a")) == 0);
    REQUIRE(run(args + path("det_b")) == 0);
    CHECK(slurp(path("det_a.csv")) == slurp(path("det_b.csv")));
    CHECK(slurp(path("det_a.json")) == slurp(path("det_b.json")));
  }

  TEST_CASE("scalar and SIMD kernels give matching results") {
    REQUIRE(run("qpft --simd scalar --mu 0.2,1.3,0.1,0,0 --signal hermite:3 --out " + path("k_scalar.csv")) == 0);
    const int rc = run("qpft --simd avx2 --mu 0.2,1.3,0.1,0,0 --signal hermite:3 --out " + path("k_avx2.csv"));
    if (rc == 2) {
      MESSAGE("AVX2 kernels unavailable");
      return;
    }
    REQUIRE(rc == 0);
    CHECK(relative_l2_error(read_signal(fs::path(path("k_avx2.csv"))), read_signal(fs::path(path("k_scalar.csv")))) <=
          1e-13);
  }
}

TEST_SUITE("suite") {
  TEST_CASE("check names") {
    for (const auto& n : all_check_names()) CHECK_NOTHROW(validate_check_name(n));
    CHECK_NOTHROW(validate_check_name("lieb:3.5"));
    CHECK_THROWS_AS(validate_check_name("lieb:x"), UsageError);
    CHECK_THROWS_AS(validate_check_name("lieb:1"), UsageError);
    CHECK_THROWS_AS(validate_check_name("nosuch"), UsageError);
  }

  TEST_CASE("records carry outcome and schema") {
    SuiteConfig cfg;
    cfg.signal_label = "gaussian:1";
    cfg.signal = generate(SignalRecipe::gaussian(1.0), cfg.signal.grid());
    const auto recs = run_checks({"energy", "moyal", "heisenberg", "lieb:2"}, cfg);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0]["outcome"] == "pass");
    CHECK(recs[3]["outcome"] == "expected_violation");
    CHECK(all_passed(recs));
    json bad = recs;
    bad[0]["outcome"] = "fail";
    CHECK_FALSE(all_passed(bad));
  }
}
