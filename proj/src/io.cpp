#include "qptk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "qptk/error.hpp"

namespace qptk {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* ext) {
  auto p = prefix;
  p += ext;
  return p;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

double parse_field(std::string_view s, std::size_t line) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<double> split_row(std::string_view row, std::size_t line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = row.find(',', pos);
    out.push_back(parse_field(row.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos),
                              line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Uniform grid through the first and last coordinates. Each spacing must agree
// with the first one; the first row that breaks the pattern is reported.
Grid recover_grid(const std::vector<double>& t, const std::vector<std::size_t>& lines) {
  const std::size_t n = t.size();
  const double first = t[1] - t[0];
  if (!(first > 0.0)) throw ParseError("coordinates must increase", lines[1]);
  for (std::size_t k = 2; k < n; ++k) {
    if (std::abs((t[k] - t[k - 1]) - first) > 1e-9 * first) throw ParseError("non-uniform spacing", lines[k]);
  }
  return {t.front(), (t.back() - t.front()) / static_cast<double>(n - 1), n};
}

json grid_json(const Grid& g) { return {{"start", g.start()}, {"step", g.step()}, {"count", g.count()}}; }

Grid grid_from_json(const json& j) {
  try {
    return {j.at("start").get<double>(), j.at("step").get<double>(), j.at("count").get<std::size_t>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad grid in sidecar: ") + e.what());
  } catch (const ContractError& e) {
    throw ParseError(std::string("bad grid in sidecar: ") + e.what());
  }
}

}  // namespace

void write_signal(const SampledSignal& f, std::ostream& out) {
  out << "t,re,im\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    out << format_double(f.grid().point(k)) << ',' << format_double(f[k].real()) << ','
        << format_double(f[k].imag()) << '\n';
  }
}

void write_signal(const SampledSignal& f, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_signal(f, out);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

SampledSignal read_signal(std::istream& in) {
  std::string row;
  std::size_t line = 0;
  if (!std::getline(in, row)) throw ParseError("empty file: no header", 1);
  ++line;
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != "t,re,im") throw ParseError("expected header 't,re,im', got '" + row + "'", line);

  std::vector<double> t;
  std::vector<cplx> v;
  std::vector<std::size_t> lines;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty() || row == "\r") continue;
    const auto fields = split_row(row, line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 columns (t,re,im), found " + std::to_string(fields.size()), line);
    }
    t.push_back(fields[0]);
    v.emplace_back(fields[1], fields[2]);
    lines.push_back(line);
  }
  if (v.empty()) throw ParseError("signal file has no samples");
  if (v.size() < 2) throw ParseError("signal file needs at least 2 samples", lines.front());
  return {recover_grid(t, lines), std::move(v)};
}

SampledSignal read_signal(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_signal(in);
}

void write_tfmap(const TFMap& w, const std::filesystem::path& prefix, bool embed_values) {
  {
    auto out = open_out(with_suffix(prefix, ".csv"));
    out << "xi\\beta";
    for (std::size_t j = 0; j < w.cols(); ++j) out << ',' << format_double(w.tf().beta.point(j));
    out << '\n';
    for (std::size_t m = 0; m < w.rows(); ++m) {
      out << format_double(w.tf().xi.point(m));
      for (std::size_t j = 0; j < w.cols(); ++j) out << ',' << format_double(std::norm(w.at(m, j)));
      out << '\n';
    }
    if (!out) throw Error("write to '" + with_suffix(prefix, ".csv").string() + "' failed");
  }

  const auto& mu = w.mu();
  json side = {
      {"schema", 1},
      {"mu", {mu.a(), mu.b(), mu.c(), mu.d(), mu.e()}},
      {"alpha", w.tf().alpha},
      {"xi_grid", grid_json(w.tf().xi)},
      {"beta_grid", grid_json(w.tf().beta)},
      {"wavelet", to_string(w.wavelet())},
  };
  if (embed_values) {
    std::vector<double> re, im;
    re.reserve(w.values().size());
    im.reserve(w.values().size());
    for (const auto& v : w.values()) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    side["values"] = {{"re", re}, {"im", im}};
  }
  auto out = open_out(with_suffix(prefix, ".json"));
  out << side.dump(2) << '\n';
  if (!out) throw Error("write to '" + with_suffix(prefix, ".json").string() + "' failed");
}

namespace {

TFMapFile read_tfmap_checked(const std::filesystem::path& prefix) {
  json side;
  {
    auto in = open_in(with_suffix(prefix, ".json"));
    try {
      side = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("sidecar is not valid JSON: ") + e.what());
    }
  }
  if (side.value("schema", 0) != 1) throw ParseError("unsupported sidecar schema");

  const Grid xi = grid_from_json(side.at("xi_grid"));
  const Grid beta = grid_from_json(side.at("beta_grid"));
  const auto mu_v = side.at("mu").get<std::vector<double>>();
  if (mu_v.size() != 5) throw ParseError("sidecar mu must have five entries");
  const ParameterSet mu(mu_v[0], mu_v[1], mu_v[2], mu_v[3], mu_v[4]);
  const TFGrid tf(xi, beta, side.at("alpha").get<double>());
  WaveletSpec spec;
  try {
    spec = parse_wavelet(side.at("wavelet").get<std::string>());
  } catch (const UsageError& e) {
    throw ParseError(std::string("sidecar wavelet: ") + e.what());
  }

  // The magnitude matrix is always read so that shape disagreements surface.
  std::vector<double> power;
  {
    auto in = open_in(with_suffix(prefix, ".csv"));
    std::string row;
    std::size_t line = 0;
    if (!std::getline(in, row)) throw ParseError("empty TF matrix", 1);
    ++line;
    const auto head = row.find(',');
    const auto beta_axis = head == std::string::npos ? std::vector<double>{} : split_row(row.substr(head + 1), line);
    if (beta_axis.size() != beta.count()) {
      throw ParseError("matrix has " + std::to_string(beta_axis.size()) + " beta columns, sidecar says " +
                       std::to_string(beta.count()), line);
    }
    std::size_t rows = 0;
    while (std::getline(in, row)) {
      ++line;
      if (row.empty()) continue;
      const auto fields = split_row(row, line);
      if (fields.size() != beta.count() + 1) {
        throw ParseError("expected " + std::to_string(beta.count() + 1) + " columns, found " +
                         std::to_string(fields.size()), line);
      }
      power.insert(power.end(), fields.begin() + 1, fields.end());
      ++rows;
    }
    if (rows != xi.count()) {
      throw ParseError("matrix has " + std::to_string(rows) + " xi rows, sidecar says " + std::to_string(xi.count()));
    }
  }

  std::vector<cplx> values(power.size());
  bool phase_known = false;
  if (side.contains("values")) {
    const auto re = side["values"].at("re").get<std::vector<double>>();
    const auto im = side["values"].at("im").get<std::vector<double>>();
    if (re.size() != power.size() || im.size() != power.size()) {
      throw ParseError("sidecar holds " + std::to_string(re.size()) + " values for a " + std::to_string(xi.count()) +
                       "x" + std::to_string(beta.count()) + " matrix");
    }
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = {re[k], im[k]};
    phase_known = true;
  } else {
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = std::sqrt(power[k]);
  }
  return {TFMap(tf, mu, spec, std::move(values)), phase_known};
}

}  // namespace

TFMapFile read_tfmap(const std::filesystem::path& prefix) {
  try {
    return read_tfmap_checked(prefix);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sidecar: ") + e.what());
  } catch (const ContractError& e) {
    throw ParseError(std::string("inconsistent TF map files: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("inconsistent TF map files: ") + e.what());
  }
}

}  // namespace qptk
