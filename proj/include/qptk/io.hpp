#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qptk/numerics.hpp"
#include "qptk/qpwpt.hpp"

namespace qptk {

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// CSV with header "t,re,im", one sample per row, LF line endings.
void write_signal(const SampledSignal& f, std::ostream& out);
void write_signal(const SampledSignal& f, const std::filesystem::path& path);

/// Parses the signal CSV. The grid is recovered from the first and last time
/// values; every row must lie within 1e-9 steps of it.
SampledSignal read_signal(std::istream& in);
SampledSignal read_signal(const std::filesystem::path& path);

/// `prefix`.csv holds |W|^2 (first row: beta axis, first column: xi axis);
/// `prefix`.json holds grids, mu, alpha, wavelet and, when `embed_values`, the
/// complex values as {"re": [...], "im": [...]} in row-major order.
void write_tfmap(const TFMap& w, const std::filesystem::path& prefix, bool embed_values = true);

/// Inverse of write_tfmap. Without embedded values the map holds sqrt of the
/// CSV magnitudes (phase lost) and `phase_known` is false.
struct TFMapFile {
  TFMap map;
  bool phase_known;
};
TFMapFile read_tfmap(const std::filesystem::path& prefix);

}  // namespace qptk
