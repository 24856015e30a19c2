#include <atomic>
#include <cstdlib>
#include <string_view>

#include "qptk/kernels.hpp"

namespace qptk::kernels {

#if defined(QPTK_HAVE_AVX2)
const Table& avx2_table_unchecked() noexcept;
#endif

const Table* avx2_table() noexcept {
#if defined(QPTK_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Table* initial_table() noexcept {
  const char* env = std::getenv("QPTK_SIMD");
  const std::string_view request = env ? env : "";
  if (request == "scalar") return &scalar_table();
  if (const Table* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

const Table& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select_kernels(Level level) noexcept {
  const Table* table = level == Level::scalar ? &scalar_table() : avx2_table();
  if (!table) return false;
  current().store(table, std::memory_order_release);
  return true;
}

std::vector<Level> available_levels() {
  std::vector<Level> levels{Level::scalar};
  if (avx2_table()) levels.push_back(Level::avx2);
  return levels;
}

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace qptk::kernels
