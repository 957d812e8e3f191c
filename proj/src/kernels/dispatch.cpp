#include <cstdlib>
#include <cstring>

#include "phaseonly/kernels.hpp"

namespace phaseonly::kernels {
namespace {

const KernelTable& choose() {
  const char* force = std::getenv("PHASEONLY_SIMD");
  if (force != nullptr && std::strcmp(force, "scalar") == 0) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace phaseonly::kernels
