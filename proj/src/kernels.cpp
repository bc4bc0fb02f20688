#include <cstdlib>
#include <string_view>

#include "lopart/kernels.hpp"

namespace lopart::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &scalar_table();
    case Isa::avx2:
#if defined(LOPART_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &detail::avx2_table();
#endif
      return nullptr;
  }
  return nullptr;
}

namespace {

const KernelTable& resolve() noexcept {
  if (const char* forced = std::getenv("LOPART_ISA");
      forced != nullptr && std::string_view(forced) == "scalar") {
    return scalar_table();
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace lopart::kernels
