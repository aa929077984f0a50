#include <cstdlib>
#include <string>

#include "tspn/kernels.hpp"

namespace tspn::kernels {

#if !defined(TSPN_HAVE_AVX2)
const Table* avx2_table() { return nullptr; }
#endif
#if !defined(TSPN_HAVE_NEON)
const Table* neon_table() { return nullptr; }
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return avx2_table() != nullptr;
    case Isa::Neon: return neon_table() != nullptr;
  }
  return false;
}

const Table& table_for(Isa isa) {
  const Table* t = nullptr;
  if (isa == Isa::Avx2) t = avx2_table();
  if (isa == Isa::Neon) t = neon_table();
  return t ? *t : scalar_table();
}

const Table& active() {
  static const Table& chosen = [&]() -> const Table& {
    if (const char* forced = std::getenv("TSPN_ISA")) {
      std::string name(forced);
      if (name == "scalar") return scalar_table();
      if (name == "avx2" && avx2_table()) return *avx2_table();
      if (name == "neon" && neon_table()) return *neon_table();
    }
    if (const Table* t = avx2_table()) return *t;
    if (const Table* t = neon_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace tspn::kernels
