#include "rctsim/random.hpp"

namespace rctsim {

std::uint64_t hash_string(std::string_view text) noexcept {
  // FNV-1a, then avalanche.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace rctsim
