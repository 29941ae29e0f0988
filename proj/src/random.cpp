#include "fatpoints/random.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fatpoints {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t master_seed_from_env() {
  const char* raw = std::getenv("FATPOINTS_SEED");
  if (raw == nullptr || *raw == '\0') return kDefaultMasterSeed;
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(raw, &used, 0);
  if (raw[used] != '\0') throw std::invalid_argument(std::string("FATPOINTS_SEED is not an integer: ") + raw);
  return v;
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  std::uint64_t state = master;
  for (auto& s : out) s = splitmix64(state);
  return out;
}

}  // namespace fatpoints
