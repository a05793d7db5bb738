#include "qchain/random.hpp"

#include <bit>

namespace qchain {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 1));
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) {
    x = splitmix64(x);
    s = x;
  }
}

std::uint64_t Rng::next() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's multiply-shift; bias is negligible for the small n used here.
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

CylinderFunction random_cylinder(Rng& rng, int depth) {
  CylinderFunction f(depth);
  for (auto& v : f.values()) v = rng.complex_uniform();
  return f;
}

RealCylinderFunction random_real_cylinder(Rng& rng, int depth) {
  RealCylinderFunction f(depth);
  for (auto& v : f.values()) v = rng.uniform(-1.0, 1.0);
  return f;
}

AlgebraElement random_element(Rng& rng, int horizon, int max_terms) {
  AlgebraElement::Terms terms;
  const std::uint64_t words = std::uint64_t{1} << horizon;
  const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
  for (int i = 0; i < count; ++i) {
    const auto w = FlipWord::from_mask(rng.below(words));
    terms.insert_or_assign(w, random_cylinder(rng, horizon));
  }
  return AlgebraElement(std::move(terms));
}

}  // namespace qchain
