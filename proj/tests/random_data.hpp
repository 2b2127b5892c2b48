#pragma once

// Seeded random root data and representations of small rank.

#include <random>
#include <string>
#include <vector>

#include "stm/presets.hpp"
#include "stm/weights.hpp"

namespace testdata {

inline const std::vector<std::string>& small_groups() {
  static const std::vector<std::string> g{"A1",   "A1ad", "A2",     "A2ad", "B2",   "B2ad",   "G2",   "A3",
                                          "A3ad", "B3",   "C3",     "A1xA1", "A1xT1", "A2xT1", "B2xT2", "A1xA1xT2",
                                          "C2xA1", "T2",  "A1xA2", "GL2"};
  return g;
}

inline stm::DatumPtr random_datum(std::mt19937_64& rng) {
  const auto& names = small_groups();
  const std::string name = names[rng() % names.size()];
  if (name == "GL2") return stm::share(stm::build_preset("GL2"));
  return stm::share(stm::resolve_group(name));
}

/// A random dominant character of d with small coordinates.
inline stm::Weight random_dominant(std::mt19937_64& rng, const stm::RootDatum& d) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    stm::RatVec v(d.rank(), stm::Rational(0));
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i) v[i] = static_cast<stm::Int>(rng() % 3 == 0 ? 1 : 0);
    for (std::size_t i = d.semisimple_rank(); i < d.rank(); ++i) v[i] = static_cast<stm::Int>(rng() % 5) - 2;
    try {
      const stm::Weight w = d.from_ambient(v);
      if (d.is_dominant(w)) return w;
    } catch (const stm::InputError&) {
    }
  }
  return stm::Weight(d.rank(), 0);
}

/// One or two summands with multiplicity 1 or 2.
inline stm::RepSpec random_rep(std::mt19937_64& rng, const stm::DatumPtr& d) {
  std::map<stm::Weight, stm::BigInt> s;
  const int n = 1 + static_cast<int>(rng() % 2);
  for (int k = 0; k < n; ++k) s[random_dominant(rng, *d)] += 1 + static_cast<int>(rng() % 2);
  return stm::RepSpec(d, s);
}

}  // namespace testdata
