#pragma once

// The anomaly-free test: a self-dual weight multiset splits as V + V^dual
// over the torus, and det(V) must be a square times an invariant character.

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stm/error.hpp"
#include "stm/lattice.hpp"
#include "stm/weights.hpp"

namespace stm {

/// Element of X*(T)/2X*(T).
struct PolarizationClass {
  F2Vec coset;
  bool is_zero() const {
    return std::all_of(coset.begin(), coset.end(), [](std::uint8_t x) { return x == 0; });
  }
  bool operator==(const PolarizationClass&) const = default;
};

/// One weight from each {mu, -mu} pair, summed. Also the class mod 2.
struct Polarization {
  Weight sum;
  PolarizationClass cls;
};

/// Chooses how many of the `count` copies of the pair {mu, -mu} take -mu.
/// `mu` is the canonical representative (first nonzero coordinate positive).
using FlipChooser = std::function<Int(const Weight& mu, Int count)>;

inline Int to_int(const BigInt& b) {
  if (b > std::numeric_limits<Int>::max() || b < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("multiplicity exceeds 64 bits");
  }
  return static_cast<Int>(b);
}

inline bool canonical_sign(const Weight& w) {
  for (Int x : w) {
    if (x != 0) return x > 0;
  }
  return false;
}

/// Throws NoPolarization if the multiset is not negation-symmetric or the
/// zero weight has odd multiplicity.
inline Polarization polarize(const WeightMultiset& m, std::size_t rank, const FlipChooser& flip = {}) {
  Weight sum(rank, 0);
  for (const auto& [w, k] : m.entries()) {
    if (w.size() != rank) throw InputError("weight has wrong length");
    if (is_zero(w)) {
      if (k % 2 != 0) throw NoPolarization("zero weight has odd multiplicity " + k.str());
      continue;
    }
    const BigInt other = m.multiplicity(negate(w));
    if (other != k) {
      throw NoPolarization("weight " + format_vec(w) + " has multiplicity " + k.str() + " but its negative has " + other.str());
    }
    if (!canonical_sign(w)) continue;
    const Int count = to_int(k);
    Int flipped = flip ? flip(w, count) : 0;
    if (flipped < 0 || flipped > count) throw std::logic_error("flip chooser out of range");
    sum = add(sum, scale(w, count - 2 * flipped));
  }
  return {sum, {mod2(sum)}};
}

inline PolarizationClass polarization_class(const WeightMultiset& m, std::size_t rank) { return polarize(m, rank).cls; }

/// Witness sum = 2 chi + eta, or the obstruction class.
struct AnomalyCertificate {
  bool verdict = false;
  Weight sum;
  std::optional<Weight> eta;
  std::optional<Weight> chi;
  std::optional<PolarizationClass> obstruction;
};

/// Anomaly test of a multiset against a lattice of invariant characters.
///
/// When several eta work, the one with lexicographically smallest 0/1
/// coefficients on the Hermite basis of `invariants` is reported.
inline AnomalyCertificate check_anomaly(const WeightMultiset& m, const Sublattice& invariants, const FlipChooser& flip = {}) {
  const std::size_t rank = invariants.ambient_dim();
  const Polarization p = polarize(m, rank, flip);
  AnomalyCertificate cert;
  cert.sum = p.sum;
  std::vector<F2Vec> rows;
  for (const auto& b : invariants.basis()) rows.push_back(mod2(b));
  auto coeffs = f2_solve_lexmin(rows, p.cls.coset);
  if (!coeffs) {
    cert.obstruction = p.cls;
    return cert;
  }
  Weight eta(rank, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if ((*coeffs)[i]) eta = add(eta, invariants.basis()[i]);
  }
  Weight chi = sub(p.sum, eta);
  for (auto& x : chi) {
    if (x % 2 != 0) throw std::logic_error("anomaly witness is not divisible by 2");
    x /= 2;
  }
  cert.verdict = true;
  cert.eta = eta;
  cert.chi = chi;
  return cert;
}

inline AnomalyCertificate is_anomaly_free(const RepSpec& r) {
  return check_anomaly(weight_multiset(r), r.datum->invariant_characters());
}

/// Re-verifies sum = 2 chi + eta and that eta kills every coroot.
inline bool certificate_sound(const AnomalyCertificate& c, const IntMat& coroots) {
  if (!c.verdict) return c.obstruction.has_value() && !c.obstruction->is_zero();
  if (!c.eta || !c.chi) return false;
  if (add(scale(*c.chi, 2), *c.eta) != c.sum) return false;
  for (const auto& co : coroots) {
    if (dot(*c.eta, co) != 0) return false;
  }
  return true;
}

}  // namespace stm
