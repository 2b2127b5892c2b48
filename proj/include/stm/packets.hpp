#pragma once

// Component-group combinatorics on elementary abelian 2-groups: induced
// character multisets, predicted multiplicities, and the packet scenarios
// (Whittaker, SL2 split and elliptic tori, unitary Ginzburg-Rallis).

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "stm/error.hpp"

namespace stm::packets {

using Mask = std::uint32_t;  // element or character of (Z/2)^r
using CharMultiset = std::map<Mask, std::int64_t>;

inline constexpr int kMaxGroupRank = 16;

/// chi(x) as 0 (trivial) or 1 (sign).
inline int pair(Mask chi, Mask x) { return std::popcount(chi & x) & 1; }

inline void check_rank(int r) {
  if (r < 0 || r > kMaxGroupRank) throw InputError("2-group rank must lie in 0.." + std::to_string(kMaxGroupRank));
}

/// i : S_phi' -> S_phi together with omega on S_phi'.
struct LiftingDatum {
  int source_rank = 0;
  int target_rank = 0;
  std::vector<Mask> map;  // image of each source basis vector
  Mask omega = 0;         // character of the source

  void validate() const {
    check_rank(source_rank);
    check_rank(target_rank);
    if (map.size() != static_cast<std::size_t>(source_rank)) throw InputError("lifting map needs one image per source generator");
    const Mask tmask = target_rank == 32 ? ~Mask{0} : ((Mask{1} << target_rank) - 1);
    for (Mask m : map) {
      if (m & ~tmask) throw InputError("lifting map image outside the target group");
    }
    if (omega >> source_rank) throw InputError("omega is not a character of the source group");
  }

  Mask apply(Mask x) const {
    Mask out = 0;
    for (int k = 0; k < source_rank; ++k) {
      if ((x >> k) & 1) out ^= map[static_cast<std::size_t>(k)];
    }
    return out;
  }
};

/// True if omega vanishes on ker(map).
inline bool passes_kernel_filter(const LiftingDatum& L) {
  for (Mask x = 0; x < (Mask{1} << L.source_rank); ++x) {
    if (L.apply(x) == 0 && pair(L.omega, x)) return false;
  }
  return true;
}

/// Constituents of the induction of omega from the image of map: every
/// character chi of the target with chi o map = omega, once each. Empty when
/// omega is nontrivial on the kernel.
inline CharMultiset induced_multiset(const LiftingDatum& L) {
  L.validate();
  CharMultiset out;
  if (!passes_kernel_filter(L)) return out;
  for (Mask chi = 0; chi < (Mask{1} << L.target_rank); ++chi) {
    bool ok = true;
    for (int k = 0; k < L.source_rank && ok; ++k) {
      ok = pair(chi, L.map[static_cast<std::size_t>(k)]) == static_cast<int>((L.omega >> k) & 1);
    }
    if (ok) out[chi] += 1;
  }
  return out;
}

inline CharMultiset multiplicity_multiset(const std::vector<LiftingDatum>& liftings) {
  CharMultiset out;
  for (const auto& L : liftings) {
    if (L.target_rank != liftings.front().target_rank) throw InputError("liftings have different target groups");
    for (const auto& [chi, k] : induced_multiset(L)) out[chi] += k;
  }
  return out;
}

inline std::int64_t predicted_multiplicity(const CharMultiset& ms, Mask omega_pi) {
  auto it = ms.find(omega_pi);
  return it == ms.end() ? 0 : it->second;
}

inline std::int64_t total(const CharMultiset& ms) {
  std::int64_t s = 0;
  for (const auto& [chi, k] : ms) s += k;
  return s;
}

inline std::string char_string(Mask chi, int rank) {
  std::string out;
  for (int k = 0; k < rank; ++k) out += ((chi >> k) & 1) ? '1' : '0';
  return rank == 0 ? "()" : out;
}

inline nlohmann::json to_json(const CharMultiset& ms, int rank) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [chi, k] : ms) out[char_string(chi, rank)] = k;
  return out;
}

/// Outcome of a scenario: pass/fail, computed quantities, violated identities.
struct ScenarioReport {
  std::string scenario;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> violations;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      violations.push_back(what);
    }
  }
};

inline int log2_exact(std::int64_t n, const char* what) {
  if (n < 1 || (n & (n - 1)) != 0) throw InputError(std::string(what) + " must be a power of 2");
  return std::countr_zero(static_cast<std::uint64_t>(n));
}

/// Zero-dimensional rho_X: one lifting, the identity map, omega trivial.
inline ScenarioReport scenario_whittaker(int s_phi_rank) {
  check_rank(s_phi_rank);
  LiftingDatum L{s_phi_rank, s_phi_rank, {}, 0};
  for (int k = 0; k < s_phi_rank; ++k) L.map.push_back(Mask{1} << k);
  const CharMultiset ms = multiplicity_multiset({L});
  ScenarioReport r;
  r.scenario = "whittaker";
  r.details["s_phi_rank"] = s_phi_rank;
  r.details["multiset"] = to_json(ms, s_phi_rank);
  r.expect(ms == CharMultiset{{0, 1}}, "I(phi, rho_X) is not exactly {trivial}");
  return r;
}

/// Lifting with source Z/2 (the centre of SL2) mapping to 1 in S_phi.
inline LiftingDatum central_lifting(int s_phi_rank, int sign_bit) {
  return LiftingDatum{1, s_phi_rank, {0}, static_cast<Mask>(sign_bit)};
}

/// Split torus in SL2: |I'| = square_classes / |S_phi| liftings, all omega trivial.
inline ScenarioReport scenario_sl2_split(std::int64_t square_classes, std::int64_t s_phi_order) {
  const int q = log2_exact(square_classes, "number of square classes");
  const int r = log2_exact(s_phi_order, "|S_phi|");
  if (r > q) throw InputError("|S_phi| must divide the number of square classes");
  check_rank(r);
  const std::int64_t liftings = square_classes / s_phi_order;
  std::vector<LiftingDatum> ls(static_cast<std::size_t>(liftings), central_lifting(r, 0));
  const CharMultiset ms = multiplicity_multiset(ls);
  ScenarioReport rep;
  rep.scenario = "sl2-split";
  rep.details["square_classes"] = square_classes;
  rep.details["s_phi_order"] = s_phi_order;
  rep.details["liftings"] = liftings;
  rep.details["multiset"] = to_json(ms, r);
  rep.expect(static_cast<std::int64_t>(ms.size()) == s_phi_order, "not every character of S_phi occurs");
  for (Mask chi = 0; chi < (Mask{1} << r); ++chi) {
    rep.expect(predicted_multiplicity(ms, chi) == square_classes / s_phi_order,
               "character " + char_string(chi, r) + " does not have multiplicity |F^x/(F^x)^2|/|S_phi|");
  }
  return rep;
}

/// Elliptic torus in SL2.
///
/// Quadratic characters form (Z/2)^q with q = log2(square_classes); J is
/// the subgroup spanned by the first log2(J_order) basis vectors and
/// |S_phi| = |J|. Liftings are the cosets of J, in increasing order of
/// their smallest element, and signs[k] is eta_{E/F}(-1) eps(1/2, pi, rho_X)
/// for the k-th lifting.
inline ScenarioReport scenario_sl2_elliptic(std::int64_t square_classes, std::int64_t j_order, const std::vector<int>& signs) {
  const int q = log2_exact(square_classes, "number of square classes");
  const int j = log2_exact(j_order, "|J|");
  if (j > q) throw InputError("|J| must divide the number of square classes");
  check_rank(j);
  const std::int64_t n_lift = square_classes / j_order;
  if (static_cast<std::int64_t>(signs.size()) != n_lift) {
    throw InputError("expected " + std::to_string(n_lift) + " epsilon signs, one per lifting");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("epsilon signs must be +1 or -1");
  }
  // Coset of a quadratic character eta: drop the J coordinates.
  auto lifting_of = [&](Mask eta) { return static_cast<std::size_t>(eta >> j); };

  std::vector<LiftingDatum> ls;
  std::int64_t i_count = 0;
  for (int s : signs) {
    ls.push_back(central_lifting(j, s == 1 ? 0 : 1));
    if (s == 1) ++i_count;
  }
  const CharMultiset ms = multiplicity_multiset(ls);

  // J' for the base lifting: twists eta with positive sign.
  std::int64_t j_prime = 0;
  for (Mask eta = 0; eta < (Mask{1} << q); ++eta) {
    if (signs[lifting_of(eta)] == 1) ++j_prime;
  }

  ScenarioReport rep;
  rep.scenario = "sl2-elliptic";
  rep.details["square_classes"] = square_classes;
  rep.details["j_order"] = j_order;
  rep.details["liftings"] = n_lift;
  rep.details["I"] = i_count;
  rep.details["J_prime"] = j_prime;
  // Both tori contribute the same sum over the packet, so the doubled sum is |J'|.
  rep.details["packet_sum_doubled"] = j_prime;
  rep.details["multiset"] = to_json(ms, j);
  rep.expect(i_count * j_order == j_prime, "|I| != |J'|/|J|");
  rep.expect(total(ms) == j_prime, "sum of m(pi) over the packet != |J'|");
  for (Mask chi = 0; chi < (Mask{1} << j); ++chi) {
    rep.expect(predicted_multiplicity(ms, chi) == i_count, "packet member " + char_string(chi, j) + " does not have multiplicity |I|");
  }
  return rep;
}

/// Unitary Ginzburg-Rallis model. S_phi = (Z/2)^rank, and z = e_0 is the
/// element whose character value separates G from its pure inner form.
///
/// Two liftings: S_phi' = S_phi, omega_i(z) = signs[i]; the other values of
/// omega_i are given by omega_rest[i] (bits above 0).
/// One lifting: S_phi' is the index-2 subgroup missing the last generator,
/// and omega(z) = signs[0].
inline ScenarioReport scenario_u6(bool two_liftings, const std::vector<int>& signs, int epsilon_g, int rank = 2,
                                  std::vector<Mask> omega_rest = {}) {
  if (epsilon_g != 1 && epsilon_g != -1) throw InputError("epsilon_G must be +1 or -1");
  if (rank < 2 || rank > kMaxGroupRank) throw InputError("S_phi rank must lie in 2.." + std::to_string(kMaxGroupRank));
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("epsilon signs must be +1 or -1");
  }
  const std::size_t n_lift = two_liftings ? 2 : 1;
  if (signs.size() != n_lift) throw InputError("expected " + std::to_string(n_lift) + " epsilon sign(s)");
  if (omega_rest.empty()) omega_rest.assign(n_lift, 0);
  if (omega_rest.size() != n_lift) throw InputError("omega_rest needs one entry per lifting");
  const Mask z = 1;
  const int eg_bit = epsilon_g == 1 ? 0 : 1;

  std::vector<LiftingDatum> ls;
  for (std::size_t i = 0; i < n_lift; ++i) {
    LiftingDatum L;
    L.target_rank = rank;
    L.source_rank = two_liftings ? rank : rank - 1;
    for (int k = 0; k < L.source_rank; ++k) L.map.push_back(Mask{1} << k);
    const Mask src_mask = (Mask{1} << L.source_rank) - 1;
    L.omega = ((omega_rest[i] & ~z) | (signs[i] == 1 ? 0 : 1)) & src_mask;
    ls.push_back(L);
  }
  const CharMultiset ms = multiplicity_multiset(ls);

  std::int64_t i_g = 0;
  for (int s : signs) {
    if (s == epsilon_g) ++i_g;
  }
  std::vector<Mask> matched;
  for (const auto& [chi, k] : ms) {
    if (pair(chi, z) == eg_bit) {
      for (std::int64_t t = 0; t < k; ++t) matched.push_back(chi);
    }
  }
  const std::int64_t packet_mult = two_liftings ? i_g : 2 * i_g;

  ScenarioReport rep;
  rep.scenario = "u6";
  rep.details["liftings"] = n_lift;
  rep.details["epsilon_G"] = epsilon_g;
  rep.details["s_phi_rank"] = rank;
  rep.details["I_G"] = i_g;
  rep.details["packet_multiplicity"] = packet_mult;
  rep.details["multiset"] = to_json(ms, rank);
  rep.details["matched"] = static_cast<std::int64_t>(matched.size());
  rep.expect(total(ms) == 2, "I(phi, rho_X) does not have 2 elements");
  rep.expect(static_cast<std::int64_t>(matched.size()) == packet_mult, "number of matching characters differs from the packet multiplicity");
  if (two_liftings) {
    if (i_g == 2) {
      CharMultiset omegas;
      for (const auto& L : ls) omegas[L.omega] += 1;
      CharMultiset got;
      for (Mask chi : matched) got[chi] += 1;
      rep.expect(got == omegas, "matched characters differ from {omega_1, omega_2}");
    }
  } else {
    rep.details["distinct"] = matched.size() == 2 && matched[0] != matched[1];
    if (packet_mult == 2) rep.expect(matched.size() == 2 && matched[0] != matched[1], "omega_{phi,1} = omega_{phi,2}");
    for (const auto& [chi, k] : ms) {
      Mask restricted = chi & ((Mask{1} << (rank - 1)) - 1);
      rep.expect(restricted == ls.front().omega, "induced character does not restrict to omega");
    }
  }
  return rep;
}

/// Every sign assignment over n liftings, as +1/-1 vectors in binary order.
inline std::vector<std::vector<int>> all_sign_assignments(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<int> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = ((m >> k) & 1) ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

/// Exhaustive scenario runs: whittaker for S_phi ranks 0..4; sl2-split for
/// square classes 2, 4, 8 and every |S_phi| dividing them; sl2-elliptic for
/// square classes up to 16 with at most 4 liftings and every sign
/// assignment; u6 for both lifting shapes, every sign assignment, both
/// values of epsilon_G and every choice of omega off z.
inline std::vector<ScenarioReport> sweep(const std::string& scenario) {
  std::vector<ScenarioReport> out;
  if (scenario == "whittaker") {
    for (int r = 0; r <= 4; ++r) out.push_back(scenario_whittaker(r));
  } else if (scenario == "sl2-split") {
    for (std::int64_t q : {2, 4, 8}) {
      for (std::int64_t s = 1; s <= q; s *= 2) out.push_back(scenario_sl2_split(q, s));
    }
  } else if (scenario == "sl2-elliptic") {
    for (std::int64_t q : {2, 4, 8, 16}) {
      for (std::int64_t j = 1; j <= q; j *= 2) {
        if (q / j > 4) continue;
        for (const auto& signs : all_sign_assignments(static_cast<std::size_t>(q / j))) {
          out.push_back(scenario_sl2_elliptic(q, j, signs));
        }
      }
    }
  } else if (scenario == "u6") {
    for (bool two : {true, false}) {
      const std::size_t n = two ? 2 : 1;
      const std::vector<std::vector<Mask>> rests =
          two ? std::vector<std::vector<Mask>>{{0, 0}, {0, 2}, {2, 0}, {2, 2}} : std::vector<std::vector<Mask>>{{0}};
      for (const auto& signs : all_sign_assignments(n)) {
        for (int eg : {1, -1}) {
          for (const auto& rest : rests) out.push_back(scenario_u6(two, signs, eg, 2, rest));
        }
      }
    }
  } else {
    throw InputError("unknown scenario '" + scenario + "' (expected whittaker, sl2-split, sl2-elliptic or u6)");
  }
  return out;
}

}  // namespace stm::packets
