#pragma once

// Formal sign calculus for the orthogonal Gan-Gross-Prasad case. Epsilon
// factors and det(-1) values are free generators of an F2 vector space;
// the eigenspace rule and the closed index-set formula are evaluated side
// by side.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "stm/error.hpp"

namespace stm::eps {

using Int = std::int64_t;

enum class GenKind { kEps, kDetN, kDetM, kEtaEF };

/// eps(M1_i, N1_j), detm1(N1_j), detm1(M1_i) or eta_EF(-1).
struct Generator {
  GenKind kind;
  int i = 0;
  int j = 0;
  auto operator<=>(const Generator&) const = default;

  std::string to_string() const {
    switch (kind) {
      case GenKind::kEps: return "eps(M1_" + std::to_string(i + 1) + ",N1_" + std::to_string(j + 1) + ")";
      case GenKind::kDetN: return "detm1(N1_" + std::to_string(j + 1) + ")";
      case GenKind::kDetM: return "detm1(M1_" + std::to_string(i + 1) + ")";
      case GenKind::kEtaEF: return "eta_EF";
    }
    return "?";
  }
};

inline Generator eps_gen(int i, int j) { return {GenKind::kEps, i, j}; }
inline Generator detn_gen(int j) { return {GenKind::kDetN, 0, j}; }
inline Generator detm_gen(int i) { return {GenKind::kDetM, i, 0}; }

/// Element of the F2 space on the generators; a product of signs written additively.
class SignExpr {
 public:
  SignExpr() = default;

  void toggle(const Generator& g) {
    if (!terms_.erase(g)) terms_.insert(g);
  }
  SignExpr& operator+=(const SignExpr& o) {
    for (const auto& g : o.terms_) toggle(g);
    return *this;
  }
  friend SignExpr operator+(SignExpr a, const SignExpr& b) { return a += b; }
  bool operator==(const SignExpr&) const = default;

  bool trivial() const { return terms_.empty(); }
  const std::set<Generator>& terms() const { return terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "+1";
    std::string out;
    for (const auto& g : terms_) out += (out.empty() ? "" : " + ") + g.to_string();
    return out;
  }

 private:
  std::set<Generator> terms_;
};

/// Kind 1: self-dual of the ambient type, multiplicity group O(m).
/// Kind 2: self-dual of the opposite type, multiplicity group Sp(2m).
/// Kind 3: V + V^dual, multiplicity group GL(m).
enum class AtomKind { kOrthogonalGroup = 1, kSymplecticGroup = 2, kPair = 3 };

struct Atom {
  AtomKind kind;
  Int mult;  // m for kinds 1 and 3; the atom occurs 2m times for kind 2
  Int dim;   // formal dimension of the Weil-Deligne atom

  /// Dimension of the space the multiplicity group acts on.
  Int space_dim() const { return kind == AtomKind::kOrthogonalGroup ? mult : 2 * mult; }
  /// Formal dimension of the block the multiplicity space tensors with.
  Int block_dim() const { return kind == AtomKind::kPair ? 2 * dim : dim; }
};

/// M (symplectic, of the Sp_{2m} side) and N (orthogonal, of the O_{2n} side).
struct WDShape {
  std::vector<Atom> m_atoms;
  std::vector<Atom> n_atoms;

  std::vector<std::size_t> m1() const { return of_kind(m_atoms, AtomKind::kOrthogonalGroup); }
  std::vector<std::size_t> n1() const { return of_kind(n_atoms, AtomKind::kOrthogonalGroup); }

  Int total_dim(const std::vector<Atom>& side) const {
    Int s = 0;
    for (const auto& a : side) s += a.space_dim() * a.block_dim();
    return s;
  }

  void validate() const {
    auto check = [](const std::vector<Atom>& side, bool symplectic_side) {
      for (const auto& a : side) {
        if (a.mult < 1) throw InputError("atom multiplicity must be positive");
        if (a.dim < 1) throw InputError("atom dimension must be positive");
        // Kind 1 on M and kind 2 on N are symplectic atoms.
        const bool symplectic_atom = (a.kind == AtomKind::kOrthogonalGroup) == symplectic_side;
        if (a.kind != AtomKind::kPair && symplectic_atom && a.dim % 2 != 0) {
          throw InputError("symplectic atom must have even dimension");
        }
      }
    };
    check(m_atoms, true);
    check(n_atoms, false);
    if (total_dim(n_atoms) % 2 != 0) throw InputError("orthogonal side must have even total dimension");
  }

  std::string to_string() const {
    auto side = [](const std::vector<Atom>& atoms, char tag) {
      std::string out;
      for (const auto& a : atoms) {
        out += (out.empty() ? "" : " ") + std::string(1, tag) + std::to_string(static_cast<int>(a.kind)) +
               "(m=" + std::to_string(a.mult) + ",d=" + std::to_string(a.dim) + ")";
      }
      return out.empty() ? std::string("-") : out;
    };
    return "M: " + side(m_atoms, 'M') + "; N: " + side(n_atoms, 'N');
  }

 private:
  static std::vector<std::size_t> of_kind(const std::vector<Atom>& side, AtomKind k) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (side[i].kind == k) out.push_back(i);
    }
    return out;
  }
};

/// A representative of an element of the centralizer, recorded by the
/// dimension of the -1 eigenspace of its component on each multiplicity space.
struct PacketElement {
  std::vector<Int> m_minus;
  std::vector<Int> n_minus;
};

inline void validate(const WDShape& shape, const PacketElement& s) {
  shape.validate();
  auto check = [](const std::vector<Atom>& atoms, const std::vector<Int>& minus) {
    if (atoms.size() != minus.size()) throw InputError("packet element does not match the shape");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Int k = minus[i];
      if (k < 0 || k > atoms[i].space_dim()) throw InputError("eigenspace dimension out of range");
      if (atoms[i].kind != AtomKind::kOrthogonalGroup && k % 2 != 0) {
        throw InputError("eigenspace dimension must be even for Sp and GL multiplicity groups");
      }
    }
  };
  check(shape.m_atoms, s.m_minus);
  check(shape.n_atoms, s.n_minus);
}

/// Image of s in S_phi: one bit per kind-1 atom, set when det = -1.
struct SignElement {
  std::vector<std::uint8_t> a_m;
  std::vector<std::uint8_t> a_n;
  bool operator==(const SignElement&) const = default;
};

inline SignElement component_image(const WDShape& shape, const PacketElement& s) {
  SignElement out;
  for (std::size_t i : shape.m1()) out.a_m.push_back(static_cast<std::uint8_t>(s.m_minus[i] % 2));
  for (std::size_t j : shape.n1()) out.a_n.push_back(static_cast<std::uint8_t>(s.n_minus[j] % 2));
  return out;
}

inline std::string to_string(const SignElement& e) {
  std::string out = "a_M=(";
  for (std::size_t i = 0; i < e.a_m.size(); ++i) out += (i ? "," : "") + std::string(e.a_m[i] ? "-" : "+");
  out += ") a_N=(";
  for (std::size_t j = 0; j < e.a_n.size(); ++j) out += (j ? "," : "") + std::string(e.a_n[j] ? "-" : "+");
  return out + ")";
}

/// Parity of the -1 eigenspace of g x h on C^a tensor C^b, given the
/// -1 eigenspace dimensions dg, dh of g and h.
inline Int tensor_minus_parity(Int dg, Int a, Int dh, Int b) { return ((dg % 2) * (b % 2) + (a % 2) * (dh % 2)) % 2; }

/// eps(M1_i, N1_j) + detm1(N1_j)^{dim(M1_i)/2}; indices are ordinal among kind-1 atoms.
inline SignExpr block_sign(int i, int j, Int dim_m) {
  SignExpr e;
  e.toggle(eps_gen(i, j));
  if ((dim_m / 2) % 2 != 0) e.toggle(detn_gen(j));
  return e;
}

/// The character computed from the -1 eigenspace of rho_X(s), block by block.
inline SignExpr ggp_omega(const WDShape& shape, const PacketElement& s) {
  validate(shape, s);
  SignExpr out;
  int oi = -1;
  for (std::size_t i = 0; i < shape.m_atoms.size(); ++i) {
    const Atom& a = shape.m_atoms[i];
    if (a.kind == AtomKind::kOrthogonalGroup) ++oi;
    int oj = -1;
    for (std::size_t j = 0; j < shape.n_atoms.size(); ++j) {
      const Atom& b = shape.n_atoms[j];
      if (b.kind == AtomKind::kOrthogonalGroup) ++oj;
      const Int k = tensor_minus_parity(s.m_minus[i], a.space_dim(), s.n_minus[j], b.space_dim());
      if (k == 0) continue;
      // Only the (symplectic atom, orthogonal atom) blocks with O x O
      // multiplicity groups carry a sign; every other block contributes 1.
      if (a.kind == AtomKind::kOrthogonalGroup && b.kind == AtomKind::kOrthogonalGroup) out += block_sign(oi, oj, a.dim);
    }
  }
  return out;
}

/// The closed formula over the four index sets
/// I1 x J2odd, I2odd x J1, I1even x J1odd, I1odd x J1even.
inline SignExpr ggp_chi(const WDShape& shape, const PacketElement& s) {
  validate(shape, s);
  const SignElement e = component_image(shape, s);
  const auto m1 = shape.m1();
  const auto n1 = shape.n1();
  SignExpr out;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const bool in_i1 = e.a_m[i];
    const bool m_odd = shape.m_atoms[m1[i]].mult % 2 != 0;
    for (std::size_t j = 0; j < n1.size(); ++j) {
      const bool in_j1 = e.a_n[j];
      const bool n_odd = shape.n_atoms[n1[j]].mult % 2 != 0;
      const bool fires = (in_i1 && !in_j1 && n_odd) || (!in_i1 && m_odd && in_j1) ||
                         (in_i1 && !m_odd && in_j1 && n_odd) || (in_i1 && m_odd && in_j1 && !n_odd);
      if (fires) out += block_sign(static_cast<int>(i), static_cast<int>(j), shape.m_atoms[m1[i]].dim);
    }
  }
  return out;
}

/// Unbiased draw from [lo, hi]; written out so transcripts do not depend
/// on the standard library's distribution implementation.
inline Int draw(std::mt19937_64& rng, Int lo, Int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<Int>(x % span);
}

/// A representative of the given sign element with random eigenspace dimensions.
inline PacketElement random_representative(const WDShape& shape, const SignElement& e, std::mt19937_64& rng) {
  auto side = [&rng](const std::vector<Atom>& atoms, const std::vector<std::uint8_t>& bits) {
    std::vector<Int> out;
    std::size_t bit = 0;
    for (const auto& a : atoms) {
      if (a.kind == AtomKind::kOrthogonalGroup) {
        const Int parity = bits[bit++];
        // k in [0, m] with k = parity mod 2
        const Int count = (a.mult - parity) / 2 + 1;
        if (a.mult < parity) throw InputError("sign element has no representative");
        out.push_back(parity + 2 * draw(rng, 0, count - 1));
      } else {
        out.push_back(2 * draw(rng, 0, a.mult));
      }
    }
    return out;
  };
  return {side(shape.m_atoms, e.a_m), side(shape.n_atoms, e.a_n)};
}

struct GgpCounterexample {
  WDShape shape;
  SignElement element;
  PacketElement representative;
  SignExpr omega;
  SignExpr chi;
  std::string reason;
};

struct GgpResult {
  bool ok = true;
  std::size_t elements = 0;
  std::size_t evaluations = 0;
  std::optional<GgpCounterexample> counterexample;
};

/// Checks omega = chi on every element of (Z/2)^{a1+b1}, each through
/// `trials` random representatives, and that omega is representative-independent.
inline GgpResult verify_ggp_identity(const WDShape& shape, int trials, std::mt19937_64& rng) {
  if (trials < 1) throw InputError("trials must be at least 1");
  shape.validate();
  const std::size_t a1 = shape.m1().size(), b1 = shape.n1().size();
  const std::size_t bits = a1 + b1;
  if (bits > 20) throw InputError("sign group too large to exhaust");
  GgpResult res;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    SignElement e;
    for (std::size_t i = 0; i < a1; ++i) e.a_m.push_back((mask >> i) & 1);
    for (std::size_t j = 0; j < b1; ++j) e.a_n.push_back((mask >> (a1 + j)) & 1);
    ++res.elements;
    std::optional<SignExpr> first;
    for (int t = 0; t < trials; ++t) {
      const PacketElement s = random_representative(shape, e, rng);
      const SignExpr omega = ggp_omega(shape, s);
      const SignExpr chi = ggp_chi(shape, s);
      ++res.evaluations;
      std::string reason;
      if (!(omega == chi)) reason = "omega differs from chi_N x chi_M";
      else if (first && !(*first == omega)) reason = "omega depends on the representative";
      if (!reason.empty()) {
        res.ok = false;
        res.counterexample = GgpCounterexample{shape, e, s, omega, chi, reason};
        return res;
      }
      if (!first) first = omega;
    }
  }
  return res;
}

inline GgpResult verify_ggp_identity(const WDShape& shape, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return verify_ggp_identity(shape, trials, rng);
}

/// Random shape with exactly a1 kind-1 M atoms and b1 kind-1 N atoms plus
/// up to two atoms of each other kind per side.
inline WDShape random_shape(std::mt19937_64& rng, Int a1, Int b1, Int max_mult, Int max_dim) {
  if (a1 < 0 || b1 < 0 || max_mult < 1 || max_dim < 2) throw InputError("invalid shape bounds");
  auto atom = [&](AtomKind k, bool symplectic) {
    const Int mult = draw(rng, 1, max_mult);
    const Int dim = symplectic && k != AtomKind::kPair ? 2 * draw(rng, 1, max_dim / 2) : draw(rng, 1, max_dim);
    return Atom{k, mult, dim};
  };
  WDShape s;
  for (Int i = 0; i < a1; ++i) s.m_atoms.push_back(atom(AtomKind::kOrthogonalGroup, true));
  for (Int i = draw(rng, 0, 2); i > 0; --i) s.m_atoms.push_back(atom(AtomKind::kSymplecticGroup, false));
  for (Int i = draw(rng, 0, 2); i > 0; --i) s.m_atoms.push_back(atom(AtomKind::kPair, false));
  for (Int j = 0; j < b1; ++j) s.n_atoms.push_back(atom(AtomKind::kOrthogonalGroup, false));
  for (Int j = draw(rng, 0, 2); j > 0; --j) s.n_atoms.push_back(atom(AtomKind::kSymplecticGroup, true));
  for (Int j = draw(rng, 0, 2); j > 0; --j) s.n_atoms.push_back(atom(AtomKind::kPair, false));
  if (s.total_dim(s.n_atoms) % 2 != 0) {
    // Some kind-1 N atom has odd multiplicity and odd dimension; move its dimension by one.
    for (auto& a : s.n_atoms) {
      if (a.kind == AtomKind::kOrthogonalGroup && a.mult % 2 != 0) {
        a.dim = a.dim < max_dim ? a.dim + 1 : a.dim - 1;
        break;
      }
    }
  }
  s.validate();
  return s;
}

}  // namespace stm::eps
