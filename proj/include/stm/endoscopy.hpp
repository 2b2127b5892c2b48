#pragma once

// Finite-order torus elements up to Weyl conjugacy, their centralizer root
// subsystems, -1 eigenspaces, and the anomaly scan over them with Levi
// recursion.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "stm/anomaly.hpp"
#include "stm/error.hpp"
#include "stm/lattice.hpp"
#include "stm/root_datum.hpp"
#include "stm/weights.hpp"

namespace stm {

/// q = num / order in X_*(T) tensor Q, reduced so that order is exact.
struct TorsionElement {
  IntVec num;  // entries in [0, order)
  Int order = 1;

  static TorsionElement make(IntVec num, Int den) {
    for (auto& x : num) x = detail::mod_floor(x, den);
    Int g = den;
    for (Int x : num) g = std::gcd(g, x);
    for (auto& x : num) x /= g;
    return {std::move(num), den / g};
  }

  /// <mu, q> mod 1 as a numerator over `order`.
  Int phase(const Weight& mu) const { return detail::mod_floor(dot(mu, num), order); }
  bool acts_by_minus_one(const Weight& mu) const { return order % 2 == 0 && phase(mu) == order / 2; }
  bool fixes(const Weight& mu) const { return phase(mu) == 0; }

  RatVec q() const {
    RatVec out;
    for (Int x : num) out.emplace_back(x, order);
    return out;
  }
  std::string to_string() const { return format_vec(q()); }

  auto operator<=>(const TorsionElement& o) const {
    if (order != o.order) return order <=> o.order;
    return num <=> o.num;
  }
  bool operator==(const TorsionElement&) const = default;
};

inline constexpr Int kMaxTorsionOrder = 6;
inline constexpr std::size_t kMaxTorsionRank = 8;

/// Weyl classes of elements of T with s^m = 1, one representative each.
///
/// The grid (Z/m)^rank of cocharacters is split into orbits of the simple
/// reflections; each orbit is represented by its smallest grid point.
inline std::vector<TorsionElement> enumerate_torsion(const RootDatum& d, Int m) {
  if (m < 1 || m > kMaxTorsionOrder) throw InputError("torsion order must lie in 1.." + std::to_string(kMaxTorsionOrder));
  if (d.rank() > kMaxTorsionRank) throw InputError("torsion enumeration supports rank at most " + std::to_string(kMaxTorsionRank));
  const std::size_t n = d.rank();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(m);

  auto decode = [&](std::size_t idx) {
    IntVec v(n);
    for (std::size_t i = n; i-- > 0;) {
      v[i] = static_cast<Int>(idx % static_cast<std::size_t>(m));
      idx /= static_cast<std::size_t>(m);
    }
    return v;
  };
  auto encode = [&](const IntVec& v) {
    std::size_t idx = 0;
    for (Int x : v) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(detail::mod_floor(x, m));
    return idx;
  };

  std::vector<bool> seen(total, false);
  std::vector<TorsionElement> out;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    // Indices increase with lexicographic order, so `start` is the orbit minimum.
    seen[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      const IntVec v = decode(stack.back());
      stack.pop_back();
      for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
        const std::size_t next = encode(d.reflect_coweight(i, v));
        if (!seen[next]) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    out.push_back(TorsionElement::make(decode(start), m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Centralizer data of a torsion element: the roots it fixes.
struct EndoscopicDatum {
  std::vector<Weight> sub_roots;
  DatumPtr sub_datum;  // simple system of sub_roots, same lattice
  Sublattice sub_invariants{0};
};

inline EndoscopicDatum centralizer(const RootDatum& d, const TorsionElement& s) {
  if (s.num.size() != d.rank()) throw InputError("torsion element has wrong length");
  EndoscopicDatum out;
  std::vector<const RootRecord*> pos;
  for (const auto& r : d.root_records()) {
    if (!s.fixes(r.root)) continue;
    out.sub_roots.push_back(r.root);
    if (r.positive) pos.push_back(&r);
  }
  std::sort(out.sub_roots.begin(), out.sub_roots.end());
  std::set<IntVec> pos_coeffs;
  for (const auto* r : pos) pos_coeffs.insert(r->coeffs);
  std::vector<const RootRecord*> simple;
  for (const auto* r : pos) {
    bool decomposable = false;
    for (const auto* a : pos) {
      IntVec rest = sub(r->coeffs, a->coeffs);
      if (pos_coeffs.count(rest)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(r);
  }
  std::sort(simple.begin(), simple.end(), [](const RootRecord* a, const RootRecord* b) {
    const Int ha = std::accumulate(a->coeffs.begin(), a->coeffs.end(), Int{0});
    const Int hb = std::accumulate(b->coeffs.begin(), b->coeffs.end(), Int{0});
    return ha != hb ? ha < hb : a->coeffs > b->coeffs;
  });
  IntMat roots, coroots;
  for (const auto* r : simple) {
    roots.push_back(r->root);
    coroots.push_back(r->coroot);
  }
  out.sub_datum = share(RootDatum::from_explicit(d.rank(), roots, coroots, "centralizer of " + s.to_string() + " in " + d.label(),
                                                 {}, d.ambient_basis()));
  out.sub_invariants = out.sub_datum->invariant_characters();
  return out;
}

/// Weights on which s acts by -1.
inline WeightMultiset minus_eigenspace(const WeightMultiset& m, const TorsionElement& s) {
  WeightMultiset out;
  for (const auto& [w, k] : m.entries()) {
    if (s.acts_by_minus_one(w)) out.add(w, k);
  }
  return out;
}

enum class ScanStatus { kPass, kFail, kError };

inline std::string to_string(ScanStatus s) {
  switch (s) {
    case ScanStatus::kPass: return "pass";
    case ScanStatus::kFail: return "fail";
    case ScanStatus::kError: return "error";
  }
  return "error";
}

struct ScanRecord {
  std::vector<int> context;  // deleted node ids, empty for the full group
  std::string context_type;
  TorsionElement s;
  std::string centralizer_type;
  BigInt eigenspace_dim;
  ScanStatus status = ScanStatus::kPass;
  std::optional<AnomalyCertificate> certificate;
  std::string message;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  bool verdict = true;
  std::size_t contexts = 0;
  std::string scope_note =
      "only torus elements of finite order are enumerated; the sign of an arbitrary semisimple element is "
      "determined by its 2-power torsion part";
};

/// Subsets of node ids of size 0..depth, in canonical order.
inline std::vector<std::vector<int>> levi_contexts(const RootDatum& d, int depth) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> frontier{{}};
  for (int k = 0; k < depth; ++k) {
    std::set<std::vector<int>> next;
    for (const auto& c : frontier) {
      for (int id : d.node_ids()) {
        if (std::find(c.begin(), c.end(), id) != c.end()) continue;
        auto e = c;
        e.push_back(id);
        std::sort(e.begin(), e.end());
        next.insert(e);
      }
    }
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  return out;
}

/// Runs the anomaly test on V_{s,-} over the centralizer of s, for every
/// torsion class of order at most max_order, in the group and in every Levi
/// obtained by deleting up to levi_depth nodes.
inline ScanReport endoscopic_anomaly_scan(const RepSpec& r, Int max_order, int levi_depth) {
  if (max_order < 1) throw InputError("max order must be positive");
  if (levi_depth < 0) throw InputError("Levi depth must be nonnegative");
  const WeightMultiset weights = weight_multiset(r);
  ScanReport report;
  const auto contexts = levi_contexts(*r.datum, levi_depth);
  report.contexts = contexts.size();
  for (const auto& ctx : contexts) {
    const RootDatum levi = ctx.empty() ? *r.datum : r.datum->levi_without(ctx);
    std::vector<TorsionElement> classes;
    for (Int m = 1; m <= max_order; ++m) {
      for (auto& t : enumerate_torsion(levi, m)) {
        if (t.order == m) classes.push_back(std::move(t));
      }
    }
    for (const auto& s : classes) {
      ScanRecord rec;
      rec.context = ctx;
      rec.context_type = levi.type_string();
      rec.s = s;
      try {
        const EndoscopicDatum c = centralizer(levi, s);
        rec.centralizer_type = c.sub_datum->type_string();
        const WeightMultiset v = minus_eigenspace(weights, s);
        rec.eigenspace_dim = v.total();
        rec.certificate = check_anomaly(v, c.sub_invariants);
        rec.status = rec.certificate->verdict ? ScanStatus::kPass : ScanStatus::kFail;
      } catch (const std::exception& e) {
        rec.status = ScanStatus::kError;
        rec.message = e.what();
      }
      if (rec.status != ScanStatus::kPass) report.verdict = false;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace stm
