#pragma once

// Weight multisets of finite-dimensional representations: Freudenthal
// multiplicities, the Weyl dimension formula, duality type, and the
// sum/dual/tensor algebra with Levi branching.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stm/error.hpp"
#include "stm/lattice.hpp"
#include "stm/root_datum.hpp"

namespace stm {

using BigInt = boost::multiprecision::cpp_int;

/// Finite map weight -> positive multiplicity, canonically ordered.
class WeightMultiset {
 public:
  using Map = std::map<Weight, BigInt>;

  WeightMultiset() = default;
  explicit WeightMultiset(Map entries) : entries_(std::move(entries)) { prune(); }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t distinct() const { return entries_.size(); }

  BigInt multiplicity(const Weight& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? BigInt(0) : it->second;
  }

  /// Dimension: sum of all multiplicities.
  BigInt total() const {
    BigInt s = 0;
    for (const auto& [w, m] : entries_) s += m;
    return s;
  }

  void add(const Weight& w, const BigInt& m) {
    if (m == 0) return;
    auto& slot = entries_[w];
    slot += m;
    if (slot == 0) entries_.erase(w);
  }

  /// Subtracts; throws if a multiplicity would go negative.
  void subtract(const WeightMultiset& o, const BigInt& times = 1) {
    for (const auto& [w, m] : o.entries_) {
      auto it = entries_.find(w);
      const BigInt need = m * times;
      if (it == entries_.end() || it->second < need) {
        throw InputError("weight multiset is not a sum of irreducible characters (at weight " + format_vec(w) + ")");
      }
      it->second -= need;
      if (it->second == 0) entries_.erase(it);
    }
  }

  void merge(const WeightMultiset& o, const BigInt& times = 1) {
    for (const auto& [w, m] : o.entries_) add(w, m * times);
  }

  WeightMultiset negated() const {
    Map out;
    for (const auto& [w, m] : entries_) out[negate(w)] = m;
    return WeightMultiset(std::move(out));
  }

  bool operator==(const WeightMultiset& o) const { return entries_ == o.entries_; }

 private:
  void prune() {
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (it->second < 0) throw InputError("negative multiplicity");
      it = it->second == 0 ? entries_.erase(it) : std::next(it);
    }
  }

  Map entries_;
};

inline WeightMultiset convolve(const WeightMultiset& a, const WeightMultiset& b) {
  WeightMultiset out;
  for (const auto& [u, m] : a.entries()) {
    for (const auto& [v, n] : b.entries()) out.add(add(u, v), m * n);
  }
  return out;
}

enum class DualityType { kSymplectic, kOrthogonal, kNone };

inline std::string to_string(DualityType t) {
  switch (t) {
    case DualityType::kSymplectic: return "symplectic";
    case DualityType::kOrthogonal: return "orthogonal";
    case DualityType::kNone: return "none";
  }
  return "none";
}

inline void require_dominant(const RootDatum& d, const Weight& lambda) {
  d.check_weight(lambda);
  if (!d.is_dominant(lambda)) {
    throw InputError("highest weight " + format_vec(d.to_ambient(lambda)) + " is not dominant for " + d.label());
  }
}

/// Weights of the irreducible representation with highest weight lambda.
///
/// Freudenthal's recursion, run in root-offset coordinates
/// mu = lambda - sum k_i alpha_i so that only the Gram matrix is needed.
inline WeightMultiset irreducible_multiset(const RootDatum& d, const Weight& lambda) {
  require_dominant(d, lambda);
  const std::size_t n = d.semisimple_rank();
  const IntVec labels = d.dynkin_labels(lambda);
  const IntVec& sym = d.symmetrizer();
  const IntMat& gram = d.gram();
  std::vector<IntVec> pos;
  for (const auto& r : d.root_records()) {
    if (r.positive) pos.push_back(r.coeffs);
  }

  auto gram_row = [&](const IntVec& g) {
    IntVec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] += g[i] * gram[i][j];
    }
    return out;
  };

  std::map<IntVec, BigInt> mult;
  mult[IntVec(n, 0)] = 1;
  std::vector<IntVec> level{IntVec(n, 0)};
  while (!level.empty()) {
    std::set<IntVec> candidates;
    for (const auto& beta : level) {
      for (std::size_t i = 0; i < n; ++i) {
        IntVec next = beta;
        ++next[i];
        candidates.insert(next);
      }
    }
    std::vector<IntVec> next_level;
    for (const auto& beta : candidates) {
      // (lambda+rho)^2 - (lambda+rho-beta)^2
      Int denom = 0;
      const IntVec bg = gram_row(beta);
      for (std::size_t i = 0; i < n; ++i) denom += 2 * beta[i] * (labels[i] + 1) * sym[i] - beta[i] * bg[i];
      if (denom <= 0) continue;
      BigInt num = 0;
      for (const auto& a : pos) {
        IntVec gamma = beta;
        while (true) {
          bool ok = true;
          for (std::size_t i = 0; i < n; ++i) {
            gamma[i] -= a[i];
            if (gamma[i] < 0) ok = false;
          }
          if (!ok) break;
          auto it = mult.find(gamma);
          if (it == mult.end()) continue;
          // (lambda - gamma, alpha)
          const IntVec gg = gram_row(gamma);
          Int pairing = 0;
          for (std::size_t i = 0; i < n; ++i) pairing += a[i] * (labels[i] * sym[i] - gg[i]);
          num += it->second * pairing;
        }
      }
      num *= 2;
      if (num == 0) continue;
      if (num % denom != 0) throw std::logic_error("Freudenthal recursion produced a non-integral multiplicity");
      mult[beta] = num / denom;
      next_level.push_back(beta);
    }
    level = std::move(next_level);
  }

  WeightMultiset out;
  const IntMat& roots = d.simple_roots();
  for (const auto& [beta, m] : mult) {
    Weight w = lambda;
    for (std::size_t i = 0; i < n; ++i) {
      if (beta[i] != 0) w = sub(w, scale(roots[i], beta[i]));
    }
    out.add(w, m);
  }
  return out;
}

/// Weyl dimension formula, exact.
inline BigInt irreducible_dimension(const RootDatum& d, const Weight& lambda) {
  require_dominant(d, lambda);
  const IntVec labels = d.dynkin_labels(lambda);
  const IntVec& sym = d.symmetrizer();
  BigInt num = 1, den = 1;
  for (const auto& r : d.root_records()) {
    if (!r.positive) continue;
    Int a = 0, b = 0;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      a += r.coeffs[i] * (labels[i] + 1) * sym[i];
      b += r.coeffs[i] * sym[i];
    }
    num *= a;
    den *= b;
  }
  return num / den;
}

/// Self-dual iff -w0 fixes lambda; then symplectic iff <lambda, 2 rho^vee> is odd.
inline DualityType self_duality_type(const RootDatum& d, const Weight& lambda) {
  require_dominant(d, lambda);
  if (d.dual_involution(lambda) != lambda) return DualityType::kNone;
  return detail::mod_floor(dot(lambda, d.two_rho_check()), 2) == 1 ? DualityType::kSymplectic : DualityType::kOrthogonal;
}

/// A representation as a multiset of dominant highest weights over a datum.
struct RepSpec {
  DatumPtr datum;
  std::map<Weight, BigInt> summands;

  RepSpec() = default;
  RepSpec(DatumPtr d, std::map<Weight, BigInt> s) : datum(std::move(d)), summands(std::move(s)) { validate(); }

  void validate() const {
    if (!datum) throw InputError("representation has no datum");
    for (const auto& [w, m] : summands) {
      require_dominant(*datum, w);
      if (m <= 0) throw InputError("summand multiplicity must be positive");
    }
  }

  bool operator==(const RepSpec& o) const { return *datum == *o.datum && summands == o.summands; }
};

inline RepSpec irreducible(DatumPtr d, const Weight& lambda, const BigInt& mult = 1) {
  return RepSpec(std::move(d), {{lambda, mult}});
}

inline WeightMultiset weight_multiset(const RepSpec& r) {
  r.validate();
  WeightMultiset out;
  for (const auto& [w, m] : r.summands) out.merge(irreducible_multiset(*r.datum, w), m);
  return out;
}

inline BigInt dimension(const RepSpec& r) {
  r.validate();
  BigInt s = 0;
  for (const auto& [w, m] : r.summands) s += m * irreducible_dimension(*r.datum, w);
  return s;
}

/// True if the multiset is stable under every simple reflection.
inline bool is_weyl_invariant(const RootDatum& d, const WeightMultiset& m) {
  for (const auto& [w, k] : m.entries()) {
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
      if (m.multiplicity(d.reflect(i, w)) != k) return false;
    }
  }
  return true;
}

/// Splits a character into irreducibles by repeatedly removing the
/// irreducible whose highest weight is the top weight of what remains.
inline std::map<Weight, BigInt> decompose(const RootDatum& d, WeightMultiset rest) {
  const IntVec& height = d.two_rho_check();
  std::map<Weight, BigInt> out;
  while (!rest.empty()) {
    const Weight* top = nullptr;
    Int best = 0;
    for (const auto& [w, m] : rest.entries()) {
      const Int h = dot(w, height);
      if (!top || h > best) {
        top = &w;
        best = h;
      }
    }
    const Weight lambda = *top;
    if (!d.is_dominant(lambda)) throw InputError("weight multiset is not Weyl invariant");
    const BigInt k = rest.multiplicity(lambda);
    rest.subtract(irreducible_multiset(d, lambda), k);
    out[lambda] += k;
  }
  return out;
}

/// Restriction to the Levi on the simple roots with the given node ids.
inline RepSpec restrict_to_levi(const RepSpec& r, const std::vector<int>& kept_nodes) {
  DatumPtr levi = share(r.datum->levi(kept_nodes));
  return RepSpec(levi, decompose(*levi, weight_multiset(r)));
}

/// Restriction to the Levi obtained by deleting the given node ids.
inline RepSpec restrict_to_levi_without(const RepSpec& r, const std::vector<int>& deleted_nodes) {
  DatumPtr levi = share(r.datum->levi_without(deleted_nodes));
  return RepSpec(levi, decompose(*levi, weight_multiset(r)));
}

enum class CombineOp { kSum, kTensor, kDual };

inline RepSpec combine(CombineOp op, const std::vector<RepSpec>& args) {
  if (args.empty()) throw InputError("combine needs at least one argument");
  for (const auto& a : args) {
    a.validate();
    if (!(*a.datum == *args.front().datum)) throw InputError("representations live on different root data");
  }
  const DatumPtr& d = args.front().datum;
  switch (op) {
    case CombineOp::kSum: {
      std::map<Weight, BigInt> out;
      for (const auto& a : args) {
        for (const auto& [w, m] : a.summands) out[w] += m;
      }
      return RepSpec(d, std::move(out));
    }
    case CombineOp::kDual: {
      if (args.size() != 1) throw InputError("dual takes exactly one argument");
      std::map<Weight, BigInt> out;
      for (const auto& [w, m] : args.front().summands) out[d->dual_involution(w)] += m;
      return RepSpec(d, std::move(out));
    }
    case CombineOp::kTensor: {
      WeightMultiset acc = weight_multiset(args.front());
      for (std::size_t i = 1; i < args.size(); ++i) acc = convolve(acc, weight_multiset(args[i]));
      return RepSpec(d, decompose(*d, std::move(acc)));
    }
  }
  throw InputError("unknown combine operation");
}

inline RepSpec dual(const RepSpec& r) { return combine(CombineOp::kDual, {r}); }
inline RepSpec direct_sum(const RepSpec& a, const RepSpec& b) { return combine(CombineOp::kSum, {a, b}); }
inline RepSpec tensor(const RepSpec& a, const RepSpec& b) { return combine(CombineOp::kTensor, {a, b}); }

}  // namespace stm
