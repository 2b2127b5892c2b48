#pragma once

// Root data in an explicit character lattice X*(T) = Z^rank.
//
// Simple roots live in X*(T), simple coroots in the dual lattice, and the
// pairing is the ordinary dot product. Weights are always stored in the
// lattice basis fixed at construction; Dynkin labels and "ambient"
// (fundamental-weight plus torus) coordinates are derived views.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stm/error.hpp"
#include "stm/lattice.hpp"

namespace stm {

using Weight = IntVec;

inline constexpr std::size_t kClosureCap = 1'000'000;

/// One simple factor of a semisimple type, e.g. {'E', 7}.
struct Factor {
  char family = 'A';
  int rank = 1;
};

/// Gram matrix of the simple roots of one factor, scaled so every entry is
/// an integer and the shortest roots have squared length 2.
///
/// E6 and E8 use Bourbaki numbering. E7 uses the chain 1-2-3-4-5-6 with
/// node 7 attached to node 3, so that deleting node 1 leaves D6, node 2
/// leaves A1 x A5, node 3 leaves A1 x A2 x A3 and node 5 leaves D5 x A1.
inline IntMat factor_gram(const Factor& f) {
  const int n = f.rank;
  auto chain = [n](Int norm) {
    IntMat g(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) g[i][i] = norm;
    for (int i = 0; i + 1 < n; ++i) g[i][i + 1] = g[i + 1][i] = -norm / 2;
    return g;
  };
  auto simply_laced = [n](const std::vector<std::pair<int, int>>& edges) {
    IntMat g(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (auto [a, b] : edges) g[a - 1][b - 1] = g[b - 1][a - 1] = -1;
    return g;
  };
  switch (f.family) {
    case 'A':
      if (n < 1) break;
      return chain(2);
    case 'B': {
      if (n < 2) break;
      IntMat g = chain(4);
      g[n - 1][n - 1] = 2;
      return g;
    }
    case 'C': {
      if (n < 2) break;
      IntMat g = chain(2);
      g[n - 1][n - 1] = 4;
      g[n - 2][n - 1] = g[n - 1][n - 2] = -2;
      return g;
    }
    case 'D': {
      if (n < 3) break;
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 2, n);
      return simply_laced(edges);
    }
    case 'E':
      if (n == 6) return simply_laced({{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}});
      if (n == 7) return simply_laced({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}});
      if (n == 8) return simply_laced({{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}});
      break;
    case 'F':
      if (n != 4) break;
      return {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    case 'G':
      if (n != 2) break;
      return {{2, -3}, {-3, 6}};
    default:
      break;
  }
  throw InputError(std::string("unknown Cartan type ") + f.family + std::to_string(n));
}

/// Pairing matrix <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
inline IntMat pairing_from_gram(const IntMat& gram) {
  IntMat p = gram;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    for (std::size_t j = 0; j < gram.size(); ++j) p[i][j] = 2 * gram[i][j] / gram[j][j];
  }
  return p;
}

/// A root together with its coroot and its simple-root coefficients.
struct RootRecord {
  IntVec coeffs;  // in the basis of simple roots
  Weight root;    // in X*(T)
  IntVec coroot;  // in X_*(T)
  bool positive = false;
};

class RootDatum {
 public:
  /// Builds a datum from explicit simple roots and coroots in Z^rank.
  ///
  /// `ambient_basis` (rows) maps lattice coordinates to the ambient
  /// coordinates used for display and input; empty means identity.
  static RootDatum from_explicit(std::size_t rank, IntMat simple_roots, IntMat simple_coroots, std::string label,
                                 std::vector<int> node_ids = {}, RatMat ambient_basis = {}) {
    RootDatum d;
    d.rank_ = rank;
    d.simple_roots_ = std::move(simple_roots);
    d.simple_coroots_ = std::move(simple_coroots);
    d.label_ = std::move(label);
    if (d.rank_ < 1) throw InputError("lattice rank must be positive");
    if (d.simple_roots_.size() != d.simple_coroots_.size()) throw InputError("simple roots and coroots differ in number");
    for (const auto& v : d.simple_roots_) {
      if (v.size() != rank) throw InputError("simple root has wrong length");
    }
    for (const auto& v : d.simple_coroots_) {
      if (v.size() != rank) throw InputError("simple coroot has wrong length");
    }
    const std::size_t n = d.simple_roots_.size();
    if (node_ids.empty()) {
      for (std::size_t i = 0; i < n; ++i) node_ids.push_back(static_cast<int>(i) + 1);
    }
    if (node_ids.size() != n) throw InputError("node id list has wrong length");
    d.node_ids_ = std::move(node_ids);
    if (ambient_basis.empty()) {
      ambient_basis.assign(rank, RatVec(rank, Rational(0)));
      for (std::size_t i = 0; i < rank; ++i) ambient_basis[i][i] = 1;
    }
    d.ambient_basis_ = ambient_basis;
    d.ambient_inverse_ = inverse(ambient_basis);
    d.validate_and_close();
    return d;
  }

  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_roots_.size(); }
  const IntMat& simple_roots() const { return simple_roots_; }
  const IntMat& simple_coroots() const { return simple_coroots_; }
  const IntMat& cartan() const { return cartan_; }
  const IntVec& symmetrizer() const { return symmetrizer_; }
  const IntMat& gram() const { return gram_; }
  const std::vector<int>& node_ids() const { return node_ids_; }
  const std::string& label() const { return label_; }
  const std::vector<RootRecord>& root_records() const { return roots_; }
  const IntVec& two_rho_check() const { return two_rho_check_; }
  const std::vector<std::size_t>& longest_word() const { return w0_word_; }
  const RatMat& ambient_basis() const { return ambient_basis_; }

  /// Position of the simple root with the given node id.
  std::size_t position_of(int node_id) const {
    auto it = std::find(node_ids_.begin(), node_ids_.end(), node_id);
    if (it == node_ids_.end()) throw InputError("no simple root with node id " + std::to_string(node_id));
    return static_cast<std::size_t>(it - node_ids_.begin());
  }

  /// All roots as a canonically sorted set of lattice vectors.
  std::set<Weight> all_roots() const {
    std::set<Weight> out;
    for (const auto& r : roots_) out.insert(r.root);
    return out;
  }

  std::vector<RootRecord> positive_roots() const {
    std::vector<RootRecord> out;
    for (const auto& r : roots_) {
      if (r.positive) out.push_back(r);
    }
    return out;
  }

  /// <w, alpha_i^vee> for every simple coroot.
  IntVec dynkin_labels(const Weight& w) const {
    IntVec out;
    out.reserve(simple_coroots_.size());
    for (const auto& c : simple_coroots_) out.push_back(dot(w, c));
    return out;
  }

  bool is_dominant(const Weight& w) const {
    for (const auto& c : simple_coroots_) {
      if (dot(w, c) < 0) return false;
    }
    return true;
  }

  Weight reflect(std::size_t i, const Weight& w) const {
    const Int k = dot(w, simple_coroots_[i]);
    return k == 0 ? w : sub(w, scale(simple_roots_[i], k));
  }

  /// Simple reflection acting on a cocharacter.
  IntVec reflect_coweight(std::size_t i, const IntVec& v) const {
    const Int k = dot(simple_roots_[i], v);
    return k == 0 ? v : sub(v, scale(simple_coroots_[i], k));
  }

  /// Orbit of w under the group generated by simple reflections.
  std::set<Weight> weyl_orbit(const Weight& w) const {
    check_weight(w);
    std::set<Weight> seen{w};
    std::deque<Weight> queue{w};
    while (!queue.empty()) {
      Weight cur = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
        Weight next = reflect(i, cur);
        if (seen.insert(next).second) {
          if (seen.size() > kClosureCap) throw ClosureOverflow("Weyl orbit exceeds hard cap of 10^6 elements");
          queue.push_back(std::move(next));
        }
      }
    }
    return seen;
  }

  /// w0 applied to w, using the reduced word found by descent from rho.
  Weight apply_longest(Weight w) const {
    for (std::size_t i : w0_word_) w = reflect(i, w);
    return w;
  }

  /// -w0(w): the highest weight of the dual when w is dominant.
  Weight dual_involution(const Weight& w) const {
    check_weight(w);
    return negate(apply_longest(w));
  }

  /// Unique dominant element of the Weyl orbit of w.
  Weight dominant_representative(Weight w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
        if (dot(w, simple_coroots_[i]) < 0) {
          w = reflect(i, w);
          changed = true;
        }
      }
    }
    return w;
  }

  /// Characters vanishing on every coroot: the lattice X*(G).
  Sublattice invariant_characters() const { return Sublattice(rank_, integer_kernel(simple_coroots_, rank_)); }

  /// Levi datum on the simple roots with the given node ids (same lattice).
  RootDatum levi(const std::vector<int>& kept_ids) const {
    std::vector<std::size_t> positions;
    for (int id : kept_ids) positions.push_back(position_of(id));
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    IntMat roots, coroots;
    std::vector<int> ids;
    for (std::size_t p : positions) {
      roots.push_back(simple_roots_[p]);
      coroots.push_back(simple_coroots_[p]);
      ids.push_back(node_ids_[p]);
    }
    std::ostringstream label;
    label << "Levi of " << label_ << " on nodes {";
    for (std::size_t i = 0; i < ids.size(); ++i) label << (i ? "," : "") << ids[i];
    label << "}";
    return from_explicit(rank_, roots, coroots, label.str(), ids, ambient_basis_);
  }

  /// Levi datum obtained by deleting the given node ids.
  RootDatum levi_without(const std::vector<int>& deleted_ids) const {
    for (int id : deleted_ids) position_of(id);
    std::vector<int> kept;
    for (int id : node_ids_) {
      if (std::find(deleted_ids.begin(), deleted_ids.end(), id) == deleted_ids.end()) kept.push_back(id);
    }
    return levi(kept);
  }

  RatVec to_ambient(const Weight& w) const {
    check_weight(w);
    return mul(RatVec(w.begin(), w.end()), ambient_basis_);
  }

  /// Lattice coordinates of an ambient vector; throws if it is not a character.
  Weight from_ambient(const RatVec& v) const {
    if (v.size() != rank_) throw InputError("weight has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(rank_));
    auto w = to_integral(mul(v, ambient_inverse_));
    if (!w) throw InputError("weight " + format_vec(v) + " is not in the character lattice of " + label_);
    return *w;
  }

  Weight from_ambient(const IntVec& v) const { return from_ambient(RatVec(v.begin(), v.end())); }

  /// Cartan type such as "D5 x A1 x T1", components in node order.
  std::string type_string() const {
    std::vector<std::string> parts;
    std::vector<bool> seen(semisimple_rank(), false);
    for (std::size_t start = 0; start < semisimple_rank(); ++start) {
      if (seen[start]) continue;
      std::vector<std::size_t> comp;
      std::deque<std::size_t> queue{start};
      seen[start] = true;
      while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        comp.push_back(i);
        for (std::size_t j = 0; j < semisimple_rank(); ++j) {
          if (!seen[j] && cartan_[i][j] != 0) {
            seen[j] = true;
            queue.push_back(j);
          }
        }
      }
      parts.push_back(classify_component(comp));
    }
    const std::size_t torus = rank_ - semisimple_rank();
    if (torus > 0) parts.push_back("T" + std::to_string(torus));
    if (parts.empty()) return "trivial";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
    return out;
  }

  bool operator==(const RootDatum& o) const {
    return rank_ == o.rank_ && simple_roots_ == o.simple_roots_ && simple_coroots_ == o.simple_coroots_;
  }

  void check_weight(const Weight& w) const {
    if (w.size() != rank_) throw InputError("weight has " + std::to_string(w.size()) + " coordinates, expected " + std::to_string(rank_));
  }

 private:
  RootDatum() = default;

  void validate_and_close() {
    const std::size_t n = simple_roots_.size();
    cartan_.assign(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cartan_[i][j] = dot(simple_roots_[i], simple_coroots_[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (cartan_[i][i] != 2) throw InputError("pairing of a simple root with its own coroot must be 2");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cartan_[i][j] > 0) throw InputError("positive off-diagonal Cartan entry");
        if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0)) throw InputError("Cartan matrix is not symmetrizable");
      }
    }
    if (n > 0 && rational_rank(to_rational(simple_roots_)) != n) throw InputError("simple roots are linearly dependent");
    if (n > 0 && rational_rank(to_rational(simple_coroots_)) != n) throw InputError("simple coroots are linearly dependent");
    compute_symmetrizer();
    compute_roots();
    compute_longest_word();
  }

  void compute_symmetrizer() {
    const std::size_t n = simple_roots_.size();
    std::vector<Rational> d(n, Rational(0));
    for (std::size_t start = 0; start < n; ++start) {
      if (d[start] != 0) continue;
      d[start] = 1;
      std::vector<std::size_t> comp{start};
      std::deque<std::size_t> queue{start};
      while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || cartan_[i][j] == 0) continue;
          // (alpha_i, alpha_j) = cartan[i][j] d_j = cartan[j][i] d_i.
          const Rational dj = d[i] * Rational(cartan_[j][i], cartan_[i][j]);
          if (d[j] == 0) {
            d[j] = dj;
            comp.push_back(j);
            queue.push_back(j);
          } else if (d[j] != dj) {
            throw InputError("Cartan matrix is not symmetrizable");
          }
        }
      }
      Int lcm = 1;
      for (std::size_t i : comp) lcm = std::lcm(lcm, d[i].denominator());
      for (std::size_t i : comp) d[i] *= lcm;
    }
    symmetrizer_.resize(n);
    for (std::size_t i = 0; i < n; ++i) symmetrizer_[i] = d[i].numerator();
    gram_.assign(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) gram_[i][j] = cartan_[i][j] * symmetrizer_[j];
    }
    // Finite type <=> the symmetrized form is positive definite (Sylvester).
    for (std::size_t k = 1; k <= n; ++k) {
      RatMat minor(k, RatVec(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
      }
      if (leading_determinant(minor) <= 0) throw InputError("Cartan matrix is not of finite type");
    }
  }

  static Rational leading_determinant(RatMat a) {
    Rational det = 1;
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && a[piv][col] == 0) ++piv;
      if (piv == n) return 0;
      if (piv != col) {
        std::swap(a[piv], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (std::size_t r = col + 1; r < n; ++r) {
        const Rational f = a[r][col] / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      }
    }
    return det;
  }

  void compute_roots() {
    const std::size_t n = simple_roots_.size();
    std::set<IntVec> seen;
    std::deque<IntVec> queue;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      seen.insert(e);
      queue.push_back(e);
    }
    while (!queue.empty()) {
      IntVec beta = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        Int k = 0;
        for (std::size_t j = 0; j < n; ++j) k += beta[j] * cartan_[j][i];
        if (k == 0) continue;
        IntVec next = beta;
        next[i] -= k;
        if (seen.insert(next).second) {
          if (seen.size() > kClosureCap) throw ClosureOverflow("root closure exceeds hard cap of 10^6 elements");
          queue.push_back(std::move(next));
        }
      }
    }
    roots_.clear();
    two_rho_check_.assign(rank_, 0);
    for (const auto& c : seen) {
      RootRecord r;
      r.coeffs = c;
      r.root.assign(rank_, 0);
      Int norm = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) norm += c[i] * c[j] * gram_[i][j];
      }
      r.coroot.assign(rank_, 0);
      for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == 0) continue;
        r.root = add(r.root, scale(simple_roots_[k], c[k]));
        const Int num = 2 * c[k] * symmetrizer_[k];
        if (num % norm != 0) throw InputError("non-integral coroot; datum is inconsistent");
        r.coroot = add(r.coroot, scale(simple_coroots_[k], num / norm));
      }
      r.positive = std::all_of(c.begin(), c.end(), [](Int x) { return x >= 0; });
      if (r.positive) two_rho_check_ = add(two_rho_check_, r.coroot);
      roots_.push_back(std::move(r));
    }
  }

  void compute_longest_word() {
    // Descend from the Dynkin labels of rho (all ones) to the antidominant chamber.
    const std::size_t n = simple_roots_.size();
    IntVec labels(n, 1);
    w0_word_.clear();
    while (true) {
      std::size_t i = 0;
      while (i < n && labels[i] <= 0) ++i;
      if (i == n) break;
      const Int k = labels[i];
      for (std::size_t j = 0; j < n; ++j) labels[j] -= k * cartan_[i][j];
      w0_word_.push_back(i);
      if (w0_word_.size() > kClosureCap) throw ClosureOverflow("longest element descent did not terminate");
    }
  }

  std::string classify_component(const std::vector<std::size_t>& comp) const {
    const std::size_t n = comp.size();
    const std::string nstr = std::to_string(n);
    Int max_bond = 1;
    std::vector<int> degree(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const Int entry = -cartan_[comp[a]][comp[b]];
        if (entry != 0) ++degree[a];
        max_bond = std::max(max_bond, entry);
      }
    }
    if (max_bond == 3) return "G2";
    if (max_bond == 2) {
      if (n == 2) return "B2";
      if (n == 4) {
        // F4 has its double bond between the two middle nodes.
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            if (a != b && -cartan_[comp[a]][comp[b]] == 2 && degree[a] == 2 && degree[b] == 2) return "F4";
          }
        }
      }
      // B: the unique short root sits at the end; C: the unique long root does.
      int short_count = 0;
      Int max_d = 0;
      for (std::size_t a : comp) max_d = std::max(max_d, symmetrizer_[a]);
      for (std::size_t a : comp) short_count += symmetrizer_[a] < max_d ? 1 : 0;
      return (short_count == 1 ? "B" : "C") + nstr;
    }
    const int branches = static_cast<int>(std::count_if(degree.begin(), degree.end(), [](int d) { return d == 3; }));
    if (branches == 0) return "A" + nstr;
    // Arm lengths from the branch node.
    std::size_t branch = 0;
    while (degree[branch] != 3) ++branch;
    std::vector<int> arms;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == branch || cartan_[comp[branch]][comp[b]] == 0) continue;
      int len = 1;
      std::size_t prev = branch, cur = b;
      while (true) {
        std::size_t next = n;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != prev && c != cur && cartan_[comp[cur]][comp[c]] != 0) next = c;
        }
        if (next == n) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + nstr;
    return "E" + nstr;
  }

  std::size_t rank_ = 0;
  IntMat simple_roots_;
  IntMat simple_coroots_;
  std::string label_;
  std::vector<int> node_ids_;
  RatMat ambient_basis_;
  RatMat ambient_inverse_;
  IntMat cartan_;
  IntVec symmetrizer_;
  IntMat gram_;
  std::vector<RootRecord> roots_;
  IntVec two_rho_check_;
  std::vector<std::size_t> w0_word_;
};

// ---------------------------------------------------------------------------
// Construction from type labels and isogeny data

enum class LatticeChoice { kSimplyConnected, kAdjoint, kGenerated };

/// Type labels plus the character lattice to realize.
///
/// Ambient coordinates are the fundamental-weight coordinates of each factor
/// in order, followed by `torus_rank` coordinates for a central torus. With
/// kGenerated the lattice is spanned by the root lattice and `generators`;
/// semisimple coordinates of every generator must be integers.
struct DatumSpec {
  std::vector<Factor> factors;
  int torus_rank = 0;
  LatticeChoice lattice = LatticeChoice::kSimplyConnected;
  std::vector<RatVec> generators;
  std::string label;
};

inline RootDatum build_root_datum(const DatumSpec& spec) {
  if (spec.torus_rank < 0) throw InputError("negative torus rank");
  std::size_t ss = 0;
  for (const auto& f : spec.factors) {
    if (f.rank < 1) throw InputError("factor rank must be positive");
    ss += static_cast<std::size_t>(f.rank);
  }
  const std::size_t rank = ss + static_cast<std::size_t>(spec.torus_rank);
  if (rank == 0) throw InputError("datum has rank 0");

  IntMat cartan(ss, IntVec(ss, 0));
  std::size_t offset = 0;
  for (const auto& f : spec.factors) {
    const IntMat p = pairing_from_gram(factor_gram(f));
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) cartan[offset + i][offset + j] = p[i][j];
    }
    offset += p.size();
  }

  // Root lattice rows in ambient coordinates: alpha_i = sum_j <alpha_i, alpha_j^vee> omega_j.
  RatMat root_rows;
  for (std::size_t i = 0; i < ss; ++i) {
    RatVec row(rank, Rational(0));
    for (std::size_t j = 0; j < ss; ++j) row[j] = cartan[i][j];
    root_rows.push_back(row);
  }

  RatMat basis;
  switch (spec.lattice) {
    case LatticeChoice::kSimplyConnected:
      basis.assign(rank, RatVec(rank, Rational(0)));
      for (std::size_t i = 0; i < rank; ++i) basis[i][i] = 1;
      break;
    case LatticeChoice::kAdjoint:
      basis = root_rows;
      for (std::size_t t = ss; t < rank; ++t) {
        RatVec row(rank, Rational(0));
        row[t] = 1;
        basis.push_back(row);
      }
      break;
    case LatticeChoice::kGenerated: {
      RatMat gens = root_rows;
      for (const auto& g : spec.generators) {
        if (g.size() != rank) throw InputError("lattice generator has " + std::to_string(g.size()) + " entries, expected " + std::to_string(rank));
        for (std::size_t j = 0; j < ss; ++j) {
          if (g[j].denominator() != 1) {
            throw InvalidIsogeny("generator " + format_vec(g) + " pairs non-integrally with coroot " + std::to_string(j + 1));
          }
        }
        gens.push_back(g);
      }
      Int denom = 1;
      for (const auto& g : gens) {
        for (const auto& x : g) denom = std::lcm(denom, x.denominator());
      }
      IntMat scaled;
      for (const auto& g : gens) {
        IntVec row;
        for (const auto& x : g) row.push_back(x.numerator() * (denom / x.denominator()));
        scaled.push_back(row);
      }
      const IntMat h = hermite_normal_form(scaled);
      if (h.size() != rank) throw InputError("lattice generators do not span a full-rank lattice");
      for (const auto& row : h) {
        RatVec r;
        for (Int x : row) r.emplace_back(x, denom);
        basis.push_back(r);
      }
      break;
    }
  }

  const RatMat inv = inverse(basis);
  IntMat simple_roots, simple_coroots;
  for (const auto& row : root_rows) {
    auto v = to_integral(mul(row, inv));
    if (!v) throw InvalidIsogeny("root lattice is not contained in the requested lattice");
    simple_roots.push_back(*v);
  }
  for (std::size_t j = 0; j < ss; ++j) {
    // Coroot j reads off ambient coordinate j: column j of the basis.
    IntVec col;
    for (std::size_t i = 0; i < rank; ++i) {
      if (basis[i][j].denominator() != 1) throw InvalidIsogeny("lattice basis pairs non-integrally with coroot " + std::to_string(j + 1));
      col.push_back(basis[i][j].numerator());
    }
    simple_coroots.push_back(col);
  }
  std::string label = spec.label;
  if (label.empty()) {
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
      label += (i ? "x" : "") + std::string(1, spec.factors[i].family) + std::to_string(spec.factors[i].rank);
    }
    if (spec.torus_rank > 0) label += (label.empty() ? "T" : "xT") + std::to_string(spec.torus_rank);
    label += spec.lattice == LatticeChoice::kSimplyConnected ? " simply connected"
             : spec.lattice == LatticeChoice::kAdjoint      ? " adjoint"
                                                            : " (generated lattice)";
  }
  return RootDatum::from_explicit(rank, simple_roots, simple_coroots, label, {}, basis);
}

using DatumPtr = std::shared_ptr<const RootDatum>;

inline DatumPtr share(RootDatum d) { return std::make_shared<const RootDatum>(std::move(d)); }

}  // namespace stm
