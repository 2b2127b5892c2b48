#pragma once

// Exact integer and rational linear algebra on small lattices: Hermite
// normal form, integer kernels, sublattice membership, and linear systems
// over F2.

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stm/error.hpp"

namespace stm {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major, one vector per row
class Rational;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/// Exact rational with 64-bit numerator and positive denominator, always reduced.
class Rational {
 public:
  Rational(Int n = 0) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("zero denominator");
    normalize();
  }

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }

  Rational& operator+=(const Rational& o) {
    const Int g = std::gcd(den_, o.den_);
    num_ = detail::checked_add(detail::checked_mul(num_, o.den_ / g), detail::checked_mul(o.num_, den_ / g));
    den_ = detail::checked_mul(den_, o.den_ / g);
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += Rational(-o.num_, o.den_); }
  Rational& operator*=(const Rational& o) {
    const Int g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
    num_ = detail::checked_mul(g1 ? num_ / g1 : 0, g2 ? o.num_ / g2 : 0);
    den_ = detail::checked_mul(den_ / (g2 ? g2 : 1), o.den_ / (g1 ? g1 : 1));
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("division by zero");
    return *this *= Rational(o.den_, o.num_);
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const Int g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_;
  Int den_;
};

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = detail::checked_add(s, detail::checked_mul(a[i], b[i]));
  return s;
}

inline IntVec add(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = detail::checked_add(a[i], b[i]);
  return a;
}

inline IntVec sub(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = detail::checked_add(a[i], -b[i]);
  return a;
}

inline IntVec scale(IntVec a, Int k) {
  for (auto& x : a) x = detail::checked_mul(x, k);
  return a;
}

inline IntVec negate(IntVec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline bool is_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

/// Comma-separated canonical text form, e.g. "1,0,-2".
inline std::string format_vec(const IntVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

inline std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

inline std::string format_vec(const RatVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_rational(v[i]);
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is echelon with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into [0, pivot). Zero rows
/// are dropped, so the result is a basis of the spanned lattice and is
/// canonical for that lattice.
inline IntMat hermite_normal_form(IntMat rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows.front().size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    // Euclid on the column until at most one row below pivot_row is nonzero.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][col] != 0 && (best == rows.size() || std::abs(rows[r][col]) < std::abs(rows[best][col]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        const Int q = detail::floor_div(rows[r][col], rows[pivot_row][col]);
        rows[r] = sub(rows[r], scale(rows[pivot_row], q));
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0) rows[pivot_row] = negate(rows[pivot_row]);
    const Int p = rows[pivot_row][col];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      const Int q = detail::floor_div(rows[r][col], p);
      if (q != 0) rows[r] = sub(rows[r], scale(rows[pivot_row], q));
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

/// Basis of {x in Z^n : a . x = 0 for every row a of `functionals`}, in HNF.
inline IntMat integer_kernel(const IntMat& functionals, std::size_t n) {
  // Row-reduce [A^T | I_n]; rows whose A^T part vanishes carry kernel vectors.
  const std::size_t k = functionals.size();
  IntMat aug(n, IntVec(k + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = functionals[j][i];
    aug[i][k + i] = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < k && pivot_row < n; ++col) {
    while (true) {
      std::size_t best = n;
      for (std::size_t r = pivot_row; r < n; ++r) {
        if (aug[r][col] != 0 && (best == n || std::abs(aug[r][col]) < std::abs(aug[best][col]))) best = r;
      }
      if (best == n) break;
      std::swap(aug[pivot_row], aug[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < n; ++r) {
        if (aug[r][col] == 0) continue;
        const Int q = detail::floor_div(aug[r][col], aug[pivot_row][col]);
        aug[r] = sub(aug[r], scale(aug[pivot_row], q));
        if (aug[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (aug[pivot_row][col] != 0) ++pivot_row;
  }
  IntMat kernel;
  for (std::size_t r = pivot_row; r < n; ++r) kernel.emplace_back(aug[r].begin() + static_cast<std::ptrdiff_t>(k), aug[r].end());
  return hermite_normal_form(kernel);
}

/// A sublattice of Z^n, stored by its canonical Hermite basis.
class Sublattice {
 public:
  explicit Sublattice(std::size_t ambient_dim, const IntMat& generators = {})
      : dim_(ambient_dim), basis_(hermite_normal_form(generators)) {
    for (const auto& g : generators) {
      if (g.size() != dim_) throw InputError("sublattice generator has wrong length");
    }
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMat& basis() const { return basis_; }

  bool contains(const IntVec& v) const {
    if (v.size() != dim_) return false;
    IntVec rest = v;
    for (const auto& b : basis_) {
      const auto pivot = static_cast<std::size_t>(std::find_if(b.begin(), b.end(), [](Int x) { return x != 0; }) - b.begin());
      // Entries left of the pivot must already be cleared.
      for (std::size_t c = 0; c < pivot; ++c) {
        if (rest[c] != 0) return false;
      }
      if (rest[pivot] % b[pivot] != 0) return false;
      rest = sub(rest, scale(b, rest[pivot] / b[pivot]));
    }
    return is_zero(rest);
  }

  bool operator==(const Sublattice& other) const { return dim_ == other.dim_ && basis_ == other.basis_; }

 private:
  std::size_t dim_;
  IntMat basis_;
};

// ---------------------------------------------------------------------------
// Rational matrices

inline RatMat to_rational(const IntMat& m) {
  RatMat out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

/// Inverse of a square rational matrix; throws InputError when singular.
inline RatMat inverse(RatMat a) {
  const std::size_t n = a.size();
  RatMat inv(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw InputError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Rank over Q.
inline std::size_t rational_rank(RatMat a) {
  std::size_t rank = 0;
  const std::size_t ncols = a.empty() ? 0 : a.front().size();
  for (std::size_t col = 0; col < ncols && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[rank][col];
      for (std::size_t j = col; j < ncols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Row vector times matrix.
inline RatVec mul(const RatVec& v, const RatMat& m) {
  const std::size_t ncols = m.empty() ? 0 : m.front().size();
  RatVec out(ncols, Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < ncols; ++j) out[j] += v[i] * m[i][j];
  }
  return out;
}

inline std::optional<IntVec> to_integral(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.denominator() != 1) return std::nullopt;
    out.push_back(x.numerator());
  }
  return out;
}

// ---------------------------------------------------------------------------
// F2 linear algebra

using F2Vec = std::vector<std::uint8_t>;

inline F2Vec mod2(const IntVec& v) {
  F2Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::uint8_t>(detail::mod_floor(v[i], 2));
  return out;
}

inline std::size_t f2_rank(std::vector<F2Vec> rows) {
  std::size_t rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (std::size_t j = 0; j < ncols; ++j) rows[r][j] ^= rows[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

inline bool f2_in_span(const std::vector<F2Vec>& rows, const F2Vec& target) {
  if (std::all_of(target.begin(), target.end(), [](std::uint8_t x) { return x == 0; })) return true;
  auto extended = rows;
  extended.push_back(target);
  return f2_rank(rows) == f2_rank(extended);
}

/// Lexicographically smallest c in {0,1}^k (c[0] most significant) with
/// sum c_i * rows[i] == target over F2, or nullopt if none exists.
inline std::optional<std::vector<std::uint8_t>> f2_solve_lexmin(const std::vector<F2Vec>& rows, F2Vec target) {
  if (!f2_in_span(rows, target)) return std::nullopt;
  std::vector<std::uint8_t> coeffs(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::vector<F2Vec> tail(rows.begin() + static_cast<std::ptrdiff_t>(i) + 1, rows.end());
    if (f2_in_span(tail, target)) continue;
    coeffs[i] = 1;
    for (std::size_t j = 0; j < target.size(); ++j) target[j] ^= rows[i][j];
  }
  return coeffs;
}

}  // namespace stm
