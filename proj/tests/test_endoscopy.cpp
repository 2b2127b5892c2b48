#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "random_data.hpp"
#include "stm/endoscopy.hpp"
#include "stm/presets.hpp"

using namespace stm;

namespace {

oracle::Mat to_mat(const IntMat& m) {
  oracle::Mat out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace

TEST(Torsion, MakeReducesToExactOrder) {
  const auto t = TorsionElement::make({2, 0, 6}, 4);
  EXPECT_EQ(t.order, 2);
  EXPECT_EQ(t.num, (IntVec{1, 0, 1}));
  EXPECT_EQ(TorsionElement::make({0, 0}, 3).order, 1);
  EXPECT_EQ(TorsionElement::make({-1}, 3).num, (IntVec{2}));
}

TEST(Torsion, ClassCountsMatchMaterializedWeylGroup) {
  for (const std::string name : {"A1", "A1ad", "A2", "A2ad", "B2", "G2", "A3", "B3", "C3", "A1xT1", "A1xA1"}) {
    const RootDatum d = resolve_group(name);
    const auto w = oracle::weyl_group(to_mat(d.simple_roots()), to_mat(d.simple_coroots()), d.rank());
    for (Int m = 1; m <= 4; ++m) {
      const auto classes = enumerate_torsion(d, m);
      EXPECT_EQ(classes.size(), oracle::orbit_count(w, d.rank(), m)) << name << " m=" << m;
      // Representatives are pairwise non-conjugate.
      std::set<oracle::Vec> images;
      for (const auto& c : classes) {
        oracle::Vec v(d.rank());
        for (std::size_t i = 0; i < d.rank(); ++i) v[i] = c.num[i] * (m / c.order);
        for (const auto& g : w) {
          oracle::Vec x(d.rank(), 0);
          for (std::size_t r = 0; r < d.rank(); ++r) {
            for (std::size_t k = 0; k < d.rank(); ++k) x[r] += g[r][k] * v[k];
            x[r] = ((x[r] % m) + m) % m;
          }
          images.insert(x);
        }
      }
      Int grid = 1;
      for (std::size_t i = 0; i < d.rank(); ++i) grid *= m;
      EXPECT_EQ(static_cast<Int>(images.size()), grid) << name << " m=" << m;
    }
  }
}

TEST(Torsion, RejectsOutOfRange) {
  const RootDatum a1 = resolve_group("A1");
  EXPECT_THROW(enumerate_torsion(a1, 0), InputError);
  EXPECT_THROW(enumerate_torsion(a1, kMaxTorsionOrder + 1), InputError);
  EXPECT_THROW(enumerate_torsion(resolve_group("A9"), 2), InputError);
}

TEST(Centralizer, Sl2Elements) {
  const RootDatum a1 = resolve_group("A1");
  // Coroot coordinates: q = 1/2 is the centre, q = 1/4 is regular.
  EXPECT_EQ(centralizer(a1, TorsionElement::make({1}, 2)).sub_roots.size(), 2u);
  EXPECT_EQ(centralizer(a1, TorsionElement::make({1}, 4)).sub_roots.size(), 0u);
  EXPECT_EQ(centralizer(a1, TorsionElement::make({1}, 4)).sub_invariants.rank(), 1u);
}

TEST(Scan, StandardOfSl2FailsAtTheCentre) {
  const DatumPtr a1 = share(resolve_group("A1"));
  const ScanReport r = endoscopic_anomaly_scan(irreducible(a1, {1}), 2, 0);
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].status, ScanStatus::kPass);  // identity: V_{s,-} = 0
  EXPECT_EQ(r.records[1].status, ScanStatus::kFail);
  EXPECT_EQ(r.records[1].eigenspace_dim, 2);
  EXPECT_TRUE(endoscopic_anomaly_scan(irreducible(a1, {1}, 2), 2, 1).verdict);
}

TEST(Scan, LeviContexts) {
  const RootDatum a3 = resolve_group("A3");
  EXPECT_EQ(levi_contexts(a3, 0).size(), 1u);
  EXPECT_EQ(levi_contexts(a3, 1), (std::vector<std::vector<int>>{{}, {1}, {2}, {3}}));
  EXPECT_EQ(levi_contexts(a3, 2).size(), 7u);
  EXPECT_EQ(levi_contexts(a3, 5).size(), 8u);
}

TEST(Scan, E7CentreActsByMinusOne) {
  const RootDatum e7 = build_preset("E7sc");
  const WeightMultiset m = irreducible_multiset(e7, e7.from_ambient(IntVec{0, 0, 0, 0, 0, 1, 0}));
  // The nontrivial central element pairs to 1/2 with every weight of the 56.
  int central = 0;
  for (const auto& s : enumerate_torsion(e7, 2)) {
    if (s.order != 2) continue;
    const auto c = centralizer(e7, s);
    if (c.sub_roots.size() == 126) {
      ++central;
      EXPECT_EQ(minus_eigenspace(m, s).total(), 56);
    }
  }
  EXPECT_EQ(central, 1);
}

TEST(Scan, E7OrderFourClassIsAnomalous) {
  const RootDatum e7 = build_preset("E7sc");
  const Weight top = e7.from_ambient(IntVec{0, 0, 0, 0, 0, 1, 0});
  const TorsionElement s = TorsionElement::make({0, 0, 0, 1, 2, 3, 0}, 4);
  const auto c = centralizer(e7, s);
  EXPECT_EQ(c.sub_datum->type_string(), "A3 x A3 x A1");
  EXPECT_EQ(c.sub_roots.size(), 26u);
  const WeightMultiset v = minus_eigenspace(irreducible_multiset(e7, top), s);
  EXPECT_EQ(v.total(), 12);
  const auto cert = check_anomaly(v, c.sub_invariants);
  EXPECT_FALSE(cert.verdict);

  // Independent check in the E8 lattice, working with Dynkin labels.
  oracle::Mat cartan;
  for (const auto& r : e7.cartan()) cartan.emplace_back(r.begin(), r.end());
  const auto model = oracle::e7_model(cartan);
  ASSERT_EQ(model.simple.size(), 7u);
  auto phase = [&](const oracle::Vec& l) {  // 4 <mu, q> mod 4
    long long p = 0;
    for (std::size_t i = 0; i < 7; ++i) p += l[i] * s.num[i] * (4 / s.order);
    return ((p % 4) + 4) % 4;
  };
  RatMat fixed_roots;
  for (const auto& r : model.roots) {
    const auto l = oracle::labels(model, r);
    if (phase(l) == 0) fixed_roots.emplace_back(l.begin(), l.end());
  }
  EXPECT_EQ(fixed_roots.size(), 26u);
  EXPECT_EQ(rational_rank(fixed_roots), 7u);  // semisimple centralizer: only eta = 0 is available
  oracle::Vec sum(7, 0);
  long long dim = 0;
  for (const auto& w : model.weights56) {
    const auto l = oracle::labels(model, w);
    if (phase(l) != 2) continue;
    ++dim;
    const auto nz = std::find_if(l.begin(), l.end(), [](long long x) { return x != 0; });
    if (*nz > 0) {
      for (std::size_t i = 0; i < 7; ++i) sum[i] += l[i];
    }
  }
  EXPECT_EQ(dim, 12);
  const bool all_even = std::all_of(sum.begin(), sum.end(), [](long long x) { return x % 2 == 0; });
  EXPECT_FALSE(all_even);
}

TEST(Scan, E7FiftySixUpToOrderTwo) {
  const DatumPtr e7 = share(build_preset("E7sc"));
  const RepSpec r = irreducible(e7, e7->from_ambient(IntVec{0, 0, 0, 0, 0, 1, 0}));
  const ScanReport rep = endoscopic_anomaly_scan(r, 2, 1);
  EXPECT_TRUE(rep.verdict);
  EXPECT_EQ(rep.contexts, 8u);
  for (const auto& rec : rep.records) EXPECT_EQ(rec.status, ScanStatus::kPass) << rec.s.to_string();
}

TEST(Scan, DoubledStandardPassesUpToOrderFour) {
  const DatumPtr a1 = share(resolve_group("A1"));
  const ScanReport r = endoscopic_anomaly_scan(irreducible(a1, {1}, 2), 4, 0);
  EXPECT_TRUE(r.verdict);
  EXPECT_FALSE(r.records.empty());
}

TEST(Scan, EigenspaceProperties) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const DatumPtr d = testdata::random_datum(rng);
    const RepSpec r = testdata::random_rep(rng, d);
    const RepSpec sd = direct_sum(r, dual(r));
    const WeightMultiset m = weight_multiset(sd);
    EXPECT_TRUE(minus_eigenspace(m, TorsionElement::make(IntVec(d->rank(), 0), 1)).entries().empty());
    for (const auto& s : enumerate_torsion(*d, 2 + static_cast<Int>(rng() % 3))) {
      const WeightMultiset v = minus_eigenspace(m, s);
      EXPECT_EQ(v, v.negated());
      EXPECT_EQ(v.multiplicity(Weight(d->rank(), 0)), 0);
      EXPECT_EQ(v.total() % 2, 0);
      WeightMultiset u = minus_eigenspace(weight_multiset(r), s);
      u.merge(minus_eigenspace(weight_multiset(dual(r)), s));
      EXPECT_EQ(u, v);
    }
    EXPECT_TRUE(endoscopic_anomaly_scan(sd, 2, 1).verdict) << d->label();
  }
}

TEST(Scan, ClassesSeparateRootsAndWeights) {
  // Distinct classes differ on some root or on some weight of the adjoint plus standard.
  for (const std::string name : {"A2", "B2", "G2", "A1xT1"}) {
    const RootDatum d = resolve_group(name);
    std::vector<Weight> probes;
    for (const auto& r : d.all_roots()) probes.push_back(r);
    for (std::size_t i = 0; i < d.rank(); ++i) {
      Weight e(d.rank(), 0);
      e[i] = 1;
      probes.push_back(e);
    }
    const auto classes = enumerate_torsion(d, 4);
    std::set<std::vector<Int>> signatures;
    for (const auto& s : classes) {
      std::vector<Int> sig;
      for (const auto& p : probes) sig.push_back(detail::mod_floor(dot(p, s.num) * (4 / s.order), 4));
      signatures.insert(sig);
    }
    EXPECT_EQ(signatures.size(), classes.size()) << name;
  }
}
