// Copyright 2026 The qcong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qcong/lattice.hpp"

namespace lt = qcong::lattice;
using lt::SymMat;
using lt::UniMat;
using qcong::i128;

namespace {

std::vector<UniMat> small_unimodular(int bound) {
  std::vector<UniMat> out;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d)
          if (a * d - b * c == 1) out.emplace_back(a, b, c, d);
  return out;
}

}  // namespace

TEST(UniMat, RejectsWrongDeterminant) {
  EXPECT_THROW(UniMat(1, 1, 1, 1), std::invalid_argument);
  EXPECT_NO_THROW(UniMat(2, 1, 1, 1));
  EXPECT_EQ(UniMat(2, 1, 1, 1) * UniMat(2, 1, 1, 1).inverse(), UniMat::identity());
}

TEST(Act, Examples) {
  EXPECT_EQ(lt::act(UniMat::identity(), SymMat{3, 1, 2}), (SymMat{3, 1, 2}));
  EXPECT_EQ(lt::act(UniMat(0, -1, 1, 0), SymMat{1, 0, 2}), (SymMat{2, 0, 1}));
  EXPECT_EQ(lt::act(UniMat(1, 1, 0, 1), SymMat{1, 0, 1}), (SymMat{2, 1, 1}));
}

TEST(Act, GroupActionLawAndDeterminant) {
  auto mats = small_unimodular(3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_int_distribution<int> entry(-10, 10);
  for (int trial = 0; trial < 20000; ++trial) {
    const UniMat& g1 = mats[pick(rng)];
    const UniMat& g2 = mats[pick(rng)];
    SymMat g{entry(rng), entry(rng), entry(rng)};
    ASSERT_EQ(lt::act(g1 * g2, g), lt::act(g1, lt::act(g2, g)));
    ASSERT_EQ(lt::act(g1, g).det(), g.det());
    ASSERT_EQ(lt::act(g1.negated(), g), lt::act(g1, g));
  }
}

TEST(CTransform, Examples) {
  const SymMat g{1, 2, 3};
  EXPECT_EQ(lt::c_transform(1, 0, g), 1);
  EXPECT_EQ(lt::c_transform(0, 1, g), 3);
  EXPECT_EQ(lt::c_transform(1, 1, g), 8);
  for (const UniMat& t : small_unimodular(2)) ASSERT_EQ(lt::c_transform(t, g), lt::act(t, g).c);
}

TEST(Reduce, Examples) {
  auto r1 = lt::reduce({1, 0, 1});
  EXPECT_EQ(r1.point.sym, (SymMat{1, 0, 1}));
  EXPECT_EQ(r1.transform.projective_normal(), UniMat::identity());
  EXPECT_EQ(lt::reduce({5, 0, 1}).point.sym, (SymMat{5, 0, 1}));
  auto r3 = lt::reduce({1, 0, 5});
  EXPECT_EQ(r3.point.sym, (SymMat{5, 0, 1}));
  EXPECT_EQ(lt::act(r3.transform, SymMat{1, 0, 5}), (SymMat{5, 0, 1}));
  EXPECT_THROW(lt::reduce({1, 2, 1}), std::invalid_argument);
  EXPECT_THROW(lt::reduce({-1, 0, -1}), std::invalid_argument);
}

TEST(Reduce, TransformAndIdempotenceAgainstNaiveOracle) {
  for (std::int64_t h = 1; h <= 60; ++h)
    for (std::int64_t c = 1; c <= 60; ++c)
      for (std::int64_t b = -80; b <= 80; ++b) {
        if ((b * b + h) % c) continue;
        SymMat g{(b * b + h) / c, b, c};
        auto r = lt::reduce(g);
        ASSERT_TRUE(lt::is_reduced(r.point.sym));
        ASSERT_EQ(lt::act(r.transform, g), r.point.sym);
        auto naive = oracle::naive_reduce({static_cast<std::int64_t>(g.a), b, c});
        ASSERT_EQ(r.point.sym, (SymMat{naive.a, naive.b, naive.c}));
        auto again = lt::reduce(r.point.sym);
        ASSERT_EQ(again.point, r.point);
        ASSERT_EQ(again.transform.projective_normal(), UniMat::identity());
      }
}

TEST(Heegner, Examples) {
  auto h1 = lt::heegner_points(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1[0].sym, (SymMat{1, 0, 1}));
  EXPECT_EQ(h1[0].stab_order, 2);
  auto h5 = lt::heegner_points(5);
  ASSERT_EQ(h5.size(), 2u);
  EXPECT_EQ(h5[0].sym, (SymMat{5, 0, 1}));
  EXPECT_EQ(h5[1].sym, (SymMat{3, 1, 2}));
  auto h2 = lt::heegner_points(2);
  ASSERT_EQ(h2.size(), 1u);
  EXPECT_EQ(h2[0].sym, (SymMat{2, 0, 1}));
}

TEST(Heegner, CountsMatchNaiveClassCount) {
  for (std::int64_t h = 1; h <= 300; ++h) {
    auto pts = lt::heegner_points(h);
    ASSERT_EQ(pts.size(), oracle::class_count(h)) << h;
    for (const auto& p : pts) {
      ASSERT_EQ(p.sym.det(), h);
      ASSERT_LE(p.sym.c * p.sym.c, 4 * h);
      ASSERT_LE(2 * qcong::abs128(p.sym.b), p.sym.c);
    }
  }
}

TEST(Stabilizer, OrdersAndElements) {
  EXPECT_EQ(lt::stabilizer_order(SymMat{1, 0, 1}), 2);
  EXPECT_EQ(lt::stabilizer_order(SymMat{2, 1, 2}), 3);
  EXPECT_EQ(lt::stabilizer_order(SymMat{5, 0, 1}), 1);
  EXPECT_THROW(lt::stabilizer_order(SymMat{1, 0, 5}), std::invalid_argument);
  for (std::int64_t h = 1; h <= 200; ++h)
    for (const auto& p : lt::heegner_points(h)) {
      auto st = lt::stabilizer(p.sym);
      ASSERT_EQ(static_cast<int>(st.size()), p.stab_order);
      std::set<UniMat> distinct;
      for (const auto& s : st) {
        ASSERT_EQ(lt::act(s, p.sym), p.sym);
        distinct.insert(s.projective_normal());
      }
      ASSERT_EQ(distinct.size(), st.size());
    }
}

TEST(Cosets, CountsAndIndexFormula) {
  EXPECT_EQ(lt::coset_reps(1).size(), 1u);
  EXPECT_EQ(lt::coset_reps(1)[0], UniMat::identity());
  EXPECT_EQ(lt::coset_reps(2).size(), 3u);
  EXPECT_EQ(lt::coset_reps(6).size(), 12u);
  for (std::int64_t q = 1; q <= 200; ++q) {
    lt::ProjectiveLine line(q);
    ASSERT_EQ(static_cast<i128>(line.size()), lt::dedekind_psi(q));
    // Bottom rows are pairwise inequivalent and every admissible pair is covered.
    std::set<std::size_t> idx;
    for (std::size_t i = 0; i < line.size(); ++i) {
      UniMat m = line.lift(i);
      ASSERT_EQ(line.index_of(m.c(), m.d()), i);
      idx.insert(line.index_of(m.c(), m.d()));
    }
    ASSERT_EQ(idx.size(), line.size());
    for (std::int64_t c = 0; c < q; ++c)
      for (std::int64_t d = 0; d < q; ++d) {
        if (std::gcd(std::gcd(c, d), q) != 1) continue;
        auto i = line.index_of(c, d);
        auto [pc, pd] = line.point(i);
        bool scaled = false;
        for (std::int64_t u = 1; u <= q && !scaled; ++u)
          scaled = std::gcd(u, q) == 1 && (u * pc - c) % q == 0 && (u * pd - d) % q == 0;
        ASSERT_TRUE(scaled || q == 1);
      }
  }
}

TEST(Cosets, PartitionWordBoundedElements) {
  // Every small SL2(Z) element lies in exactly one coset Gamma_0(q) tau.
  auto mats = small_unimodular(3);
  for (std::int64_t q : {2, 3, 4, 6, 12}) {
    auto reps = lt::coset_reps(q);
    for (const UniMat& g : mats) {
      int hits = 0;
      for (const UniMat& t : reps) hits += (g * t.inverse()).in_gamma0(q) ? 1 : 0;
      ASSERT_EQ(hits, 1);
    }
  }
}

TEST(UInvariant, Examples) {
  auto i = lt::UpperHalfPoint::make(0, 1);
  EXPECT_DOUBLE_EQ(lt::u_invariant(i, i), 0.0);
  EXPECT_DOUBLE_EQ(lt::u_invariant(lt::UpperHalfPoint::make(0, 2), i), 0.125);
  EXPECT_DOUBLE_EQ(lt::u_invariant(lt::UpperHalfPoint::make(1, 1), i), 0.25);
  EXPECT_THROW(lt::UpperHalfPoint::make(0, 0), std::invalid_argument);
}

TEST(USkewed, Examples) {
  EXPECT_DOUBLE_EQ(lt::u_skewed(UniMat::identity(), 3.7), 0.0);
  EXPECT_DOUBLE_EQ(lt::u_skewed(UniMat(1, 1, 0, 1), 1.0), 0.25);
  EXPECT_DOUBLE_EQ(lt::u_skewed(UniMat(1, 2, 0, 1), 2.0), 0.25);
  EXPECT_THROW(lt::u_skewed(UniMat::identity(), 0.0), std::invalid_argument);
}

TEST(UInvariant, MoebiusInvarianceAndSkewedConsistency) {
  auto mats = small_unimodular(10);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_real_distribution<double> xs(-3, 3), ys(0.2, 3);
  const auto i = lt::UpperHalfPoint::make(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const UniMat& g = mats[pick(rng)];
    auto w = lt::UpperHalfPoint::make(xs(rng), ys(rng));
    auto z = lt::UpperHalfPoint::make(xs(rng), ys(rng));
    double u0 = lt::u_invariant(w, z);
    double u1 = lt::u_invariant(lt::moebius(g, w), lt::moebius(g, z));
    ASSERT_NEAR(u0, u1, 1e-10 * std::max(1.0, u0));
    ASSERT_NEAR(lt::u_skewed(g, 1.0), lt::u_invariant(lt::moebius(g, i), i), 1e-10);
    ASSERT_NEAR(lt::u_invariant(w, z), lt::u_invariant(z, w), 1e-12 * std::max(1.0, u0));
  }
}

TEST(ToPoint, MatchesMoebiusOfReduction) {
  for (std::int64_t h : {1, 3, 5, 14, 23}) {
    for (const auto& p : lt::heegner_points(h)) {
      auto z = lt::to_point(p.sym);
      EXPECT_GE(z.x * z.x + z.y * z.y, 1.0 - 1e-12);
      EXPECT_LE(std::fabs(z.x), 0.5 + 1e-12);
      // gamma acting on the matrix is the Moebius action on its point.
      UniMat g(2, 1, 1, 1);
      auto moved = lt::to_point(lt::act(g, p.sym));
      auto direct = lt::moebius(g, z);
      EXPECT_NEAR(moved.x, direct.x, 1e-12);
      EXPECT_NEAR(moved.y, direct.y, 1e-12);
    }
  }
}
