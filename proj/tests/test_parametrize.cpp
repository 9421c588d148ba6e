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

#include "oracles.hpp"
#include "qcong/modcore.hpp"
#include "qcong/parametrize.hpp"

namespace pz = qcong::parametrize;
using pz::SymMat;
using qcong::i128;

namespace {

// Direct triple scan over the whole box, no stepping by the congruences.
std::vector<SymMat> scan_S(std::int64_t a, std::int64_t h, std::int64_t d, std::int64_t bound) {
  std::vector<SymMat> out;
  for (std::int64_t A = 1; A <= bound; ++A)
    for (std::int64_t B = -bound; B <= bound; ++B)
      for (std::int64_t C = 1; C <= bound; ++C)
        if (A * C - B * B == a * h && C % (a * d) == 0 && B % a == 0) out.push_back({A, B, C});
  return out;
}

std::string describe(const pz::ParamReport& r) {
  return std::string(pz::to_string(r.verdict())) + " misses=" + std::to_string(r.misses.size()) +
         " double=" + std::to_string(r.double_hits.size()) + " spurious=" + std::to_string(r.spurious.size()) +
         " mismatch=" + std::to_string(r.mismatches.size());
}

}  // namespace

TEST(EnumerateS, Examples) {
  EXPECT_EQ(pz::enumerate_S(1, 1, 1, 2),
            (std::vector<SymMat>{{1, -1, 2}, {1, 0, 1}, {1, 1, 2}, {2, -1, 1}, {2, 1, 1}}));
  EXPECT_EQ(pz::enumerate_S(1, 1, 2, 2), (std::vector<SymMat>{{1, -1, 2}, {1, 1, 2}}));
  // A C - B^2 = 2 with 2 | B and 2 | C inside the box of radius 4.
  EXPECT_EQ(pz::enumerate_S(2, 1, 1, 4), (std::vector<SymMat>{{1, 0, 2}, {3, -2, 2}, {3, 2, 2}}));
  EXPECT_TRUE(pz::enumerate_S(1, 1, 1, 0).empty());
  EXPECT_THROW(pz::enumerate_S(2, 2, 1, 5), std::invalid_argument);
}

TEST(EnumerateS, MatchesFullScan) {
  for (std::int64_t a = 1; a <= 3; ++a)
    for (std::int64_t h = 1; h <= 12; ++h) {
      if (std::gcd(a, h) != 1) continue;
      for (std::int64_t d = 1; d <= 4; ++d) ASSERT_EQ(pz::enumerate_S(a, h, d, 25), scan_S(a, h, d, 25));
    }
}

TEST(Para1, Examples) {
  auto r1 = pz::verify_para1(1, 1, 1, 5);
  EXPECT_TRUE(r1.passed()) << describe(r1);
  EXPECT_EQ(r1.hits, r1.elements_enumerated);
  EXPECT_GT(r1.elements_enumerated, 0);
  auto r2 = pz::verify_para1(1, 5, 2, 10);
  EXPECT_TRUE(r2.passed()) << describe(r2);
  auto r0 = pz::verify_para1(1, 1, 1, 0);
  EXPECT_TRUE(r0.passed());
  EXPECT_EQ(r0.elements_enumerated, 0);
  EXPECT_THROW(pz::verify_para1(1, 4, 1, 5), std::invalid_argument);
}

TEST(Para1, SmallGrid) {
  for (std::int64_t a = 1; a <= 2; ++a)
    for (std::int64_t h : {1, 2, 3, 5, 6, 7}) {
      if (std::gcd(a, h) != 1) continue;
      for (std::int64_t d = 1; d <= 4; ++d) {
        auto r = pz::verify_para1(a, h, d, 20);
        ASSERT_TRUE(r.passed()) << a << " " << h << " " << d << " " << describe(r);
      }
    }
}

TEST(Para2, Examples) {
  auto r1 = pz::verify_para2(1, 1, 1, 1, 1, 5);
  EXPECT_TRUE(r1.passed()) << describe(r1);
  auto r2 = pz::verify_para2(1, 1, 1, 2, 3, 30);
  EXPECT_TRUE(r2.passed()) << describe(r2);
  // -1 is not a square mod 3, so this configuration is empty on both sides.
  EXPECT_EQ(r2.elements_enumerated, 0);
  auto r3 = pz::verify_para2(1, 5, 2, 1, 2, 40);
  EXPECT_TRUE(r3.passed()) << describe(r3);
  EXPECT_THROW(pz::verify_para2(1, 1, 1, 2, 4, 10), std::invalid_argument);
}

TEST(Para2, NonVacuousConfigurations) {
  for (auto [h, s, n1, n2] : {std::tuple{1, 1, 2, 5}, {1, 2, 1, 5}, {2, 1, 2, 3}, {2, 1, 3, 2}, {5, 1, 3, 7}}) {
    auto r = pz::verify_para2(1, h, s, n1, n2, 60);
    EXPECT_TRUE(r.passed()) << h << " " << s << " " << n1 << " " << n2 << " " << describe(r);
    EXPECT_GT(r.elements_enumerated, 0) << h << " " << s << " " << n1 << " " << n2;
    EXPECT_EQ(r.hits, r.elements_enumerated);
  }
}

TEST(Para2, WithNontrivialA) {
  for (std::int64_t h : {1, 3, 5}) {
    auto r = pz::verify_para2(2, h, 1, 1, 3, 40);
    EXPECT_TRUE(r.passed()) << h << " " << describe(r);
  }
}

TEST(HeckeOrbits, ExamplesAndCount) {
  EXPECT_EQ(pz::hecke_orbits(1), (std::vector<pz::HeckeOrbitRep>{{1, 0, 1}}));
  EXPECT_EQ(pz::hecke_orbits(2), (std::vector<pz::HeckeOrbitRep>{{2, 0, 1}, {1, 0, 2}, {1, 1, 2}}));
  EXPECT_EQ(pz::hecke_orbits(4).size(), 7u);
  for (std::int64_t h = 1; h <= 10000; h += (h < 500 ? 1 : 97))
    ASSERT_EQ(static_cast<i128>(pz::hecke_orbits(h).size()), qcong::modcore::divisor_sum(h));
}

TEST(CubeDecompose, Examples) {
  auto d1 = pz::cube_decompose({1, 0, 8}, 2, 2, 1, 1);
  EXPECT_EQ(d1.sigma, (pz::HeckeOrbitRep{2, 0, 1}));
  EXPECT_EQ(d1.base, (SymMat{1, 0, 2}));
  auto d2 = pz::cube_decompose({2, 0, 4}, 2, 2, 1, 1);
  EXPECT_EQ(pz::cube_compose(d2.sigma, d2.base), (SymMat{2, 0, 4}));
  EXPECT_EQ(d2.base.det(), 2);
  auto d3 = pz::cube_decompose({3, 1, 2}, 5, 1, 1, 1);
  EXPECT_EQ(d3.sigma, (pz::HeckeOrbitRep{1, 0, 1}));
  EXPECT_EQ(d3.base, (SymMat{3, 1, 2}));
  EXPECT_THROW(pz::cube_decompose({1, 0, 8}, 3, 2, 1, 1), std::invalid_argument);
  EXPECT_THROW(pz::cube_decompose({1, 0, 7}, 2, 2, 1, 1), std::invalid_argument);
}

TEST(CubeDecompose, RoundtripOverBases) {
  for (std::int64_t h : {2, 3, 6, 10, 15}) {
    for (std::int64_t y : {2, 3, 5}) {
      if (h % y) continue;
      for (const auto& base : pz::enumerate_S(1, h, 1, 40))
        for (const auto& sigma : pz::hecke_orbits(y)) {
          const SymMat g = pz::cube_compose(sigma, base);
          auto dec = pz::cube_decompose(g, h, y, 1, 1);
          ASSERT_EQ(dec.sigma, sigma);
          ASSERT_EQ(dec.base, base);
        }
    }
  }
}

TEST(Para3, Examples) {
  for (auto [h, y, bound] : {std::tuple{2, 2, 50}, {6, 2, 80}, {1, 1, 10}}) {
    auto r = pz::verify_para3(1, h, y, 1, bound);
    EXPECT_TRUE(r.passed()) << h << " " << y << " " << describe(r);
    EXPECT_GT(r.elements_enumerated, 0);
  }
  EXPECT_THROW(pz::verify_para3(1, 4, 2, 1, 10), std::invalid_argument);
  EXPECT_THROW(pz::verify_para3(1, 2, 2, 2, 10), std::invalid_argument);
}

TEST(HeckeApply, Examples) {
  pz::RealMat g{2.0, 1.0, 1.0, 1.0};
  auto f = [](const pz::RealMat& m) { return m.a * m.a + 0.5 * m.b - m.c * m.d; };
  EXPECT_DOUBLE_EQ(pz::hecke_apply(1, f, g), f(g));
  for (std::int64_t h : {2, 6, 12}) {
    double v = pz::hecke_apply(h, [](const pz::RealMat&) { return 1.0; }, g);
    EXPECT_NEAR(v, static_cast<double>(qcong::modcore::divisor_sum(h)) / std::sqrt(double(h)), 1e-12);
  }
  // h = 2: three explicit terms against a box indicator.
  auto box = [](const pz::RealMat& m) { return std::fabs(m.a) <= 1.5 && std::fabs(m.d) <= 1.0 ? 1.0 : 0.0; };
  const double r2 = std::sqrt(2.0);
  double manual = box({(2 * 2 + 0) / r2, (2 * 1 + 0) / r2, 1 / r2, 1 / r2}) +
                  box({(2 + 0) / r2, (1 + 0) / r2, 2 / r2, 2 / r2}) + box({(2 + 1) / r2, (1 + 1) / r2, 2 / r2, 2 / r2});
  EXPECT_DOUBLE_EQ(pz::hecke_apply(2, box, g), manual / r2);
  // Linear in f.
  auto f2 = [](const pz::RealMat& m) { return std::cos(m.b); };
  EXPECT_NEAR(pz::hecke_apply(6, [&](const pz::RealMat& m) { return 2 * f(m) + f2(m); }, g),
              2 * pz::hecke_apply(6, f, g) + pz::hecke_apply(6, f2, g), 1e-9);
}
