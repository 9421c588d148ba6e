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

// Acceptance run: one [PASS]/[FAIL] line per criterion, exit 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "experiment_oracles.hpp"
#include "oracles.hpp"
#include "qcong/experiments.hpp"
#include "qcong/lattice.hpp"
#include "qcong/modcore.hpp"
#include "qcong/parametrize.hpp"

namespace {

namespace ex = qcong::experiments;
namespace mc = qcong::modcore;
namespace lt = qcong::lattice;
namespace pz = qcong::parametrize;
using qcong::i128;
using qcong::Rational;
using std::int64_t;

struct Outcome {
  bool ok = true;
  std::string first_failure;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (ok) first_failure = why;
    ok = false;
  }
};

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

// Roots of a v^2 + h mod k by stepping v -> v + 1 without division.
std::vector<i128> scan_roots(int64_t a, int64_t h, int64_t k) {
  std::vector<i128> out;
  int64_t val = h % k, inc = a % k, step = (2 * a) % k;
  for (int64_t v = 0; v < k; ++v) {
    if (val == 0) out.push_back(v);
    val += inc;
    if (val >= k) val -= k;
    inc += step;
    if (inc >= k) inc -= k;
  }
  return out;
}

void criterion1(Outcome& o) {
  constexpr int64_t kMax = 10000;
  int64_t pairs = 0, checked = 0;
  for (int64_t a = 1; a <= 5 && o.ok; ++a)
    for (int64_t h = 1; h <= 50 && o.ok; ++h) {
      if (!oracle::squarefree(h) || std::gcd(a, h) != 1) continue;
      ++pairs;
      std::vector<int64_t> count(kMax + 1, 0);
      for (int64_t k = 1; k <= kMax; ++k) {
        const auto scan = scan_roots(a, h, k);
        count[k] = static_cast<int64_t>(scan.size());
        if (mc::roots_mod_k(a, h, k).roots != scan) {
          o.fail("roots_mod_k a=" + std::to_string(a) + " h=" + std::to_string(h) + " k=" + std::to_string(k));
          break;
        }
        ++checked;
      }
      for (int64_t k = 2; k <= kMax && o.ok; ++k) {
        const auto f = mc::factorize(k);
        const auto& pp = f.factors.front();
        int64_t pe = 1;
        for (int e = 0; e < pp.exponent; ++e) pe *= static_cast<int64_t>(pp.prime);
        if (count[k] != count[pe] * count[k / pe] || mc::rho(a, h, k) != count[k])
          o.fail("rho multiplicativity a=" + std::to_string(a) + " h=" + std::to_string(h) + " k=" + std::to_string(k));
      }
    }
  o.note << pairs << " (a,h) pairs, " << checked << " moduli";
}

void criterion2(Outcome& o) {
  int64_t n = 0;
  for (int64_t h = 1; h <= 500; ++h) {
    if (!oracle::squarefree(h)) continue;
    ++n;
    const auto got = lt::heegner_points(h).size();
    if (got != oracle::class_count(h)) o.fail("h=" + std::to_string(h));
  }
  if (lt::heegner_points(1).size() != 1 || lt::heegner_points(2).size() != 1 || lt::heegner_points(5).size() != 2)
    o.fail("spot values");
  o.note << n << " squarefree h <= 500; #L1=1 #L2=1 #L5=2";
}

std::string verdict(const pz::ParamReport& r) {
  return std::string(pz::to_string(r.verdict())) + " misses=" + std::to_string(r.misses.size()) +
         " double=" + std::to_string(r.double_hits.size());
}

void criterion3(Outcome& o) {
  int64_t runs = 0, elements = 0;
  auto take = [&](const pz::ParamReport& r, const std::string& what) {
    ++runs;
    elements += r.elements_enumerated;
    if (!r.passed() || !r.misses.empty() || !r.double_hits.empty()) o.fail(what + " " + verdict(r));
  };
  for (int64_t a = 1; a <= 2; ++a)
    for (int64_t h = 1; h <= 10; ++h) {
      if (!oracle::squarefree(h) || std::gcd(a, h) != 1) continue;
      for (int64_t d = 1; d <= 6; ++d)
        take(pz::verify_para1(a, h, d, 50),
             "para1 a=" + std::to_string(a) + " h=" + std::to_string(h) + " d=" + std::to_string(d));
    }
  int64_t para2_nonempty = 0;
  for (int64_t h : {1, 5})
    for (int64_t s = 1; s <= 2; ++s)
      for (auto [n1, n2] : {std::pair<int64_t, int64_t>{1, 2}, {2, 3}, {3, 4}}) {
        auto r = pz::verify_para2(1, h, s, n1, n2, 60);
        para2_nonempty += r.elements_enumerated > 0;
        take(r, "para2 h=" + std::to_string(h) + " s=" + std::to_string(s) + " n=" + std::to_string(n1) + "," +
                    std::to_string(n2));
      }
  if (para2_nonempty == 0) o.fail("para2 grid is empty on both sides");
  int64_t para3 = 0;
  for (int64_t y = 1; y * y <= 200; ++y)
    for (int64_t h = y; h * y * y <= 200; h += y) {
      if (!oracle::squarefree(std::gcd(h, y * y))) continue;
      ++para3;
      take(pz::verify_para3(1, h, y, 1, 80), "para3 h=" + std::to_string(h) + " y=" + std::to_string(y));
    }
  o.note << runs << " runs (" << para3 << " para3, " << para2_nonempty << "/12 para2 non-empty), " << elements
         << " elements";
}

void criterion4(Outcome& o) {
  int64_t primes = 0;
  for (auto [a, h] : {std::pair<int64_t, int64_t>{1, 1}, {1, 2}, {2, 1}, {1, 5}})
    for (int64_t X : {10, 100, 1000}) {
      auto r = ex::chebyshev_identity(X, a, h);
      primes += r.primes;
      if (r.multiset_difference != 0)
        o.fail("X=" + std::to_string(X) + " a=" + std::to_string(a) + " h=" + std::to_string(h) +
               " difference=" + std::to_string(r.multiset_difference));
    }
  o.note << "12 runs, multiset difference 0, " << primes << " prime slots";
}

// Largest D with D^5 <= X^2.
int64_t d_for(int64_t X) {
  int64_t D = static_cast<int64_t>(std::pow(static_cast<double>(X), 0.4)) + 2;
  auto pow5 = [](int64_t d) { return static_cast<i128>(d) * d * d * d * d; };
  while (pow5(D) > static_cast<i128>(X) * X) --D;
  return D;
}

void criterion5(Outcome& o) {
  const auto psi1 = ex::bump(1, 2), psi2 = ex::bump(-1, 1);
  struct T1 {
    int64_t X, K, D, a, h;
  };
  int64_t configs = 0;
  for (T1 c : {T1{1000, 1000, 10, 1, 1}, T1{2000, 2000, 20, 1, 1}, T1{2000, 500, 20, 1, 2}, T1{1500, 3000, 15, 2, 3},
               T1{800, 800, 20, 1, 5}, T1{2000, 4000, 12, 3, 1}}) {
    ++configs;
    auto rep = ex::type1(c.X, c.K, c.D, c.a, c.h, psi1, psi2, ex::Theta{}, workers());
    auto orc = oracle::type1_counts(c.X, c.K, c.D, c.a, c.h, psi1, psi2);
    for (int64_t d = 1; d <= c.D; ++d)
      if (rep.rows[d - 1].exact_count != orc.count[d - 1])
        o.fail("type1 X=" + std::to_string(c.X) + " K=" + std::to_string(c.K) + " d=" + std::to_string(d));
  }
  auto one = [](int64_t) { return 1.0; };
  auto mu = [](int64_t n) { return static_cast<double>(oracle::mobius(n)); };
  auto mu2 = [](int64_t n) { return oracle::squarefree(n) ? 1.0 : 0.0; };
  struct T2 {
    int64_t X, M, N, a, h;
  };
  for (T2 c : {T2{2000, 100, 20, 1, 1}, T2{2000, 100, 100, 1, 2}, T2{1000, 50, 20, 2, 1}, T2{1500, 100, 40, 1, 5}}) {
    for (int variant = 0; variant < 2; ++variant) {
      ++configs;
      const ex::Coefficient alpha = variant ? ex::Coefficient(mu) : ex::Coefficient(one);
      const ex::Coefficient beta = variant ? ex::Coefficient(mu2) : ex::Coefficient(mu);
      auto rep = ex::type2(c.X, c.M, c.N, c.a, c.h, alpha, beta, psi2, ex::Theta{}, workers());
      auto orc = oracle::type2_counts(c.X, c.M, c.N, c.a, c.h, alpha, beta, psi2);
      for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (rep.rows[i].exact_count != orc.count[i])
          o.fail("type2 X=" + std::to_string(c.X) + " M=" + std::to_string(c.M) + " n=" + std::to_string(c.N + i));
    }
  }
  double lo = INFINITY, hi = 0.0;
  o.note << configs << " exact configs; ratios";
  for (int64_t X : {1000, 10000, 100000}) {
    const int64_t D = d_for(X);
    auto rep = ex::type1(X, X, D, 1, 1, psi1, psi2, ex::Theta{}, workers());
    lo = std::min(lo, rep.ratio_to_bound);
    hi = std::max(hi, rep.ratio_to_bound);
    o.note << " X=" << X << " (D=" << D << "): " << rep.ratio_to_bound;
  }
  o.note << "; spread " << hi / lo;
  if (!(hi / lo < 10.0)) o.fail("ratio spread >= 10");
}

void criterion6(Outcome& o) {
  double prev = INFINITY;
  for (int64_t X : {10000, 100000, 1000000}) {
    auto t = ex::equidist(X, 1, 1, ex::uniform_intervals(10), workers());
    const double dev = t.max_relative_deviation();
    o.note << " X=" << X << ": " << dev;
    if (dev > prev) o.fail("deviation increased at X=" + std::to_string(X));
    prev = dev;
  }
  if (!(prev <= 0.05)) o.fail("deviation above 0.05 at X=10^6");
}

void criterion7(Outcome& o) {
  for (int64_t h : {1, 5, 13}) {
    double last = -1.0;
    for (const Rational& Z : {Rational(0), Rational(1), Rational(4), Rational(16)}) {
      const double v = ex::kernel_heegner(8, 16, h, Z, workers()).total;
      if (v < last) o.fail("not monotone in Z at h=" + std::to_string(h) + " Z=" + Z.str());
      last = v;
    }
  }
  double lo = INFINITY, hi = 0.0;
  for (int64_t h : {1, 5, 13})
    for (int64_t Q : {8, 16, 32})
      for (int64_t Z : {4, 16}) {
        auto r = ex::kernel_heegner(Q, 2 * Q, h, Rational(Z), workers());
        const double ratio = r.total / (Q * std::sqrt(double(h)) + h * std::sqrt(double(Z)));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
  o.note << "heegner ratio in [" << lo << ", " << hi << "], spread " << hi / lo;
  if (!(hi / lo <= 100.0)) o.fail("kernel_heegner ratio spread > 100");
  int64_t cases = 0;
  for (const Rational& Z : {Rational(0), Rational(1), Rational(4), Rational(25)})
    for (const Rational& R : {Rational(1), Rational(2), Rational(1, 3)}) {
      ++cases;
      const double got = ex::kernel_lowertriang(1, 1, 1, 1, 1, 1, Z, R).total;
      const double want = oracle::lowertriang_total(1, 1, 1, 1, 1, 1, Z, R);
      if (got != want) o.fail("kernel_lowertriang Z=" + Z.str() + " R=" + R.str());
    }
  o.note << "; lowertriang all-ones exact in " << cases << " (Z, R) cases";
}

void criterion8(Outcome& o) {
  int64_t moduli = 0;
  for (auto [a, b] : {std::pair<int64_t, int64_t>{1, 1}, {1, 2}, {2, 1}, {2, 3}})
    for (int64_t d = 1; d <= 500; ++d) {
      if (!oracle::squarefree(d) || std::gcd(a * b, d) != 1) continue;
      ++moduli;
      auto r = ex::ypoisson_check(a, b, d, 1000, ex::bump(1, 2));
      if (!r.identity_holds || r.complete_sum != d) o.fail("complete sum d=" + std::to_string(d));
    }
  o.note << moduli << " moduli with complete sum = d";
  const auto w = ex::bump(1, 1.9);
  auto r4 = ex::x2y3_typeI2(10000, 1000, 6, 1, 1, w, w, w, 100, 21, workers());
  const double rel = r4.extras.at("sum_a_relative_error");
  o.note << "; sum a_n rel. error " << rel;
  if (!(rel <= 0.05)) o.fail("sum a_n off by more than 5%");
  auto r5 = ex::x2y3_typeI2(100000, 5000, 10, 1, 1, w, w, w, 300, 46, workers());
  o.note << "; total/X^(5/6) " << r4.ratio_to_bound << " (X=1e4), " << r5.ratio_to_bound << " (X=1e5)";
  if (!std::isfinite(r4.ratio_to_bound) || !std::isfinite(r5.ratio_to_bound)) o.fail("non-finite ratio");
  const auto s = ex::bump(1, 1.5);
  struct C {
    int64_t X, K, Dmax, a, b, A, B;
  };
  for (C c : {C{2000, 200, 6, 1, 1, 44, 12}, C{1500, 150, 6, 2, 1, 38, 11}, C{1000, 100, 5, 1, 3, 31, 10}}) {
    auto rep = ex::x2y3_typeI2(c.X, c.K, c.Dmax, c.a, c.b, s, s, s, c.A, c.B);
    auto orc = oracle::x2y3_counts(c.X, c.K, c.Dmax, c.a, c.b, s, s, s, c.A, c.B);
    for (int64_t d = 1; d <= c.Dmax; ++d)
      if (rep.rows[d - 1].exact_count != orc.count[d - 1] || rep.rows[d - 1].main_term != orc.main[d - 1])
        o.fail("x2y3 X=" + std::to_string(c.X) + " d=" + std::to_string(d));
  }
  o.note << "; (x,y,k,d) loop exact for 3 configs";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"1 roots_mod_k vs residue scan, rho multiplicative", criterion1},
      {"2 Heegner point counts", criterion2},
      {"3 parametrization lemmas", criterion3},
      {"4 Chebyshev identity", criterion4},
      {"5 Type I/II exactness and bound tracking", criterion5},
      {"6 equidistribution of roots", criterion6},
      {"7 kernel sums", criterion7},
      {"8 a x^2 + b y^3 sums", criterion8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string detail = o.note.str();
    if (!o.ok) detail += "; first failure: " + o.first_failure;
    std::printf("[%s] %s (%.1fs): %s\n", o.ok ? "PASS" : "FAIL", name, secs, detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
