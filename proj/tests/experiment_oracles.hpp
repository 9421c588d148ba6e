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

// Brute-force loops for the experiment harnesses. Nothing here uses the
// library's root finders, sieves or matrix enumeration.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "qcong/experiments.hpp"
#include "qcong/fixed_sum.hpp"
#include "qcong/rational.hpp"

namespace oracle {

using qcong::FixedSum;
using qcong::i128;
using qcong::Rational;
namespace qx = qcong::experiments;

struct RowTotals {
  std::vector<double> count;
  std::vector<double> main;
};

// Type I rows d = 1..D by a double loop over (k, l).
inline RowTotals type1_counts(std::int64_t X, std::int64_t K, std::int64_t D, std::int64_t a, std::int64_t h,
                              const qx::BumpFn& psi1, const qx::BumpFn& psi2) {
  RowTotals out{std::vector<double>(D, 0.0), std::vector<double>(D, 0.0)};
  for (std::int64_t d = 1; d <= D; ++d) {
    FixedSum c, m;
    for (std::int64_t k = d; k <= 2 * K; k += d) {
      const double w1 = psi1(static_cast<double>(k) / K);
      if (w1 == 0.0) continue;
      for (std::int64_t l = -X; l <= X; ++l)
        if ((static_cast<i128>(a) * l * l + h) % k == 0) c.add(w1 * psi2(static_cast<double>(l) / X));
      const double rho = static_cast<double>(roots_scan(a, h, k).size());
      m.add(w1 * (rho * (X * psi2.integral) / k));
    }
    out.count[d - 1] = c.value();
    out.main[d - 1] = m.value();
  }
  return out;
}

// Type II rows n = N..2N-1 by a triple loop over (m, n, l).
inline RowTotals type2_counts(std::int64_t X, std::int64_t M, std::int64_t N, std::int64_t a, std::int64_t h,
                              const qx::Coefficient& alpha, const qx::Coefficient& beta, const qx::BumpFn& psi) {
  RowTotals out;
  for (std::int64_t n = N; n < 2 * N; ++n) {
    FixedSum cnt, main;
    for (std::int64_t m = M; m < 2 * M; ++m) {
      const double ab = alpha(m) * beta(n);
      if (ab == 0.0) continue;
      const std::int64_t k = m * n;
      for (std::int64_t l = -X; l <= X; ++l)
        if ((static_cast<i128>(a) * l * l + h) % k == 0) cnt.add(ab * psi(static_cast<double>(l) / X));
      main.add(ab * (static_cast<double>(roots_scan(a, h, k).size()) * (X * psi.integral) / k));
    }
    out.count.push_back(cnt.value());
    out.main.push_back(main.value());
  }
  return out;
}

// Rows d = 1..Dmax of the a x^2 + b y^3 Type I2 sum by an (x, y, k, d) loop.
inline RowTotals x2y3_counts(std::int64_t X, std::int64_t K, std::int64_t Dmax, std::int64_t a, std::int64_t b,
                             const qx::BumpFn& f, const qx::BumpFn& f1, const qx::BumpFn& f2, std::int64_t A,
                             std::int64_t B) {
  RowTotals out;
  const double scale = double(A) * double(B) * f1.integral * f2.integral / (double(X) * f.integral);
  for (std::int64_t d = 1; d <= Dmax; ++d) {
    FixedSum cnt, main;
    for (std::int64_t k = d; k <= 2 * K; k += d) {
      if (!squarefree(k)) continue;
      const double fk = f(static_cast<double>(k) / K);
      if (fk == 0.0) continue;
      for (std::int64_t x = 1; x <= 2 * A; ++x)
        for (std::int64_t y = 1; y <= 2 * B; ++y) {
          const double w = f1(static_cast<double>(x) / A) * f2(static_cast<double>(y) / B);
          if (w != 0.0 && (static_cast<i128>(a) * x * x + static_cast<i128>(b) * y * y * y) % k == 0) cnt.add(fk * w);
        }
      for (std::int64_t n = k; n <= 2 * X; n += k) {
        const double bn = scale * f(static_cast<double>(n) / X);
        if (bn != 0.0) main.add(fk * bn);
      }
    }
    out.count.push_back(cnt.value());
    out.main.push_back(main.value());
  }
  return out;
}

// Exact u_R(g) <= Z test for R = p/r, Z = zn/zd; writes u_R(g) to *u.
inline bool skewed_inside(i128 a, i128 b, i128 c, i128 d, const Rational& Z, const Rational& R, double* u) {
  const i128 p = R.num(), r = R.den();
  const i128 num = (a * a + d * d - 2) * p * p * r * r + b * b * r * r * r * r + c * c * p * p * p * p;
  const i128 den = 4 * p * p * r * r;
  *u = static_cast<double>(num) / static_cast<double>(den);
  return num * Z.den() <= Z.num() * den;
}

// Direct sum over gamma in Gamma_0(q)/{+-1} inside a box that contains every
// gamma whose conjugate n[x']^t gamma n[-x]^t lies in the support.
inline double lowertriang_total(std::int64_t D, std::int64_t N0, std::int64_t N1, std::int64_t N2, std::int64_t T,
                                std::int64_t V, const Rational& Z, const Rational& R) {
  FixedSum total;
  const double span = std::sqrt(4.0 * Z.to_double() + 2.0);
  const double rr = R.to_double();
  for (std::int64_t t = 1; t <= T; ++t)
    for (std::int64_t n0 = 1; n0 <= N0; ++n0)
      for (std::int64_t n1 = 1; n1 <= N1; ++n1)
        for (std::int64_t n2 = 1; n2 <= N2; ++n2) {
          if (std::gcd(n1, n2) != 1) continue;
          for (std::int64_t d = D; d <= n0 * n1 * n2; ++d) {
            if ((n0 * n1 * n2) % d) continue;
            const std::int64_t s = d * n0 * t * t, q = s * n1 * n2;
            std::int64_t nbar = 0;
            while (n2 > 1 && (n1 * nbar) % n2 != 1) ++nbar;
            // Shifting x by q permutes Gamma_0(q), so centred residues suffice.
            auto centred = [q](i128 y) {
              y %= q;
              if (y < 0) y += q;
              return 2 * y > q ? y - q : y;
            };
            for (std::int64_t v = -V; v <= V; ++v)
              for (std::int64_t vp = -V; vp <= V; ++vp) {
                const i128 x = centred(static_cast<i128>(s) * n1 * v * nbar);
                const i128 xp = centred(static_cast<i128>(s) * n1 * vp * nbar);
                const double ax = std::fabs(static_cast<double>(x)), axp = std::fabs(static_cast<double>(xp));
                const double e = span + 1.0, eb = span * rr + 1.0, ec = span / rr + 1.0;
                const i128 box =
                    static_cast<i128>(std::max({e + eb * ax, eb, e + eb * axp, ec + e * ax + e * axp + eb * ax * axp})) + 1;
                for (i128 gc = 0; gc <= box; gc += q)
                  for (i128 ga = -box; ga <= box; ++ga)
                    for (i128 gd = -box; gd <= box; ++gd) {
                      i128 bmin, bmax;
                      if (gc == 0) {
                        if (!(ga == 1 && gd == 1)) continue;
                        bmin = -box;
                        bmax = box;
                      } else {
                        if ((ga * gd - 1) % gc != 0) continue;
                        bmin = bmax = (ga * gd - 1) / gc;
                      }
                      for (i128 gb = bmin; gb <= bmax; ++gb) {
                        const i128 a1 = ga - gb * x, b1 = gb;
                        const i128 c1 = gc - gd * x + xp * (ga - gb * x);
                        const i128 d1 = gd + xp * gb;
                        double u = 0.0;
                        if (skewed_inside(a1, b1, c1, d1, Z, R, &u)) total.add(1.0 / std::sqrt(1.0 + u));
                      }
                    }
              }
          }
        }
  return total.value();
}

}  // namespace oracle
