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

#include "qcong/lattice.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcong/modcore.hpp"

namespace qcong::lattice {

UniMat::UniMat(i128 a, i128 b, i128 c, i128 d) : a_(a), b_(b), c_(c), d_(d) {
  if (sub_checked(mul_checked(a, d), mul_checked(b, c)) != 1)
    throw std::invalid_argument("UniMat requires determinant 1");
}

UniMat UniMat::inversion() { return UniMat(Unchecked{}, 0, -1, 1, 0); }
UniMat UniMat::translation(i128 x) { return UniMat(Unchecked{}, 1, x, 0, 1); }
UniMat UniMat::lower(i128 x) { return UniMat(Unchecked{}, 1, 0, x, 1); }

UniMat UniMat::inverse() const { return UniMat(Unchecked{}, d_, sub_checked(0, b_), sub_checked(0, c_), a_); }

UniMat UniMat::negated() const {
  return UniMat(Unchecked{}, sub_checked(0, a_), sub_checked(0, b_), sub_checked(0, c_), sub_checked(0, d_));
}

UniMat UniMat::projective_normal() const {
  if (c_ > 0 || (c_ == 0 && d_ > 0)) return *this;
  return negated();
}

UniMat operator*(const UniMat& x, const UniMat& y) {
  return UniMat(UniMat::Unchecked{}, add_checked(mul_checked(x.a_, y.a_), mul_checked(x.b_, y.c_)),
                add_checked(mul_checked(x.a_, y.b_), mul_checked(x.b_, y.d_)),
                add_checked(mul_checked(x.c_, y.a_), mul_checked(x.d_, y.c_)),
                add_checked(mul_checked(x.c_, y.b_), mul_checked(x.d_, y.d_)));
}

i128 SymMat::max_abs() const { return std::max({abs128(a), abs128(b), abs128(c)}); }

UpperHalfPoint UpperHalfPoint::make(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
    throw std::invalid_argument("upper half-plane point needs finite x and y > 0");
  return {x, y};
}

namespace {

// p^2 A + 2 p q B + q^2 C for a row (p, q).
i128 quad(i128 p, i128 q, const SymMat& g) {
  return add_checked(add_checked(mul_checked(mul_checked(p, p), g.a), mul_checked(mul_checked(2, mul_checked(p, q)), g.b)),
                     mul_checked(mul_checked(q, q), g.c));
}

}  // namespace

SymMat act(const UniMat& gamma, const SymMat& g) {
  const i128 p = gamma.a(), q = gamma.b(), r = gamma.c(), s = gamma.d();
  i128 mid = add_checked(add_checked(mul_checked(mul_checked(p, r), g.a),
                                     mul_checked(add_checked(mul_checked(p, s), mul_checked(q, r)), g.b)),
                         mul_checked(mul_checked(q, s), g.c));
  return {quad(p, q, g), mid, quad(r, s, g)};
}

i128 c_transform(i128 c0, i128 d0, const SymMat& g) { return quad(c0, d0, g); }
i128 c_transform(const UniMat& tau, const SymMat& g) { return quad(tau.c(), tau.d(), g); }

bool is_reduced(const SymMat& g) {
  if (g.c <= 0 || g.a < g.c) return false;
  const i128 twice_b = mul_checked(2, g.b);
  if (!(-g.c < twice_b && twice_b <= g.c)) return false;
  if (g.a == g.c && g.b < 0) return false;
  return true;
}

Reduction reduce(const SymMat& input) {
  if (input.a <= 0 || input.c <= 0 || input.det() <= 0)
    throw std::invalid_argument("reduce requires a positive definite symmetric matrix");
  SymMat g = input;
  UniMat acc;
  while (true) {
    // Translate so that -C < 2B <= C.
    const i128 x = floor_div(sub_checked(g.c, mul_checked(2, g.b)), mul_checked(2, g.c));
    if (x != 0) {
      const UniMat t = UniMat::translation(x);
      g = act(t, g);
      acc = t * acc;
    }
    if (g.a < g.c) {
      g = {g.c, -g.b, g.a};
      acc = UniMat::inversion() * acc;
      continue;
    }
    break;
  }
  if (g.a == g.c && g.b < 0) {
    g = {g.c, -g.b, g.a};
    acc = UniMat::inversion() * acc;
  }
  return {{g, stabilizer_order(g)}, acc};
}

int stabilizer_order(const SymMat& g) {
  if (!is_reduced(g)) throw std::invalid_argument("stabilizer_order expects a reduced point");
  if (g.a == g.c && g.b == 0) return 2;
  if (g.a == g.c && 2 * g.b == g.c) return 3;
  return 1;
}

int stabilizer_order(const HeegnerPoint& z) { return stabilizer_order(z.sym); }

std::vector<UniMat> stabilizer(const SymMat& reduced) {
  switch (stabilizer_order(reduced)) {
    case 2:
      return {UniMat::identity(), UniMat::inversion()};
    case 3: {
      // z -> (z - 1)/z fixes (1 + i sqrt 3)/2.
      UniMat u(1, -1, 1, 0);
      return {UniMat::identity(), u, u * u};
    }
    default:
      return {UniMat::identity()};
  }
}

std::vector<HeegnerPoint> heegner_points(i128 h) {
  if (h < 1) throw std::invalid_argument("heegner_points requires h >= 1");
  std::vector<HeegnerPoint> out;
  const i128 c_max = isqrt(mul_checked(4, h));
  for (i128 c = 1; c <= c_max; ++c) {
    for (i128 b = -((c - 1) / 2); 2 * b <= c; ++b) {
      const i128 num = add_checked(mul_checked(b, b), h);
      if (num % c != 0) continue;
      SymMat g{num / c, b, c};
      if (is_reduced(g)) out.push_back({g, stabilizer_order(g)});
    }
  }
  return out;
}

ProjectiveLine::ProjectiveLine(std::int64_t q) : q_(q) {
  if (q < 1) throw std::invalid_argument("projective line needs q >= 1");
  if (q > kMaxModulus) throw std::range_error("projective line modulus too large");
  if (q == 1) {
    points_.push_back({0, 1});
    return;
  }
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < q; ++u)
    if (std::gcd(u, q) == 1) units.push_back(u);
  index_.assign(static_cast<std::size_t>(q * q), -1);
  for (std::int64_t c = 0; c < q; ++c) {
    for (std::int64_t d = 0; d < q; ++d) {
      if (index_[c * q + d] != -1 || std::gcd(std::gcd(c, d), q) != 1) continue;
      const auto id = static_cast<std::int32_t>(points_.size());
      points_.push_back({c, d});
      for (std::int64_t u : units) index_[(u * c % q) * q + u * d % q] = id;
    }
  }
}

std::size_t ProjectiveLine::index_of(i128 c, i128 d) const {
  if (q_ == 1) return 0;
  const auto cm = static_cast<std::int64_t>(mod_floor(c, q_));
  const auto dm = static_cast<std::int64_t>(mod_floor(d, q_));
  const std::int32_t id = index_[cm * q_ + dm];
  if (id < 0) throw std::invalid_argument("(c : d) is not a point of the projective line");
  return static_cast<std::size_t>(id);
}

UniMat ProjectiveLine::lift(std::size_t i) const {
  auto [c, d] = points_.at(i);
  if (c == 0) return UniMat::identity();  // the class of (0 : 1)
  for (std::int64_t t = 0; t < 4 * q_ + 4; ++t) {
    const i128 dd = d + t * q_;
    if (gcd128(c, dd) != 1) continue;
    // Bezout: x dd + y c = 1, matrix [[x, -y], [c, dd]].
    const i128 x = inverse_mod(dd, c);
    const i128 y = (1 - x * dd) / c;
    return UniMat(x, -y, c, dd);
  }
  throw std::logic_error("no coprime lift found for projective point");
}

std::vector<UniMat> coset_reps(std::int64_t q) {
  ProjectiveLine line(q);
  std::vector<UniMat> out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) out.push_back(line.lift(i));
  return out;
}

i128 dedekind_psi(i128 q) {
  if (q < 1) throw std::invalid_argument("dedekind_psi requires q >= 1");
  i128 r = q;
  for (const auto& pp : modcore::factorize(q).factors) r = r / pp.prime * (pp.prime + 1);
  return r;
}

UpperHalfPoint to_point(const SymMat& g) {
  const i128 h = g.det();
  if (h <= 0 || g.c <= 0) throw std::invalid_argument("to_point requires a positive definite matrix");
  const auto c = static_cast<double>(g.c);
  return {static_cast<double>(g.b) / c, std::sqrt(static_cast<double>(h)) / c};
}

UpperHalfPoint moebius(const RealMat& g, const UpperHalfPoint& z) {
  // (a z + b)/(c z + d) with det 1: Im = y / |cz + d|^2.
  const double re_den = g.c * z.x + g.d, im_den = g.c * z.y;
  const double norm = re_den * re_den + im_den * im_den;
  const double re_num = g.a * z.x + g.b, im_num = g.a * z.y;
  const double x = (re_num * re_den + im_num * im_den) / norm;
  const double y = (im_num * re_den - re_num * im_den) / norm;
  return {x, y};
}

double u_invariant(const UpperHalfPoint& w, const UpperHalfPoint& z) {
  const double dx = w.x - z.x, dy = w.y - z.y;
  return (dx * dx + dy * dy) / (4.0 * w.y * z.y);
}

double u_skewed(const RealMat& g, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("u_skewed requires R > 0");
  const double bR = g.b / R, cR = g.c * R;
  return 0.25 * (g.a * g.a + bR * bR + cR * cR + g.d * g.d - 2.0);
}

}  // namespace qcong::lattice
