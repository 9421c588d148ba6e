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

// SL2(Z) acting on integer symmetric matrices by g -> gamma g gamma^t.
//
// A symmetric matrix (A, B, C) = [[A, B], [B, C]] with AC - B^2 = h > 0 and
// A, C > 0 is identified with the upper half-plane point z = (B + i sqrt(h)) / C.
// Under this identification the action above is the Moebius action, and the
// standard fundamental domain reads |B| <= C/2, A >= C. Boundary points are
// kept when B >= 0 (Re z = +1/2 edge, right half of the unit arc).
//
// The action factors through PSL2(Z): gamma and -gamma are not distinguished.

#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "qcong/int128.hpp"

namespace qcong::lattice {

/// Integer 2x2 matrix of determinant one.
class UniMat {
 public:
  /// Identity.
  UniMat() = default;
  /// Throws std::invalid_argument unless ad - bc == 1.
  UniMat(i128 a, i128 b, i128 c, i128 d);

  static UniMat identity() { return {}; }
  /// [[0, -1], [1, 0]]: z -> -1/z.
  static UniMat inversion();
  /// n[x] = [[1, x], [0, 1]]: z -> z + x.
  static UniMat translation(i128 x);
  /// n[x]^t = [[1, 0], [x, 1]].
  static UniMat lower(i128 x);

  i128 a() const { return a_; }
  i128 b() const { return b_; }
  i128 c() const { return c_; }
  i128 d() const { return d_; }

  UniMat inverse() const;
  UniMat negated() const;
  /// Representative of {g, -g} with c > 0, or c == 0 and d > 0.
  UniMat projective_normal() const;
  bool in_gamma0(i128 q) const { return mod_floor(c_, q) == 0; }

  friend UniMat operator*(const UniMat& x, const UniMat& y);
  friend bool operator==(const UniMat&, const UniMat&) = default;
  friend auto operator<=>(const UniMat&, const UniMat&) = default;

 private:
  struct Unchecked {};
  UniMat(Unchecked, i128 a, i128 b, i128 c, i128 d) : a_(a), b_(b), c_(c), d_(d) {}

  i128 a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

/// Integer symmetric matrix [[a, b], [b, c]].
struct SymMat {
  i128 a = 0;
  i128 b = 0;
  i128 c = 0;

  i128 det() const { return sub_checked(mul_checked(a, c), mul_checked(b, b)); }
  i128 max_abs() const;
  friend bool operator==(const SymMat&, const SymMat&) = default;
  friend auto operator<=>(const SymMat&, const SymMat&) = default;
};

struct HeegnerPoint {
  SymMat sym;
  int stab_order = 1;
  friend bool operator==(const HeegnerPoint&, const HeegnerPoint&) = default;
};

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;
  /// Throws std::invalid_argument unless y > 0 and both coordinates are finite.
  static UpperHalfPoint make(double x, double y);
};

/// Real 2x2 matrix, used for u_R and the Hecke average.
struct RealMat {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  static RealMat from(const UniMat& g) {
    return {static_cast<double>(g.a()), static_cast<double>(g.b()), static_cast<double>(g.c()),
            static_cast<double>(g.d())};
  }
};

/// gamma g gamma^t.
SymMat act(const UniMat& gamma, const SymMat& g);

/// C-entry of act(tau, g); depends only on the bottom row (c0, d0) of tau.
i128 c_transform(i128 c0, i128 d0, const SymMat& g);
i128 c_transform(const UniMat& tau, const SymMat& g);

bool is_reduced(const SymMat& g);

struct Reduction {
  HeegnerPoint point;
  /// act(transform, input) == point.sym.
  UniMat transform;
};

/// Classical translate/invert reduction; requires det > 0 and a, c > 0.
Reduction reduce(const SymMat& g);

/// Projective stabilizer order of a reduced point: 2 at i, 3 at the corner
/// (1 + i sqrt 3)/2, otherwise 1.
int stabilizer_order(const SymMat& reduced);
int stabilizer_order(const HeegnerPoint& z);

/// Projective stabilizer elements of a reduced point (identity first).
std::vector<UniMat> stabilizer(const SymMat& reduced);

/// One reduced representative per SL2(Z)-orbit of symmetric matrices with
/// determinant h, ordered by (c, b).
std::vector<HeegnerPoint> heegner_points(i128 h);

/// The projective line over Z/qZ, i.e. the right cosets Gamma_0(q) \ SL2(Z)
/// indexed by bottom rows up to unit scaling. Each point is stored as the
/// lexicographically smallest pair in its class.
class ProjectiveLine {
 public:
  static constexpr std::int64_t kMaxModulus = 4096;

  explicit ProjectiveLine(std::int64_t q);

  std::int64_t modulus() const { return q_; }
  std::size_t size() const { return points_.size(); }
  std::pair<std::int64_t, std::int64_t> point(std::size_t i) const { return points_[i]; }
  /// Index of the class of (c : d); throws if gcd(c, d, q) != 1.
  std::size_t index_of(i128 c, i128 d) const;
  /// A matrix in SL2(Z) whose bottom row lies in class i.
  UniMat lift(std::size_t i) const;

 private:
  std::int64_t q_;
  std::vector<std::pair<std::int64_t, std::int64_t>> points_;
  std::vector<std::int32_t> index_;
};

/// Right coset representatives of Gamma_0(q) in SL2(Z); q * prod(1 + 1/p) of them.
std::vector<UniMat> coset_reps(std::int64_t q);

/// Dedekind psi: q * prod_{p | q} (1 + 1/p).
i128 dedekind_psi(i128 q);

/// The point (b + i sqrt(det)) / c of a positive definite symmetric matrix.
UpperHalfPoint to_point(const SymMat& g);
UpperHalfPoint moebius(const RealMat& g, const UpperHalfPoint& z);
inline UpperHalfPoint moebius(const UniMat& g, const UpperHalfPoint& z) { return moebius(RealMat::from(g), z); }

/// |w - z|^2 / (4 Im w Im z).
double u_invariant(const UpperHalfPoint& w, const UpperHalfPoint& z);

/// (a^2 + (b/R)^2 + (cR)^2 + d^2 - 2) / 4.
double u_skewed(const RealMat& g, double R);
inline double u_skewed(const UniMat& g, double R) { return u_skewed(RealMat::from(g), R); }

}  // namespace qcong::lattice
