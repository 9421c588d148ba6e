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

// Parametrizations of symmetric matrices with congruence conditions by
// Gamma_0(q) cosets, lower-triangular shifts and Hecke orbits, together with
// brute-force verifiers that check them as exact set equalities in a box.
//
// S_{a,h}(d) is the set of (A, B, C) with AC - B^2 = ah, A, C > 0,
// C == 0 (mod ad) and B == 0 (mod a).

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qcong/int128.hpp"
#include "qcong/lattice.hpp"
#include "qcong/params.hpp"

namespace qcong::parametrize {

using lattice::RealMat;
using lattice::SymMat;

/// Upper triangular [[e, f], [0, g]] with e g = h and 0 <= f < g.
struct HeckeOrbitRep {
  i128 e = 1;
  i128 f = 0;
  i128 g = 1;
  friend bool operator==(const HeckeOrbitRep&, const HeckeOrbitRep&) = default;
};

enum class Verdict { kPass, kFail, kInconclusive };

const char* to_string(Verdict v);

/// Outcome of a box-restricted set-equality check. Witnesses are the integer
/// entries of the offending element (three for a matrix, six for a pair).
struct ParamReport {
  using Witness = std::vector<std::int64_t>;

  std::string lemma;
  ParamMap parameters;
  std::int64_t elements_enumerated = 0;
  std::int64_t generated = 0;
  std::int64_t hits = 0;
  std::vector<Witness> misses;
  std::vector<Witness> double_hits;
  /// Generated elements that are not in the target set.
  std::vector<Witness> spurious;
  /// Roundtrip or internal consistency failures.
  std::vector<Witness> mismatches;
  /// False when the generation side stopped at its node cap.
  bool generation_complete = true;

  Verdict verdict() const;
  bool passed() const { return verdict() == Verdict::kPass; }
  friend bool operator==(const ParamReport&, const ParamReport&) = default;
};

/// All of S_{a,h}(d) with max(|A|, |B|, |C|) <= bound, sorted.
std::vector<SymMat> enumerate_S(i128 a, i128 h, i128 d, i128 bound);

/// Gamma_0(ad)-coset parametrization of S_{a,h}(d) by Heegner points of
/// determinant ah. Every target must be reached once per stabilizer element.
ParamReport verify_para1(i128 a, i128 h, i128 d, i128 bound);

/// Pairs in S_{a,h}(s n1) x S_{a,h}(s n2) with equal A and B1 == B2 (mod sA),
/// against lower-triangular shifts of S_{a,h}(s n1 n2).
ParamReport verify_para2(i128 a, i128 h, i128 s, i128 n1, i128 n2, i128 bound);

/// Upper triangular [[e, f], [0, g]] with e g = h, e descending then f ascending.
std::vector<HeckeOrbitRep> hecke_orbits(i128 h);

struct CubeDecomposition {
  HeckeOrbitRep sigma;
  SymMat base;
};

/// Writes g in S_{a,h y^2}(d) uniquely as (y sigma^{-1}) acting on a base in
/// S_{a,h}(d). Requires y | h, gcd(h, y^2) squarefree, gcd(a, h) = 1 and
/// gcd(y, ad) = 1.
CubeDecomposition cube_decompose(const SymMat& g, i128 h, i128 y, i128 a, i128 d);

/// (y sigma^{-1}) acting on base: [[g, -f], [0, e]] base [[g, 0], [-f, e]].
SymMat cube_compose(const HeckeOrbitRep& sigma, const SymMat& base);

ParamReport verify_para3(i128 a, i128 h, i128 y, i128 d, i128 bound);

/// h^{-1/2} sum over sigma in H_h of f(sigma g / sqrt h).
double hecke_apply(i128 h, const std::function<double(const RealMat&)>& f, const RealMat& g);

}  // namespace qcong::parametrize
