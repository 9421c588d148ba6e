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

// Exact modular arithmetic for the congruence a*v^2 + h == 0 (mod k).
//
// Everything here is a pure function of its arguments. Integers are checked
// signed 128-bit values; overflow raises std::range_error, bad arguments raise
// std::invalid_argument.

#pragma once

#include <cstddef>
#include <vector>

#include "qcong/int128.hpp"

namespace qcong::modcore {

struct PrimePower {
  i128 prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization sorted by strictly increasing prime.
struct Factorization {
  std::vector<PrimePower> factors;

  i128 product() const;
  bool empty() const { return factors.empty(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Residues v in [0, modulus), ascending, without duplicates.
struct RootSet {
  i128 modulus = 1;
  std::vector<i128> roots;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
  friend bool operator==(const RootSet&, const RootSet&) = default;
};

/// Miller-Rabin with the first thirteen prime bases is deterministic below
/// this bound; primality questions above it raise std::range_error.
extern const i128 kPrimalityLimit;

/// (a * b) mod m for 0 <= a, b < m.
i128 mulmod(i128 a, i128 b, i128 m);
i128 powmod(i128 base, i128 exp, i128 m);

/// Jacobi symbol (n/m) for odd m >= 1.
int jacobi(i128 n, i128 m);

bool is_prime(i128 n);

/// Roots of x^2 == n (mod p) for an odd prime p.
RootSet sqrt_mod_p(i128 n, i128 p);

/// Roots of a*v^2 + h == 0 modulo p^j. Hensel lifting when p does not divide
/// 2ah, exact level-by-level residue search otherwise.
RootSet roots_mod_prime_power(i128 a, i128 h, i128 p, int j);

RootSet roots_mod_k(i128 a, i128 h, i128 k);
RootSet roots_mod_k(i128 a, i128 h, i128 k, const Factorization& fk);

/// Number of roots of a*v^2 + h == 0 (mod k), evaluated multiplicatively.
i128 rho(i128 a, i128 h, i128 k);
i128 rho(i128 a, i128 h, const Factorization& fk);
/// rho at a single prime power.
i128 rho_prime_power(i128 a, i128 h, i128 p, int j);

Factorization factorize(i128 n);

/// Greatest prime factor, n >= 2.
i128 gpf(i128 n);

int mobius(const Factorization& f);
bool is_squarefree(i128 n);
/// Sum of positive divisors.
i128 divisor_sum(i128 n);
/// All positive divisors, ascending.
std::vector<i128> divisors(i128 n);

}  // namespace qcong::modcore
