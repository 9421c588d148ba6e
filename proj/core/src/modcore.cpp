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

#include "qcong/modcore.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace qcong::modcore {

// 3317044064679887385961981: smallest strong pseudoprime to all prime bases <= 41.
const i128 kPrimalityLimit = i128(3317044064679LL) * i128(1000000000000LL) + i128(887385961981LL);

namespace {

constexpr std::array<int, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

i128 pow_checked(i128 p, int j) {
  i128 r = 1;
  for (int i = 0; i < j; ++i) r = mul_checked(r, p);
  return r;
}

// a*v^2 + h mod m, with a and h already reduced mod m.
i128 eval_mod(i128 a_mod, i128 h_mod, i128 v, i128 m) {
  i128 t = mulmod(a_mod, mulmod(v, v, m), m) + h_mod;
  return t >= m ? t - m : t;
}

// Tonelli-Shanks; p odd prime, n in [0, p) a nonzero quadratic residue.
i128 tonelli_shanks(i128 n, i128 p) {
  if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
  i128 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i128 z = 2;
  while (jacobi(z, p) != -1) ++z;
  i128 c = powmod(z, q, p);
  i128 r = powmod(n, (q + 1) / 2, p);
  i128 t = powmod(n, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    i128 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    i128 b = c;
    for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return r;
}

RootSet sqrt_mod_prime(i128 n, i128 p) {
  RootSet out{p, {}};
  n = mod_floor(n, p);
  if (n == 0) {
    out.roots.push_back(0);
    return out;
  }
  if (jacobi(n, p) != 1) return out;
  i128 r = tonelli_shanks(n, p);
  i128 r2 = p - r;
  out.roots = {std::min(r, r2), std::max(r, r2)};
  return out;
}

bool miller_rabin(i128 n) {
  i128 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (int w : kWitnesses) {
    i128 x = powmod(w % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard-Brent; n odd composite. Seeds run c = 1, 2, ... so results are reproducible.
i128 pollard_brent(i128 n) {
  constexpr i128 kBlock = 128;
  for (i128 c = 1;; ++c) {
    auto f = [&](i128 v) {
      i128 t = mulmod(v, v, n) + c;
      return t >= n ? t - n : t;
    };
    i128 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    do {
      x = y;
      for (i128 i = 0; i < r; ++i) y = f(y);
      i128 k = 0;
      do {
        ys = y;
        for (i128 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd128(q, n);
        k += kBlock;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd128(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(i128 n, std::map<i128, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++acc[n];
    return;
  }
  i128 d = pollard_brent(n);
  factor_into(d, acc);
  factor_into(n / d, acc);
}

void check_prime_arg(i128 p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + to_string(p) + " is not prime");
}

}  // namespace

i128 Factorization::product() const {
  i128 r = 1;
  for (const auto& pp : factors) r = mul_checked(r, pow_checked(pp.prime, pp.exponent));
  return r;
}

i128 mulmod(i128 a, i128 b, i128 m) {
  auto ua = static_cast<u128>(a), ub = static_cast<u128>(b), um = static_cast<u128>(m);
  if ((ua >> 64) == 0 && (ub >> 64) == 0) return static_cast<i128>(ua * ub % um);
  // Double-and-add; m < 2^127 so intermediate sums stay below 2^128.
  u128 result = 0;
  while (ub != 0) {
    if (ub & 1) {
      result += ua;
      if (result >= um) result -= um;
    }
    ua += ua;
    if (ua >= um) ua -= um;
    ub >>= 1;
  }
  return static_cast<i128>(result);
}

i128 powmod(i128 base, i128 exp, i128 m) {
  if (m == 1) return 0;
  i128 result = 1;
  base = mod_floor(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int jacobi(i128 n, i128 m) {
  if (m <= 0 || m % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  n = mod_floor(n, m);
  int result = 1;
  while (n != 0) {
    while (n % 2 == 0) {
      n /= 2;
      i128 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(n, m);
    if (n % 4 == 3 && m % 4 == 3) result = -result;
    n %= m;
  }
  return m == 1 ? result : 0;
}

bool is_prime(i128 n) {
  if (n < 2) return false;
  for (int w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  if (n < 43 * 43) return true;
  if (n >= kPrimalityLimit) throw std::range_error("primality test beyond deterministic range: " + to_string(n));
  return miller_rabin(n);
}

RootSet sqrt_mod_p(i128 n, i128 p) {
  if (p == 2) throw std::invalid_argument("sqrt_mod_p requires an odd prime");
  check_prime_arg(p);
  return sqrt_mod_prime(n, p);
}

RootSet roots_mod_prime_power(i128 a, i128 h, i128 p, int j) {
  if (j < 1) throw std::invalid_argument("prime power exponent must be >= 1");
  check_prime_arg(p);
  const i128 pj = pow_checked(p, j);
  const i128 am = mod_floor(a, p), hm = mod_floor(h, p);

  RootSet out{pj, {}};
  if (p != 2 && am != 0 && hm != 0) {
    // Unramified: at most two roots mod p, each lifting uniquely.
    i128 target = mulmod(p - hm, inverse_mod(am, p), p);
    RootSet base = sqrt_mod_prime(target, p);
    for (i128 v : base.roots) {
      i128 mod = p;
      for (int level = 1; level < j; ++level) {
        mod *= p;
        i128 a_mod = mod_floor(a, mod), h_mod = mod_floor(h, mod);
        i128 fv = eval_mod(a_mod, h_mod, v, mod);
        i128 dfv = mulmod(mulmod(2 % mod, a_mod, mod), v, mod);
        i128 step = mulmod(fv, inverse_mod(dfv, mod), mod);
        v = mod_floor(v - step, mod);
      }
      out.roots.push_back(v);
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
  }

  // p | 2ah: exact search. Roots mod p^(i+1) reduce to roots mod p^i, so only
  // the p lifts r + t p^i of each lower root are candidates.
  std::vector<i128> level_roots;
  if (p == 2) {
    for (i128 v = 0; v < 2; ++v)
      if (eval_mod(am, hm, v, 2) == 0) level_roots.push_back(v);
  } else if (am == 0) {
    if (hm == 0)
      for (i128 v = 0; v < p; ++v) level_roots.push_back(v);
  } else {
    level_roots.push_back(0);  // p | h, p odd, p does not divide a
  }
  i128 mod = p;
  for (int level = 1; level < j && !level_roots.empty(); ++level) {
    i128 next = mod * p;
    i128 a_mod = mod_floor(a, next), h_mod = mod_floor(h, next);
    std::vector<i128> lifted;
    for (i128 r : level_roots) {
      for (i128 t = 0; t < p; ++t) {
        i128 v = r + t * mod;
        if (eval_mod(a_mod, h_mod, v, next) == 0) lifted.push_back(v);
      }
    }
    level_roots = std::move(lifted);
    mod = next;
  }
  out.roots = std::move(level_roots);
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

RootSet roots_mod_k(i128 a, i128 h, i128 k, const Factorization& fk) {
  if (k < 1) throw std::invalid_argument("modulus k must be >= 1");
  RootSet acc{1, {0}};
  for (const auto& pp : fk.factors) {
    RootSet part = roots_mod_prime_power(a, h, pp.prime, pp.exponent);
    if (part.empty()) return RootSet{k, {}};
    const i128 m1 = acc.modulus, m2 = part.modulus;
    const i128 inv = inverse_mod(m1 % m2, m2);
    std::vector<i128> combined;
    combined.reserve(acc.size() * part.size());
    for (i128 x : acc.roots) {
      for (i128 y : part.roots) {
        i128 t = mulmod(mod_floor(y - x, m2), inv, m2);
        combined.push_back(add_checked(x, mul_checked(m1, t)));
      }
    }
    acc.modulus = mul_checked(m1, m2);
    acc.roots = std::move(combined);
  }
  std::sort(acc.roots.begin(), acc.roots.end());
  acc.modulus = k;
  return acc;
}

RootSet roots_mod_k(i128 a, i128 h, i128 k) {
  if (k < 1) throw std::invalid_argument("modulus k must be >= 1");
  return roots_mod_k(a, h, k, factorize(k));
}

i128 rho_prime_power(i128 a, i128 h, i128 p, int j) {
  const i128 am = mod_floor(a, p), hm = mod_floor(h, p);
  if (p != 2 && am != 0 && hm != 0) {
    i128 minus_ah = mulmod(p - am, hm, p);
    return 1 + jacobi(minus_ah, p);
  }
  return static_cast<i128>(roots_mod_prime_power(a, h, p, j).size());
}

i128 rho(i128 a, i128 h, const Factorization& fk) {
  i128 r = 1;
  for (const auto& pp : fk.factors) {
    i128 local = rho_prime_power(a, h, pp.prime, pp.exponent);
    if (local == 0) return 0;
    r = mul_checked(r, local);
  }
  return r;
}

i128 rho(i128 a, i128 h, i128 k) {
  if (k < 1) throw std::invalid_argument("modulus k must be >= 1");
  return rho(a, h, factorize(k));
}

Factorization factorize(i128 n) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  std::map<i128, int> acc;
  for (i128 p : {2, 3, 5}) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  // Wheel mod 30 trial division for small factors.
  static constexpr std::array<int, 8> kWheel = {4, 2, 4, 2, 4, 6, 2, 6};
  i128 d = 7;
  for (int i = 0; d <= 1000 && d * d <= n; d += kWheel[i], i = (i + 1) % 8) {
    while (n % d == 0) {
      ++acc[d];
      n /= d;
    }
  }
  if (n > 1) {
    if (d * d > n)
      ++acc[n];
    else
      factor_into(n, acc);
  }
  Factorization out;
  out.factors.reserve(acc.size());
  for (auto [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

i128 gpf(i128 n) {
  if (n < 2) throw std::invalid_argument("gpf requires n >= 2");
  return factorize(n).factors.back().prime;
}

int mobius(const Factorization& f) {
  int sign = 1;
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

bool is_squarefree(i128 n) {
  if (n == 0) return false;
  return mobius(factorize(abs128(n))) != 0;
}

std::vector<i128> divisors(i128 n) {
  if (n < 1) throw std::invalid_argument("divisors requires n >= 1");
  std::vector<i128> out{1};
  for (const auto& pp : factorize(n).factors) {
    const std::size_t base = out.size();
    i128 pk = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i128 divisor_sum(i128 n) {
  i128 s = 0;
  for (i128 d : divisors(n)) s = add_checked(s, d);
  return s;
}

}  // namespace qcong::modcore
