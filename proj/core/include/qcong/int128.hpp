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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcong {

using i128 = __int128;
using u128 = unsigned __int128;

/// Thrown for entry or intermediate overflow. Never wraps.
inline void throw_overflow(const char* what) {
  throw std::range_error(std::string("integer overflow in ") + what);
}

inline i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow("add");
  return r;
}

inline i128 sub_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw_overflow("sub");
  return r;
}

inline i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow("mul");
  return r;
}

inline i128 abs128(i128 a) {
  if (a < 0) {
    if (a == -a) throw_overflow("abs");
    return -a;
  }
  return a;
}

/// Floor division and non-negative remainder.
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Integer square root: largest r with r*r <= n, n >= 0.
i128 isqrt(i128 n);

/// Returns x with a*x == g (mod m), g = gcd(a, m); x in [0, m).
i128 inverse_mod(i128 a, i128 m);

std::string to_string(i128 v);

/// Parses an optionally signed decimal integer; throws invalid_argument.
i128 parse_i128(std::string_view s);

}  // namespace qcong
