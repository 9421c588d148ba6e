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

#include <cmath>

#include "qcong/int128.hpp"

namespace qcong {

/// Order-independent accumulator for real terms.
///
/// Each term is rounded once to a multiple of 2^-64 and then summed in
/// checked 128-bit integers, so the total is independent of summation order
/// and of how work was split across threads. Magnitudes up to 2^62 are
/// representable.
class FixedSum {
 public:
  static constexpr int kFracBits = 64;

  void add(double term) { units_ = add_checked(units_, to_units(term)); }
  void add_units(i128 units) { units_ = add_checked(units_, units); }
  void merge(const FixedSum& other) { units_ = add_checked(units_, other.units_); }
  FixedSum& operator+=(const FixedSum& other) {
    merge(other);
    return *this;
  }

  i128 units() const { return units_; }
  double value() const { return from_units(units_); }

  static double from_units(i128 units) { return std::ldexp(static_cast<double>(units), -kFracBits); }

  static i128 to_units(double term) {
    if (!std::isfinite(term) || std::fabs(term) >= 0x1p62) throw_overflow("FixedSum term");
    double scaled = std::ldexp(term, kFracBits);
    return static_cast<i128>(std::nearbyint(scaled));
  }

 private:
  i128 units_ = 0;
};

}  // namespace qcong
