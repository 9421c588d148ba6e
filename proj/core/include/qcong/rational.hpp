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

#include <compare>
#include <string>
#include <string_view>

#include "qcong/int128.hpp"

namespace qcong {

/// Exact rational with positive denominator, always in lowest terms.
/// Used wherever a real threshold meets an integer condition (interval
/// endpoints, kernel support radii) so the comparison stays exact.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 num, i128 den = 1);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  double to_double() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Accepts "p", "p/q" or a finite decimal like "0.125".
  static Rational parse(std::string_view s);
  std::string str() const;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

}  // namespace qcong
