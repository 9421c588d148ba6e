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

#include "qcong/rational.hpp"

namespace qcong {

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = sub_checked(0, num);
    den = sub_checked(0, den);
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return mul_checked(a.num_, b.den_) <=> mul_checked(b.num_, a.den_);
}

Rational Rational::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    return Rational(parse_i128(s.substr(0, slash)), parse_i128(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_i128(s));
  std::string digits(s.substr(0, dot));
  std::string_view frac = s.substr(dot + 1);
  if (frac.empty() || frac.size() > 30) throw std::invalid_argument("malformed decimal: " + std::string(s));
  digits += frac;
  if (digits == "-" || digits == "+" || digits.empty()) throw std::invalid_argument("malformed decimal");
  i128 den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den = mul_checked(den, 10);
  return Rational(parse_i128(digits), den);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

}  // namespace qcong
