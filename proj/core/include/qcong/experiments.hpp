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

// Desk-scale harnesses: Type I/II discrepancies, automorphic kernel sums,
// equidistribution of roots to prime moduli, greatest prime factors of
// a n^2 + h, and the divisor problem for a x^2 + b y^3.
//
// Real-valued aggregates go through FixedSum, so results do not depend on the
// thread count or on how the outer loop was chunked.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcong/int128.hpp"
#include "qcong/modcore.hpp"
#include "qcong/params.hpp"
#include "qcong/rational.hpp"

namespace qcong::experiments {

/// Spectral gap exponent, 0 <= theta <= 1/2.
class Theta {
 public:
  static constexpr double kKimSarnak = 7.0 / 64.0;

  explicit Theta(double value = kKimSarnak);
  double value() const { return value_; }

 private:
  double value_;
};

/// A nonnegative weight supported on [lo, hi].
///
/// kBump is exp(-delta / (1 - s^2)) with s the affine image of x in [-1, 1];
/// it is C-infinity, and its J-th derivative is O(delta^-J) relative to the
/// support width. kIndicator is 1 on the closed interval, kZero vanishes.
struct BumpFn {
  enum class Kind { kZero, kBump, kIndicator };

  Kind kind = Kind::kZero;
  double lo = 0.0;
  double hi = 1.0;
  double delta = 1.0;
  double integral = 0.0;
  double integral_error = 0.0;

  double operator()(double x) const;
  friend bool operator==(const BumpFn&, const BumpFn&) = default;
};

BumpFn bump(double lo, double hi, double delta = 1.0);
BumpFn indicator(double lo, double hi);
BumpFn zero_weight(double lo = 0.0, double hi = 1.0);
double bump_eval(const BumpFn& psi, double x);
double bump_integral(const BumpFn& psi);

/// "zero", "indicator:lo:hi" or "bump:lo:hi:delta".
std::string to_string(const BumpFn& psi);
BumpFn parse_weight(std::string_view spec);

/// One cell of a discrepancy table: error = exact_count - main_term.
struct DiscrepancyRow {
  std::vector<std::int64_t> cell;
  double exact_count = 0.0;
  double main_term = 0.0;
  double error = 0.0;
  friend bool operator==(const DiscrepancyRow&, const DiscrepancyRow&) = default;
};

/// How total_error is assembled from the row errors.
enum class Aggregation { kSumOfAbs, kAbsOfSum };

const char* to_string(Aggregation a);

struct ExperimentReport {
  std::string experiment;
  ParamMap parameters;
  std::vector<DiscrepancyRow> rows;
  Aggregation aggregation = Aggregation::kSumOfAbs;
  double total_count = 0.0;
  double total_main = 0.0;
  double total_error = 0.0;
  double trivial_bound = 0.0;
  double paper_bound = 0.0;
  double theta = Theta::kKimSarnak;
  double ratio_to_bound = 0.0;
  std::map<std::string, double> extras;
  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Runs body(i) for i in [0, n) on up to `threads` workers. Workers take
/// contiguous blocks; body must only write to per-index storage.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Primes in [lo, hi], ascending, by a segmented sieve of Eratosthenes.
std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi);

/// Factorizations of every integer in [lo, hi] (lo >= 1), sieved by the
/// primes up to sqrt(hi).
std::vector<modcore::Factorization> factor_range(std::int64_t lo, std::int64_t hi);

/// Sum over d <= D of |sum over k == 0 (d) of psi1(k/K) (sum over
/// a l^2 + h == 0 (k) of psi2(l/X) - rho(k)/k X int psi2)|.
/// Rows are indexed by d.
ExperimentReport type1(std::int64_t X, std::int64_t K, std::int64_t D, std::int64_t a, std::int64_t h,
                       const BumpFn& psi1, const BumpFn& psi2, Theta theta = Theta{}, unsigned threads = 1);

using Coefficient = std::function<double(std::int64_t)>;

/// |sum over m in [M, 2M), n in [N, 2N) of alpha_m beta_n (...)|, rows by n.
/// beta must vanish off squarefree n; all coefficients must have |.| <= 1.
ExperimentReport type2(std::int64_t X, std::int64_t M, std::int64_t N, std::int64_t a, std::int64_t h,
                       const Coefficient& alpha, const Coefficient& beta, const BumpFn& psi, Theta theta = Theta{},
                       unsigned threads = 1);

struct HypothesisSum {
  double sum = 0.0;
  /// (1 + eps) log(Z/Y) + 1/eps.
  double companion = 0.0;
  std::int64_t primes = 0;
  friend bool operator==(const HypothesisSum&, const HypothesisSum&) = default;
};

/// Sum over primes Y <= p < Z of rho(p) log(p) / p.
HypothesisSum hypothesis_sum(std::int64_t a, std::int64_t h, std::int64_t Y, std::int64_t Z, double eps = 0.1);

struct Interval {
  Rational alpha;
  Rational beta;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct EquidistRow {
  Interval interval;
  std::int64_t count = 0;
  double expected = 0.0;
  double deviation = 0.0;
  double relative = 0.0;
  friend bool operator==(const EquidistRow&, const EquidistRow&) = default;
};

struct EquidistTable {
  ParamMap parameters;
  std::int64_t primes = 0;
  /// Sum over p <= X of rho(p).
  std::int64_t total_roots = 0;
  std::vector<EquidistRow> rows;
  double max_relative_deviation() const;
  friend bool operator==(const EquidistTable&, const EquidistTable&) = default;
};

/// Pairs (p, v) with p <= X prime, a v^2 + h == 0 (p), v in [1, p] and
/// v/p in (alpha, beta], against (beta - alpha) sum rho(p).
EquidistTable equidist(std::int64_t X, std::int64_t a, std::int64_t h, const std::vector<Interval>& intervals,
                       unsigned threads = 1);

/// (j/n, (j+1)/n] for j < n.
std::vector<Interval> uniform_intervals(std::int64_t n);

/// Sum over p <= X and roots v mod p of e(m v / p).
std::complex<double> weyl_sum(std::int64_t X, std::int64_t a, std::int64_t h, std::int64_t m, unsigned threads = 1);

struct GpfEntry {
  std::int64_t n = 0;
  i128 value = 0;
  i128 gpf = 0;
  double exponent = 0.0;
  friend bool operator==(const GpfEntry&, const GpfEntry&) = default;
};

struct GpfReport {
  static constexpr double kBinWidth = 0.05;

  ParamMap parameters;
  i128 max_gpf = 0;
  std::int64_t argmax = 0;
  /// log(max_gpf) / log(X).
  double exponent = 0.0;
  /// Bin index b counts n with exponent in [b w, (b + 1) w).
  std::map<std::int64_t, std::int64_t> histogram;
  std::vector<GpfEntry> entries;
  friend bool operator==(const GpfReport&, const GpfReport&) = default;
};

/// Greatest prime factor of a n^2 + h for n in [X, 2X], by a root sieve.
GpfReport gpf_scan(std::int64_t X, std::int64_t a, std::int64_t h);

struct ChebyshevReport {
  ParamMap parameters;
  /// Sum over n in [X, 2X] of log(a n^2 + h).
  double lhs = 0.0;
  /// Sum over p^j of log p #{n : p^j | a n^2 + h}, counts from roots mod p^j.
  double rhs = 0.0;
  double difference = 0.0;
  /// Sum over p of |e_sieve(p) - e_factor(p)| where e(p) is the exponent of p
  /// in the product of all a n^2 + h. Zero exactly when the identity holds.
  std::int64_t multiset_difference = 0;
  std::int64_t primes = 0;
  friend bool operator==(const ChebyshevReport&, const ChebyshevReport&) = default;
};

ChebyshevReport chebyshev_identity(std::int64_t X, std::int64_t a, std::int64_t h);

struct KernelRow {
  std::vector<std::int64_t> cell;
  double value = 0.0;
  friend bool operator==(const KernelRow&, const KernelRow&) = default;
};

struct KernelReport {
  std::string experiment;
  ParamMap parameters;
  std::vector<KernelRow> rows;
  /// Moduli left out because gcd(h, q^2) is not squarefree.
  std::vector<std::int64_t> skipped;
  double total = 0.0;
  double bound = 0.0;
  double ratio_to_bound = 0.0;
  friend bool operator==(const KernelReport&, const KernelReport&) = default;
};

/// 1{u <= Z} / sqrt(1 + u).
double kernel_majorant(double u);

/// Sum over q in [Qlo, Qhi] of <alpha_q | K_q k_{Z,1} | alpha_q>, unfolded to
/// z2 in Lambda_h, w1 in S_h with u(w1, z2) <= Z and tau in P^1(Z/q).
KernelReport kernel_heegner(std::int64_t Qlo, std::int64_t Qhi, std::int64_t h, const Rational& Z,
                            unsigned threads = 1);

/// Sum over t, n0, n1, n2 (coprime), d | n0 n1 n2 with d >= D, |v|, |v'| <= V
/// and gamma in Gamma_0(s n1 n2) / {+-1}, s = d n0 t^2, of the majorant of
/// n[x']^t gamma n[-x]^t where x = s n1 v inv(n1) and u_R <= Z.
KernelReport kernel_lowertriang(std::int64_t D, std::int64_t N0, std::int64_t N1, std::int64_t N2, std::int64_t T,
                                std::int64_t V, const Rational& Z, const Rational& R, unsigned threads = 1);

/// #{x mod d : a x^2 + b y^3 == 0 (d)}.
std::int64_t rho_cubic(std::int64_t a, std::int64_t b, std::int64_t y, std::int64_t d);

struct YPoissonReport {
  ParamMap parameters;
  double lhs = 0.0;
  double main = 0.0;
  double error = 0.0;
  /// |error| / sqrt(d).
  double normalized_error = 0.0;
  std::int64_t complete_sum = 0;
  bool identity_holds = false;
  friend bool operator==(const YPoissonReport&, const YPoissonReport&) = default;
};

YPoissonReport ypoisson_check(std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t B, const BumpFn& f2);

/// Sum over d <= Dmax of |sum over squarefree k == 0 (d) of f(k/K) sum over n
/// of w_{kn}|, with w = a - b for the sequences attached to a x^2 + b y^3.
ExperimentReport x2y3_typeI2(std::int64_t X, std::int64_t K, std::int64_t Dmax, std::int64_t a, std::int64_t b,
                             const BumpFn& f, const BumpFn& f1, const BumpFn& f2, std::int64_t A, std::int64_t B,
                             unsigned threads = 1);

}  // namespace qcong::experiments
