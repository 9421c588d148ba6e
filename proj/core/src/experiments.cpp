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

#include "qcong/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcong/fixed_sum.hpp"
#include "qcong/lattice.hpp"

namespace qcong::experiments {

namespace mc = qcong::modcore;
namespace lt = qcong::lattice;
using std::int64_t;

namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr std::size_t kSegment = std::size_t{1} << 18;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(int64_t v) { return std::to_string(v); }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_form(int64_t a, int64_t h) {
  require(a >= 1, "a must be >= 1");
  require(h >= 1, "h must be >= 1");
  require(std::gcd(a, h) == 1, "gcd(a, h) must be 1");
  require(mc::is_squarefree(h), "h must be squarefree");
}

int64_t to64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw_overflow("value exceeds 64 bits");
  return static_cast<int64_t>(v);
}

// Integer range [ceil(lo * scale), floor(hi * scale)] covered by a weight.
std::pair<int64_t, int64_t> support_range(const BumpFn& w, double scale) {
  return {static_cast<int64_t>(std::ceil(w.lo * scale)), static_cast<int64_t>(std::floor(w.hi * scale))};
}

// Smallest n >= lo with n == r (mod m).
i128 first_at_least(i128 lo, i128 r, i128 m) { return lo + mod_floor(r - lo, m); }

mc::Factorization merge(const mc::Factorization& x, const mc::Factorization& y) {
  mc::Factorization out;
  std::size_t i = 0, j = 0;
  while (i < x.factors.size() || j < y.factors.size()) {
    if (j == y.factors.size() || (i < x.factors.size() && x.factors[i].prime < y.factors[j].prime)) {
      out.factors.push_back(x.factors[i++]);
    } else if (i == x.factors.size() || y.factors[j].prime < x.factors[i].prime) {
      out.factors.push_back(y.factors[j++]);
    } else {
      out.factors.push_back({x.factors[i].prime, x.factors[i].exponent + y.factors[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

bool squarefree(const mc::Factorization& f) {
  return std::all_of(f.factors.begin(), f.factors.end(), [](const mc::PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<int64_t> small_primes(int64_t n) {
  std::vector<int64_t> out;
  if (n < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
  for (int64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (int64_t m = p * p; m <= n; m += p) composite[m] = 1;
  }
  return out;
}

template <typename Fn>
void for_each_prime(int64_t lo, int64_t hi, Fn&& fn) {
  lo = std::max<int64_t>(lo, 2);
  if (hi < lo) return;
  const auto base = small_primes(to64(isqrt(hi)));
  std::vector<char> composite;
  for (int64_t start = lo; start <= hi;) {
    const int64_t stop = std::min<int64_t>(hi, start + static_cast<int64_t>(kSegment) - 1);
    composite.assign(static_cast<std::size_t>(stop - start + 1), 0);
    for (int64_t p : base) {
      if (p * p > stop) break;
      int64_t m = std::max(p * p, (start + p - 1) / p * p);
      for (; m <= stop; m += p) composite[m - start] = 1;
    }
    for (int64_t n = start; n <= stop; ++n)
      if (!composite[n - start]) fn(n);
    if (stop == hi) break;
    start = stop + 1;
  }
}

// Splits [0, n) into at most `parts` contiguous blocks.
std::vector<std::pair<std::size_t, std::size_t>> blocks(std::size_t n, std::size_t parts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n == 0) return out;
  parts = std::max<std::size_t>(1, std::min(parts, n));
  const std::size_t step = (n + parts - 1) / parts;
  for (std::size_t b = 0; b < n; b += step) out.emplace_back(b, std::min(n, b + step));
  return out;
}

double bump_profile(double s, double delta) {
  const double t = 1.0 - s * s;
  return t <= 0.0 ? 0.0 : std::exp(-delta / t);
}

// Aggregates per-cell unit sums over the multiples of each d <= D.
struct RowSums {
  std::vector<i128> count;
  std::vector<i128> main;
};

ExperimentReport finish_divisor_rows(std::string name, ParamMap params, const RowSums& cells, int64_t first,
                                     int64_t D) {
  ExperimentReport rep;
  rep.experiment = std::move(name);
  rep.parameters = std::move(params);
  rep.aggregation = Aggregation::kSumOfAbs;
  const int64_t last = first + static_cast<int64_t>(cells.count.size()) - 1;
  FixedSum total_count, total_main, total_error, trivial;
  for (int64_t d = 1; d <= D; ++d) {
    FixedSum c, m;
    for (int64_t k = first + mod_floor(-first, d); k <= last; k += d) {
      c.add_units(cells.count[k - first]);
      m.add_units(cells.main[k - first]);
    }
    DiscrepancyRow row{{d}, c.value(), m.value(), 0.0};
    row.error = row.exact_count - row.main_term;
    total_count.add(row.exact_count);
    total_main.add(row.main_term);
    total_error.add(std::fabs(row.error));
    trivial.add(std::fabs(row.exact_count) + std::fabs(row.main_term));
    rep.rows.push_back(std::move(row));
  }
  rep.total_count = total_count.value();
  rep.total_main = total_main.value();
  rep.total_error = total_error.value();
  rep.trivial_bound = trivial.value();
  return rep;
}

}  // namespace

Theta::Theta(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 0.5)) throw std::invalid_argument("theta must lie in [0, 1/2]");
}

double BumpFn::operator()(double x) const {
  switch (kind) {
    case Kind::kZero:
      return 0.0;
    case Kind::kIndicator:
      return (x >= lo && x <= hi) ? 1.0 : 0.0;
    case Kind::kBump:
      if (x <= lo || x >= hi) return 0.0;
      return bump_profile((2.0 * x - lo - hi) / (hi - lo), delta);
  }
  return 0.0;
}

BumpFn bump(double lo, double hi, double delta) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "bump needs lo < hi");
  require(delta > 0.0 && delta <= 1.0, "bump smoothness delta must lie in (0, 1]");
  BumpFn f{BumpFn::Kind::kBump, lo, hi, delta, 0.0, 0.0};
  double err = 0.0;
  auto profile = [delta](double s) { return bump_profile(s, delta); };
  const double unit =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(profile, -1.0, 1.0, 15, 1e-12, &err);
  if (!(err <= kQuadratureTolerance)) throw std::runtime_error("bump quadrature did not converge");
  const double half = 0.5 * (hi - lo);
  f.integral = half * unit;
  f.integral_error = half * err;
  return f;
}

BumpFn indicator(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "indicator needs lo < hi");
  return {BumpFn::Kind::kIndicator, lo, hi, 1.0, hi - lo, 0.0};
}

BumpFn zero_weight(double lo, double hi) {
  require(lo < hi, "weight needs lo < hi");
  return {BumpFn::Kind::kZero, lo, hi, 1.0, 0.0, 0.0};
}

double bump_eval(const BumpFn& psi, double x) { return psi(x); }
double bump_integral(const BumpFn& psi) { return psi.integral; }

std::string to_string(const BumpFn& psi) {
  switch (psi.kind) {
    case BumpFn::Kind::kZero:
      return "zero:" + fmt(psi.lo) + ":" + fmt(psi.hi);
    case BumpFn::Kind::kIndicator:
      return "indicator:" + fmt(psi.lo) + ":" + fmt(psi.hi);
    case BumpFn::Kind::kBump:
      return "bump:" + fmt(psi.lo) + ":" + fmt(psi.hi) + ":" + fmt(psi.delta);
  }
  return {};
}

BumpFn parse_weight(std::string_view spec) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    std::size_t next = spec.find(':', pos);
    parts.push_back(spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  auto num = [&](std::size_t i) {
    double v = 0.0;
    auto s = parts.at(i);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::invalid_argument("bad number in weight: " + std::string(spec));
    return v;
  };
  const auto kind = parts.front();
  if (kind == "zero" && parts.size() == 1) return zero_weight();
  if (kind == "zero" && parts.size() == 3) return zero_weight(num(1), num(2));
  if (kind == "indicator" && parts.size() == 3) return indicator(num(1), num(2));
  if (kind == "bump" && parts.size() == 3) return bump(num(1), num(2));
  if (kind == "bump" && parts.size() == 4) return bump(num(1), num(2), num(3));
  throw std::invalid_argument("unknown weight: " + std::string(spec));
}

const char* to_string(Aggregation a) { return a == Aggregation::kSumOfAbs ? "sum_of_abs" : "abs_of_sum"; }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) throw std::invalid_argument("threads must be >= 1");
  const auto parts = blocks(n, threads);
  if (parts.size() <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(parts.size());
  std::vector<std::thread> pool;
  pool.reserve(parts.size());
  for (std::size_t w = 0; w < parts.size(); ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = parts[w].first; i < parts[w].second; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<int64_t> primes_in(int64_t lo, int64_t hi) {
  std::vector<int64_t> out;
  for_each_prime(lo, hi, [&](int64_t p) { out.push_back(p); });
  return out;
}

std::vector<mc::Factorization> factor_range(int64_t lo, int64_t hi) {
  require(lo >= 1, "factor_range needs lo >= 1");
  if (hi < lo) return {};
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<int64_t> rest(n);
  std::iota(rest.begin(), rest.end(), lo);
  std::vector<mc::Factorization> out(n);
  for (int64_t p : small_primes(to64(isqrt(hi)))) {
    for (int64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
      auto& r = rest[m - lo];
      int e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      out[m - lo].factors.push_back({p, e});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rest[i] > 1) out[i].factors.push_back({rest[i], 1});
  return out;
}

ExperimentReport type1(int64_t X, int64_t K, int64_t D, int64_t a, int64_t h, const BumpFn& psi1, const BumpFn& psi2,
                       Theta theta, unsigned threads) {
  require(X >= 1 && K >= 1 && D >= 1, "X, K, D must be >= 1");
  require(D <= K, "need D <= K");
  require(static_cast<i128>(K) <= static_cast<i128>(X) * X, "need K <= X^2");
  require(static_cast<i128>(D) * D <= X, "need D <= X^(1/2)");
  check_form(a, h);

  const auto [klo0, khi] = support_range(psi1, static_cast<double>(K));
  const int64_t klo = std::max<int64_t>(1, klo0);
  const auto [llo, lhi] = support_range(psi2, static_cast<double>(X));
  const std::size_t nk = khi >= klo ? static_cast<std::size_t>(khi - klo + 1) : 0;
  const auto facts = factor_range(klo, std::max(klo, khi));
  const double xi = static_cast<double>(X) * psi2.integral;

  RowSums cells{std::vector<i128>(nk, 0), std::vector<i128>(nk, 0)};
  const auto parts = blocks(nk, 64);
  parallel_for(parts.size(), threads, [&](std::size_t b) {
    for (std::size_t i = parts[b].first; i < parts[b].second; ++i) {
      const int64_t k = klo + static_cast<int64_t>(i);
      const double w1 = psi1(static_cast<double>(k) / static_cast<double>(K));
      if (w1 == 0.0) continue;
      const auto roots = mc::roots_mod_k(a, h, k, facts[i]);
      FixedSum c;
      for (i128 r : roots.roots)
        for (i128 l = first_at_least(llo, r, k); l <= lhi; l += k)
          c.add(w1 * psi2(static_cast<double>(l) / static_cast<double>(X)));
      cells.count[i] = c.units();
      const double rho = static_cast<double>(roots.size());
      cells.main[i] = FixedSum::to_units(w1 * (rho * xi / static_cast<double>(k)));
    }
  });

  ParamMap params{{"X", fmt(X)},           {"K", fmt(K)},           {"D", fmt(D)},
                  {"a", fmt(a)},           {"h", fmt(h)},           {"psi1", to_string(psi1)},
                  {"psi2", to_string(psi2)}, {"theta", fmt(theta.value())}};
  auto rep = finish_divisor_rows("type1", std::move(params), cells, klo, D);
  const double dd = static_cast<double>(D), xx = static_cast<double>(X), hh = static_cast<double>(h);
  rep.theta = theta.value();
  rep.paper_bound = std::sqrt(dd) * std::sqrt(xx) * (std::sqrt(dd) + std::pow(hh, 0.25)) *
                    std::pow(1.0 + xx / (dd * (dd + std::sqrt(hh))), theta.value());
  rep.ratio_to_bound = rep.total_error / rep.paper_bound;
  return rep;
}

ExperimentReport type2(int64_t X, int64_t M, int64_t N, int64_t a, int64_t h, const Coefficient& alpha,
                       const Coefficient& beta, const BumpFn& psi, Theta theta, unsigned threads) {
  require(X >= 1 && N >= 1, "X, N must be >= 1");
  require(M >= N, "need M >= N");
  require(static_cast<i128>(M) * N >= X, "need M N >= X");
  require(M <= X, "need M <= X");
  check_form(a, h);

  const auto fm = factor_range(M, 2 * M - 1);
  const auto fn = factor_range(N, 2 * N - 1);
  std::vector<double> am(static_cast<std::size_t>(M)), bn(static_cast<std::size_t>(N));
  for (int64_t m = M; m < 2 * M; ++m) {
    const double v = alpha(m);
    require(std::isfinite(v) && std::fabs(v) <= 1.0, "alpha must be bounded by 1");
    am[m - M] = v;
  }
  for (int64_t n = N; n < 2 * N; ++n) {
    const double v = beta(n);
    require(std::isfinite(v) && std::fabs(v) <= 1.0, "beta must be bounded by 1");
    require(v == 0.0 || squarefree(fn[n - N]), "beta must be supported on squarefree n");
    bn[n - N] = v;
  }

  const auto [llo, lhi] = support_range(psi, static_cast<double>(X));
  const double xi = static_cast<double>(X) * psi.integral;
  std::vector<DiscrepancyRow> rows(static_cast<std::size_t>(N));
  std::vector<i128> trivial_units(static_cast<std::size_t>(N), 0);
  parallel_for(static_cast<std::size_t>(N), threads, [&](std::size_t j) {
    const int64_t n = N + static_cast<int64_t>(j);
    FixedSum c, mt, triv;
    if (bn[j] != 0.0) {
      for (int64_t m = M; m < 2 * M; ++m) {
        const double ab = am[m - M] * bn[j];
        if (ab == 0.0) continue;
        const i128 k = static_cast<i128>(m) * n;
        const auto roots = mc::roots_mod_k(a, h, k, merge(fm[m - M], fn[j]));
        for (i128 r : roots.roots)
          for (i128 l = first_at_least(llo, r, k); l <= lhi; l += k) {
            const double w = psi(static_cast<double>(l) / static_cast<double>(X));
            c.add(ab * w);
            triv.add(std::fabs(ab) * w);
          }
        const double main = static_cast<double>(roots.size()) * xi / static_cast<double>(k);
        mt.add(ab * main);
        triv.add(std::fabs(ab) * main);
      }
    }
    rows[j] = {{n}, c.value(), mt.value(), 0.0};
    rows[j].error = rows[j].exact_count - rows[j].main_term;
    trivial_units[j] = triv.units();
  });

  ExperimentReport rep;
  rep.experiment = "type2";
  rep.parameters = {{"X", fmt(X)}, {"M", fmt(M)}, {"N", fmt(N)},         {"a", fmt(a)},
                    {"h", fmt(h)}, {"psi", to_string(psi)}, {"theta", fmt(theta.value())}};
  rep.aggregation = Aggregation::kAbsOfSum;
  FixedSum tc, tm, te, triv;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    tc.add(rows[j].exact_count);
    tm.add(rows[j].main_term);
    te.add(rows[j].error);
    triv.add_units(trivial_units[j]);
  }
  rep.rows = std::move(rows);
  rep.total_count = tc.value();
  rep.total_main = tm.value();
  rep.total_error = std::fabs(te.value());
  rep.trivial_bound = triv.value();
  const double mm = static_cast<double>(M), nn = static_cast<double>(N), xx = static_cast<double>(X),
               hh = static_cast<double>(h);
  rep.theta = theta.value();
  rep.paper_bound = std::sqrt(mm) * std::sqrt(xx) + std::pow(mm, 0.25) * std::sqrt(nn) * std::sqrt(xx) *
                                                        (std::sqrt(nn) + std::pow(hh, 0.125)) *
                                                        std::pow(1.0 + xx / (std::sqrt(mm) * nn * (nn + std::pow(hh, 0.25))),
                                                                 theta.value());
  rep.ratio_to_bound = rep.total_error / rep.paper_bound;
  return rep;
}

HypothesisSum hypothesis_sum(int64_t a, int64_t h, int64_t Y, int64_t Z, double eps) {
  require(a >= 1, "a must be >= 1");
  require(Y >= 2 && Y < Z, "need 2 <= Y < Z");
  require(eps > 0.0, "eps must be positive");
  HypothesisSum out;
  FixedSum s;
  for_each_prime(Y, Z - 1, [&](int64_t p) {
    ++out.primes;
    const i128 r = mc::rho_prime_power(a, h, p, 1);
    if (r != 0) s.add(static_cast<double>(r) * std::log(static_cast<double>(p)) / static_cast<double>(p));
  });
  out.sum = s.value();
  out.companion = (1.0 + eps) * std::log(static_cast<double>(Z) / static_cast<double>(Y)) + 1.0 / eps;
  return out;
}

double EquidistTable::max_relative_deviation() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::fabs(r.relative));
  return m;
}

std::vector<Interval> uniform_intervals(int64_t n) {
  require(n >= 1, "need at least one interval");
  std::vector<Interval> out;
  for (int64_t j = 0; j < n; ++j) out.push_back({Rational(j, n), Rational(j + 1, n)});
  return out;
}

EquidistTable equidist(int64_t X, int64_t a, int64_t h, const std::vector<Interval>& intervals, unsigned threads) {
  require(X >= 1, "X must be >= 1");
  check_form(a, h);
  for (const auto& iv : intervals)
    require(iv.alpha >= Rational(0) && iv.alpha < iv.beta && iv.beta <= Rational(1),
            "intervals must satisfy 0 <= alpha < beta <= 1");

  const auto primes = primes_in(2, X);
  const auto parts = blocks(primes.size(), 64);
  const std::size_t ni = intervals.size();
  std::vector<std::vector<int64_t>> counts(parts.size(), std::vector<int64_t>(ni, 0));
  std::vector<int64_t> roots_total(parts.size(), 0);
  parallel_for(parts.size(), threads, [&](std::size_t b) {
    for (std::size_t i = parts[b].first; i < parts[b].second; ++i) {
      const i128 p = primes[i];
      for (i128 nu : mc::roots_mod_prime_power(a, h, p, 1).roots) {
        const i128 v = nu == 0 ? p : nu;
        ++roots_total[b];
        for (std::size_t j = 0; j < ni; ++j) {
          const auto& iv = intervals[j];
          if (iv.alpha.num() * p < v * iv.alpha.den() && v * iv.beta.den() <= iv.beta.num() * p) ++counts[b][j];
        }
      }
    }
  });

  EquidistTable t;
  t.parameters = {{"X", fmt(X)}, {"a", fmt(a)}, {"h", fmt(h)}, {"intervals", fmt(static_cast<int64_t>(ni))}};
  t.primes = static_cast<int64_t>(primes.size());
  for (auto r : roots_total) t.total_roots += r;
  for (std::size_t j = 0; j < ni; ++j) {
    EquidistRow row{intervals[j], 0, 0.0, 0.0, 0.0};
    for (const auto& c : counts) row.count += c[j];
    const Rational width(sub_checked(mul_checked(intervals[j].beta.num(), intervals[j].alpha.den()),
                                     mul_checked(intervals[j].alpha.num(), intervals[j].beta.den())),
                         mul_checked(intervals[j].alpha.den(), intervals[j].beta.den()));
    row.expected = width.to_double() * static_cast<double>(t.total_roots);
    row.deviation = static_cast<double>(row.count) - row.expected;
    row.relative = row.expected > 0.0 ? static_cast<double>(row.count) / row.expected - 1.0 : 0.0;
    t.rows.push_back(row);
  }
  return t;
}

std::complex<double> weyl_sum(int64_t X, int64_t a, int64_t h, int64_t m, unsigned threads) {
  require(X >= 1, "X must be >= 1");
  require(a >= 1, "a must be >= 1");
  const auto primes = primes_in(2, X);
  const auto parts = blocks(primes.size(), 64);
  std::vector<FixedSum> re(parts.size()), im(parts.size());
  parallel_for(parts.size(), threads, [&](std::size_t b) {
    for (std::size_t i = parts[b].first; i < parts[b].second; ++i) {
      const i128 p = primes[i];
      for (i128 nu : mc::roots_mod_prime_power(a, h, p, 1).roots) {
        const i128 r = mod_floor(mul_checked(mod_floor(m, p), nu), p);
        if (r == 0) {
          re[b].add(1.0);
        } else if (2 * r == p) {
          re[b].add(-1.0);
        } else {
          // Fold to the short arc so e(-x) is exactly the conjugate of e(x).
          const bool upper = 2 * r > p;
          const double angle = 2.0 * std::numbers::pi * static_cast<double>(upper ? p - r : r) / static_cast<double>(p);
          re[b].add(std::cos(angle));
          im[b].add(upper ? -std::sin(angle) : std::sin(angle));
        }
      }
    }
  });
  FixedSum tr, ti;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    tr.merge(re[b]);
    ti.merge(im[b]);
  }
  return {tr.value(), ti.value()};
}

GpfReport gpf_scan(int64_t X, int64_t a, int64_t h) {
  require(X >= 2, "X must be >= 2");
  require(a >= 1 && h >= 1, "a, h must be >= 1");
  const i128 top = add_checked(mul_checked(a, mul_checked(2 * static_cast<i128>(X), 2 * static_cast<i128>(X))), h);
  const std::size_t n = static_cast<std::size_t>(X + 1);
  std::vector<i128> rest(n);
  std::vector<int64_t> small(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const i128 v = static_cast<i128>(X) + static_cast<i128>(i);
    rest[i] = a * v * v + h;
  }
  for_each_prime(2, to64(isqrt(top)), [&](int64_t p) {
    for (i128 r : mc::roots_mod_prime_power(a, h, p, 1).roots) {
      for (i128 v = first_at_least(X, r, p); v <= 2 * static_cast<i128>(X); v += p) {
        auto& x = rest[static_cast<std::size_t>(v - X)];
        while (x % p == 0) x /= p;
        small[static_cast<std::size_t>(v - X)] = p;
      }
    }
  });

  GpfReport rep;
  rep.parameters = {{"X", fmt(X)}, {"a", fmt(a)}, {"h", fmt(h)}};
  const double logx = std::log(static_cast<double>(X));
  for (std::size_t i = 0; i < n; ++i) {
    GpfEntry e;
    e.n = X + static_cast<int64_t>(i);
    e.value = a * static_cast<i128>(e.n) * e.n + h;
    e.gpf = std::max<i128>(small[i], rest[i]);
    e.exponent = std::log(static_cast<double>(e.gpf)) / logx;
    ++rep.histogram[static_cast<int64_t>(std::floor(e.exponent / GpfReport::kBinWidth))];
    if (e.gpf > rep.max_gpf) {
      rep.max_gpf = e.gpf;
      rep.argmax = e.n;
    }
    rep.entries.push_back(e);
  }
  rep.exponent = std::log(static_cast<double>(rep.max_gpf)) / logx;
  return rep;
}

ChebyshevReport chebyshev_identity(int64_t X, int64_t a, int64_t h) {
  require(X >= 2, "X must be >= 2");
  require(a >= 1 && h >= 1, "a, h must be >= 1");
  const i128 lo = X, hi = 2 * static_cast<i128>(X);
  const i128 top = add_checked(mul_checked(a, mul_checked(hi, hi)), h);

  std::map<int64_t, int64_t> sieve_exp, factor_exp;
  FixedSum rhs;
  ChebyshevReport rep;
  for_each_prime(2, to64(top), [&](int64_t p) {
    ++rep.primes;
    int64_t e = 0;
    i128 pj = p;
    for (int j = 1;; ++j) {
      int64_t cnt = 0;
      for (i128 r : mc::roots_mod_prime_power(a, h, p, j).roots) {
        const i128 first = first_at_least(lo, r, pj);
        if (first <= hi) cnt += to64((hi - first) / pj + 1);
      }
      if (cnt == 0) break;
      e += cnt;
      if (pj > top / p) break;
      pj *= p;
    }
    if (e > 0) {
      sieve_exp[p] = e;
      rhs.add(static_cast<double>(e) * std::log(static_cast<double>(p)));
    }
  });

  FixedSum lhs;
  for (i128 n = lo; n <= hi; ++n) {
    const i128 v = a * n * n + h;
    lhs.add(std::log(static_cast<double>(v)));
    for (const auto& pp : mc::factorize(v).factors) factor_exp[to64(pp.prime)] += pp.exponent;
  }

  int64_t diff = 0;
  for (const auto& [p, e] : sieve_exp) {
    auto it = factor_exp.find(p);
    diff += std::llabs(e - (it == factor_exp.end() ? 0 : it->second));
  }
  for (const auto& [p, e] : factor_exp)
    if (!sieve_exp.count(p)) diff += e;

  rep.parameters = {{"X", fmt(X)}, {"a", fmt(a)}, {"h", fmt(h)}};
  rep.lhs = lhs.value();
  rep.rhs = rhs.value();
  rep.difference = rep.lhs - rep.rhs;
  rep.multiset_difference = diff;
  return rep;
}

double kernel_majorant(double u) { return 1.0 / std::sqrt(1.0 + u); }

namespace {

struct WeightedPoint {
  lt::SymMat w;
  double weight;
};

// All w1 in S_h with u(w1, z2) <= Z, where
// 4 h c1 c2 u = (b1 c2 - b2 c1)^2 + h (c1 - c2)^2.
std::vector<WeightedPoint> heegner_neighbours(const lt::SymMat& z2, i128 h, const Rational& Z) {
  std::vector<WeightedPoint> out;
  const i128 zn = Z.num(), zd = Z.den();
  const double z = Z.to_double();
  const double spread = 1.0 + 2.0 * z + 2.0 * std::sqrt(z * (z + 1.0));
  const i128 c2 = z2.c, b2 = z2.b;
  const i128 c1_lo = std::max<i128>(1, static_cast<i128>(std::floor(static_cast<double>(c2) / spread)) - 1);
  const i128 c1_hi = static_cast<i128>(std::ceil(static_cast<double>(c2) * spread)) + 1;
  for (i128 c1 = c1_lo; c1 <= c1_hi; ++c1) {
    // (b1 c2 - b2 c1)^2 zd <= 4 h zn c1 c2 - h (c1 - c2)^2 zd.
    const i128 room = sub_checked(mul_checked(mul_checked(4 * h, zn), c1 * c2), mul_checked(h * (c1 - c2) * (c1 - c2), zd));
    if (room < 0) continue;
    const i128 s = isqrt(room / zd) + 1;
    const i128 b_lo = floor_div(b2 * c1 - s, c2), b_hi = floor_div(b2 * c1 + s, c2) + 1;
    for (i128 r : mc::roots_mod_k(1, h, c1).roots) {
      for (i128 b1 = first_at_least(b_lo, r, c1); b1 <= b_hi; b1 += c1) {
        const i128 cross = b1 * c2 - b2 * c1;
        const i128 num = add_checked(mul_checked(cross, cross), h * (c1 - c2) * (c1 - c2));
        if (mul_checked(num, zd) > mul_checked(mul_checked(4 * h, zn), c1 * c2)) continue;
        const double u = static_cast<double>(num) / static_cast<double>(4 * h * c1 * c2);
        out.push_back({{(b1 * b1 + h) / c1, b1, c1}, kernel_majorant(u)});
      }
    }
  }
  return out;
}

}  // namespace

KernelReport kernel_heegner(int64_t Qlo, int64_t Qhi, int64_t h, const Rational& Z, unsigned threads) {
  require(Qlo >= 1 && Qlo <= Qhi, "need 1 <= Qlo <= Qhi");
  require(Qhi <= lt::ProjectiveLine::kMaxModulus, "Qhi exceeds the projective line limit");
  require(h >= 1, "h must be >= 1");
  require(Z >= Rational(0), "Z must be >= 0");

  const auto points = lt::heegner_points(h);
  std::vector<std::vector<WeightedPoint>> near(points.size());
  parallel_for(points.size(), threads,
               [&](std::size_t i) { near[i] = heegner_neighbours(points[i].sym, h, Z); });

  const std::size_t nq = static_cast<std::size_t>(Qhi - Qlo + 1);
  std::vector<i128> units(nq, 0);
  std::vector<char> skip(nq, 0);
  parallel_for(nq, threads, [&](std::size_t i) {
    const int64_t q = Qlo + static_cast<int64_t>(i);
    if (!mc::is_squarefree(std::gcd(h, q * q))) {
      skip[i] = 1;
      return;
    }
    const lt::ProjectiveLine line(q);
    FixedSum acc;
    for (std::size_t z = 0; z < points.size(); ++z) {
      std::vector<std::pair<int64_t, int64_t>> taus;
      for (std::size_t t = 0; t < line.size(); ++t) {
        auto [c0, d0] = line.point(t);
        if (mod_floor(lt::c_transform(c0, d0, points[z].sym), q) == 0) taus.emplace_back(c0, d0);
      }
      if (taus.empty()) continue;
      const double stab = static_cast<double>(points[z].stab_order);
      for (const auto& wp : near[z]) {
        int64_t cnt = 0;
        for (auto [c0, d0] : taus)
          if (mod_floor(lt::c_transform(c0, d0, wp.w), q) == 0) ++cnt;
        if (cnt) acc.add(wp.weight * static_cast<double>(cnt) / stab);
      }
    }
    units[i] = acc.units();
  });

  KernelReport rep;
  rep.experiment = "kernel_heegner";
  rep.parameters = {{"Qlo", fmt(Qlo)}, {"Qhi", fmt(Qhi)}, {"h", fmt(h)}, {"Z", Z.str()}};
  FixedSum total;
  for (std::size_t i = 0; i < nq; ++i) {
    const int64_t q = Qlo + static_cast<int64_t>(i);
    if (skip[i]) {
      rep.skipped.push_back(q);
      continue;
    }
    total.add_units(units[i]);
    rep.rows.push_back({{q}, FixedSum::from_units(units[i])});
  }
  rep.total = total.value();
  rep.bound = static_cast<double>(Qlo) * std::sqrt(static_cast<double>(h)) +
              static_cast<double>(h) * std::sqrt(Z.to_double());
  rep.ratio_to_bound = rep.total / rep.bound;
  return rep;
}

namespace {

struct WeightedMat {
  i128 a, b, c, d;
  double weight;
};

// SL2(Z) modulo +-1 with u_R <= Z, normalized to c > 0 or (c = 0, d = 1).
// u_R <= Z iff ((a^2 + d^2 - 2) p^2 r^2 + b^2 r^4 + c^2 p^4) zd <= 4 zn p^2 r^2
// with R = p/r and Z = zn/zd.
std::vector<WeightedMat> skewed_ball(const Rational& Z, const Rational& R) {
  const i128 p = R.num(), r = R.den(), zn = Z.num(), zd = Z.den();
  const i128 p2 = p * p, r2 = r * r;
  const i128 lhs_cap = mul_checked(4 * zn, mul_checked(p2, r2));
  const i128 den = mul_checked(4, mul_checked(p2, r2));
  auto test = [&](i128 a, i128 b, i128 c, i128 d, std::vector<WeightedMat>& out) {
    const i128 num = add_checked(add_checked(mul_checked(a * a + d * d - 2, mul_checked(p2, r2)), mul_checked(b * b, r2 * r2)),
                                 mul_checked(c * c, p2 * p2));
    if (mul_checked(num, zd) > lhs_cap) return;
    out.push_back({a, b, c, d, kernel_majorant(static_cast<double>(num) / static_cast<double>(den))});
  };
  const double span = std::sqrt(4.0 * Z.to_double() + 2.0);
  const i128 e = static_cast<i128>(std::floor(span)) + 1;
  const double rr = R.to_double();
  const i128 cmax = static_cast<i128>(std::floor(span / rr)) + 1;
  const i128 bmax = static_cast<i128>(std::floor(span * rr)) + 1;
  std::vector<WeightedMat> out;
  for (i128 b = -bmax; b <= bmax; ++b) test(1, b, 0, 1, out);
  for (i128 c = 1; c <= cmax; ++c)
    for (i128 a = -e; a <= e; ++a)
      for (i128 d = -e; d <= e; ++d) {
        const i128 ad1 = a * d - 1;
        if (ad1 % c == 0) test(a, ad1 / c, c, d, out);
      }
  return out;
}

}  // namespace

KernelReport kernel_lowertriang(int64_t D, int64_t N0, int64_t N1, int64_t N2, int64_t T, int64_t V,
                                const Rational& Z, const Rational& R, unsigned threads) {
  require(D >= 1 && N0 >= 1 && N1 >= 1 && N2 >= 1 && T >= 1 && V >= 1, "D, N0, N1, N2, T, V must be >= 1");
  require(Z >= Rational(0), "Z must be >= 0");
  require(R > Rational(0), "R must be > 0");

  struct Cell {
    int64_t t, n0, n1, n2, d;
  };
  std::vector<Cell> cells;
  for (int64_t t = 1; t <= T; ++t)
    for (int64_t n0 = 1; n0 <= N0; ++n0)
      for (int64_t n1 = 1; n1 <= N1; ++n1)
        for (int64_t n2 = 1; n2 <= N2; ++n2) {
          if (std::gcd(n1, n2) != 1) continue;
          for (i128 d : mc::divisors(static_cast<i128>(n0) * n1 * n2))
            if (d >= D) cells.push_back({t, n0, n1, n2, to64(d)});
        }

  const auto ball = skewed_ball(Z, R);
  std::vector<i128> units(cells.size(), 0);
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto& cl = cells[i];
    const i128 s = mul_checked(mul_checked(cl.d, cl.n0), static_cast<i128>(cl.t) * cl.t);
    const i128 q = mul_checked(mul_checked(s, cl.n1), cl.n2);
    const i128 nbar = cl.n2 == 1 ? 0 : inverse_mod(cl.n1 % cl.n2, cl.n2);
    const i128 step = mul_checked(mul_checked(s, cl.n1), nbar);
    FixedSum acc;
    for (int64_t v = -V; v <= V; ++v) {
      const i128 x = mod_floor(mul_checked(step, v), q);
      for (int64_t vp = -V; vp <= V; ++vp) {
        const i128 xp = mod_floor(mul_checked(step, vp), q);
        // c-entry of n[-x']^t g' n[x]^t.
        for (const auto& g : ball) {
          const i128 cg = g.c + mc::mulmod(mod_floor(g.d, q), x, q) - mc::mulmod(xp, mod_floor(g.a, q), q) -
                          mc::mulmod(mc::mulmod(x, xp, q), mod_floor(g.b, q), q);
          if (mod_floor(cg, q) == 0) acc.add(g.weight);
        }
      }
    }
    units[i] = acc.units();
  });

  KernelReport rep;
  rep.experiment = "kernel_lowertriang";
  rep.parameters = {{"D", fmt(D)}, {"N0", fmt(N0)}, {"N1", fmt(N1)}, {"N2", fmt(N2)},
                    {"T", fmt(T)}, {"V", fmt(V)},   {"Z", Z.str()},   {"R", R.str()}};
  FixedSum total;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cl = cells[i];
    total.add_units(units[i]);
    rep.rows.push_back({{cl.t, cl.n0, cl.n1, cl.n2, cl.d}, FixedSum::from_units(units[i])});
  }
  rep.total = total.value();
  const double d = static_cast<double>(D), n0 = static_cast<double>(N0), n1 = static_cast<double>(N1),
               n2 = static_cast<double>(N2), t = static_cast<double>(T), v = static_cast<double>(V),
               rr = R.to_double();
  rep.bound = n0 * t * v * (1.0 + rr) * (n1 * n2 + n1 * v + n2 * v) + v * v * (1.0 / (d * rr) + std::sqrt(Z.to_double()));
  rep.ratio_to_bound = rep.total / rep.bound;
  return rep;
}

int64_t rho_cubic(int64_t a, int64_t b, int64_t y, int64_t d) {
  require(d >= 1, "d must be >= 1");
  const i128 ym = mod_floor(y, d);
  const i128 hy = mc::mulmod(mod_floor(b, d), mc::powmod(ym, 3, d), d);
  return to64(mc::rho(a, hy, d));
}

YPoissonReport ypoisson_check(int64_t a, int64_t b, int64_t d, int64_t B, const BumpFn& f2) {
  require(a >= 1 && b >= 1 && std::gcd(a, b) == 1, "need a, b >= 1 coprime");
  require(d >= 1 && mc::is_squarefree(d), "d must be squarefree");
  require(B >= 1, "B must be >= 1");
  require(std::log(static_cast<double>(d)) <= 0.9 * std::log(static_cast<double>(B)) + 1e-12, "need d <= B^0.9");

  std::vector<int64_t> table(static_cast<std::size_t>(d));
  YPoissonReport rep;
  for (int64_t y = 0; y < d; ++y) {
    table[y] = rho_cubic(a, b, y, d);
    rep.complete_sum += table[y];
  }
  const auto [ylo, yhi] = support_range(f2, static_cast<double>(B));
  FixedSum lhs;
  for (int64_t y = ylo; y <= yhi; ++y) {
    const int64_t r = table[static_cast<std::size_t>(mod_floor(y, d))];
    if (r) lhs.add(f2(static_cast<double>(y) / static_cast<double>(B)) * static_cast<double>(r));
  }
  rep.parameters = {{"a", fmt(a)}, {"b", fmt(b)}, {"d", fmt(d)}, {"B", fmt(B)}, {"f2", to_string(f2)}};
  rep.lhs = lhs.value();
  rep.main = static_cast<double>(B) * f2.integral;
  rep.error = rep.lhs - rep.main;
  rep.normalized_error = std::fabs(rep.error) / std::sqrt(static_cast<double>(d));
  rep.identity_holds = rep.complete_sum == d;
  return rep;
}

ExperimentReport x2y3_typeI2(int64_t X, int64_t K, int64_t Dmax, int64_t a, int64_t b, const BumpFn& f,
                             const BumpFn& f1, const BumpFn& f2, int64_t A, int64_t B, unsigned threads) {
  require(X >= 1 && K >= 1 && Dmax >= 1 && A >= 1 && B >= 1, "X, K, Dmax, A, B must be >= 1");
  require(a >= 1 && b >= 1 && std::gcd(a, b) == 1, "need a, b >= 1 coprime");
  require(static_cast<i128>(A) * A <= X, "need A <= X^(1/2)");
  require(static_cast<i128>(B) * B * B <= X, "need B <= X^(1/3)");
  require(mul_checked(mul_checked(K, K), mul_checked(K, K)) <= mul_checked(mul_checked(X, X), X), "need K <= X^(3/4)");
  require(f.integral > 0.0, "f must have positive integral");
  const double delta = std::max({f.hi - f.lo, f1.hi - f1.lo, f2.hi - f2.lo});
  const double xx = static_cast<double>(X);
  require(static_cast<double>(A) > delta * std::sqrt(xx), "need A > delta X^(1/2)");
  require(static_cast<double>(B) > delta * std::cbrt(xx), "need B > delta X^(1/3)");

  const auto [klo0, khi] = support_range(f, static_cast<double>(K));
  const int64_t klo = std::max<int64_t>(1, klo0);
  const std::size_t nk = khi >= klo ? static_cast<std::size_t>(khi - klo + 1) : 0;
  const auto kf = factor_range(klo, std::max(klo, khi));
  std::vector<double> fk(nk, 0.0);
  for (std::size_t i = 0; i < nk; ++i)
    if (squarefree(kf[i])) fk[i] = f(static_cast<double>(klo + static_cast<int64_t>(i)) / static_cast<double>(K));

  // a-side: every lattice point (x, y) feeds the k in range dividing a x^2 + b y^3.
  const auto [xlo, xhi] = support_range(f1, static_cast<double>(A));
  const auto [ylo, yhi] = support_range(f2, static_cast<double>(B));
  std::vector<std::pair<i128, double>> pts;
  FixedSum sum_a;
  for (int64_t x = std::max<int64_t>(xlo, 0); x <= xhi; ++x)
    for (int64_t y = std::max<int64_t>(ylo, 0); y <= yhi; ++y) {
      const double w = f1(static_cast<double>(x) / static_cast<double>(A)) * f2(static_cast<double>(y) / static_cast<double>(B));
      if (w == 0.0) continue;
      sum_a.add(w);
      pts.emplace_back(add_checked(mul_checked(a, static_cast<i128>(x) * x), mul_checked(b, static_cast<i128>(y) * y * y)), w);
    }

  const auto parts = blocks(pts.size(), 64);
  std::vector<std::vector<i128>> partial(parts.size(), std::vector<i128>(nk, 0));
  parallel_for(parts.size(), threads, [&](std::size_t p) {
    for (std::size_t i = parts[p].first; i < parts[p].second; ++i) {
      const auto [v, w] = pts[i];
      if (v < klo) continue;
      for (i128 k : mc::divisors(v)) {
        if (k < klo) continue;
        if (k > khi) break;
        const std::size_t idx = static_cast<std::size_t>(k - klo);
        if (fk[idx] != 0.0) partial[p][idx] = add_checked(partial[p][idx], FixedSum::to_units(fk[idx] * w));
      }
    }
  });
  RowSums cells{std::vector<i128>(nk, 0), std::vector<i128>(nk, 0)};
  for (const auto& pp : partial)
    for (std::size_t i = 0; i < nk; ++i) cells.count[i] = add_checked(cells.count[i], pp[i]);

  // b-side: b_n = f(n/X) A B int f1 int f2 / (X int f).
  const double scale = static_cast<double>(A) * static_cast<double>(B) * f1.integral * f2.integral / (xx * f.integral);
  const auto [nlo, nhi] = support_range(f, xx);
  for (std::size_t i = 0; i < nk; ++i) {
    if (fk[i] == 0.0 || scale == 0.0) continue;
    const int64_t k = klo + static_cast<int64_t>(i);
    FixedSum bs;
    for (int64_t n = first_at_least(std::max<int64_t>(nlo, 1), 0, k); n <= nhi; n += k)
      bs.add(fk[i] * (scale * f(static_cast<double>(n) / xx)));
    cells.main[i] = bs.units();
  }

  ParamMap params{{"X", fmt(X)}, {"K", fmt(K)}, {"Dmax", fmt(Dmax)}, {"a", fmt(a)}, {"b", fmt(b)},
                  {"A", fmt(A)}, {"B", fmt(B)}, {"f", to_string(f)},  {"f1", to_string(f1)}, {"f2", to_string(f2)}};
  auto rep = finish_divisor_rows("x2y3_typeI2", std::move(params), cells, klo, Dmax);
  rep.theta = 0.0;
  rep.paper_bound = std::pow(xx, 5.0 / 6.0);
  rep.ratio_to_bound = rep.total_error / rep.paper_bound;
  const double main_ab = static_cast<double>(A) * static_cast<double>(B) * f1.integral * f2.integral;
  FixedSum sum_b;
  for (int64_t n = std::max<int64_t>(nlo, 1); n <= nhi; ++n) sum_b.add(scale * f(static_cast<double>(n) / xx));
  rep.extras = {{"sum_a", sum_a.value()},
                {"main_ab", main_ab},
                {"sum_a_relative_error", main_ab > 0.0 ? std::fabs(sum_a.value() / main_ab - 1.0) : 0.0},
                {"sum_b", sum_b.value()}};
  return rep;
}

}  // namespace qcong::experiments
