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

#include "qcong/parametrize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

#include "qcong/modcore.hpp"

namespace qcong::parametrize {

using lattice::UniMat;

namespace {

constexpr std::size_t kMaxOrbitNodes = 20'000'000;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw_overflow("witness entry");
  return static_cast<std::int64_t>(v);
}

ParamReport::Witness witness(const SymMat& g) { return {narrow(g.a), narrow(g.b), narrow(g.c)}; }

ParamReport::Witness witness(const SymMat& g1, const SymMat& g2) {
  return {narrow(g1.a), narrow(g1.b), narrow(g1.c), narrow(g2.a), narrow(g2.b), narrow(g2.c)};
}

void require_positive(i128 v, const char* name) {
  if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

void require_coprime(i128 x, i128 y, const char* what) {
  if (gcd128(x, y) != 1) throw std::invalid_argument(std::string(what) + " must be coprime");
}

// General integer 2x2 congruence m g m^t, no determinant restriction on m.
SymMat congruence(i128 p, i128 q, i128 r, i128 s, const SymMat& g) {
  auto quad = [&](i128 x, i128 y) {
    return add_checked(add_checked(mul_checked(mul_checked(x, x), g.a), mul_checked(mul_checked(2, mul_checked(x, y)), g.b)),
                       mul_checked(mul_checked(y, y), g.c));
  };
  i128 mid = add_checked(add_checked(mul_checked(mul_checked(p, r), g.a),
                                     mul_checked(add_checked(mul_checked(p, s), mul_checked(q, r)), g.b)),
                         mul_checked(mul_checked(q, s), g.c));
  return {quad(p, q), mid, quad(r, s)};
}

template <typename Key>
void tally(const std::map<Key, int>& generated, const std::vector<Key>& targets, int expected,
           ParamReport& report, auto to_witness) {
  std::map<Key, int> remaining = generated;
  for (const Key& t : targets) {
    auto it = remaining.find(t);
    const int count = it == remaining.end() ? 0 : it->second;
    if (it != remaining.end()) remaining.erase(it);
    if (count == expected) {
      ++report.hits;
    } else if (count < expected) {
      report.misses.push_back(to_witness(t));
    } else {
      report.double_hits.push_back(to_witness(t));
    }
  }
  for (const auto& [key, count] : remaining) report.spurious.push_back(to_witness(key));
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "fail";
}

Verdict ParamReport::verdict() const {
  if (!misses.empty() || !double_hits.empty() || !spurious.empty() || !mismatches.empty()) {
    // A truncated generation side can explain misses but never extra hits.
    if (!generation_complete && double_hits.empty() && spurious.empty() && mismatches.empty())
      return Verdict::kInconclusive;
    return Verdict::kFail;
  }
  return generation_complete ? Verdict::kPass : Verdict::kInconclusive;
}

std::vector<SymMat> enumerate_S(i128 a, i128 h, i128 d, i128 bound) {
  require_positive(a, "a");
  require_positive(h, "h");
  require_positive(d, "d");
  require_coprime(a, h, "a and h");
  std::vector<SymMat> out;
  if (bound < 1) return out;
  const i128 ah = mul_checked(a, h);
  const i128 ad = mul_checked(a, d);
  for (i128 c = ad; c <= bound; c += ad) {
    for (i128 b = floor_div(-bound, a) * a; b <= bound; b += a) {
      if (b < -bound) continue;
      const i128 num = add_checked(mul_checked(b, b), ah);
      if (num % c != 0) continue;
      const i128 A = num / c;
      if (A <= bound) out.push_back({A, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParamReport verify_para1(i128 a, i128 h, i128 d, i128 bound) {
  require_positive(a, "a");
  require_positive(h, "h");
  require_positive(d, "d");
  require_coprime(a, h, "a and h");
  if (!modcore::is_squarefree(h)) throw std::invalid_argument("h must be squarefree");

  ParamReport report;
  report.lemma = "para1";
  report.parameters = {{"a", qcong::to_string(a)}, {"h", qcong::to_string(h)}, {"d", qcong::to_string(d)}, {"bound", qcong::to_string(bound)}};
  const auto targets = enumerate_S(a, h, d, bound);
  report.elements_enumerated = static_cast<std::int64_t>(targets.size());
  if (bound < 1) return report;

  const i128 q = mul_checked(a, d);
  const i128 ah = mul_checked(a, h);
  const i128 gen_bound = mul_checked(4, bound);
  const lattice::ProjectiveLine line(static_cast<std::int64_t>(q));

  std::map<SymMat, int> weight;
  std::map<SymMat, int> expected_weight;
  for (const auto& sigma : lattice::heegner_points(ah)) {
    const SymMat base = sigma.sym;
    const auto stab = lattice::stabilizer(base);
    // Orbit of base under SL2(Z) inside the generation box, each node tagged by
    // one delta with act(delta, base) == node.
    std::map<SymMat, UniMat> seen;
    std::deque<std::pair<SymMat, UniMat>> queue;
    seen.emplace(base, UniMat::identity());
    queue.emplace_back(base, UniMat::identity());
    const UniMat moves[3] = {UniMat::inversion(), UniMat::translation(1), UniMat::translation(-1)};
    while (!queue.empty()) {
      auto [node, delta] = queue.front();
      queue.pop_front();
      for (const UniMat& m : moves) {
        SymMat next = lattice::act(m, node);
        if (next.max_abs() > gen_bound || seen.count(next)) continue;
        if (seen.size() >= kMaxOrbitNodes) {
          report.generation_complete = false;
          break;
        }
        UniMat next_delta = m * delta;
        seen.emplace(next, next_delta);
        queue.emplace_back(next, next_delta);
      }
    }
    for (const auto& [node, delta] : seen) {
      if (node.max_abs() > bound) continue;
      ++report.generated;
      for (const UniMat& s : stab) {
        // delta * s also maps base to node; split it as gamma * tau.
        const UniMat full = delta * s;
        const std::size_t idx = line.index_of(full.c(), full.d());
        const UniMat tau = line.lift(idx);
        const SymMat moved = lattice::act(tau, base);
        const bool admissible = mod_floor(moved.c, q) == 0 && mod_floor(moved.b, a) == 0;
        if (!admissible) continue;
        const UniMat gamma = full * tau.inverse();
        if (!gamma.in_gamma0(q) || lattice::act(gamma, moved) != node) {
          report.mismatches.push_back(witness(node));
          continue;
        }
        ++weight[node];
      }
      expected_weight[node] = static_cast<int>(stab.size());
    }
  }

  // Each target is expected exactly |stabilizer| times.
  std::map<int, std::vector<SymMat>> by_expected;
  for (const auto& t : targets) {
    auto it = expected_weight.find(t);
    by_expected[it == expected_weight.end() ? 1 : it->second].push_back(t);
  }
  std::map<SymMat, int> remaining = weight;
  for (const auto& [expected, group] : by_expected) {
    std::map<SymMat, int> subset;
    for (const auto& t : group) {
      auto it = remaining.find(t);
      if (it != remaining.end()) {
        subset.insert(*it);
        remaining.erase(it);
      }
    }
    tally(subset, group, expected, report, [](const SymMat& g) { return witness(g); });
  }
  for (const auto& [node, count] : remaining) report.spurious.push_back(witness(node));
  return report;
}

ParamReport verify_para2(i128 a, i128 h, i128 s, i128 n1, i128 n2, i128 bound) {
  require_positive(a, "a");
  require_positive(h, "h");
  require_positive(s, "s");
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  require_coprime(a, h, "a and h");
  require_coprime(n1, n2, "n1 and n2");

  ParamReport report;
  report.lemma = "para2";
  report.parameters = {{"a", qcong::to_string(a)},   {"h", qcong::to_string(h)},   {"s", qcong::to_string(s)},
                       {"n1", qcong::to_string(n1)}, {"n2", qcong::to_string(n2)}, {"bound", qcong::to_string(bound)}};
  using Pair = std::pair<SymMat, SymMat>;
  auto pair_witness = [](const Pair& p) { return witness(p.first, p.second); };

  // Direct side.
  const auto first = enumerate_S(a, h, mul_checked(s, n1), bound);
  const auto second = enumerate_S(a, h, mul_checked(s, n2), bound);
  std::map<i128, std::vector<SymMat>> second_by_a;
  for (const auto& g : second) second_by_a[g.a].push_back(g);
  std::vector<Pair> targets;
  for (const auto& g1 : first) {
    auto it = second_by_a.find(g1.a);
    if (it == second_by_a.end()) continue;
    const i128 mod = mul_checked(s, g1.a);
    for (const auto& g2 : it->second)
      if (mod_floor(sub_checked(g1.b, g2.b), mod) == 0) targets.emplace_back(g1, g2);
  }
  std::sort(targets.begin(), targets.end());
  report.elements_enumerated = static_cast<std::int64_t>(targets.size());

  // Parametrized side: g in S_{a,h}(s n1 n2), u1 in [0, n2), u2 free.
  std::map<Pair, int> generated;
  if (bound >= 1) {
    const i128 ah = mul_checked(a, h);
    const i128 step1 = mul_checked(mul_checked(a, s), n1);
    const i128 step2 = mul_checked(mul_checked(a, s), n2);
    const i128 modc = mul_checked(step1, n2);
    for (i128 A = 1; A <= bound; ++A) {
      const i128 b_lim = add_checked(bound, mul_checked(mul_checked(step1, n2), A));
      for (i128 b = floor_div(-b_lim, a) * a; b <= b_lim; b += a) {
        if (b < -b_lim) continue;
        const i128 num = add_checked(mul_checked(b, b), ah);
        if (num % A != 0) continue;
        const i128 C = num / A;
        if (C % modc != 0) continue;
        const SymMat g{A, b, C};
        for (i128 u1 = 0; u1 < n2; ++u1) {
          const SymMat g1 = lattice::act(UniMat::lower(mul_checked(step1, u1)), g);
          if (g1.max_abs() > bound) continue;
          // B2 = b + step2 * u2 * A must lie in [-bound, bound].
          const i128 unit = mul_checked(step2, A);
          const i128 u_lo = -floor_div(add_checked(bound, b), unit);
          const i128 u_hi = floor_div(sub_checked(bound, b), unit);
          for (i128 u2 = u_lo; u2 <= u_hi; ++u2) {
            const SymMat g2 = lattice::act(UniMat::lower(mul_checked(step2, u2)), g);
            if (g2.max_abs() > bound) continue;
            ++report.generated;
            ++generated[{g1, g2}];
          }
        }
      }
    }
  }
  tally(generated, targets, 1, report, pair_witness);
  return report;
}

std::vector<HeckeOrbitRep> hecke_orbits(i128 h) {
  require_positive(h, "h");
  auto divs = modcore::divisors(h);
  std::vector<HeckeOrbitRep> out;
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const i128 e = *it, g = h / e;
    for (i128 f = 0; f < g; ++f) out.push_back({e, f, g});
  }
  return out;
}

SymMat cube_compose(const HeckeOrbitRep& sigma, const SymMat& base) {
  return congruence(sigma.g, sub_checked(0, sigma.f), 0, sigma.e, base);
}

namespace {

void check_cube_preconditions(i128 h, i128 y, i128 a, i128 d) {
  require_positive(h, "h");
  require_positive(y, "y");
  require_positive(a, "a");
  require_positive(d, "d");
  if (h % y != 0) throw std::invalid_argument("y must divide h");
  if (!modcore::is_squarefree(gcd128(h, mul_checked(y, y))))
    throw std::invalid_argument("gcd(h, y^2) must be squarefree");
  require_coprime(a, h, "a and h");
  require_coprime(y, mul_checked(a, d), "y and ad");
}

}  // namespace

CubeDecomposition cube_decompose(const SymMat& g, i128 h, i128 y, i128 a, i128 d) {
  check_cube_preconditions(h, y, a, d);
  const i128 y2 = mul_checked(y, y);
  const i128 det = mul_checked(mul_checked(a, h), y2);
  if (g.a <= 0 || g.c <= 0 || g.det() != det || mod_floor(g.c, mul_checked(a, d)) != 0 || mod_floor(g.b, a) != 0)
    throw std::invalid_argument("matrix is not in S_{a,hy^2}(d)");

  // e: the largest divisor of y whose square divides C.
  i128 e = 1;
  for (const auto& pp : modcore::factorize(y).factors) {
    int vc = 0;
    for (i128 c = g.c; c % pp.prime == 0; c /= pp.prime) ++vc;
    for (int k = 0; k < std::min(pp.exponent, vc / 2); ++k) e *= pp.prime;
  }
  const i128 gg = y / e;
  if (g.b % e != 0) throw std::logic_error("cube_decompose: e does not divide B");
  const i128 b1 = g.b / e;
  const i128 c1 = g.c / (e * e);

  // f == -b1/c1 (mod gg), with the common factor gcd(gg, c1) divided out first.
  const i128 t = gcd128(gg, c1);
  if (mod_floor(b1, t) != 0) throw std::logic_error("cube_decompose: gcd(g, C1) does not divide B1");
  const i128 m = gg / t;
  i128 f0 = 0;
  if (m > 1) {
    const i128 inv = inverse_mod(mod_floor(c1 / t, m), m);
    f0 = mod_floor(mul_checked(mod_floor(-(b1 / t), m), inv), m);
  }
  std::vector<CubeDecomposition> found;
  for (i128 f = f0; f < gg; f += m) {
    const SymMat num = congruence(e, f, 0, gg, g);
    if (num.a % y2 != 0 || num.b % y2 != 0 || num.c % y2 != 0) continue;
    found.push_back({{e, f, gg}, {num.a / y2, num.b / y2, num.c / y2}});
  }
  if (found.size() != 1) throw std::logic_error("cube_decompose: decomposition is not unique");
  return found.front();
}

ParamReport verify_para3(i128 a, i128 h, i128 y, i128 d, i128 bound) {
  check_cube_preconditions(h, y, a, d);
  ParamReport report;
  report.lemma = "para3";
  report.parameters = {{"a", qcong::to_string(a)}, {"h", qcong::to_string(h)}, {"y", qcong::to_string(y)}, {"d", qcong::to_string(d)},
                       {"bound", qcong::to_string(bound)}};
  const auto targets = enumerate_S(a, mul_checked(h, mul_checked(y, y)), d, bound);
  report.elements_enumerated = static_cast<std::int64_t>(targets.size());

  // The base of any target has entries at most 4 * bound.
  std::map<SymMat, int> generated;
  std::map<SymMat, CubeDecomposition> origin;
  if (bound >= 1) {
    const auto bases = enumerate_S(a, h, d, mul_checked(4, bound));
    const auto sigmas = hecke_orbits(y);
    for (const auto& base : bases) {
      for (const auto& sigma : sigmas) {
        const SymMat image = cube_compose(sigma, base);
        if (image.max_abs() > bound) continue;
        ++report.generated;
        ++generated[image];
        origin[image] = {sigma, base};
      }
    }
  }
  tally(generated, targets, 1, report, [](const SymMat& g) { return witness(g); });

  for (const auto& t : targets) {
    const auto dec = cube_decompose(t, h, y, a, d);
    auto it = origin.find(t);
    const bool same_origin = it != origin.end() && it->second.sigma == dec.sigma && it->second.base == dec.base;
    if (cube_compose(dec.sigma, dec.base) != t || !same_origin) report.mismatches.push_back(witness(t));
  }
  return report;
}

double hecke_apply(i128 h, const std::function<double(const RealMat&)>& f, const RealMat& g) {
  require_positive(h, "h");
  const double root = std::sqrt(static_cast<double>(h));
  double total = 0.0;
  for (const auto& s : hecke_orbits(h)) {
    const double e = static_cast<double>(s.e), fv = static_cast<double>(s.f), gv = static_cast<double>(s.g);
    RealMat m{(e * g.a + fv * g.c) / root, (e * g.b + fv * g.d) / root, gv * g.c / root, gv * g.d / root};
    total += f(m);
  }
  return total / root;
}

}  // namespace qcong::parametrize
