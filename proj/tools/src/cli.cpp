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

#include "qcong/io/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcong/experiments.hpp"
#include "qcong/io/report_io.hpp"
#include "qcong/lattice.hpp"
#include "qcong/modcore.hpp"
#include "qcong/parametrize.hpp"
#include "qcong/version.hpp"

namespace qcong::cli {

namespace {

namespace ex = qcong::experiments;
namespace mc = qcong::modcore;
namespace lt = qcong::lattice;
namespace pz = qcong::parametrize;
using io::json;
using io::Table;
using std::int64_t;

struct Emission {
  Table table;
  json doc;
  /// Printed when neither --out nor --json is given; defaults to the CSV.
  std::optional<std::string> stdout_text;
  /// Printed after files are written.
  std::string summary;
  int exit_code = kOk;
};

// One subcommand: typed option storage plus the resolved-parameter view used
// by the run manifest.
class Command {
 public:
  Command(CLI::App& parent, const std::string& name, const std::string& help)
      : name_(name), app_(parent.add_subcommand(name, help)) {
    app_->add_option("--out", out, "CSV output path");
    app_->add_option("--json", json_path, "JSON output path");
    app_->add_option("--manifest", manifest, "run manifest output path");
    app_->add_option("--config", config, "flat key=value file; flags override");
    app_->add_option("--threads", threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  }

  int64_t& integer(const std::string& key, const std::string& help, std::optional<int64_t> def = std::nullopt) {
    auto& v = ints_.emplace_back(def.value_or(0));
    attach(app_->add_option("--" + key, v, help), def.has_value());
    getters_.emplace_back(key, [&v] { return std::to_string(v); });
    return v;
  }

  std::string& text(const std::string& key, const std::string& help, std::optional<std::string> def = std::nullopt) {
    auto& v = texts_.emplace_back(def.value_or(""));
    attach(app_->add_option("--" + key, v, help), def.has_value());
    getters_.emplace_back(key, [&v] { return v; });
    return v;
  }

  double& real(const std::string& key, const std::string& help, double def) {
    auto& v = reals_.emplace_back(def);
    attach(app_->add_option("--" + key, v, help), true);
    getters_.emplace_back(key, [&v] { return io::format_real(v); });
    return v;
  }

  ParamMap params() const {
    ParamMap m;
    for (const auto& [k, get] : getters_) m[k] = get();
    return m;
  }

  const std::string& name() const { return name_; }
  CLI::App* app() const { return app_; }

  std::function<Emission()> exec;
  std::string out, json_path, manifest, config;
  unsigned threads = 1;

 private:
  static void attach(CLI::Option* opt, bool has_default) {
    if (has_default)
      opt->capture_default_str();
    else
      opt->required();
  }

  std::string name_;
  CLI::App* app_;
  std::deque<int64_t> ints_;
  std::deque<std::string> texts_;
  std::deque<double> reals_;
  std::vector<std::pair<std::string, std::function<std::string()>>> getters_;
};

Emission from_experiment(const ex::ExperimentReport& r) {
  Emission e{io::to_table(r), r, std::nullopt, "", kOk};
  std::ostringstream s;
  s << r.experiment << ": total_error=" << io::format_real(r.total_error)
    << " paper_bound=" << io::format_real(r.paper_bound) << " ratio=" << io::format_real(r.ratio_to_bound);
  e.summary = s.str();
  return e;
}

Emission from_kernel(const ex::KernelReport& r) {
  Emission e{io::to_table(r), r, std::nullopt, "", kOk};
  e.summary = r.experiment + ": total=" + io::format_real(r.total) + " bound=" + io::format_real(r.bound) +
              " ratio=" + io::format_real(r.ratio_to_bound);
  return e;
}

Emission from_param(const pz::ParamReport& r) {
  Emission e{io::to_table(r), r, std::nullopt, "", r.passed() ? kOk : kVerificationFailed};
  e.summary = r.lemma + ": " + pz::to_string(r.verdict()) + " elements=" + std::to_string(r.elements_enumerated) +
              " hits=" + std::to_string(r.hits) + " misses=" + std::to_string(r.misses.size()) +
              " double_hits=" + std::to_string(r.double_hits.size());
  e.stdout_text = e.summary + "\n";
  return e;
}

ex::Coefficient coefficient(const std::string& name) {
  if (name == "one") return [](int64_t) { return 1.0; };
  if (name == "zero") return [](int64_t) { return 0.0; };
  if (name == "mobius") return [](int64_t n) { return static_cast<double>(mc::mobius(mc::factorize(n))); };
  if (name == "mu2") return [](int64_t n) { return mc::is_squarefree(n) ? 1.0 : 0.0; };
  if (name == "liouville")
    return [](int64_t n) {
      int omega = 0;
      for (const auto& pp : mc::factorize(n).factors) omega += pp.exponent;
      return omega % 2 ? -1.0 : 1.0;
    };
  throw std::invalid_argument("unknown coefficient '" + name + "' (one, zero, mobius, mu2, liouville)");
}

// "a:b,c:d" with rational endpoints.
std::vector<ex::Interval> parse_intervals(const std::string& spec) {
  std::vector<ex::Interval> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("interval '" + item + "' needs alpha:beta");
    out.push_back({Rational::parse(item.substr(0, colon)), Rational::parse(item.substr(colon + 1))});
  }
  return out;
}

std::vector<std::unique_ptr<Command>> build(CLI::App& app) {
  std::vector<std::unique_ptr<Command>> cmds;
  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    return *cmds.emplace_back(std::make_unique<Command>(app, name, help));
  };

  {
    auto& c = add("roots", "residues v mod k with a v^2 + h == 0");
    auto &a = c.integer("a", "leading coefficient"), &h = c.integer("h", "constant term"), &k = c.integer("k", "modulus");
    c.exec = [&a, &h, &k] {
      const auto rs = mc::roots_mod_k(a, h, k);
      Emission e;
      e.table.header = {"root"};
      json roots = json::array();
      for (i128 r : rs.roots) {
        e.table.rows.push_back({io::format_int(r)});
        roots.push_back(io::format_int(r));
      }
      e.doc = {{"a", a}, {"h", h}, {"k", k}, {"roots", roots}};
      e.summary = "roots: " + std::to_string(rs.size());
      return e;
    };
  }
  {
    auto& c = add("rho", "number of roots of a v^2 + h mod k");
    auto &a = c.integer("a", "leading coefficient"), &h = c.integer("h", "constant term"), &k = c.integer("k", "modulus");
    c.exec = [&a, &h, &k] {
      const std::string rho = io::format_int(mc::rho(a, h, k));
      Emission e;
      e.table = {{"k", "rho"}, {{std::to_string(k), rho}}};
      e.doc = {{"a", a}, {"h", h}, {"k", k}, {"rho", rho}};
      e.stdout_text = rho + "\n";
      e.summary = "rho: " + rho;
      return e;
    };
  }
  {
    auto& c = add("heegner", "reduced representatives of Lambda_h");
    auto& h = c.integer("h", "determinant");
    c.exec = [&h] {
      Emission e;
      e.table.header = {"a", "b", "c"};
      json pts = json::array();
      for (const auto& z : lt::heegner_points(h)) {
        e.table.rows.push_back({io::format_int(z.sym.a), io::format_int(z.sym.b), io::format_int(z.sym.c)});
        pts.push_back({{"a", io::format_int(z.sym.a)},
                       {"b", io::format_int(z.sym.b)},
                       {"c", io::format_int(z.sym.c)},
                       {"stab_order", z.stab_order}});
      }
      e.doc = {{"h", h}, {"points", pts}};
      e.summary = "heegner points: " + std::to_string(e.table.rows.size());
      return e;
    };
  }
  {
    auto& c = add("cosets", "right coset representatives of Gamma_0(q) in SL2(Z)");
    auto& q = c.integer("q", "level");
    c.exec = [&q] {
      Emission e;
      e.table.header = {"a", "b", "c", "d"};
      json reps = json::array();
      for (const auto& g : lt::coset_reps(q)) {
        std::vector<std::string> row{io::format_int(g.a()), io::format_int(g.b()), io::format_int(g.c()),
                                     io::format_int(g.d())};
        reps.push_back(row);
        e.table.rows.push_back(std::move(row));
      }
      e.doc = {{"q", q}, {"index", e.table.rows.size()}, {"representatives", reps}};
      e.summary = "cosets: " + std::to_string(e.table.rows.size());
      return e;
    };
  }
  {
    auto& c = add("verify-para1", "Heegner-point parametrization of S_{a,h}(d) in a box");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h"), &d = c.integer("d", "d", 1),
         &bound = c.integer("bound", "entry bound");
    c.exec = [&] { return from_param(pz::verify_para1(a, h, d, bound)); };
  }
  {
    auto& c = add("verify-para2", "pair parametrization by lower-triangular shifts");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h"), &s = c.integer("s", "s", 1),
         &n1 = c.integer("n1", "n1"), &n2 = c.integer("n2", "n2"), &bound = c.integer("bound", "entry bound");
    c.exec = [&] { return from_param(pz::verify_para2(a, h, s, n1, n2, bound)); };
  }
  {
    auto& c = add("verify-para3", "Hecke-orbit decomposition of determinant h y^2");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h"), &y = c.integer("y", "y"),
         &d = c.integer("d", "d", 1), &bound = c.integer("bound", "entry bound");
    c.exec = [&] { return from_param(pz::verify_para3(a, h, y, d, bound)); };
  }
  {
    auto& c = add("type1", "Type I discrepancy table, one row per d <= D");
    auto &X = c.integer("X", "l range"), &K = c.integer("K", "modulus scale"), &D = c.integer("D", "largest d");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1);
    auto &psi1 = c.text("psi1", "weight on k/K", "bump:1:2"), &psi2 = c.text("psi2", "weight on l/X", "bump:-1:1");
    auto& theta = c.real("theta", "spectral gap exponent", ex::Theta::kKimSarnak);
    c.exec = [&] {
      return from_experiment(ex::type1(X, K, D, a, h, ex::parse_weight(psi1), ex::parse_weight(psi2), ex::Theta(theta),
                                       c.threads));
    };
  }
  {
    auto& c = add("type2", "Type II bilinear discrepancy, one row per n");
    auto &X = c.integer("X", "l range"), &M = c.integer("M", "m range"), &N = c.integer("N", "n range");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1);
    auto &alpha = c.text("alpha", "coefficient on m", "mobius"), &beta = c.text("beta", "coefficient on n", "mu2");
    auto& psi = c.text("psi", "weight on l/X", "bump:-1:1");
    auto& theta = c.real("theta", "spectral gap exponent", ex::Theta::kKimSarnak);
    c.exec = [&] {
      return from_experiment(ex::type2(X, M, N, a, h, coefficient(alpha), coefficient(beta), ex::parse_weight(psi),
                                       ex::Theta(theta), c.threads));
    };
  }
  {
    auto& c = add("equidist", "roots v/p in intervals against their expected share");
    auto &X = c.integer("X", "prime range"), &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1);
    auto& bins = c.integer("bins", "uniform bins when --intervals is empty", 10);
    auto& intervals = c.text("intervals", "alpha:beta,... with rational endpoints", "");
    c.exec = [&] {
      const auto ivs = intervals.empty() ? ex::uniform_intervals(bins) : parse_intervals(intervals);
      const auto t = ex::equidist(X, a, h, ivs, c.threads);
      Emission e{io::to_table(t), t, std::nullopt, "", kOk};
      e.summary = "equidist: primes=" + std::to_string(t.primes) + " roots=" + std::to_string(t.total_roots) +
                  " max_relative_deviation=" + io::format_real(t.max_relative_deviation());
      return e;
    };
  }
  {
    auto& c = add("weyl", "sum over p <= X and roots v of e(m v / p)");
    auto &X = c.integer("X", "prime range"), &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1),
         &m = c.integer("m", "frequency", 1);
    c.exec = [&] {
      const auto s = ex::weyl_sum(X, a, h, m, c.threads);
      Emission e;
      e.table = {{"m", "real", "imag", "abs"},
                 {{std::to_string(m), io::format_real(s.real()), io::format_real(s.imag()), io::format_real(std::abs(s))}}};
      e.doc = {{"experiment", "weyl"},
               {"parameters", {{"X", std::to_string(X)}, {"a", std::to_string(a)}, {"h", std::to_string(h)}}},
               {"m", m},
               {"real", s.real()},
               {"imag", s.imag()},
               {"abs", std::abs(s)}};
      e.summary = "weyl: |S|=" + io::format_real(std::abs(s));
      return e;
    };
  }
  {
    auto& c = add("gpf", "greatest prime factor of a n^2 + h for n in [X, 2X]");
    auto &X = c.integer("X", "range"), &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1);
    c.exec = [&] {
      const auto r = ex::gpf_scan(X, a, h);
      Emission e{io::to_table(r), r, std::nullopt, "", kOk};
      e.summary = "gpf: max=" + io::format_int(r.max_gpf) + " at n=" + std::to_string(r.argmax) +
                  " exponent=" + io::format_real(r.exponent);
      return e;
    };
  }
  {
    auto& c = add("chebyshev", "sieve against factorization for prod (a n^2 + h)");
    auto &X = c.integer("X", "range"), &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1);
    c.exec = [&] {
      const auto r = ex::chebyshev_identity(X, a, h);
      Emission e{io::to_table(r), r, std::nullopt, "", r.multiset_difference == 0 ? kOk : kVerificationFailed};
      e.summary = "chebyshev: multiset_difference=" + std::to_string(r.multiset_difference);
      return e;
    };
  }
  {
    auto& c = add("hypothesis", "sum over Y <= p < Z of rho(p) log(p) / p");
    auto &a = c.integer("a", "a", 1), &h = c.integer("h", "h", 1), &Y = c.integer("Y", "lower end"),
         &Z = c.integer("Z", "upper end");
    auto& eps = c.real("eps", "companion parameter", 0.1);
    c.exec = [&] {
      const auto r = ex::hypothesis_sum(a, h, Y, Z, eps);
      Emission e{io::to_table(r), r, std::nullopt, "", kOk};
      e.summary = "hypothesis: sum=" + io::format_real(r.sum) + " companion=" + io::format_real(r.companion);
      return e;
    };
  }
  {
    auto& c = add("kernel-heegner", "kernel sum over Heegner points, Qlo <= q <= Qhi");
    auto &Qlo = c.integer("Qlo", "smallest level"), &Qhi = c.integer("Qhi", "largest level"), &h = c.integer("h", "h");
    auto& Z = c.text("Z", "support radius (rational)");
    c.exec = [&] { return from_kernel(ex::kernel_heegner(Qlo, Qhi, h, Rational::parse(Z), c.threads)); };
  }
  {
    auto& c = add("kernel-lt", "kernel sum over lower-triangular shifts");
    auto &D = c.integer("D", "smallest d", 1), &N0 = c.integer("N0", "N0", 1), &N1 = c.integer("N1", "N1", 1),
         &N2 = c.integer("N2", "N2", 1), &T = c.integer("T", "T", 1), &V = c.integer("V", "V", 1);
    auto &Z = c.text("Z", "support radius (rational)"), &R = c.text("R", "skew (rational)", "1");
    c.exec = [&] {
      return from_kernel(
          ex::kernel_lowertriang(D, N0, N1, N2, T, V, Rational::parse(Z), Rational::parse(R), c.threads));
    };
  }
  {
    auto& c = add("x2y3", "Type I2 sum for a x^2 + b y^3, one row per d <= Dmax");
    auto &X = c.integer("X", "scale"), &K = c.integer("K", "modulus scale"), &Dmax = c.integer("Dmax", "largest d");
    auto &a = c.integer("a", "a", 1), &b = c.integer("b", "b", 1), &A = c.integer("A", "x scale"),
         &B = c.integer("B", "y scale");
    auto &f = c.text("f", "weight on k/K and n/X", "bump:1:2"), &f1 = c.text("f1", "weight on x/A", "bump:1:2"),
         &f2 = c.text("f2", "weight on y/B", "bump:1:2");
    c.exec = [&] {
      return from_experiment(ex::x2y3_typeI2(X, K, Dmax, a, b, ex::parse_weight(f), ex::parse_weight(f1),
                                             ex::parse_weight(f2), A, B, c.threads));
    };
  }
  {
    auto& c = add("ypoisson", "smoothed y-sum of rho(a, b y^3; d)");
    auto &a = c.integer("a", "a", 1), &b = c.integer("b", "b", 1), &d = c.integer("d", "modulus"),
         &B = c.integer("B", "y scale");
    auto& f2 = c.text("f2", "weight on y/B", "bump:1:2");
    c.exec = [&] {
      const auto r = ex::ypoisson_check(a, b, d, B, ex::parse_weight(f2));
      Emission e{io::to_table(r), r, std::nullopt, "", r.identity_holds ? kOk : kVerificationFailed};
      e.summary = "ypoisson: complete_sum=" + std::to_string(r.complete_sum) +
                  " normalized_error=" + io::format_real(r.normalized_error);
      return e;
    };
  }
  return cmds;
}

void configure(CLI::App& app) {
  // -h would collide with the --h parameter.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", std::string(kVersion));
}

// Splices --config file tokens in right after the subcommand name so that
// later command-line flags take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> out{args.front()};
  for (auto& t : config_tokens(io::read_file(*path))) out.push_back(std::move(t));
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

void write_manifest(const Command& c, const std::vector<std::string>& args, double seconds) {
  json outputs = json::object();
  for (const auto* path : {&c.out, &c.json_path})
    if (!path->empty()) outputs[*path] = sha256_hex(io::read_file(*path));
  const json m = {{"subcommand", c.name()},
                  {"parameters", c.params()},
                  {"arguments", args},
                  {"version", kVersion},
                  {"wall_time_seconds", seconds},
                  {"threads", c.threads},
                  {"outputs", outputs}};
  io::write_file(c.manifest, io::dump(m));
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += kHex[md[i] >> 4];
    s += kHex[md[i] & 15];
  }
  return s;
}

std::vector<std::string> config_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || key == "config") throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad key");
    out.push_back("--" + key);
    out.push_back(trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::string> subcommands() {
  CLI::App app;
  configure(app);
  std::vector<std::string> names;
  for (const auto& c : build(app)) names.push_back(c->name());
  return names;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root statistics of quadratic congruences a l^2 + h == 0 (mod k)", "qcong"};
  configure(app);
  const auto cmds = build(app);
  try {
    const auto args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    const auto it = std::find_if(cmds.begin(), cmds.end(), [](const auto& c) { return c->app()->parsed(); });
    const Command& cmd = **it;

    const auto t0 = std::chrono::steady_clock::now();
    Emission e = cmd.exec();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cmd.out.empty()) io::write_file(cmd.out, io::to_csv(e.table));
    if (!cmd.json_path.empty()) io::write_file(cmd.json_path, io::dump(e.doc));
    if (cmd.out.empty() && cmd.json_path.empty())
      out << (e.stdout_text ? *e.stdout_text : io::to_csv(e.table));
    else if (!e.summary.empty())
      out << e.summary << '\n';
    if (!cmd.manifest.empty()) write_manifest(cmd, raw_args, seconds);
    return e.exit_code;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (raw_args.empty() || app.get_subcommands().empty()) err << app.help();
    return kInvalidArguments;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
}

}  // namespace qcong::cli
