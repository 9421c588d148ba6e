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

#include "qcong/io/report_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace qcong::io {

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_int(i128 v) { return qcong::to_string(v); }

std::string format_cell(const std::vector<std::int64_t>& cell) {
  std::string s;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i) s += ':';
    s += std::to_string(cell[i]);
  }
  return s;
}

void write_csv(const Table& t, std::ostream& out) {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

Table to_table(const experiments::ExperimentReport& r) {
  Table t{{"cell", "exact_count", "main_term", "error"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({format_cell(row.cell), format_real(row.exact_count), format_real(row.main_term), format_real(row.error)});
  return t;
}

Table to_table(const experiments::KernelReport& r) {
  Table t{{"cell", "value"}, {}};
  for (const auto& row : r.rows) t.rows.push_back({format_cell(row.cell), format_real(row.value)});
  return t;
}

Table to_table(const experiments::EquidistTable& r) {
  Table t{{"alpha", "beta", "count", "expected", "deviation", "relative"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({row.interval.alpha.str(), row.interval.beta.str(), std::to_string(row.count),
                      format_real(row.expected), format_real(row.deviation), format_real(row.relative)});
  return t;
}

Table to_table(const experiments::GpfReport& r) {
  Table t{{"n", "value", "gpf", "exponent"}, {}};
  for (const auto& e : r.entries)
    t.rows.push_back({std::to_string(e.n), format_int(e.value), format_int(e.gpf), format_real(e.exponent)});
  return t;
}

Table to_table(const experiments::ChebyshevReport& r) {
  return {{"lhs", "rhs", "difference", "multiset_difference", "primes"},
          {{format_real(r.lhs), format_real(r.rhs), format_real(r.difference), std::to_string(r.multiset_difference),
            std::to_string(r.primes)}}};
}

Table to_table(const experiments::HypothesisSum& r) {
  return {{"sum", "companion", "primes"}, {{format_real(r.sum), format_real(r.companion), std::to_string(r.primes)}}};
}

Table to_table(const experiments::YPoissonReport& r) {
  return {{"lhs", "main", "error", "normalized_error", "complete_sum", "identity_holds"},
          {{format_real(r.lhs), format_real(r.main), format_real(r.error), format_real(r.normalized_error),
            std::to_string(r.complete_sum), r.identity_holds ? "1" : "0"}}};
}

Table to_table(const parametrize::ParamReport& r) {
  Table t{{"kind", "witness"}, {}};
  auto add = [&t](const char* kind, const std::vector<parametrize::ParamReport::Witness>& ws) {
    for (const auto& w : ws) t.rows.push_back({kind, format_cell(w)});
  };
  add("miss", r.misses);
  add("double_hit", r.double_hits);
  add("spurious", r.spurious);
  add("mismatch", r.mismatches);
  return t;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qcong::io

namespace {

using nlohmann::json;

json big(qcong::i128 v) { return qcong::to_string(v); }
qcong::i128 big(const json& j) { return qcong::parse_i128(j.get<std::string>()); }

}  // namespace

namespace qcong::experiments {

void to_json(json& j, const DiscrepancyRow& r) {
  j = {{"cell", r.cell}, {"exact_count", r.exact_count}, {"main_term", r.main_term}, {"error", r.error}};
}

void from_json(const json& j, DiscrepancyRow& r) {
  j.at("cell").get_to(r.cell);
  j.at("exact_count").get_to(r.exact_count);
  j.at("main_term").get_to(r.main_term);
  j.at("error").get_to(r.error);
}

void to_json(json& j, const ExperimentReport& r) {
  j = {{"experiment", r.experiment},
       {"parameters", r.parameters},
       {"rows", r.rows},
       {"aggregation", to_string(r.aggregation)},
       {"total_count", r.total_count},
       {"total_main", r.total_main},
       {"total_error", r.total_error},
       {"trivial_bound", r.trivial_bound},
       {"paper_bound", r.paper_bound},
       {"theta", r.theta},
       {"ratio_to_bound", r.ratio_to_bound},
       {"extras", r.extras}};
}

void from_json(const json& j, ExperimentReport& r) {
  j.at("experiment").get_to(r.experiment);
  j.at("parameters").get_to(r.parameters);
  j.at("rows").get_to(r.rows);
  const auto agg = j.at("aggregation").get<std::string>();
  if (agg == to_string(Aggregation::kSumOfAbs))
    r.aggregation = Aggregation::kSumOfAbs;
  else if (agg == to_string(Aggregation::kAbsOfSum))
    r.aggregation = Aggregation::kAbsOfSum;
  else
    throw std::invalid_argument("unknown aggregation " + agg);
  j.at("total_count").get_to(r.total_count);
  j.at("total_main").get_to(r.total_main);
  j.at("total_error").get_to(r.total_error);
  j.at("trivial_bound").get_to(r.trivial_bound);
  j.at("paper_bound").get_to(r.paper_bound);
  j.at("theta").get_to(r.theta);
  j.at("ratio_to_bound").get_to(r.ratio_to_bound);
  j.at("extras").get_to(r.extras);
}

void to_json(json& j, const KernelRow& r) { j = {{"cell", r.cell}, {"value", r.value}}; }

void from_json(const json& j, KernelRow& r) {
  j.at("cell").get_to(r.cell);
  j.at("value").get_to(r.value);
}

void to_json(json& j, const KernelReport& r) {
  j = {{"experiment", r.experiment}, {"parameters", r.parameters}, {"rows", r.rows},
       {"skipped", r.skipped},       {"total", r.total},           {"bound", r.bound},
       {"ratio_to_bound", r.ratio_to_bound}};
}

void from_json(const json& j, KernelReport& r) {
  j.at("experiment").get_to(r.experiment);
  j.at("parameters").get_to(r.parameters);
  j.at("rows").get_to(r.rows);
  j.at("skipped").get_to(r.skipped);
  j.at("total").get_to(r.total);
  j.at("bound").get_to(r.bound);
  j.at("ratio_to_bound").get_to(r.ratio_to_bound);
}

void to_json(json& j, const EquidistRow& r) {
  j = {{"alpha", r.interval.alpha.str()}, {"beta", r.interval.beta.str()}, {"count", r.count},
       {"expected", r.expected},          {"deviation", r.deviation},       {"relative", r.relative}};
}

void from_json(const json& j, EquidistRow& r) {
  r.interval.alpha = Rational::parse(j.at("alpha").get<std::string>());
  r.interval.beta = Rational::parse(j.at("beta").get<std::string>());
  j.at("count").get_to(r.count);
  j.at("expected").get_to(r.expected);
  j.at("deviation").get_to(r.deviation);
  j.at("relative").get_to(r.relative);
}

void to_json(json& j, const EquidistTable& r) {
  j = {{"experiment", "equidist"},
       {"parameters", r.parameters},
       {"primes", r.primes},
       {"total_roots", r.total_roots},
       {"rows", r.rows},
       {"max_relative_deviation", r.max_relative_deviation()}};
}

void from_json(const json& j, EquidistTable& r) {
  j.at("parameters").get_to(r.parameters);
  j.at("primes").get_to(r.primes);
  j.at("total_roots").get_to(r.total_roots);
  j.at("rows").get_to(r.rows);
}

void to_json(json& j, const GpfEntry& r) {
  j = {{"n", r.n}, {"value", big(r.value)}, {"gpf", big(r.gpf)}, {"exponent", r.exponent}};
}

void from_json(const json& j, GpfEntry& r) {
  j.at("n").get_to(r.n);
  r.value = big(j.at("value"));
  r.gpf = big(j.at("gpf"));
  j.at("exponent").get_to(r.exponent);
}

void to_json(json& j, const GpfReport& r) {
  json hist = json::array();
  for (const auto& [bin, count] : r.histogram) hist.push_back({bin, count});
  j = {{"experiment", "gpf"},    {"parameters", r.parameters}, {"max_gpf", big(r.max_gpf)},
       {"argmax", r.argmax},     {"exponent", r.exponent},     {"bin_width", GpfReport::kBinWidth},
       {"histogram", hist},      {"entries", r.entries}};
}

void from_json(const json& j, GpfReport& r) {
  j.at("parameters").get_to(r.parameters);
  r.max_gpf = big(j.at("max_gpf"));
  j.at("argmax").get_to(r.argmax);
  j.at("exponent").get_to(r.exponent);
  r.histogram.clear();
  for (const auto& pair : j.at("histogram")) r.histogram[pair.at(0).get<std::int64_t>()] = pair.at(1).get<std::int64_t>();
  j.at("entries").get_to(r.entries);
}

void to_json(json& j, const ChebyshevReport& r) {
  j = {{"experiment", "chebyshev"}, {"parameters", r.parameters},
       {"lhs", r.lhs},              {"rhs", r.rhs},
       {"difference", r.difference}, {"multiset_difference", r.multiset_difference},
       {"primes", r.primes}};
}

void from_json(const json& j, ChebyshevReport& r) {
  j.at("parameters").get_to(r.parameters);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("difference").get_to(r.difference);
  j.at("multiset_difference").get_to(r.multiset_difference);
  j.at("primes").get_to(r.primes);
}

void to_json(json& j, const HypothesisSum& r) {
  j = {{"experiment", "hypothesis"}, {"sum", r.sum}, {"companion", r.companion}, {"primes", r.primes}};
}

void from_json(const json& j, HypothesisSum& r) {
  j.at("sum").get_to(r.sum);
  j.at("companion").get_to(r.companion);
  j.at("primes").get_to(r.primes);
}

void to_json(json& j, const YPoissonReport& r) {
  j = {{"experiment", "ypoisson"},
       {"parameters", r.parameters},
       {"lhs", r.lhs},
       {"main", r.main},
       {"error", r.error},
       {"normalized_error", r.normalized_error},
       {"complete_sum", r.complete_sum},
       {"identity_holds", r.identity_holds}};
}

void from_json(const json& j, YPoissonReport& r) {
  j.at("parameters").get_to(r.parameters);
  j.at("lhs").get_to(r.lhs);
  j.at("main").get_to(r.main);
  j.at("error").get_to(r.error);
  j.at("normalized_error").get_to(r.normalized_error);
  j.at("complete_sum").get_to(r.complete_sum);
  j.at("identity_holds").get_to(r.identity_holds);
}

}  // namespace qcong::experiments

namespace qcong::parametrize {

void to_json(json& j, const ParamReport& r) {
  j = {{"lemma", r.lemma},
       {"parameters", r.parameters},
       {"verdict", to_string(r.verdict())},
       {"elements_enumerated", r.elements_enumerated},
       {"generated", r.generated},
       {"hits", r.hits},
       {"misses", r.misses},
       {"double_hits", r.double_hits},
       {"spurious", r.spurious},
       {"mismatches", r.mismatches},
       {"generation_complete", r.generation_complete}};
}

void from_json(const json& j, ParamReport& r) {
  j.at("lemma").get_to(r.lemma);
  j.at("parameters").get_to(r.parameters);
  j.at("elements_enumerated").get_to(r.elements_enumerated);
  j.at("generated").get_to(r.generated);
  j.at("hits").get_to(r.hits);
  j.at("misses").get_to(r.misses);
  j.at("double_hits").get_to(r.double_hits);
  j.at("spurious").get_to(r.spurious);
  j.at("mismatches").get_to(r.mismatches);
  j.at("generation_complete").get_to(r.generation_complete);
}

}  // namespace qcong::parametrize
