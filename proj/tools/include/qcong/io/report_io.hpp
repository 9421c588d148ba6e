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

// CSV and JSON forms of the library reports.
//
// CSV: header row, comma separated, LF endings, reals at 17 significant
// digits, no locale. JSON: sorted keys, 128-bit integers as decimal strings.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcong/experiments.hpp"
#include "qcong/parametrize.hpp"

namespace qcong::io {

using nlohmann::json;

/// Raised for unwritable or unreadable paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_real(double v);
std::string format_int(i128 v);
/// Integers joined by ':'.
std::string format_cell(const std::vector<std::int64_t>& cell);

void write_csv(const Table& t, std::ostream& out);
std::string to_csv(const Table& t);

Table to_table(const experiments::ExperimentReport& r);
Table to_table(const experiments::KernelReport& r);
Table to_table(const experiments::EquidistTable& r);
Table to_table(const experiments::GpfReport& r);
Table to_table(const experiments::ChebyshevReport& r);
Table to_table(const experiments::HypothesisSum& r);
Table to_table(const experiments::YPoissonReport& r);
/// One row per witness: kind, then the witness entries joined by ':'.
Table to_table(const parametrize::ParamReport& r);

/// Writes `text` to `path` in binary mode; throws IoError.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

std::string dump(const json& j);

}  // namespace qcong::io

namespace qcong::experiments {

void to_json(nlohmann::json& j, const DiscrepancyRow& r);
void from_json(const nlohmann::json& j, DiscrepancyRow& r);
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);
void to_json(nlohmann::json& j, const KernelRow& r);
void from_json(const nlohmann::json& j, KernelRow& r);
void to_json(nlohmann::json& j, const KernelReport& r);
void from_json(const nlohmann::json& j, KernelReport& r);
void to_json(nlohmann::json& j, const EquidistRow& r);
void from_json(const nlohmann::json& j, EquidistRow& r);
void to_json(nlohmann::json& j, const EquidistTable& r);
void from_json(const nlohmann::json& j, EquidistTable& r);
void to_json(nlohmann::json& j, const GpfEntry& r);
void from_json(const nlohmann::json& j, GpfEntry& r);
void to_json(nlohmann::json& j, const GpfReport& r);
void from_json(const nlohmann::json& j, GpfReport& r);
void to_json(nlohmann::json& j, const ChebyshevReport& r);
void from_json(const nlohmann::json& j, ChebyshevReport& r);
void to_json(nlohmann::json& j, const HypothesisSum& r);
void from_json(const nlohmann::json& j, HypothesisSum& r);
void to_json(nlohmann::json& j, const YPoissonReport& r);
void from_json(const nlohmann::json& j, YPoissonReport& r);

}  // namespace qcong::experiments

namespace qcong::parametrize {

void to_json(nlohmann::json& j, const ParamReport& r);
void from_json(const nlohmann::json& j, ParamReport& r);

}  // namespace qcong::parametrize
