// Copyright 2026 The Percolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace percolab::cli {

inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Shortest round-trip decimal for doubles; "nan"/"inf" spelled out.
std::string format_number(double value);

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

// RFC 4180 table with LF line endings. Header cells read "name [unit]".
class CsvTable {
 public:
  explicit CsvTable(std::vector<Column> columns);

  const std::vector<Column>& columns() const noexcept { return columns_; }
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Collects the data of one run and writes
//   <out>/<name>.jsonl, <out>/<name>.csv and <out>/<name>.manifest.json.
// Data files are written first; the manifest records their digests.
class RunOutput {
 public:
  RunOutput(std::string out_dir, std::string name, std::string format);

  const std::string& manifest_file() const noexcept { return manifest_file_; }
  void record(nlohmann::json record);
  void table(CsvTable table);
  // Writes all files; `manifest` is completed with outputs and end time.
  void finish(nlohmann::json manifest);

 private:
  std::string out_dir_;
  std::string name_;
  std::string manifest_file_;
  bool want_jsonl_;
  bool want_csv_;
  std::vector<nlohmann::json> records_;
  std::vector<CsvTable> tables_;
};

std::string utc_timestamp();

}  // namespace percolab::cli
