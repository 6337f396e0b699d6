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

#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "percolab/error.hpp"

namespace percolab::cli {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // also folds -0
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

CsvTable::CsvTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw Error("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write " + path.string());
  file << bytes;
  if (!file) throw ConfigError("failed writing " + path.string());
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += quote(columns_[i].name + " [" + columns_[i].unit + "]");
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote(row[i]);
    }
    out += '\n';
  }
  return out;
}

RunOutput::RunOutput(std::string out_dir, std::string name, std::string format)
    : out_dir_(std::move(out_dir)),
      name_(std::move(name)),
      manifest_file_(name_ + ".manifest.json"),
      want_jsonl_(format == "jsonl" || format == "both"),
      want_csv_(format == "csv" || format == "both") {
  if (!want_jsonl_ && !want_csv_) {
    throw ConfigError("--format must be csv, jsonl or both, got '" + format + "'");
  }
}

void RunOutput::record(nlohmann::json record) { records_.push_back(std::move(record)); }

void RunOutput::table(CsvTable table) { tables_.push_back(std::move(table)); }

void RunOutput::finish(nlohmann::json manifest) {
  std::filesystem::create_directories(out_dir_);
  const std::filesystem::path dir(out_dir_);
  nlohmann::json outputs = nlohmann::json::array();
  auto emit = [&](const std::string& file, const std::string& bytes, const char* kind) {
    write_file(dir / file, bytes);
    outputs.push_back({{"file", file},
                       {"kind", kind},
                       {"bytes", bytes.size()},
                       {"fnv1a64", hex64(fnv1a64(bytes))}});
  };

  if (want_jsonl_) {
    std::string body;
    const nlohmann::json header = {{"record", "header"},
                                   {"SCHEMA_VERSION", kSchemaVersion},
                                   {"subcommand", name_},
                                   {"manifest", manifest_file_}};
    body += header.dump() + '\n';
    for (const auto& r : records_) body += r.dump() + '\n';
    emit(name_ + ".jsonl", body, "jsonl");
  }
  if (want_csv_) {
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      const std::string file =
          i == 0 ? name_ + ".csv" : name_ + "." + std::to_string(i + 1) + ".csv";
      emit(file, tables_[i].str(), "csv");
    }
  }
  manifest["outputs"] = outputs;
  manifest["finished_at"] = utc_timestamp();
  write_file(dir / manifest_file_, manifest.dump(2) + '\n');
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace percolab::cli
