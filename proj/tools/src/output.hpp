// Copyright 2026 The minorkern Authors
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

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace minorkern::cli {

// 17 significant digits, '.' decimal regardless of locale.
std::string format_double(double v);

// Comma-separated rows after '#'-prefixed metadata lines and one header.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& columns);
  CsvWriter& cell(double v);
  CsvWriter& cell(long v);
  CsvWriter& cell(int v) { return cell(static_cast<long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();
  long rows() const { return rows_; }
  void close();

 private:
  std::FILE* f_ = nullptr;
  std::string path_;
  std::string line_;
  long rows_ = 0;
};

void write_json(const Json& j, const std::string& path);

// Output path: the flag or config value, else dir-less default.
std::string out_path(const RunConfig& cfg, const std::string& fallback);
// "a.json" -> "a.csv".
std::string sibling(const std::string& path, const std::string& ext);

}  // namespace minorkern::cli
