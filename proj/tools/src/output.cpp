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

#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "minorkern/errors.hpp"

namespace minorkern::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
  f_ = std::fopen(path.c_str(), "wb");
  if (f_ == nullptr) throw ArgumentError("cannot write '" + path + "'");
}

CsvWriter::~CsvWriter() {
  if (f_ != nullptr) std::fclose(f_);
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  std::fprintf(f_, "# %s=%s\n", key.c_str(), value.c_str());
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) cell(columns[i]);
  std::fputs(line_.c_str(), f_);
  std::fputc('\n', f_);
  line_.clear();
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (!line_.empty()) line_ += ',';
  line_ += v;
  return *this;
}

void CsvWriter::end_row() {
  line_ += '\n';
  std::fputs(line_.c_str(), f_);
  line_.clear();
  ++rows_;
}

void CsvWriter::close() {
  if (f_ == nullptr) return;
  const bool bad = std::ferror(f_) != 0;
  std::fclose(f_);
  f_ = nullptr;
  if (bad) throw ArgumentError("write to '" + path_ + "' failed");
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw ArgumentError("write to '" + path + "' failed");
}

std::string out_path(const RunConfig& cfg, const std::string& fallback) {
  return cfg.out.empty() ? fallback : cfg.out;
}

std::string sibling(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

}  // namespace minorkern::cli
