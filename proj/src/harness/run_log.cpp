// Copyright 2026 The Lastmile Authors
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

#include "lastmile/harness/run_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "lastmile/core/csv.hpp"
#include "lastmile/core/errors.hpp"

namespace lastmile::harness {
namespace {

constexpr std::size_t kColumns = 17;

arbiter::Display DisplayFromString(std::string_view s) {
  if (s == arbiter::ToString(arbiter::Display::kMoving)) return arbiter::Display::kMoving;
  if (s == arbiter::ToString(arbiter::Display::kStopped)) return arbiter::Display::kStopped;
  throw std::invalid_argument("unknown display '" + std::string(s) + "'");
}

}  // namespace

std::string FormatLogLine(const LogRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.t, r.x, r.y,
                     r.heading, r.v, r.omega, r.throttle, r.brake, r.steer, r.cte,
                     r.obstacle_d, r.sign_d, r.sign_n, arbiter::ToString(r.display),
                     arbiter::ToString(r.source), r.cmd_v, r.gap);
}

LogRecord ParseLogLine(std::string_view line, const std::string& source,
                       std::size_t line_number) {
  const auto fields = SplitFields(Trim(line));
  if (fields.size() != kColumns) {
    throw ParseError(source, line_number,
                     fmt::format("expected {} columns, got {}", kColumns, fields.size()));
  }
  std::size_t col = 0;
  const auto num = [&]() {
    const auto v = ParseDouble(fields[col]);
    if (!v) {
      throw ParseError(source, line_number,
                       fmt::format("bad number '{}' in column {}", fields[col], col + 1));
    }
    ++col;
    return *v;
  };
  LogRecord r;
  r.t = num();
  r.x = num();
  r.y = num();
  r.heading = num();
  r.v = num();
  r.omega = num();
  r.throttle = num();
  r.brake = num();
  r.steer = num();
  r.cte = num();
  r.obstacle_d = num();
  r.sign_d = num();
  const double n = num();
  if (n < 0 || n != static_cast<int>(n)) {
    throw ParseError(source, line_number, "sign_N must be a non-negative integer");
  }
  r.sign_n = static_cast<int>(n);
  try {
    r.display = DisplayFromString(Trim(fields[col++]));
    r.source = arbiter::SourceFromString(Trim(fields[col++]));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, line_number, e.what());
  }
  r.cmd_v = num();
  r.gap = num();
  return r;
}

void WriteLog(std::ostream& out, const std::vector<LogRecord>& records) {
  out << kLogHeader << '\n';
  for (const auto& r : records) out << FormatLogLine(r) << '\n';
}

std::vector<LogRecord> ReadLog(std::istream& in, const std::string& source) {
  std::vector<LogRecord> records;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    if (!header) {
      if (Trim(line) != kLogHeader) throw ParseError(source, number, "missing log header");
      header = true;
      continue;
    }
    records.push_back(ParseLogLine(line, source, number));
  }
  if (!header) throw ParseError(source, 0, "empty log");
  return records;
}

std::vector<LogRecord> ReadLog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return ReadLog(in, path.string());
}

}  // namespace lastmile::harness
