// Copyright 2026 The gaitforge Authors
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

#include "gaitforge/io/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace gaitforge::io {

namespace {

LogLevel from_env() {
  const char* v = std::getenv("GAITFORGE_LOG");
  if (!v) return LogLevel::kInfo;
  const std::string s(v);
  if (s == "quiet") return LogLevel::kQuiet;
  if (s == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

std::atomic<int>& level_storage() {
  static std::atomic<int> level{static_cast<int>(from_env())};
  return level;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void emit(const std::string& channel, const std::string& message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[gaitforge] " << channel << ' ' << message << '\n';
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_storage().load()); }

void set_log_level(LogLevel level) { level_storage().store(static_cast<int>(level)); }

void log_info(const std::string& channel, const std::string& message) {
  if (log_level() >= LogLevel::kInfo) emit(channel, message);
}

void log_debug(const std::string& channel, const std::string& message) {
  if (log_level() >= LogLevel::kDebug) emit(channel, message);
}

}  // namespace gaitforge::io
