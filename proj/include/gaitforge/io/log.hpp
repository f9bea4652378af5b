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

#pragma once

#include <string>

namespace gaitforge::io {

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

// Level from GAITFORGE_LOG (quiet, info, debug); info when unset.
LogLevel log_level();
void set_log_level(LogLevel level);

// Structured text lines on stderr: "[gaitforge] <channel> key=value ...".
void log_info(const std::string& channel, const std::string& message);
void log_debug(const std::string& channel, const std::string& message);

}  // namespace gaitforge::io
