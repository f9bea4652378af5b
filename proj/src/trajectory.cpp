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

#include <cstdio>
#include <sstream>

#include "gaitforge/simulate/trajectory.hpp"

namespace gaitforge::simulate {

double HybridTrajectory::duration() const {
  if (segments.empty() || segments.back().t.empty()) return 0.0;
  return segments.back().t.back() - segments.front().t.front();
}

std::vector<int> HybridTrajectory::phase_sequence() const {
  std::vector<int> out;
  for (const auto& s : segments) out.push_back(s.phase);
  return out;
}

std::string HybridTrajectory::to_csv(const std::vector<std::string>& state_names,
                                     const std::vector<std::string>& input_names) const {
  std::ostringstream os;
  os << "t,phase";
  for (const auto& n : state_names) os << ',' << n;
  for (const auto& n : input_names) os << ',' << n;
  os << '\n';
  char buf[32];
  auto row = [&](double t, int phase, const std::vector<double>& x, const std::vector<double>* u) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    os << buf << ',' << phase;
    for (double v : x) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    for (size_t j = 0; j < input_names.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", u && j < u->size() ? (*u)[j] : 0.0);
      os << ',' << buf;
    }
    os << '\n';
  };
  for (const auto& s : segments)
    for (size_t k = 0; k < s.t.size(); ++k) row(s.t[k], s.phase, s.x[k], k < s.u.size() ? &s.u[k] : nullptr);
  // a complete stride ends with the state after its closing impact
  if (!segments.empty() && events.size() == segments.size()) {
    const auto& ev = events.back();
    const auto& last = segments.front().u;
    row(ev.t, ev.to, ev.post, last.empty() ? nullptr : &last.front());
  }
  return os.str();
}

}  // namespace gaitforge::simulate
