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

#include <algorithm>
#include <sstream>
#include <string>

#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/transcription/layout.hpp"

namespace gaitforge::transcription {

std::string mode_name(Mode mode) {
  return mode == Mode::kQuasiPassive ? "quasi-passive" : "actuated";
}

Mode parse_mode(const std::string& name) {
  if (name == "quasi-passive") return Mode::kQuasiPassive;
  if (name == "actuated") return Mode::kActuated;
  throw ConfigError("unknown layout mode '" + name + "'");
}

int DecisionLayout::node(int k, int i) const {
  const int nx = n_x();
  if (k == 0) return i == 0 ? off_x0 : off_grid + (i - 1) * nx;
  return off_grid + N * nx + (k - 1) * (N + 1) * nx + i * nx;
}

int DecisionLayout::n_active(int k) const {
  if (mode != Mode::kActuated) return 0;
  const auto& a = active[static_cast<size_t>(k)];
  return static_cast<int>(std::count(a.begin(), a.end(), true));
}

int DecisionLayout::xi(int k, int interval, int j) const {
  if (mode != Mode::kActuated) return -1;
  const auto& a = active[static_cast<size_t>(k)];
  if (!a[static_cast<size_t>(j)]) return -1;
  const int rank = static_cast<int>(std::count(a.begin(), a.begin() + j, true));
  return xi_phase_offset[static_cast<size_t>(k)] + interval * n_active(k) + rank;
}

std::string DecisionLayout::describe() const {
  std::ostringstream os;
  os << mode_name(mode) << " m=" << m << " N=" << N << " n_q=" << n_q << " n_u=" << n_u
     << " n_free=" << n_free << " size=" << size << " sequence=";
  for (size_t k = 0; k < sequence.size(); ++k) os << (k ? "," : "") << sequence[k];
  return os.str();
}

DecisionLayout make_layout(const models::ModelSpec& model, const std::vector<int>& sequence, int N,
                           Mode mode) {
  if (N < 2) throw ConfigError("N must be >= 2");
  if (sequence.empty()) throw ConfigError("empty phase sequence");
  for (size_t k = 0; k < sequence.size(); ++k) {
    if (!model.has_phase(sequence[k]))
      throw ConfigError("phase " + std::to_string(sequence[k]) + " not in " + model.name);
    const int next = sequence[(k + 1) % sequence.size()];
    const auto& ev = model.phase(sequence[k]).events;
    if (std::none_of(ev.begin(), ev.end(), [&](const models::Transition& t) { return t.target == next; }))
      throw ConfigError("no transition " + std::to_string(sequence[k]) + " -> " + std::to_string(next) +
                        " in " + model.name);
  }

  DecisionLayout L;
  L.mode = mode;
  L.m = static_cast<int>(sequence.size());
  L.N = N;
  L.n_q = model.n_q;
  L.n_u = model.n_u;
  L.n_free = static_cast<int>(model.free_params.size());
  L.sequence = sequence;
  for (int phase : sequence) {
    const auto& contacts = model.phase(phase).contacts;
    std::vector<bool> act(static_cast<size_t>(model.n_u), true);
    for (int j = 0; j < model.n_u; ++j) {
      const int foot = j < static_cast<int>(model.input_foot.size()) ? model.input_foot[static_cast<size_t>(j)] : -1;
      if (foot >= 0) act[static_cast<size_t>(j)] = std::find(contacts.begin(), contacts.end(), foot) != contacts.end();
    }
    L.active.push_back(act);
  }

  const int nx = L.n_x();
  int pos = 0;
  L.off_x0 = pos;
  pos += nx;
  if (mode == Mode::kQuasiPassive) L.off_gamma = pos++;
  L.off_T = pos;
  pos += L.m;
  L.off_free = pos;
  pos += L.n_free;
  L.off_grid = pos;
  pos += N * nx + (L.m - 1) * (N + 1) * nx;
  L.off_xi = pos;
  for (int k = 0; k < L.m; ++k) {
    L.xi_phase_offset.push_back(pos);
    pos += N * L.n_active(k);
  }
  L.size = pos;
  return L;
}

numerics::Vector pack(const DecisionLayout& L, const DecisionComponents& c) {
  const size_t nx = static_cast<size_t>(L.n_x());
  if (c.x0.size() != nx || c.durations.size() != static_cast<size_t>(L.m) ||
      c.free.size() != static_cast<size_t>(L.n_free) || c.grid.size() != static_cast<size_t>(L.m))
    throw DomainError("pack: component sizes do not match the layout");
  numerics::Vector a = numerics::Vector::Zero(L.size);
  for (size_t i = 0; i < nx; ++i) a(L.off_x0 + static_cast<int>(i)) = c.x0[i];
  if (L.off_gamma >= 0) a(L.off_gamma) = c.gamma;
  for (int k = 0; k < L.m; ++k) a(L.off_T + k) = c.durations[static_cast<size_t>(k)];
  for (int f = 0; f < L.n_free; ++f) a(L.off_free + f) = c.free[static_cast<size_t>(f)];
  for (int k = 0; k < L.m; ++k) {
    const auto& nodes = c.grid[static_cast<size_t>(k)];
    if (nodes.size() != static_cast<size_t>(L.N + 1)) throw DomainError("pack: grid node count mismatch");
    for (int i = (k == 0 ? 1 : 0); i <= L.N; ++i) {
      const auto& xk = nodes[static_cast<size_t>(i)];
      if (xk.size() != nx) throw DomainError("pack: grid state size mismatch");
      for (size_t s = 0; s < nx; ++s) a(L.node(k, i) + static_cast<int>(s)) = xk[s];
    }
  }
  if (L.mode == Mode::kActuated) {
    if (c.xi.size() != static_cast<size_t>(L.m)) throw DomainError("pack: xi phase count mismatch");
    for (int k = 0; k < L.m; ++k)
      for (int i = 0; i < L.N; ++i)
        for (int j = 0; j < L.n_u; ++j) {
          const int idx = L.xi(k, i, j);
          if (idx >= 0) a(idx) = c.xi[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
  }
  return a;
}

DecisionComponents unpack(const DecisionLayout& L, const numerics::Vector& a) {
  if (a.size() != L.size)
    throw DomainError("unpack: vector length " + std::to_string(a.size()) + " != layout size " +
                      std::to_string(L.size));
  const int nx = L.n_x();
  auto slice = [&](int off) { return std::vector<double>(a.data() + off, a.data() + off + nx); };
  DecisionComponents c;
  c.x0 = slice(L.off_x0);
  c.gamma = L.off_gamma >= 0 ? a(L.off_gamma) : 0.0;
  c.durations.assign(a.data() + L.off_T, a.data() + L.off_T + L.m);
  c.free.assign(a.data() + L.off_free, a.data() + L.off_free + L.n_free);
  c.grid.resize(static_cast<size_t>(L.m));
  for (int k = 0; k < L.m; ++k)
    for (int i = 0; i <= L.N; ++i) c.grid[static_cast<size_t>(k)].push_back(slice(L.node(k, i)));
  c.xi.assign(static_cast<size_t>(L.m),
              std::vector<std::vector<double>>(static_cast<size_t>(L.N), std::vector<double>(static_cast<size_t>(L.n_u), 0.0)));
  if (L.mode == Mode::kActuated)
    for (int k = 0; k < L.m; ++k)
      for (int i = 0; i < L.N; ++i)
        for (int j = 0; j < L.n_u; ++j) {
          const int idx = L.xi(k, i, j);
          if (idx >= 0) c.xi[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)] = a(idx);
        }
  return c;
}

numerics::Vector to_actuated(const DecisionLayout& qp, const DecisionLayout& act,
                             const numerics::Vector& a_qp) {
  if (qp.mode != Mode::kQuasiPassive || act.mode != Mode::kActuated || qp.m != act.m || qp.N != act.N ||
      qp.n_q != act.n_q || qp.sequence != act.sequence)
    throw DomainError("to_actuated: incompatible layouts");
  DecisionComponents c = unpack(qp, a_qp);
  c.xi.assign(static_cast<size_t>(act.m),
              std::vector<std::vector<double>>(static_cast<size_t>(act.N), std::vector<double>(static_cast<size_t>(act.n_u), 0.0)));
  return pack(act, c);
}

}  // namespace gaitforge::transcription
