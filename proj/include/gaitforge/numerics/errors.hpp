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

#include <stdexcept>
#include <string>
#include <utility>

namespace gaitforge {

// Root of every error raised by the toolkit. Numerical failures map to exit
// code 1 in the CLI, configuration problems (ConfigError) to exit code 2.
class GaitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public GaitError {
 public:
  using GaitError::GaitError;
};

class DifferentiationError : public GaitError {
 public:
  DifferentiationError(const std::string& what, int component)
      : GaitError(what), component_(component) {}
  int component() const { return component_; }

 private:
  int component_;
};

class RankDeficientError : public GaitError {
 public:
  RankDeficientError(const std::string& what, int rank)
      : GaitError(what), rank_(rank) {}
  int rank() const { return rank_; }

 private:
  int rank_;
};

// Raised when the homotopy-map Jacobian loses rank (fold or branch point).
class FoldError : public GaitError {
 public:
  using GaitError::GaitError;
};

class ModelSingularityError : public GaitError {
 public:
  using GaitError::GaitError;
};

class DegeneracyError : public GaitError {
 public:
  using GaitError::GaitError;
};

class UnknownEventError : public GaitError {
 public:
  using GaitError::GaitError;
};

class DivergenceError : public GaitError {
 public:
  using GaitError::GaitError;
};

class WrongSequenceError : public GaitError {
 public:
  using GaitError::GaitError;
};

// Newton or corrector iteration did not reach its tolerance.
class ConvergenceError : public GaitError {
 public:
  ConvergenceError(const std::string& what, std::string report)
      : GaitError(what), report_(std::move(report)) {}
  const std::string& report() const { return report_; }

 private:
  std::string report_;
};

class GuessError : public GaitError {
 public:
  using GaitError::GaitError;
};

// Continuation step size fell below its minimum.
class ContinuationStuckError : public GaitError {
 public:
  using GaitError::GaitError;
};

class ConfigError : public GaitError {
 public:
  using GaitError::GaitError;
};

}  // namespace gaitforge
