// Copyright 2026 The opsys Authors
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

namespace opsys {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Eigen backend failed to converge.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int iterations);
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// An element is not in the operator system it was handed with.
class MembershipError : public Error {
 public:
  MembershipError(const std::string& what, double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NotHermitianError : public Error {
 public:
  NotHermitianError(const std::string& what, double asymmetry);
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

// A tower or map failed one of its construction checks. `check()` names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string check, const std::string& what);
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

class InconsistentThreadError : public Error {
 public:
  InconsistentThreadError(const std::string& what, double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Linearly dependent constraints with incompatible right-hand sides.
class InfeasibleAffineError : public Error {
 public:
  InfeasibleAffineError(const std::string& what, double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Malformed JSON or named-object input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace opsys
