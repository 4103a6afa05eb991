// Copyright 2026 The Clio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clio {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed label or term text. Positions are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

/// Which premise of a monitor rule was violated.
enum class Premise {
  kLabelAboveCurrent,       // label: lcur ⊑ l
  kLabelBelowClearance,     // label: l ⊑ ccur
  kUnlabelBelowClearance,   // unlabel: lcur ⊔ l ⊑ ccur
  kToLabeledAboveCurrent,   // toLabeled: lcur ⊑ l1
  kToLabeledBelowClearance, // toLabeled: l1 ⊑ ccur
  kResetTarget,             // reset: lcur ⊑ l1
  kStoreBelowStoreLevel,    // store: lcur ⊑ ℓ
  kStoreBelowValueLabel,    // store: lcur ⊑ l1
  kFetchAvailability,       // fetch: ℓ.avail ⊑A ld.avail
};

const char* premise_name(Premise p);

/// A label check of the runtime monitor failed.
class MonitorFailure : public Error {
 public:
  MonitorFailure(Premise premise, const std::string& detail)
      : Error(std::string("monitor failure [") + premise_name(premise) + "]: " + detail),
        premise_(premise) {}

  Premise premise() const { return premise_; }

 private:
  Premise premise_;
};

/// A well-typedness assumption was violated at run time (closed-term or shape).
class StuckError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Category keys could not be created, fetched, or verified.
class CategoryKeyError : public Error {
 public:
  using Error::Error;
};

/// A cryptographic primitive rejected its inputs.
class CryptoError : public Error {
 public:
  using Error::Error;
};

/// An adversary interaction violated its side condition.
class InteractionRejected : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace clio
