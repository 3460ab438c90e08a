#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aitlab {

// Bad parameters or an inconsistent in-memory configuration. CLI exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File, format or serialization problems. CLI exit 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested estimate is absent (or a required mass is zero) at the given
// resource bounds. `term` names the missing quantity. CLI exit 4.
class InsufficientResources : public std::runtime_error {
 public:
  InsufficientResources(std::string term, const std::string& message)
      : std::runtime_error(message), term_(std::move(term)) {}
  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

// Predictive query on a context that carries no halting mass. CLI exit 4.
class NoSupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evidence whose marginal probability is zero under the current prior.
// `step` is the 0-based position in the evidence sequence. CLI exit 4.
class ImpossibleEvidence : public std::runtime_error {
 public:
  ImpossibleEvidence(std::size_t step, const std::string& message)
      : std::runtime_error(message), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace aitlab
