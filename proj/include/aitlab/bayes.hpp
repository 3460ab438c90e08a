#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/enumeration.hpp"

namespace aitlab {

// Finite hypothesis set with a prior and per-event likelihood rows. Rows are
// indexed like `hypotheses`; values are P(event | hypothesis).
struct HypothesisSpace {
  std::vector<std::string> hypotheses;
  std::vector<double> prior;
  std::map<std::string, std::vector<double>> likelihood;

  // ConfigError naming the offending field, hypothesis or event.
  void validate() const;
};

// JSON object with keys hypotheses, prior, likelihood. Parse and invariant
// problems both surface as IoError carrying the file name.
HypothesisSpace load_hypothesis_space(const std::filesystem::path& path);

// One conditioning pass. Throws ConfigError for an unknown event and
// ImpossibleEvidence(step) when the event has zero marginal probability
// under `prior`.
std::vector<double> posterior(const HypothesisSpace& space,
                              const std::vector<double>& prior,
                              const std::string& event, std::size_t step = 0);

struct UpdateStep {
  std::string event;
  double marginal = 0.0;
  std::vector<double> posterior;
  // Belief entering the step minus the posterior: negative entries mark
  // hypotheses the evidence favors. Sums to zero.
  std::vector<double> drop;
};

struct UpdateTrace {
  std::vector<UpdateStep> steps;
  std::vector<double> final;  // space.prior when events is empty
};

UpdateTrace sequential_update(const HypothesisSpace& space,
                              const std::vector<std::string>& events);

// Belief over individual programs after seeing that the output starts with
// z. Weights are exact dyadics over the common denominator `den`.
struct ProgramWeight {
  BitString program;
  BitString output;
  std::uint64_t weight_num = 0;  // 2^(L - |program|)
};

struct ProgramPosterior {
  BitString z;
  std::uint64_t den = 0;  // mass numerator of outputs extending z
  std::vector<ProgramWeight> entries;  // shortlex by program
  // Next-bit marginals over the same denominator; defect_num is the weight
  // of programs whose output is exactly z.
  std::uint64_t num0 = 0;
  std::uint64_t num1 = 0;
  std::uint64_t defect_num = 0;
};

// Requires a table built with program collection (ConfigError otherwise).
// Throws NoSupportError when nothing extends z.
ProgramPosterior program_posterior(const ProgramTable& table,
                                   const BitString& z);

}  // namespace aitlab
