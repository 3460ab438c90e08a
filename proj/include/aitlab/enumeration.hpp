#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"

namespace aitlab {

// Resource bounds for an enumeration: program length cap in bits and the
// per-run step budget.
struct Resources {
  std::uint32_t max_program_bits = 21;  // L; multiple of 3, 3..60
  std::uint64_t step_budget = 256;      // T; >= 1
  bool operator==(const Resources&) const = default;
};

// Full key of one enumeration: resources plus the condition preloaded on
// the tape. The isa version pins the opcode set for serialized tables.
struct EnumParams {
  std::uint32_t max_program_bits = 21;
  std::uint64_t step_budget = 256;
  BitString condition;
  std::uint32_t isa_version = 1;

  void validate() const;  // throws ConfigError
  std::string cache_key() const;
  Resources resources() const { return {max_program_bits, step_budget}; }
  bool operator==(const EnumParams&) const = default;
};

inline EnumParams with_condition(Resources r, BitString condition) {
  return EnumParams{r.max_program_bits, r.step_budget, std::move(condition), 1};
}

// Exact dyadic rational numerator/2^scale. Numerators stay below 2^60 for
// every supported scale, so plain 64-bit arithmetic is exact throughout.
struct DyadicMass {
  std::uint64_t numerator = 0;
  std::uint32_t scale = 0;

  double value() const;
  std::string fraction() const;  // "13/2^6"
  bool is_zero() const { return numerator == 0; }
  bool operator==(const DyadicMass&) const = default;
};

// Aggregate over all halting programs producing one output string.
struct OutputRecord {
  BitString output;
  std::uint32_t min_len = 0;      // length of the shortest program, bits
  DyadicMass mass;                // sum of 2^-len over all programs
  BitString witness;              // lexicographically smallest shortest program
  std::uint64_t program_count = 0;
  // All halting programs for this output, shortlex-sorted. Filled only when
  // the enumeration was asked to collect them; never serialized.
  std::vector<BitString> programs;

  bool operator==(const OutputRecord&) const = default;
};

// Census of every program that halts consuming all of its bits within the
// given bounds, grouped by output. Record keys are shortlex-ordered.
struct ProgramTable {
  EnumParams params;
  std::map<BitString, OutputRecord> records;
  DyadicMass total_mass;
  bool with_programs = false;

  const OutputRecord* find(const BitString& x) const;
  // Length of the shortest program producing x, when any exists.
  std::optional<std::uint32_t> khat(const BitString& x) const;
  // Exact halting mass of output x; zero numerator when absent.
  DyadicMass mass(const BitString& x) const;
  std::uint64_t halting_program_count() const;
};

struct EnumOptions {
  unsigned workers = 1;
  bool collect_programs = false;
};

// Depth-first exploration of the bit-demand tree: snapshot the machine at
// every opcode fetch, branch over the eight continuations, prune branches
// that exceed the length cap, the step budget, or turn invalid. The result
// is independent of exploration order and of the worker partitioning.
ProgramTable enumerate_programs(const EnumParams& params,
                                const EnumOptions& opts = {});

}  // namespace aitlab
