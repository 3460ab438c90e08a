#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/enumeration.hpp"

namespace aitlab {

// Next-bit forecast from the halting mass above a context. All numerators
// share the table scale 2^L, so den = num0 + num1 + defect_num holds exactly.
struct Prediction {
  std::uint64_t num0 = 0;        // mass of outputs extending context·0
  std::uint64_t num1 = 0;        // mass of outputs extending context·1
  std::uint64_t defect_num = 0;  // mass of outputs equal to the context
  std::uint64_t den = 0;         // mass of outputs extending the context

  double p0() const;
  double p1() const;
  double defect() const;
};

struct SequentialRow {
  std::size_t pos = 0;
  int observed = 0;
  bool supported = false;  // context carries halting mass
  Prediction pred;         // valid only when supported
  bool scored = false;     // counted into logloss_cum
  double logloss_cum = 0.0;
};

struct SequentialReport {
  BitString stream;
  std::vector<SequentialRow> rows;
  std::size_t scored_positions = 0;
  double logloss_total = 0.0;
};

// Prefix-sum view of a program table: for every context s, the combined mass
// numerator of all outputs having s as a prefix. Built once, queried often.
class PredictiveModel {
 public:
  explicit PredictiveModel(std::shared_ptr<const ProgramTable> table);

  const ProgramTable& table() const { return *table_; }

  // Mass numerator of outputs extending s (including s itself).
  std::uint64_t extension_mass(const BitString& s) const;

  // Throws NoSupportError when the context has zero extension mass.
  Prediction predict(const BitString& context) const;

  // One row per stream position. A position is scored while every earlier
  // observation had positive probability; the first zero-probability
  // observation ends scoring for good (all later contexts are unsupported).
  SequentialReport sequential_report(const BitString& stream) const;

 private:
  std::shared_ptr<const ProgramTable> table_;
  std::map<BitString, std::uint64_t> prefix_mass_;
};

// CSV with header pos,observed,p0,p1,defect,logloss_cum,scored.
// Probability fields are blank on unsupported rows, logloss_cum is blank on
// unscored rows.
void write_sequential_csv(std::ostream& os, const SequentialReport& report);

}  // namespace aitlab
