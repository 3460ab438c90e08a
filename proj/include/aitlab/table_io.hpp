#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "aitlab/enumeration.hpp"

namespace aitlab {

// Line-oriented UTF-8 table file:
//
//   AITLAB-TABLE 1
//   isa=1 L=<int> T=<int> cond=<01-string or ->
//   <output or -> <min_len> <mass_numerator> <witness>   (one line per record,
//                                                         shortlex by output)
//   TOTAL <total_mass_numerator>
//
// `-` stands for the empty string; the mass denominator is implicitly 2^L.
// Serialization is deterministic: equal tables produce identical bytes.

void save_table(const ProgramTable& table, std::ostream& os);
void save_table(const ProgramTable& table, const std::filesystem::path& path);

// Parse only; no invariant verification beyond well-formedness.
ProgramTable load_table_raw(std::istream& is, const std::string& source);
ProgramTable load_table_raw(const std::filesystem::path& path);

// Throws IoError naming the violated invariant: parameter validity, the
// Kraft bound (total mass numerator <= 2^L), the total matching the record
// sum, per-record mass lower bounds, and each witness reproducing its
// output when re-run under the table's condition and budget.
void verify_table(const ProgramTable& table, const std::string& source);

// load_table_raw followed by verify_table.
ProgramTable load_table(const std::filesystem::path& path);

}  // namespace aitlab
