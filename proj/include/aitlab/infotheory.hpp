#pragma once

#include <cstdint>
#include <optional>

#include "aitlab/bitstring.hpp"
#include "aitlab/enumeration.hpp"
#include "aitlab/table_cache.hpp"

namespace aitlab {

// Quantities derived from enumeration tables at fixed resources. All
// conditional quantities read the table whose condition is the given
// string; the empty condition is the unconditional table itself, so
// identities against the empty string hold exactly, not approximately.
//
// Estimates can be absent at small resources. Operations whose result
// needs an absent estimate (or a zero mass) throw InsufficientResources
// naming the missing term.

// Shortest-program length for x on the condition-y table, when present.
std::optional<std::uint32_t> conditional_khat(const BitString& x,
                                              const BitString& y,
                                              Resources res, TableCache& cache);

// khat(x) - khat(x|y): how much knowing y shortens the description of x.
// May be negative; never clamped.
std::int64_t mutual_info(const BitString& x, const BitString& y, Resources res,
                         TableCache& cache);

// Shortest-program length for the joint encoding pair_encode(x, y).
std::optional<std::uint32_t> joint_khat(const BitString& x, const BitString& y,
                                        Resources res, TableCache& cache);

// mutual_info(x, y) - mutual_info(y, x). Antisymmetric in its arguments;
// zero exactly when x == y.
std::int64_t symmetry_gap(const BitString& x, const BitString& y,
                          Resources res, TableCache& cache);

// joint_khat(x, y) - (khat(x) + conditional_khat(y|x)).
std::int64_t chain_gap(const BitString& x, const BitString& y, Resources res,
                       TableCache& cache);

// khat(x) + log2(mass(x)). Nonnegative because the shortest program alone
// contributes 2^-khat(x); exactly zero when that program is the only one.
double coding_gap(const BitString& x, Resources res, TableCache& cache);

// log2 m(x|y) - [log2 m(x) - log2 m(y) + log2 m(y|x)], the deviation from
// multiplicative mass symmetry. Computed from the exact mass numerators, so
// it is exactly zero whenever the numerator products coincide (x == y in
// particular).
double bayes_mass_gap(const BitString& x, const BitString& y, Resources res,
                      TableCache& cache);

struct InfoReport {
  BitString x, y;
  Resources res;
  std::uint32_t khat_x = 0, khat_y = 0;
  std::uint32_t khat_x_given_y = 0, khat_y_given_x = 0;
  std::uint32_t khat_joint = 0;
  // mass numerators at scale 2^L
  std::uint64_t mass_x = 0, mass_y = 0;
  std::uint64_t mass_x_given_y = 0, mass_y_given_x = 0;
  std::int64_t info_y_about_x = 0;  // khat_x - khat_x_given_y
  std::int64_t info_x_about_y = 0;  // khat_y - khat_y_given_x
  std::int64_t symmetry_gap = 0;    // info_y_about_x - info_x_about_y
  std::int64_t chain_gap_xy = 0;  // chain_gap(x, y); uses khat_joint
  std::int64_t chain_gap_yx = 0;  // chain_gap(y, x); uses the (y, x) joint
  double coding_gap_x = 0.0;
  double bayes_log_gap = 0.0;
};

// Every field populated; throws InsufficientResources naming the first
// missing term otherwise.
InfoReport make_info_report(const BitString& x, const BitString& y,
                            Resources res, TableCache& cache);

}  // namespace aitlab
