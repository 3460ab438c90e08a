#include "aitlab/infotheory.hpp"

#include <bit>
#include <cmath>

#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

namespace {

std::string show(const BitString& s) { return s.empty() ? "-" : s.str(); }

const ProgramTable& table_for(Resources res, const BitString& condition,
                              TableCache& cache,
                              std::shared_ptr<const ProgramTable>& hold) {
  hold = cache.get(with_condition(res, condition));
  return *hold;
}

std::uint32_t require_khat(const ProgramTable& t, const BitString& x,
                           const std::string& term) {
  auto k = t.khat(x);
  if (!k)
    throw InsufficientResources(
        term, term + " absent at L=" +
                  std::to_string(t.params.max_program_bits) +
                  ", T=" + std::to_string(t.params.step_budget) + " for " +
                  show(x));
  return *k;
}

std::uint64_t require_mass(const ProgramTable& t, const BitString& x,
                           const std::string& term) {
  DyadicMass m = t.mass(x);
  if (m.is_zero())
    throw InsufficientResources(
        term, term + " is zero at L=" +
                  std::to_string(t.params.max_program_bits) +
                  ", T=" + std::to_string(t.params.step_budget) + " for " +
                  show(x));
  return m.numerator;
}

// Exact for every uint64 (long double carries a >= 64-bit significand on
// the supported targets; the u128 product below fits 120 bits, whose
// rounding error is far below the 1e-12 reporting precision).
double log2_u128(unsigned __int128 v) {
  return static_cast<double>(std::log2(static_cast<long double>(v)));
}

}  // namespace

std::optional<std::uint32_t> conditional_khat(const BitString& x,
                                              const BitString& y,
                                              Resources res,
                                              TableCache& cache) {
  std::shared_ptr<const ProgramTable> hold;
  return table_for(res, y, cache, hold).khat(x);
}

std::int64_t mutual_info(const BitString& x, const BitString& y, Resources res,
                         TableCache& cache) {
  std::shared_ptr<const ProgramTable> h1, h2;
  const ProgramTable& uncond = table_for(res, BitString{}, cache, h1);
  const ProgramTable& given_y = table_for(res, y, cache, h2);
  std::int64_t kx = require_khat(uncond, x, "khat_x");
  std::int64_t kxy = require_khat(given_y, x, "khat_x_given_y");
  return kx - kxy;
}

std::optional<std::uint32_t> joint_khat(const BitString& x, const BitString& y,
                                        Resources res, TableCache& cache) {
  std::shared_ptr<const ProgramTable> hold;
  return table_for(res, BitString{}, cache, hold).khat(pair_encode(x, y));
}

std::int64_t symmetry_gap(const BitString& x, const BitString& y,
                          Resources res, TableCache& cache) {
  return mutual_info(x, y, res, cache) - mutual_info(y, x, res, cache);
}

std::int64_t chain_gap(const BitString& x, const BitString& y, Resources res,
                       TableCache& cache) {
  std::shared_ptr<const ProgramTable> h1, h2;
  const ProgramTable& uncond = table_for(res, BitString{}, cache, h1);
  const ProgramTable& given_x = table_for(res, x, cache, h2);
  std::int64_t joint = require_khat(uncond, pair_encode(x, y), "khat_joint");
  std::int64_t kx = require_khat(uncond, x, "khat_x");
  std::int64_t kyx = require_khat(given_x, y, "khat_y_given_x");
  return joint - (kx + kyx);
}

double coding_gap(const BitString& x, Resources res, TableCache& cache) {
  std::shared_ptr<const ProgramTable> hold;
  const ProgramTable& uncond = table_for(res, BitString{}, cache, hold);
  std::uint32_t k = require_khat(uncond, x, "khat_x");
  std::uint64_t num = uncond.mass(x).numerator;
  std::uint32_t L = res.max_program_bits;
  if (std::has_single_bit(num)) {
    // power-of-two mass: the gap is an exact integer
    auto e = static_cast<std::int64_t>(std::countr_zero(num));
    return static_cast<double>(static_cast<std::int64_t>(k) + e -
                               static_cast<std::int64_t>(L));
  }
  long double lg = std::log2(static_cast<long double>(num));
  return static_cast<double>(static_cast<long double>(k) + lg -
                             static_cast<long double>(L));
}

double bayes_mass_gap(const BitString& x, const BitString& y, Resources res,
                      TableCache& cache) {
  std::shared_ptr<const ProgramTable> h1, h2, h3;
  const ProgramTable& uncond = table_for(res, BitString{}, cache, h1);
  const ProgramTable& given_y = table_for(res, y, cache, h2);
  const ProgramTable& given_x = table_for(res, x, cache, h3);
  std::uint64_t m_x_given_y = require_mass(given_y, x, "mass_x_given_y");
  std::uint64_t m_x = require_mass(uncond, x, "mass_x");
  std::uint64_t m_y = require_mass(uncond, y, "mass_y");
  std::uint64_t m_y_given_x = require_mass(given_x, y, "mass_y_given_x");
  // All four masses share the scale 2^L, so the gap reduces to the log of a
  // ratio of two u128 products; equal products give exactly zero.
  unsigned __int128 num = static_cast<unsigned __int128>(m_x_given_y) * m_y;
  unsigned __int128 den = static_cast<unsigned __int128>(m_x) * m_y_given_x;
  if (num == den) return 0.0;
  return log2_u128(num) - log2_u128(den);
}

InfoReport make_info_report(const BitString& x, const BitString& y,
                            Resources res, TableCache& cache) {
  std::shared_ptr<const ProgramTable> h1, h2, h3;
  const ProgramTable& uncond = table_for(res, BitString{}, cache, h1);
  const ProgramTable& given_y = table_for(res, y, cache, h2);
  const ProgramTable& given_x = table_for(res, x, cache, h3);

  InfoReport r;
  r.x = x;
  r.y = y;
  r.res = res;
  r.khat_x = require_khat(uncond, x, "khat_x");
  r.khat_y = require_khat(uncond, y, "khat_y");
  r.khat_x_given_y = require_khat(given_y, x, "khat_x_given_y");
  r.khat_y_given_x = require_khat(given_x, y, "khat_y_given_x");
  r.khat_joint = require_khat(uncond, pair_encode(x, y), "khat_joint");
  r.mass_x = uncond.mass(x).numerator;
  r.mass_y = uncond.mass(y).numerator;
  r.mass_x_given_y = given_y.mass(x).numerator;
  r.mass_y_given_x = given_x.mass(y).numerator;
  r.info_y_about_x =
      static_cast<std::int64_t>(r.khat_x) - r.khat_x_given_y;
  r.info_x_about_y =
      static_cast<std::int64_t>(r.khat_y) - r.khat_y_given_x;
  r.symmetry_gap = r.info_y_about_x - r.info_x_about_y;
  r.chain_gap_xy = static_cast<std::int64_t>(r.khat_joint) -
                   (static_cast<std::int64_t>(r.khat_x) + r.khat_y_given_x);
  // swapped-argument gap; pair_encode is order-sensitive, so this needs the
  // joint of (y, x), not the one above
  std::int64_t joint_yx =
      require_khat(uncond, pair_encode(y, x), "khat_joint_yx");
  r.chain_gap_yx =
      joint_yx - (static_cast<std::int64_t>(r.khat_y) + r.khat_x_given_y);
  r.coding_gap_x = coding_gap(x, res, cache);
  r.bayes_log_gap = bayes_mass_gap(x, y, res, cache);
  return r;
}

}  // namespace aitlab
