#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aitlab/enumeration.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/table_cache.hpp"
#include "aitlab/table_io.hpp"
#include "support/census_oracle.hpp"

using namespace aitlab;
using aitlab::testing::census_oracle;
using aitlab::testing::OracleCensus;

namespace {

void check_matches_oracle(const ProgramTable& table, const OracleCensus& oracle,
                          bool compare_programs) {
  REQUIRE(table.records.size() == oracle.records.size());
  for (const auto& [output, want] : oracle.records) {
    const OutputRecord* got = table.find(output);
    REQUIRE(got != nullptr);
    CHECK(got->min_len == want.min_len);
    CHECK(got->mass.numerator == want.mass_num);
    CHECK(got->witness == want.witness);
    CHECK(got->program_count == want.count);
    if (compare_programs) CHECK(got->programs == want.programs);
  }
  CHECK(table.total_mass.numerator == oracle.total_num);
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(enumerate_programs({5, 100, {}, 1}), ConfigError);
  CHECK_THROWS_AS(enumerate_programs({6, 0, {}, 1}), ConfigError);
  CHECK_THROWS_AS(enumerate_programs({63, 100, {}, 1}), ConfigError);
  CHECK_THROWS_AS(enumerate_programs({6, 100, {}, 2}), ConfigError);
}

TEST_CASE("census at L=3") {
  ProgramTable t = enumerate_programs({3, 100, {}, 1});
  REQUIRE(t.records.size() == 1);
  const OutputRecord* r = t.find({});
  REQUIRE(r != nullptr);
  CHECK(r->min_len == 3);
  CHECK(r->mass == DyadicMass{1, 3});
  CHECK(r->witness == BitString::parse("000"));
  CHECK(t.total_mass == DyadicMass{1, 3});
  CHECK(t.total_mass.value() == 0.125);
  check_matches_oracle(t, census_oracle(3, 100), false);
}

TEST_CASE("census at L=6 lists six programs across two outputs") {
  ProgramTable t = enumerate_programs({6, 100, {}, 1}, {1, true});
  REQUIRE(t.records.size() == 2);

  const OutputRecord* empty_rec = t.find({});
  REQUIRE(empty_rec != nullptr);
  CHECK(empty_rec->min_len == 3);
  CHECK(empty_rec->mass.numerator == 11);  // 2^-3 + 3*2^-6 at scale 2^6
  CHECK(empty_rec->witness == BitString::parse("000"));
  CHECK(empty_rec->program_count == 4);
  CHECK(empty_rec->programs ==
        std::vector<BitString>{
            BitString::parse("000"), BitString::parse("010000"),
            BitString::parse("011000"), BitString::parse("100000")});

  const OutputRecord* zero_rec = t.find(BitString{0});
  REQUIRE(zero_rec != nullptr);
  CHECK(zero_rec->min_len == 6);
  CHECK(zero_rec->mass.numerator == 2);
  CHECK(zero_rec->witness == BitString::parse("001000"));
  CHECK(zero_rec->programs ==
        std::vector<BitString>{BitString::parse("001000"),
                               BitString::parse("111000")});

  CHECK(t.khat({}) == 3);
  CHECK(t.khat(BitString{0}) == 6);
  CHECK_FALSE(t.khat(BitString{1}).has_value());
  CHECK(t.mass(BitString{1}).is_zero());
  CHECK(t.total_mass.numerator == 13);
  CHECK(t.total_mass.fraction() == "13/2^6");
  CHECK(t.halting_program_count() == 6);
}

TEST_CASE("a condition leaves tape-blind programs untouched") {
  ProgramTable t = enumerate_programs({3, 100, BitString{1}, 1});
  const OutputRecord* r = t.find({});
  REQUIRE(r != nullptr);
  CHECK(r->witness == BitString::parse("000"));
  CHECK(t.total_mass.numerator >= 1);
  check_matches_oracle(t, census_oracle(3, 100, BitString{1}), false);
}

TEST_CASE("enumerator matches the brute-force oracle up to L=9") {
  for (const BitString& cond :
       {BitString{}, BitString{0}, BitString{1}, BitString{1, 0}}) {
    for (std::uint32_t L : {3u, 6u, 9u}) {
      ProgramTable t = enumerate_programs({L, 64, cond, 1}, {1, true});
      check_matches_oracle(t, census_oracle(L, 64, cond), true);
    }
  }
}

TEST_CASE("halting programs form a prefix-free set at L=12") {
  ProgramTable t = enumerate_programs({12, 256, {}, 1}, {1, true});
  std::vector<BitString> programs;
  for (const auto& [output, rec] : t.records)
    programs.insert(programs.end(), rec.programs.begin(),
                    rec.programs.end());
  // lexicographic with prefixes first makes any prefix pair adjacent
  std::sort(programs.begin(), programs.end(),
            [](const BitString& a, const BitString& b) {
              std::size_t n = std::min(a.size(), b.size());
              for (std::size_t i = 0; i < n; ++i)
                if (a.bit(i) != b.bit(i)) return a.bit(i) < b.bit(i);
              return a.size() < b.size();
            });
  for (std::size_t i = 0; i + 1 < programs.size(); ++i) {
    CAPTURE(i);
    CHECK_FALSE(programs[i].is_prefix_of(programs[i + 1]));
  }
  CHECK(t.total_mass.numerator <= (1ull << 12));
}

TEST_CASE("growing resources keeps outputs, shrinks khat, grows mass") {
  ProgramTable small = enumerate_programs({6, 100, {}, 1});
  ProgramTable mid = enumerate_programs({12, 256, {}, 1});
  ProgramTable large = enumerate_programs({21, 256, {}, 1});
  auto check_pair = [](const ProgramTable& lo, const ProgramTable& hi) {
    std::uint32_t shift =
        hi.params.max_program_bits - lo.params.max_program_bits;
    for (const auto& [output, rec] : lo.records) {
      const OutputRecord* up = hi.find(output);
      REQUIRE(up != nullptr);
      CHECK(up->min_len <= rec.min_len);
      CHECK(up->mass.numerator >= rec.mass.numerator << shift);
    }
  };
  check_pair(small, mid);
  check_pair(mid, large);
  check_pair(small, large);
}

TEST_CASE("worker count never changes the table") {
  EnumParams params{12, 256, {}, 1};
  ProgramTable base = enumerate_programs(params, {1, false});
  for (unsigned workers : {2u, 3u, 8u}) {
    ProgramTable t = enumerate_programs(params, {workers, false});
    CHECK(t.records == base.records);
    CHECK(t.total_mass == base.total_mass);
  }
}

// program_count and the programs list are not serialized, so round-trip
// comparisons go through the serialized fields, not OutputRecord equality.
void check_serialized_fields(const ProgramTable& back, const ProgramTable& t) {
  CHECK(back.params == t.params);
  CHECK(back.total_mass == t.total_mass);
  REQUIRE(back.records.size() == t.records.size());
  for (const auto& [output, rec] : t.records) {
    const OutputRecord* got = back.find(output);
    REQUIRE(got != nullptr);
    CHECK(got->min_len == rec.min_len);
    CHECK(got->mass == rec.mass);
    CHECK(got->witness == rec.witness);
  }
}

TEST_CASE("tables round-trip through the text format") {
  ProgramTable t = enumerate_programs({6, 100, {}, 1});
  std::ostringstream out;
  save_table(t, out);
  std::istringstream in(out.str());
  ProgramTable back = load_table_raw(in, "buffer");
  verify_table(back, "buffer");
  check_serialized_fields(back, t);

  std::ostringstream again;
  save_table(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("file round-trip") {
  auto path = temp_file("aitlab_roundtrip.tbl");
  ProgramTable t = enumerate_programs({6, 100, BitString{1, 0}, 1});
  save_table(t, path);
  ProgramTable back = load_table(path);
  check_serialized_fields(back, t);
  std::filesystem::remove(path);
}

TEST_CASE("verification names the violated invariant") {
  auto load_text = [](const std::string& text) {
    std::istringstream in(text);
    ProgramTable t = load_table_raw(in, "buffer");
    verify_table(t, "buffer");
    return t;
  };
  const std::string good =
      "AITLAB-TABLE 1\n"
      "isa=1 L=6 T=100 cond=-\n"
      "- 3 11 000\n"
      "0 6 2 001000\n"
      "TOTAL 13\n";
  CHECK_NOTHROW(load_text(good));

  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n- 3 65 000\n"
                "TOTAL 65\n"),
      doctest::Contains("Kraft"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n- 3 11 000\n"
                "TOTAL 12\n"),
      doctest::Contains("does not match record sum"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n- 3 1 000\n"
                "TOTAL 1\n"),
      doctest::Contains("below the witness contribution"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n1 6 2 001000\n"
                "TOTAL 2\n"),
      doctest::Contains("witness"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n- 4 11 0000\n"
                "TOTAL 11\n"),
      doctest::Contains("min_len"), IoError);
  CHECK_THROWS_WITH_AS(load_text("AITLAB-TABLE 2\n"),
                       doctest::Contains("header"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=6 T=100 cond=-\n- 3 11 000\n"
                "- 3 11 000\nTOTAL 22\n"),
      doctest::Contains("duplicate"), IoError);
  CHECK_THROWS_WITH_AS(
      load_text("AITLAB-TABLE 1\nisa=1 L=7 T=100 cond=-\nTOTAL 0\n"),
      doctest::Contains("invalid parameters"), IoError);
}

TEST_CASE("cache reuses built tables and honors the no-build mode") {
  auto dir = std::filesystem::temp_directory_path() / "aitlab_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  EnumParams params{6, 100, BitString{1}, 1};
  {
    TableCache cache;
    cache.set_disk_dir(dir);
    auto t = cache.get(params);
    CHECK(t->total_mass.numerator >= 1);
    CHECK(std::filesystem::exists(dir / TableCache::file_name(params)));
    CHECK(cache.get(params).get() == t.get());  // memory hit
  }
  {
    TableCache cache;
    cache.set_disk_dir(dir, false);
    CHECK(cache.get(params)->params == params);  // disk hit
    CHECK_THROWS_AS(cache.get(EnumParams{6, 101, BitString{1}, 1}), IoError);
  }
  {
    TableCache cache;  // no disk layer: build in memory
    CHECK(cache.get(params)->params == params);
  }
  std::filesystem::remove_all(dir);
}
