#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aitlab/bayes.hpp"
#include "aitlab/bitstring.hpp"
#include "aitlab/corpus.hpp"
#include "aitlab/enumeration.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/infotheory.hpp"
#include "aitlab/lz78.hpp"
#include "aitlab/predictor.hpp"
#include "aitlab/table_cache.hpp"
#include "aitlab/table_io.hpp"

namespace {

using aitlab::BitString;
using ordered_json = nlohmann::ordered_json;

// "-" means the empty string, "@path" loads a .bits file.
BitString bits_arg(const std::string& v) {
  if (v == "-") return {};
  if (!v.empty() && v[0] == '@')
    return aitlab::load_bits_file(v.substr(1));
  return BitString::parse(v);
}

std::string show(const BitString& s) { return s.empty() ? "-" : s.str(); }

double log2_mass(std::uint64_t num, std::uint32_t L) {
  return static_cast<double>(std::log2(static_cast<long double>(num)) -
                             static_cast<long double>(L));
}

std::string mass_str(std::uint64_t num, std::uint32_t L) {
  return std::to_string(num) + "/2^" + std::to_string(L);
}

struct EnumerateArgs {
  std::uint32_t L = 21;
  std::uint64_t T = 256;
  std::string cond = "-";
  std::string out;
  unsigned workers = 1;
};

int run_enumerate(const EnumerateArgs& a) {
  aitlab::EnumParams params{a.L, a.T, bits_arg(a.cond), 1};
  params.validate();
  auto start = std::chrono::steady_clock::now();
  aitlab::ProgramTable table =
      aitlab::enumerate_programs(params, {a.workers, false});
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  aitlab::save_table(table, std::filesystem::path(a.out));
  std::cout << "outputs=" << table.records.size()
            << " programs=" << table.halting_program_count()
            << " total=" << table.total_mass.fraction() << " seconds="
            << dt.count() << "\n"
            << "wrote " << a.out << "\n";
  return 0;
}

struct InfoArgs {
  std::string table;
  std::string x, y;
  std::string cond_tables = "auto";
  unsigned workers = 1;
};

int run_info(const InfoArgs& a) {
  auto base = std::make_shared<aitlab::ProgramTable>(
      aitlab::load_table(a.table));
  if (!base->params.condition.empty())
    throw aitlab::ConfigError(
        "info needs an unconditional base table, got cond=" +
        base->params.condition.str());
  aitlab::Resources res = base->params.resources();

  aitlab::TableCache cache({a.workers, false});
  cache.seed(base);
  std::filesystem::path cache_dir;
  if (const char* env = std::getenv("AITLAB_CACHE_DIR"))
    cache_dir = env;
  else
    cache_dir = std::filesystem::path(a.table).parent_path();
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);
  cache.set_disk_dir(cache_dir, a.cond_tables == "auto");

  BitString x = bits_arg(a.x), y = bits_arg(a.y);
  aitlab::InfoReport r = aitlab::make_info_report(x, y, res, cache);

  std::uint32_t L = res.max_program_bits;
  ordered_json j;
  j["params"] = {{"isa", 1},
                 {"L", L},
                 {"T", res.step_budget},
                 {"cond", "-"}};
  j["x"] = show(x);
  j["y"] = show(y);
  j["khat"] = {{"x", r.khat_x},
               {"y", r.khat_y},
               {"x_given_y", r.khat_x_given_y},
               {"y_given_x", r.khat_y_given_x},
               {"joint", r.khat_joint}};
  j["mass"] = {{"x", mass_str(r.mass_x, L)},
               {"y", mass_str(r.mass_y, L)},
               {"x_given_y", mass_str(r.mass_x_given_y, L)},
               {"y_given_x", mass_str(r.mass_y_given_x, L)}};
  j["log2_mass"] = {{"x", log2_mass(r.mass_x, L)},
                    {"y", log2_mass(r.mass_y, L)},
                    {"x_given_y", log2_mass(r.mass_x_given_y, L)},
                    {"y_given_x", log2_mass(r.mass_y_given_x, L)}};
  j["info"] = {{"y_about_x", r.info_y_about_x},
               {"x_about_y", r.info_x_about_y}};
  j["gaps"] = {{"symmetry", r.symmetry_gap},
               {"chain_xy", r.chain_gap_xy},
               {"chain_yx", r.chain_gap_yx},
               {"coding_x", r.coding_gap_x},
               {"bayes_log", r.bayes_log_gap}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct PredictArgs {
  std::string table;
  std::string stream;
};

int run_predict(const PredictArgs& a) {
  auto table = std::make_shared<aitlab::ProgramTable>(
      aitlab::load_table(a.table));
  aitlab::PredictiveModel model(table);
  aitlab::SequentialReport rep = model.sequential_report(bits_arg(a.stream));
  aitlab::write_sequential_csv(std::cout, rep);
  return 0;
}

struct BayesArgs {
  std::string space;
  std::vector<std::string> evidence;
};

int run_bayes(const BayesArgs& a) {
  aitlab::HypothesisSpace space = aitlab::load_hypothesis_space(a.space);
  std::vector<std::string> events;
  for (const std::string& chunk : a.evidence) {
    std::size_t start = 0;
    while (start <= chunk.size()) {
      std::size_t comma = chunk.find(',', start);
      std::string ev = chunk.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      if (!ev.empty()) events.push_back(ev);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  aitlab::UpdateTrace trace = aitlab::sequential_update(space, events);
  ordered_json j;
  j["hypotheses"] = space.hypotheses;
  j["prior"] = space.prior;
  j["steps"] = ordered_json::array();
  for (const aitlab::UpdateStep& st : trace.steps)
    j["steps"].push_back({{"event", st.event},
                          {"marginal", st.marginal},
                          {"posterior", st.posterior},
                          {"drop", st.drop}});
  j["final"] = trace.final;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct LzArgs {
  std::string x, y;
  std::string corpus_dir;
};

int run_lz_cost(const LzArgs& a) {
  BitString x = bits_arg(a.x);
  ordered_json j;
  j["x_bits"] = x.size();
  j["cost"] = aitlab::lz_cost(x);
  if (!a.y.empty()) {
    BitString y = bits_arg(a.y);
    j["y_bits"] = y.size();
    j["cost_given_y"] = aitlab::lz_cost_cond(x, y);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_lz_info(const LzArgs& a) {
  BitString x = bits_arg(a.x), y = bits_arg(a.y);
  ordered_json j;
  j["cost_x"] = aitlab::lz_cost(x);
  j["cost_x_given_y"] = aitlab::lz_cost_cond(x, y);
  j["info"] = aitlab::lz_info(x, y);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_lz_ncd(const LzArgs& a) {
  BitString x = bits_arg(a.x), y = bits_arg(a.y);
  ordered_json j;
  j["ncd_xy"] = aitlab::lz_ncd(x, y);
  j["ncd_yx"] = aitlab::lz_ncd(y, x);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_lz_matrix(const LzArgs& a) {
  std::vector<aitlab::CorpusItem> items =
      a.corpus_dir.empty() ? aitlab::builtin_corpus()
                           : aitlab::load_corpus_dir(a.corpus_dir);
  std::cout << "name";
  for (const auto& it : items) std::cout << ',' << it.name;
  std::cout << "\n";
  for (const auto& row : items) {
    std::cout << row.name;
    for (const auto& col : items) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f",
                    aitlab::lz_ncd(row.bits, col.bits));
      std::cout << ',' << buf;
    }
    std::cout << "\n";
  }
  return 0;
}

struct CheckArgs {
  std::string table;
};

// Lexicographic with prefixes first, so any prefix pair becomes adjacent.
bool lex_less(const BitString& a, const BitString& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.bit(i) != b.bit(i)) return a.bit(i) < b.bit(i);
  return a.size() < b.size();
}

int run_check(const CheckArgs& a) {
  aitlab::ProgramTable table =
      aitlab::load_table_raw(std::filesystem::path(a.table));
  std::string kraft = "ok", prefixfree = "ok", witnesses = "ok";
  std::string detail;
  try {
    aitlab::verify_table(table, a.table);
  } catch (const aitlab::IoError& e) {
    detail = e.what();
    std::string what = detail;
    if (what.find("witness") != std::string::npos)
      witnesses = "FAIL";
    else
      kraft = "FAIL";
  }
  if (table.params.max_program_bits <= 12 && detail.empty()) {
    aitlab::ProgramTable fresh =
        aitlab::enumerate_programs(table.params, {1, true});
    std::vector<BitString> programs;
    for (const auto& [output, rec] : fresh.records)
      programs.insert(programs.end(), rec.programs.begin(),
                      rec.programs.end());
    std::sort(programs.begin(), programs.end(), lex_less);
    for (std::size_t i = 0; i + 1 < programs.size(); ++i)
      if (programs[i].is_prefix_of(programs[i + 1])) {
        prefixfree = "FAIL";
        detail = "program " + programs[i].str() + " is a prefix of " +
                 programs[i + 1].str();
        break;
      }
    if (prefixfree == "ok") {
      for (const auto& [output, rec] : fresh.records) {
        // program_count is not serialized, so it is not compared here
        const aitlab::OutputRecord* got = table.find(output);
        if (!got || got->min_len != rec.min_len || got->mass != rec.mass ||
            got->witness != rec.witness) {
          kraft = "FAIL";
          detail = "record for " + show(output) +
                   " disagrees with a fresh enumeration";
          break;
        }
      }
      if (kraft == "ok" && table.records.size() != fresh.records.size()) {
        kraft = "FAIL";
        detail = "table has records a fresh enumeration lacks";
      }
    }
  } else if (detail.empty()) {
    prefixfree = "skipped";
  }
  std::cout << "kraft=" << kraft << " prefixfree=" << prefixfree
            << " witnesses=" << witnesses << "\n";
  if (!detail.empty()) {
    std::cerr << detail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact program-length and halting-mass laboratory"};
  app.require_subcommand(1);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand(
      "enumerate", "Census all halting programs up to a length cap");
  enumerate->add_option("--L", ea.L, "Program length cap in bits")
      ->required();
  enumerate->add_option("--T", ea.T, "Step budget per program")->required();
  enumerate->add_option("--cond", ea.cond,
                        "Condition bits preloaded on the tape ('-' = none)");
  enumerate->add_option("--out", ea.out, "Output table file")->required();
  enumerate->add_option("--workers", ea.workers, "Worker threads")
      ->check(CLI::Range(1u, 64u));

  InfoArgs ia;
  auto* info = app.add_subcommand(
      "info", "Description-length and mass report for a pair of strings");
  info->add_option("--table", ia.table, "Unconditional table file")
      ->required();
  info->add_option("--x", ia.x, "First string ('-' = empty, '@file' = load)")
      ->required();
  info->add_option("--y", ia.y, "Second string")->required();
  info->add_option("--cond-tables", ia.cond_tables,
                   "auto: build missing conditional tables; require: fail")
      ->check(CLI::IsMember({"auto", "require"}));
  info->add_option("--workers", ia.workers, "Worker threads")
      ->check(CLI::Range(1u, 64u));

  PredictArgs pa;
  auto* predict = app.add_subcommand(
      "predict", "Sequential next-bit forecast CSV from a table");
  predict->add_option("--table", pa.table, "Table file")->required();
  predict->add_option("--stream", pa.stream, "Bit stream to score")
      ->required();

  BayesArgs ba;
  auto* bayes = app.add_subcommand(
      "bayes", "Posterior trace over an explicit hypothesis space");
  bayes->add_option("--space", ba.space, "Hypothesis space JSON file")
      ->required();
  bayes->add_option("--evidence", ba.evidence,
                    "Comma-separated event names (repeatable)")
      ->required();

  LzArgs la;
  auto* lz = app.add_subcommand("lz", "Dictionary-coder estimates");
  lz->require_subcommand(1);
  auto* lz_cost_cmd = lz->add_subcommand("cost", "Code length of x");
  lz_cost_cmd->add_option("--x", la.x, "Input bits")->required();
  lz_cost_cmd->add_option("--y", la.y, "Optional conditioning bits");
  auto* lz_info_cmd =
      lz->add_subcommand("info", "Bits saved on x by knowing y");
  lz_info_cmd->add_option("--x", la.x, "Input bits")->required();
  lz_info_cmd->add_option("--y", la.y, "Conditioning bits")->required();
  auto* lz_ncd_cmd =
      lz->add_subcommand("ncd", "Normalized distance, both orders");
  lz_ncd_cmd->add_option("--x", la.x, "First string")->required();
  lz_ncd_cmd->add_option("--y", la.y, "Second string")->required();
  auto* lz_matrix_cmd =
      lz->add_subcommand("matrix", "Pairwise distance CSV over a corpus");
  lz_matrix_cmd->add_option("--corpus", la.corpus_dir,
                            "Directory of .bits files (default: built-in)");

  CheckArgs ca;
  auto* check = app.add_subcommand(
      "check", "Verify a table file: Kraft bound, prefix-freeness, witnesses");
  check->add_option("--table", ca.table, "Table file")->required();

  try {
    app.parse(argc, argv);
    if (enumerate->parsed()) return run_enumerate(ea);
    if (info->parsed()) return run_info(ia);
    if (predict->parsed()) return run_predict(pa);
    if (bayes->parsed()) return run_bayes(ba);
    if (lz->parsed()) {
      if (lz_cost_cmd->parsed()) return run_lz_cost(la);
      if (lz_info_cmd->parsed()) return run_lz_info(la);
      if (lz_ncd_cmd->parsed()) return run_lz_ncd(la);
      if (lz_matrix_cmd->parsed()) return run_lz_matrix(la);
    }
    if (check->parsed()) return run_check(ca);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const aitlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const aitlab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const aitlab::InsufficientResources& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const aitlab::NoSupportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const aitlab::ImpossibleEvidence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
