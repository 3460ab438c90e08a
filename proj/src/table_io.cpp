#include "aitlab/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <variant>
#include <vector>

#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

namespace {

constexpr std::string_view kMagic = "AITLAB-TABLE 1";

std::string show(const BitString& s) { return s.empty() ? "-" : s.str(); }

BitString read_bits_field(std::string_view tok, const std::string& where) {
  if (tok == "-") return BitString{};
  try {
    return BitString::parse(tok);
  } catch (const ConfigError& e) {
    throw IoError(where + ": " + e.what());
  }
}

std::uint64_t read_uint_field(std::string_view tok, const std::string& where) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw IoError(where + ": expected unsigned integer, got '" +
                  std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_prefix(std::string_view tok, std::string_view key,
                              const std::string& where) {
  if (tok.substr(0, key.size()) != key)
    throw IoError(where + ": expected '" + std::string(key) + "...', got '" +
                  std::string(tok) + "'");
  return tok.substr(key.size());
}

}  // namespace

void save_table(const ProgramTable& table, std::ostream& os) {
  const EnumParams& p = table.params;
  os << kMagic << "\n";
  os << "isa=" << p.isa_version << " L=" << p.max_program_bits
     << " T=" << p.step_budget << " cond=" << show(p.condition) << "\n";
  for (const auto& [output, rec] : table.records) {
    os << show(output) << " " << rec.min_len << " " << rec.mass.numerator
       << " " << rec.witness.str() << "\n";
  }
  os << "TOTAL " << table.total_mass.numerator << "\n";
}

void save_table(const ProgramTable& table, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  save_table(table, os);
  os.flush();
  if (!os) throw IoError("write failed for " + path.string());
}

ProgramTable load_table_raw(std::istream& is, const std::string& source) {
  auto ctx = [&source](std::size_t lineno) {
    return source + ":" + std::to_string(lineno);
  };
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != kMagic)
    throw IoError(ctx(lineno ? lineno : 1) + ": missing '" +
                  std::string(kMagic) + "' header");

  if (!next_line()) throw IoError(ctx(lineno) + ": missing parameter line");
  auto toks = split_ws(line);
  if (toks.size() != 4)
    throw IoError(ctx(lineno) + ": parameter line must have 4 fields");
  ProgramTable table;
  table.params.isa_version = static_cast<std::uint32_t>(
      read_uint_field(strip_prefix(toks[0], "isa=", ctx(lineno)), ctx(lineno)));
  table.params.max_program_bits = static_cast<std::uint32_t>(
      read_uint_field(strip_prefix(toks[1], "L=", ctx(lineno)), ctx(lineno)));
  table.params.step_budget =
      read_uint_field(strip_prefix(toks[2], "T=", ctx(lineno)), ctx(lineno));
  table.params.condition =
      read_bits_field(strip_prefix(toks[3], "cond=", ctx(lineno)), ctx(lineno));

  bool saw_total = false;
  while (next_line()) {
    if (line.empty()) continue;
    auto fields = split_ws(line);
    if (fields[0] == "TOTAL") {
      if (fields.size() != 2)
        throw IoError(ctx(lineno) + ": TOTAL line must have 2 fields");
      table.total_mass = DyadicMass{read_uint_field(fields[1], ctx(lineno)),
                                    table.params.max_program_bits};
      saw_total = true;
      break;
    }
    if (fields.size() != 4)
      throw IoError(ctx(lineno) + ": record line must have 4 fields");
    OutputRecord rec;
    rec.output = read_bits_field(fields[0], ctx(lineno));
    rec.min_len = static_cast<std::uint32_t>(
        read_uint_field(fields[1], ctx(lineno)));
    rec.mass = DyadicMass{read_uint_field(fields[2], ctx(lineno)),
                          table.params.max_program_bits};
    rec.witness = read_bits_field(fields[3], ctx(lineno));
    auto [_, fresh] = table.records.emplace(rec.output, rec);
    if (!fresh)
      throw IoError(ctx(lineno) + ": duplicate record for output " +
                    show(rec.output));
  }
  if (!saw_total) throw IoError(source + ": missing TOTAL line");
  while (next_line()) {
    if (!line.empty())
      throw IoError(ctx(lineno) + ": unexpected content after TOTAL");
  }
  return table;
}

ProgramTable load_table_raw(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return load_table_raw(is, path.string());
}

void verify_table(const ProgramTable& table, const std::string& source) {
  const EnumParams& p = table.params;
  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw IoError(source + ": invalid parameters: " + e.what());
  }

  std::uint64_t sum = 0;
  const std::uint64_t one = 1ull << p.max_program_bits;
  for (const auto& [output, rec] : table.records) {
    const std::string who = source + ": record " + show(output);
    if (rec.min_len < 3 || rec.min_len % 3 != 0 ||
        rec.min_len > p.max_program_bits)
      throw IoError(who + ": min_len " + std::to_string(rec.min_len) +
                    " out of range");
    if (rec.witness.size() != rec.min_len)
      throw IoError(who + ": witness length " +
                    std::to_string(rec.witness.size()) +
                    " does not match min_len " + std::to_string(rec.min_len));
    if (rec.mass.scale != p.max_program_bits)
      throw IoError(who + ": mass scale mismatch");
    if (rec.mass.numerator < (one >> rec.min_len))
      throw IoError(who + ": mass " + rec.mass.fraction() +
                    " below the witness contribution 1/2^" +
                    std::to_string(rec.min_len));
    sum += rec.mass.numerator;
    if (sum > one)
      throw IoError(source + ": Kraft violation: record masses sum beyond 1");

    RunOutcome out = run(rec.witness, p.condition, p.step_budget);
    const Halted* h = std::get_if<Halted>(&out);
    if (!h)
      throw IoError(who + ": witness error: witness does not halt");
    if (h->consumed != rec.witness.size())
      throw IoError(who + ": witness error: consumed " +
                    std::to_string(h->consumed) + " of " +
                    std::to_string(rec.witness.size()) + " bits");
    if (h->output != output)
      throw IoError(who + ": witness error: witness output " +
                    show(h->output) + " does not match record");
  }
  if (sum != table.total_mass.numerator)
    throw IoError(source + ": TOTAL " +
                  std::to_string(table.total_mass.numerator) +
                  " does not match record sum " + std::to_string(sum));
  if (table.total_mass.numerator > one)
    throw IoError(source + ": Kraft violation: total mass " +
                  table.total_mass.fraction() + " exceeds 1");
}

ProgramTable load_table(const std::filesystem::path& path) {
  ProgramTable t = load_table_raw(path);
  verify_table(t, path.string());
  return t;
}

}  // namespace aitlab
