#include "aitlab/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>
#include <utility>

#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

void EnumParams::validate() const {
  if (isa_version != 1)
    throw ConfigError("unsupported isa version " + std::to_string(isa_version));
  if (max_program_bits < 3 || max_program_bits > 60)
    throw ConfigError("L must be between 3 and 60, got " +
                      std::to_string(max_program_bits));
  if (max_program_bits % 3 != 0)
    throw ConfigError("L must be a multiple of 3, got " +
                      std::to_string(max_program_bits));
  if (step_budget < 1) throw ConfigError("T must be >= 1");
}

std::string EnumParams::cache_key() const {
  return "isa=" + std::to_string(isa_version) +
         ";L=" + std::to_string(max_program_bits) +
         ";T=" + std::to_string(step_budget) +
         ";cond=" + (condition.empty() ? "-" : condition.str());
}

double DyadicMass::value() const {
  return std::ldexp(static_cast<double>(numerator),
                    -static_cast<int>(scale));
}

std::string DyadicMass::fraction() const {
  return std::to_string(numerator) + "/2^" + std::to_string(scale);
}

const OutputRecord* ProgramTable::find(const BitString& x) const {
  auto it = records.find(x);
  return it == records.end() ? nullptr : &it->second;
}

std::optional<std::uint32_t> ProgramTable::khat(const BitString& x) const {
  const OutputRecord* r = find(x);
  if (!r) return std::nullopt;
  return r->min_len;
}

DyadicMass ProgramTable::mass(const BitString& x) const {
  const OutputRecord* r = find(x);
  if (!r) return DyadicMass{0, params.max_program_bits};
  return r->mass;
}

std::uint64_t ProgramTable::halting_program_count() const {
  std::uint64_t n = 0;
  for (const auto& [_, r] : records) n += r.program_count;
  return n;
}

namespace {

struct Aggregate {
  std::uint32_t min_len = 0;
  BitString witness;
  std::uint64_t mass_num = 0;
  std::uint64_t count = 0;
  std::vector<BitString> programs;
};

using Partial = std::map<BitString, Aggregate>;

void record_halt(Partial& part, const BitString& program,
                 const BitString& output, const EnumParams& p, bool collect) {
  std::uint64_t add =
      1ull << (p.max_program_bits - static_cast<std::uint32_t>(program.size()));
  auto [it, fresh] = part.try_emplace(output);
  Aggregate& a = it->second;
  auto len = static_cast<std::uint32_t>(program.size());
  if (fresh) {
    a.min_len = len;
    a.witness = program;
  } else if (len < a.min_len ||
             (len == a.min_len && program < a.witness)) {
    a.min_len = len;
    a.witness = program;
  }
  a.mass_num += add;
  a.count += 1;
  if (collect) a.programs.push_back(program);
}

// `st` sits at an opcode fetch with everything in `program` consumed.
void dfs(const MachineState& st, BitString& program, const EnumParams& p,
         bool collect, Partial& out) {
  if (program.size() + 3 > p.max_program_bits) return;  // cannot extend
  for (std::uint8_t code = 0; code < 8; ++code) {
    append_opcode(program, static_cast<Opcode>(code));
    MachineState child = st;
    switch (resume(child, program, p.step_budget)) {
      case StopReason::kHalted:
        record_halt(out, program, child.output, p, collect);
        break;
      case StopReason::kNeedBits:
        dfs(child, program, p, collect, out);
        break;
      case StopReason::kStepLimit:
      case StopReason::kInvalid:
        break;  // contributes nothing
    }
    program.truncate(program.size() - 3);
  }
}

void merge_into(Partial& dst, Partial&& src) {
  for (auto& [output, a] : src) {
    auto [it, fresh] = dst.try_emplace(output);
    Aggregate& d = it->second;
    if (fresh) {
      d = std::move(a);
      continue;
    }
    if (a.min_len < d.min_len ||
        (a.min_len == d.min_len && a.witness < d.witness)) {
      d.min_len = a.min_len;
      d.witness = a.witness;
    }
    d.mass_num += a.mass_num;
    d.count += a.count;
    for (auto& prog : a.programs) d.programs.push_back(std::move(prog));
  }
}

}  // namespace

ProgramTable enumerate_programs(const EnumParams& params,
                                const EnumOptions& opts) {
  params.validate();
  if (opts.workers < 1) throw ConfigError("worker count must be >= 1");

  struct Task {
    MachineState state;
    BitString prefix;
  };

  Partial base;
  std::deque<Task> frontier;
  frontier.push_back(Task{initial_state(params.condition), BitString{}});

  // With several workers, split the demand tree into independent subtree
  // tasks first; halts met while splitting land in `base`.
  const std::size_t task_target =
      opts.workers == 1 ? 1 : std::max<std::size_t>(64, opts.workers * 16u);
  while (!frontier.empty() && frontier.size() < task_target) {
    Task t = std::move(frontier.front());
    frontier.pop_front();
    if (t.prefix.size() + 3 > params.max_program_bits) continue;
    for (std::uint8_t code = 0; code < 8; ++code) {
      BitString prog = t.prefix;
      append_opcode(prog, static_cast<Opcode>(code));
      MachineState child = t.state;
      switch (resume(child, prog, params.step_budget)) {
        case StopReason::kHalted:
          record_halt(base, prog, child.output, params,
                      opts.collect_programs);
          break;
        case StopReason::kNeedBits:
          frontier.push_back(Task{std::move(child), std::move(prog)});
          break;
        default:
          break;
      }
    }
  }

  std::vector<Task> tasks(std::make_move_iterator(frontier.begin()),
                          std::make_move_iterator(frontier.end()));
  std::vector<Partial> parts(tasks.size());

  auto run_task = [&](std::size_t i) {
    dfs(tasks[i].state, tasks[i].prefix, params, opts.collect_programs,
        parts[i]);
  };

  if (opts.workers == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        run_task(i);
      }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::size_t>(opts.workers, tasks.size());
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& part : parts) merge_into(base, std::move(part));

  ProgramTable table;
  table.params = params;
  table.with_programs = opts.collect_programs;
  std::uint64_t total = 0;
  for (auto& [output, a] : base) {
    OutputRecord rec;
    rec.output = output;
    rec.min_len = a.min_len;
    rec.mass = DyadicMass{a.mass_num, params.max_program_bits};
    rec.witness = std::move(a.witness);
    rec.program_count = a.count;
    if (opts.collect_programs) {
      std::sort(a.programs.begin(), a.programs.end());
      rec.programs = std::move(a.programs);
    }
    total += rec.mass.numerator;
    table.records.emplace(output, std::move(rec));
  }
  table.total_mass = DyadicMass{total, params.max_program_bits};
  if (total > (1ull << params.max_program_bits))
    throw std::logic_error("halting mass exceeds 1; enumeration bug");
  return table;
}

}  // namespace aitlab
