#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aitlab/bitstring.hpp"

namespace aitlab {

// The eight opcodes of the interpreter, each spelled as three program bits,
// most significant bit first.
enum class Opcode : std::uint8_t {
  kHalt = 0b000,          // stop; the run is valid
  kOut = 0b001,           // append the bit under the head to the output
  kMoveRight = 0b010,     // head one cell right
  kMoveLeft = 0b011,      // head one cell left
  kFlip = 0b100,          // invert the bit under the head
  kLoopStart = 0b101,     // skip past the matching loop end when the bit is 0
  kLoopEnd = 0b110,       // jump back to the matching loop start when nonzero
  kOutMoveRight = 0b111,  // output the bit under the head, then move right
};

const char* opcode_name(Opcode op);

inline void append_opcode(BitString& program, Opcode op) {
  auto c = static_cast<std::uint8_t>(op);
  program.push_back((c >> 2) & 1);
  program.push_back((c >> 1) & 1);
  program.push_back(c & 1);
}

inline BitString assemble(std::initializer_list<Opcode> ops) {
  BitString p;
  for (Opcode op : ops) append_opcode(p, op);
  return p;
}

// Two-way infinite binary work tape; cells never written read as 0.
class Tape {
 public:
  std::uint8_t read(std::int64_t pos) const {
    std::int64_t i = pos + origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return 0;
    return cells_[static_cast<std::size_t>(i)];
  }
  void set(std::int64_t pos, std::uint8_t v);

 private:
  std::vector<std::uint8_t> cells_;
  std::int64_t origin_ = 0;  // index of logical cell 0 within cells_
};

// Full interpreter state between steps. Copyable so that callers can
// snapshot it at a bit demand and explore both continuations.
struct MachineState {
  Tape tape;
  std::int64_t head = 0;
  BitString consumed;          // program bits fetched so far
  std::uint32_t ip = 0;        // bit offset into consumed; multiple of 3
  BitString output;
  std::uint64_t steps = 0;
  std::uint32_t scan_depth = 0;  // >0 while skipping a loop body forward
};

enum class StopReason : std::uint8_t {
  kHalted,     // a halt opcode executed
  kNeedBits,   // the next opcode fetch reaches beyond the supplied program
  kStepLimit,  // one more step would exceed the budget
  kInvalid,    // a loop end with no matching loop start in consumed code
};

// Self-delimiting condition encoding: each data bit is followed by a 1 flag,
// so the all-zero tape beyond the image acts as the terminator.
BitString flag_encode(const BitString& y);
// Inverse of flag_encode; tolerates any number of trailing zeros. Throws
// ConfigError when the flag pattern is violated.
BitString flag_decode(const BitString& image);
// Joint encoding: flag_encode(x) followed by the raw bits of y.
BitString pair_encode(const BitString& x, const BitString& y);

// State at the start of a run: flag_encode(condition) laid out from cell 0
// rightward, head on cell 0, nothing consumed or output.
MachineState initial_state(const BitString& condition);

// Resume execution against the program bits available so far. Fetches
// demand whole 3-bit opcodes; a fetch that would reach beyond `program`
// stops with kNeedBits and leaves the state unchanged since the last
// complete step, so callers can extend the program and call again.
// Every executed opcode costs one step, and every opcode scanned while
// skipping a loop body costs one step as well.
StopReason resume(MachineState& st, const BitString& program,
                  std::uint64_t step_budget,
                  std::string* invalid_reason = nullptr);

struct Halted {
  BitString output;
  std::uint64_t consumed = 0;  // bits of program consumed; multiple of 3
  std::uint64_t steps = 0;
};
struct NeedsBit {
  MachineState state;
};
struct StepLimitHit {};
struct Invalid {
  std::string reason;
};
using RunOutcome = std::variant<Halted, NeedsBit, StepLimitHit, Invalid>;

// Run `program` from scratch with the given condition preloaded on the tape.
// Pure: equal inputs give equal outcomes. Bits beyond the last demanded
// opcode are never inspected, so any extension of a halting program halts
// with the same output and consumed count.
RunOutcome run(const BitString& program, const BitString& condition,
               std::uint64_t step_budget);

// 24-bit program that writes the condition string back to the output and
// halts, for any condition. Walks the flag cells of the preloaded image.
BitString copy_program();

}  // namespace aitlab
