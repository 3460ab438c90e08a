#include "aitlab/machine.hpp"

#include <utility>

#include "aitlab/errors.hpp"

namespace aitlab {

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::kHalt: return "HALT";
    case Opcode::kOut: return "OUT";
    case Opcode::kMoveRight: return "MOVR";
    case Opcode::kMoveLeft: return "MOVL";
    case Opcode::kFlip: return "FLIP";
    case Opcode::kLoopStart: return "LOOPSTART";
    case Opcode::kLoopEnd: return "LOOPEND";
    case Opcode::kOutMoveRight: return "OUTR";
  }
  return "?";
}

void Tape::set(std::int64_t pos, std::uint8_t v) {
  std::int64_t i = pos + origin_;
  if (i < 0) {
    // grow to the left with a little slack
    std::size_t extra = static_cast<std::size_t>(-i) + 16;
    cells_.insert(cells_.begin(), extra, 0);
    origin_ += static_cast<std::int64_t>(extra);
    i += static_cast<std::int64_t>(extra);
  } else if (i >= static_cast<std::int64_t>(cells_.size())) {
    cells_.resize(static_cast<std::size_t>(i) + 17, 0);
  }
  cells_[static_cast<std::size_t>(i)] = v;
}

BitString flag_encode(const BitString& y) {
  BitString img;
  for (std::size_t i = 0; i < y.size(); ++i) {
    img.push_back(y.bit(i));
    img.push_back(1);
  }
  return img;
}

BitString flag_decode(const BitString& image) {
  BitString y;
  std::size_t i = 0;
  for (; i + 1 < image.size(); i += 2) {
    std::uint8_t data = image.bit(i);
    std::uint8_t flag = image.bit(i + 1);
    if (flag == 1) {
      y.push_back(data);
      continue;
    }
    if (data != 0)
      throw ConfigError("flag_decode: data bit 1 with flag 0 at offset " +
                        std::to_string(i));
    break;  // (0,0) terminates; the rest must be zeros
  }
  for (; i < image.size(); ++i)
    if (image.bit(i) != 0)
      throw ConfigError("flag_decode: nonzero bit after terminator at offset " +
                        std::to_string(i));
  return y;
}

BitString pair_encode(const BitString& x, const BitString& y) {
  return flag_encode(x) + y;
}

MachineState initial_state(const BitString& condition) {
  MachineState st;
  BitString img = flag_encode(condition);
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img.bit(i)) st.tape.set(static_cast<std::int64_t>(i), 1);
  return st;
}

namespace {

inline std::uint8_t opcode_code_at(const BitString& bits, std::uint32_t pos) {
  return static_cast<std::uint8_t>((bits.bit(pos) << 2) |
                                   (bits.bit(pos + 1) << 1) |
                                   bits.bit(pos + 2));
}

}  // namespace

StopReason resume(MachineState& st, const BitString& program,
                  std::uint64_t step_budget, std::string* invalid_reason) {
  for (;;) {
    if (st.ip == st.consumed.size()) {
      // fetch the next opcode, demanding fresh program bits
      std::size_t base = st.consumed.size();
      if (base + 3 > program.size()) return StopReason::kNeedBits;
      st.consumed.push_back(program.bit(base));
      st.consumed.push_back(program.bit(base + 1));
      st.consumed.push_back(program.bit(base + 2));
    }
    std::uint8_t code = opcode_code_at(st.consumed, st.ip);
    if (st.steps + 1 > step_budget) return StopReason::kStepLimit;
    st.steps += 1;
    st.ip += 3;

    if (st.scan_depth > 0) {
      // forward scan over a skipped loop body; opcodes are only counted
      if (code == static_cast<std::uint8_t>(Opcode::kLoopStart)) {
        ++st.scan_depth;
      } else if (code == static_cast<std::uint8_t>(Opcode::kLoopEnd)) {
        --st.scan_depth;
      }
      continue;
    }

    switch (static_cast<Opcode>(code)) {
      case Opcode::kHalt:
        return StopReason::kHalted;
      case Opcode::kOut:
        st.output.push_back(st.tape.read(st.head));
        break;
      case Opcode::kMoveRight:
        ++st.head;
        break;
      case Opcode::kMoveLeft:
        --st.head;
        break;
      case Opcode::kFlip:
        st.tape.set(st.head, st.tape.read(st.head) ^ 1);
        break;
      case Opcode::kOutMoveRight:
        st.output.push_back(st.tape.read(st.head));
        ++st.head;
        break;
      case Opcode::kLoopStart:
        if (st.tape.read(st.head) == 0) st.scan_depth = 1;
        break;
      case Opcode::kLoopEnd: {
        // locate the matching loop start backwards in consumed code
        std::uint32_t depth = 1;
        std::int64_t pos = static_cast<std::int64_t>(st.ip) - 3;
        std::int64_t match = -1;
        while (pos >= 3) {
          pos -= 3;
          std::uint8_t c = opcode_code_at(st.consumed,
                                          static_cast<std::uint32_t>(pos));
          if (c == static_cast<std::uint8_t>(Opcode::kLoopEnd)) {
            ++depth;
          } else if (c == static_cast<std::uint8_t>(Opcode::kLoopStart)) {
            if (--depth == 0) {
              match = pos;
              break;
            }
          }
        }
        if (match < 0) {
          if (invalid_reason) *invalid_reason = "unmatched LOOPEND";
          return StopReason::kInvalid;
        }
        if (st.tape.read(st.head) != 0)
          st.ip = static_cast<std::uint32_t>(match);
        break;
      }
    }
  }
}

RunOutcome run(const BitString& program, const BitString& condition,
               std::uint64_t step_budget) {
  if (step_budget < 1) throw ConfigError("step budget must be >= 1");
  MachineState st = initial_state(condition);
  std::string why;
  switch (resume(st, program, step_budget, &why)) {
    case StopReason::kHalted:
      return Halted{std::move(st.output), st.consumed.size(), st.steps};
    case StopReason::kNeedBits:
      return NeedsBit{std::move(st)};
    case StopReason::kStepLimit:
      return StepLimitHit{};
    case StopReason::kInvalid:
      return Invalid{std::move(why)};
  }
  return Invalid{"unreachable"};
}

BitString copy_program() {
  // MOVR to the first flag cell, then per data bit: step left, emit it and
  // return to the flag, hop two cells to the next flag, loop while it is 1.
  return assemble({Opcode::kMoveRight, Opcode::kLoopStart, Opcode::kMoveLeft,
                   Opcode::kOutMoveRight, Opcode::kMoveRight,
                   Opcode::kMoveRight, Opcode::kLoopEnd, Opcode::kHalt});
}

}  // namespace aitlab
