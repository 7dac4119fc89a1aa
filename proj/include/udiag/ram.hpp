#pragma once

// Step-exact interpreter for a small register machine over unary structures.
//
// Every executed instruction costs one tick. Runs are bounded by a tick
// budget and by a value bound: any register value, computed register
// address, or output size/value that reaches the bound ends the run with
// BoundViolation. Register operands written literally in the program are
// program constants and are not subject to the bound.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "udiag/structure.hpp"

namespace udiag {

enum class Opcode : std::uint8_t {
  kLoadC,    // LOADC r,k      R[r] := k
  kMove,     // MOVE r1,r2     R[r1] := R[r2]
  kLoadI,    // LOADI r1,r2    R[r1] := R[R[r2]]
  kStoreI,   // STOREI r1,r2   R[R[r1]] := R[r2]
  kAdd,      // ADD r1,r2      R[r1] := R[r1] + R[r2]
  kSub,      // SUB r1,r2      R[r1] := max(R[r1] - R[r2], 0)
  kSize,     // SIZE r         R[r] := n
  kInput,    // INPUT r1,r2    R[r1] := f(R[r2]) if R[r2] < n else 0
  kJz,       // JZ r,label
  kJmp,      // JMP label
  kGuess,    // GUESS r        R[r] := 0 or 1, nondeterministically
  kOutSize,  // OUTSIZE r      declare output size R[r]
  kOut,      // OUT r1,r2      f'(R[r1]) := R[r2]
  kAccept,
  kReject,
};

inline constexpr std::size_t kOpcodeCount = 15;

enum class OperandKind : std::uint8_t { kRegister, kConstant, kTarget };

struct OpcodeInfo {
  std::string_view mnemonic;
  std::uint8_t arity;
  std::array<OperandKind, 2> kinds;
};

inline constexpr std::array<OpcodeInfo, kOpcodeCount> kOpcodeTable{{
    {"LOADC", 2, {OperandKind::kRegister, OperandKind::kConstant}},
    {"MOVE", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"LOADI", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"STOREI", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"ADD", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"SUB", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"SIZE", 1, {OperandKind::kRegister, OperandKind::kRegister}},
    {"INPUT", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"JZ", 2, {OperandKind::kRegister, OperandKind::kTarget}},
    {"JMP", 1, {OperandKind::kTarget, OperandKind::kRegister}},
    {"GUESS", 1, {OperandKind::kRegister, OperandKind::kRegister}},
    {"OUTSIZE", 1, {OperandKind::kRegister, OperandKind::kRegister}},
    {"OUT", 2, {OperandKind::kRegister, OperandKind::kRegister}},
    {"ACCEPT", 0, {OperandKind::kRegister, OperandKind::kRegister}},
    {"REJECT", 0, {OperandKind::kRegister, OperandKind::kRegister}},
}};

inline const OpcodeInfo& info(Opcode op) { return kOpcodeTable[static_cast<std::size_t>(op)]; }

inline std::optional<Opcode> opcode_from_mnemonic(std::string_view m) {
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    if (kOpcodeTable[i].mnemonic == m) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

/// Operands unused by an opcode are kept at 0 so that equality is structural.
struct Instruction {
  Opcode op = Opcode::kReject;
  Natural a = 0;
  Natural b = 0;

  bool operator==(const Instruction&) const = default;

  bool is_jump() const { return op == Opcode::kJz || op == Opcode::kJmp; }
  Natural target() const { return op == Opcode::kJmp ? a : b; }
};

namespace ins {
inline Instruction loadc(Natural r, Natural k) { return {Opcode::kLoadC, r, k}; }
inline Instruction move(Natural r1, Natural r2) { return {Opcode::kMove, r1, r2}; }
inline Instruction loadi(Natural r1, Natural r2) { return {Opcode::kLoadI, r1, r2}; }
inline Instruction storei(Natural r1, Natural r2) { return {Opcode::kStoreI, r1, r2}; }
inline Instruction add(Natural r1, Natural r2) { return {Opcode::kAdd, r1, r2}; }
inline Instruction sub(Natural r1, Natural r2) { return {Opcode::kSub, r1, r2}; }
inline Instruction size(Natural r) { return {Opcode::kSize, r, 0}; }
inline Instruction input(Natural r1, Natural r2) { return {Opcode::kInput, r1, r2}; }
inline Instruction jz(Natural r, Natural target) { return {Opcode::kJz, r, target}; }
inline Instruction jmp(Natural target) { return {Opcode::kJmp, target, 0}; }
inline Instruction guess(Natural r) { return {Opcode::kGuess, r, 0}; }
inline Instruction outsize(Natural r) { return {Opcode::kOutSize, r, 0}; }
inline Instruction out(Natural r1, Natural r2) { return {Opcode::kOut, r1, r2}; }
inline Instruction accept() { return {Opcode::kAccept, 0, 0}; }
inline Instruction reject() { return {Opcode::kReject, 0, 0}; }
}  // namespace ins

class MalformedProgram : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ProgramMode : std::uint8_t { kDecider, kTransducer };

/// A validated program. Jump targets lie in [0, size]; a jump to `size`
/// leaves the program, which halts a transducer and rejects in a decider.
/// Mode and determinism are derived from the instruction mix.
class Program {
 public:
  Program() : Program(std::vector<Instruction>{ins::reject()}) {}

  explicit Program(std::vector<Instruction> code) : code_(std::move(code)) {
    if (code_.empty()) throw MalformedProgram("program has no instructions");
    bool has_output = false;
    bool has_verdict = false;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instruction& in = code_[i];
      if (static_cast<std::size_t>(in.op) >= kOpcodeCount) {
        throw MalformedProgram("bad opcode at " + std::to_string(i));
      }
      const auto arity = info(in.op).arity;
      if ((arity < 2 && in.b != 0) || (arity < 1 && in.a != 0)) {
        throw MalformedProgram("unused operand set at " + std::to_string(i));
      }
      if (in.is_jump() && in.target() > code_.size()) {
        throw MalformedProgram("jump target " + std::to_string(in.target()) +
                               " out of range at " + std::to_string(i));
      }
      has_output |= in.op == Opcode::kOutSize || in.op == Opcode::kOut;
      has_verdict |= in.op == Opcode::kAccept || in.op == Opcode::kReject;
      deterministic_ &= in.op != Opcode::kGuess;
    }
    if (has_output && has_verdict) {
      throw MalformedProgram("program mixes transducer output with ACCEPT/REJECT");
    }
    mode_ = has_output ? ProgramMode::kTransducer : ProgramMode::kDecider;
  }

  const std::vector<Instruction>& code() const { return code_; }
  std::size_t size() const { return code_.size(); }
  const Instruction& operator[](std::size_t i) const { return code_[i]; }
  ProgramMode mode() const { return mode_; }
  bool is_decider() const { return mode_ == ProgramMode::kDecider; }
  bool is_transducer() const { return mode_ == ProgramMode::kTransducer; }
  bool is_deterministic() const { return deterministic_; }

  bool operator==(const Program& o) const { return code_ == o.code_; }

 private:
  std::vector<Instruction> code_;
  ProgramMode mode_ = ProgramMode::kDecider;
  bool deterministic_ = true;
};

/// Replaces every GUESS r by LOADC r,0.
inline Program determinize(const Program& p) {
  if (p.is_deterministic()) return p;
  std::vector<Instruction> code = p.code();
  for (Instruction& in : code) {
    if (in.op == Opcode::kGuess) in = ins::loadc(in.a, 0);
  }
  return Program(std::move(code));
}

enum class Outcome : std::uint8_t {
  kAccept,
  kReject,
  kOutput,
  kBudgetExhausted,
  kBoundViolation,
  kInvalidOutput,
};

inline std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kAccept: return "Accept";
    case Outcome::kReject: return "Reject";
    case Outcome::kOutput: return "Output";
    case Outcome::kBudgetExhausted: return "BudgetExhausted";
    case Outcome::kBoundViolation: return "BoundViolation";
    case Outcome::kInvalidOutput: return "InvalidOutput";
  }
  return "?";
}

struct RunOutcome {
  Outcome kind = Outcome::kReject;
  Natural ticks = 0;
  std::optional<Structure> output;  // set iff kind == kOutput

  bool accepted() const { return kind == Outcome::kAccept; }
};

namespace detail {

enum class Step : std::uint8_t { kContinue, kGuess, kHalt };

/// One machine configuration. Copyable so that the nondeterministic explorer
/// can fork at GUESS.
class Machine {
 public:
  Machine(const Program& p, const Structure& w, Natural budget, Natural bound)
      : prog_(&p), input_(&w), budget_(budget), bound_(bound) {}

  Natural ticks() const { return ticks_; }
  const RunOutcome& result() const { return result_; }

  /// Executes one instruction. At a GUESS the tick is charged and kGuess is
  /// returned; the caller completes it with resolve_guess().
  Step step() {
    const Program& p = *prog_;
    if (pc_ >= p.size()) return finish_fall_off();
    if (ticks_ >= budget_) return halt(Outcome::kBudgetExhausted);
    ++ticks_;
    const Instruction& in = p[pc_];
    const Natural n = input_->size();
    switch (in.op) {
      case Opcode::kLoadC:
        if (!write(in.a, in.b)) return kHaltStep;
        break;
      case Opcode::kMove:
        if (!write(in.a, read(in.b))) return kHaltStep;
        break;
      case Opcode::kLoadI: {
        Natural addr = read(in.b);
        if (addr >= bound_) return halt(Outcome::kBoundViolation);
        if (!write(in.a, read(addr))) return kHaltStep;
        break;
      }
      case Opcode::kStoreI: {
        Natural addr = read(in.a);
        if (addr >= bound_) return halt(Outcome::kBoundViolation);
        if (!write(addr, read(in.b))) return kHaltStep;
        break;
      }
      case Opcode::kAdd: {
        Natural x = read(in.a), y = read(in.b);
        Natural sum = x > std::numeric_limits<Natural>::max() - y ? std::numeric_limits<Natural>::max() : x + y;
        if (!write(in.a, sum)) return kHaltStep;
        break;
      }
      case Opcode::kSub: {
        Natural x = read(in.a), y = read(in.b);
        if (!write(in.a, x > y ? x - y : 0)) return kHaltStep;
        break;
      }
      case Opcode::kSize:
        if (!write(in.a, n)) return kHaltStep;
        break;
      case Opcode::kInput: {
        Natural i = read(in.b);
        if (!write(in.a, i < n ? (*input_)[i] : 0)) return kHaltStep;
        break;
      }
      case Opcode::kJz:
        if (read(in.a) == 0) {
          pc_ = in.b;
          return Step::kContinue;
        }
        break;
      case Opcode::kJmp:
        pc_ = in.a;
        return Step::kContinue;
      case Opcode::kGuess:
        pending_guess_ = in.a;
        ++pc_;
        return Step::kGuess;
      case Opcode::kOutSize: {
        Natural s = read(in.a);
        if (s >= bound_) return halt(Outcome::kBoundViolation);
        if (out_size_ || s == 0) return halt(Outcome::kInvalidOutput);
        out_size_ = s;
        out_.assign(s, 0);
        break;
      }
      case Opcode::kOut: {
        Natural idx = read(in.a), val = read(in.b);
        if (!out_size_ || idx >= *out_size_) return halt(Outcome::kInvalidOutput);
        out_[idx] = val;
        break;
      }
      case Opcode::kAccept:
        return halt(Outcome::kAccept);
      case Opcode::kReject:
        return halt(Outcome::kReject);
    }
    ++pc_;
    return Step::kContinue;
  }

  /// Completes a pending GUESS. Returns false if the write violates the bound.
  bool resolve_guess(bool bit) {
    if (!write(pending_guess_, bit ? 1 : 0)) return false;
    return true;
  }

  bool halted() const { return halted_; }

 private:
  static constexpr Step kHaltStep = Step::kHalt;

  Natural read(Natural r) const {
    auto it = regs_.find(r);
    return it == regs_.end() ? 0 : it->second;
  }

  bool write(Natural r, Natural v) {
    if (v >= bound_) {
      halt(Outcome::kBoundViolation);
      return false;
    }
    regs_[r] = v;
    return true;
  }

  Step halt(Outcome o) {
    halted_ = true;
    result_.kind = o;
    result_.ticks = ticks_;
    return Step::kHalt;
  }

  Step finish_fall_off() {
    if (prog_->is_decider()) return halt(Outcome::kReject);
    if (!out_size_) return halt(Outcome::kInvalidOutput);
    for (Natural v : out_) {
      if (v >= *out_size_) return halt(Outcome::kInvalidOutput);
    }
    halt(Outcome::kOutput);
    result_.output = Structure(out_);
    return Step::kHalt;
  }

  const Program* prog_;
  const Structure* input_;
  Natural budget_;
  Natural bound_;
  Natural ticks_ = 0;
  std::size_t pc_ = 0;
  std::unordered_map<Natural, Natural> regs_;
  std::optional<Natural> out_size_;
  std::vector<Natural> out_;
  Natural pending_guess_ = 0;
  bool halted_ = false;
  RunOutcome result_;
};

}  // namespace detail

/// Replays a run with GUESS outcomes taken from `guesses` in order; guesses
/// beyond the end of the sequence read as 0. Works on any program.
inline RunOutcome run_guided(const Program& p, const Structure& w, Natural budget,
                             Natural value_bound, std::span<const bool> guesses) {
  detail::Machine m(p, w, budget, value_bound);
  std::size_t next = 0;
  for (;;) {
    switch (m.step()) {
      case detail::Step::kContinue:
        break;
      case detail::Step::kGuess: {
        bool bit = next < guesses.size() ? guesses[next] : false;
        ++next;
        if (!m.resolve_guess(bit)) return m.result();
        break;
      }
      case detail::Step::kHalt:
        return m.result();
    }
  }
}

inline RunOutcome run_det(const Program& p, const Structure& w, Natural budget, Natural value_bound) {
  if (!p.is_deterministic()) {
    throw std::invalid_argument("run_det: program contains GUESS");
  }
  return run_guided(p, w, budget, value_bound, {});
}

struct NondetResult {
  bool accepted = false;
  Natural accepting_ticks = 0;  // ticks of the first accepting branch found
  Natural branches = 0;         // halted branches explored
};

/// Exhaustive depth-first exploration of the guess tree. Each branch is
/// metered from the start of the run; exploration stops at the first
/// accepting branch (0 before 1 at every GUESS).
inline NondetResult explore_nondet(const Program& p, const Structure& w, Natural budget,
                                   Natural value_bound) {
  if (!p.is_decider()) throw std::invalid_argument("run_nondet: program is a transducer");
  NondetResult res;
  std::vector<detail::Machine> stack;
  stack.emplace_back(p, w, budget, value_bound);
  while (!stack.empty()) {
    detail::Machine m = std::move(stack.back());
    stack.pop_back();
    for (;;) {
      detail::Step s = m.step();
      if (s == detail::Step::kContinue) continue;
      if (s == detail::Step::kGuess) {
        detail::Machine other = m;
        if (other.resolve_guess(true)) {
          stack.push_back(std::move(other));
        } else {
          ++res.branches;
        }
        if (!m.resolve_guess(false)) break;
        continue;
      }
      break;
    }
    ++res.branches;
    if (m.result().kind == Outcome::kAccept) {
      res.accepted = true;
      res.accepting_ticks = m.result().ticks;
      return res;
    }
  }
  return res;
}

inline bool run_nondet(const Program& p, const Structure& w, Natural budget, Natural value_bound) {
  return explore_nondet(p, w, budget, value_bound).accepted;
}

// -- clocked machines ------------------------------------------------------------

inline Natural saturating_mul(Natural a, Natural b) {
  if (a != 0 && b > std::numeric_limits<Natural>::max() / a) return std::numeric_limits<Natural>::max();
  return a * b;
}

inline Natural clock_budget(Natural clock, const Structure& w) { return saturating_mul(clock, w.size()); }
inline Natural clock_bound(Natural clock, const Structure& w) { return saturating_mul(clock, w.size() + 1); }

/// A decider program paired with a linear clock c: it decides
/// L_c(M) = { w : M accepts w within c|w| ticks using values below c(|w|+1) }.
class ClockedMachine {
 public:
  ClockedMachine(Program program, Natural clock) : program_(std::move(program)), clock_(clock) {
    if (clock_ == 0) throw std::invalid_argument("clock must be at least 1");
    if (!program_.is_decider()) throw std::invalid_argument("clocked machine needs a decider program");
  }

  const Program& program() const { return program_; }
  Natural clock() const { return clock_; }

 private:
  Program program_;
  Natural clock_;
};

inline bool decide_clocked(const ClockedMachine& m, const Structure& w) {
  const Natural budget = clock_budget(m.clock(), w);
  const Natural bound = clock_bound(m.clock(), w);
  if (m.program().is_deterministic()) return run_det(m.program(), w, budget, bound).accepted();
  return run_nondet(m.program(), w, budget, bound);
}

}  // namespace udiag
