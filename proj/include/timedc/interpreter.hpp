#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "timedc/program.hpp"
#include "timedc/timed_model.hpp"

namespace timedc::vm {

struct Frame {
  std::uint32_t function = 0;
  std::uint32_t pc = 0;
  std::vector<std::int64_t> locals;
  std::vector<std::uint32_t> loops;
};

// One timed event on the path and the timer valuation right after it.
struct TraceEntry {
  enum class Kind { Initial, Call, Reset, Assert };
  Kind kind = Kind::Initial;
  std::uint32_t ref = 0;  // function, timer or assertion id
  std::uint32_t line = 0;
  bool outcome = true;  // Assert only
  std::vector<std::uint64_t> timers;
};

struct TraceNode {
  std::shared_ptr<const TraceNode> prev;
  TraceEntry entry;
};

// s in S: program counter (top frame), variable store V' (globals, frames,
// timers) and the path walked so far.
struct State {
  std::vector<std::int64_t> globals;
  std::vector<Frame> stack;
  model::TimerValuation timers;
  std::vector<std::int64_t> choices;
  std::shared_ptr<const TraceNode> trace;

  std::vector<TraceEntry> trace_entries() const;
  // Identity of the state for merging: everything that influences the
  // future of the execution (not the history).
  std::string key() const;
};

enum class StepOutcome {
  Continue,
  Branched,  // at a nondet call; resolve with apply_choice
  Terminated,
  Pruned,
  AssertionViolated,
  Fault,
  UnwindExceeded,
  NondetWidthExceeded,
};

struct StepInfo {
  std::uint32_t assertion = 0;  // AssertionViolated
  std::string message;          // Fault / bound details
  SourceLocation loc;
  std::uint32_t function = 0;
  std::int64_t lo = 0;  // Branched domain
  std::int64_t hi = 0;
};

struct StepLimits {
  std::uint32_t unwind = 128;
  std::uint64_t nondet_width = 4096;
  bool check_asserts = true;
};

// s0: globals initialized, `main` entered (its duration charged).
State initial_state(const Program& p);

// Executes one instruction.
StepOutcome step(const Program& p, State& s, const StepLimits& limits, StepInfo& info);

// Runs until something other than Continue happens.
StepOutcome run(const Program& p, State& s, const StepLimits& limits, StepInfo& info);

// Resolves the nondet call the state is stopped at.
void apply_choice(const Program& p, State& s, std::int64_t value);

}  // namespace timedc::vm
