#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "timedc/ast.hpp"
#include "timedc/interpreter.hpp"
#include "timedc/program.hpp"

namespace timedc {

struct Bounds {
  std::uint32_t unwind = 128;         // iterations per loop entry
  std::uint64_t nondet_width = 4096;  // values per nondet call
  std::uint64_t max_paths = 1000000;  // completed paths over the whole run
};

struct ExploreOptions {
  unsigned jobs = 0;          // 0: OpenMP default
  bool merge_states = true;   // skip nondet points whose full state was already explored
  bool check_asserts = true;
};

enum class VerdictKind { Successful, Failed, BoundExceeded, RuntimeFault };

const char* to_string(VerdictKind kind);

struct PropertySite {
  std::string category = "assertion";  // "assertion", "runtime fault" or a bound name
  std::string file;
  std::uint32_t line = 0;
  std::string function;
  std::string expression;  // assertion text, or what went wrong
};

// s_i: the event that produced the state and the timer valuation in it.
struct TraceState {
  std::string event;
  std::uint32_t line = 0;
  std::vector<std::uint64_t> timers;
};

struct Counterexample {
  PropertySite violated;
  std::vector<std::int64_t> nondet_choices;
  std::vector<TraceState> states;
  std::vector<std::string> timer_names;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Successful;
  // Failed and RuntimeFault: the replayable path. BoundExceeded: the site of
  // the first bound hit, with the choices that led there.
  std::optional<Counterexample> counterexample;
  std::string bound_resource;  // "unwind", "nondet_width" or "max_paths"
  std::uint64_t paths_explored = 0;
  double runtime_ms = 0;
};

struct MinResult {
  VerdictKind kind = VerdictKind::Successful;  // Successful when `value` is exact
  std::optional<std::uint64_t> value;          // none when no path completes
  std::uint64_t paths_explored = 0;
  std::string bound_resource;
};

// Exhaustive path enumeration within bounds. The first violation in
// exploration order (nondet values ascending) is reported, so the result does
// not depend on the worker count. Frontier states run on OpenMP workers; the
// result always equals explore_serial's.
Verdict explore(const vm::Program& p, const Bounds& b, const ExploreOptions& o = {});
Verdict explore(const Ast& instrumented, const std::string& file, const Bounds& b, const ExploreOptions& o = {});

// Single-threaded depth-first reference with one global visited set.
Verdict explore_serial(const vm::Program& p, const Bounds& b, const ExploreOptions& o = {});

// Minimum final value of `timer` over all complete paths; assertions are not
// checked.
MinResult min_path_value(const vm::Program& p, const std::string& timer, const Bounds& b,
                         const ExploreOptions& o = {});

struct ReplayResult {
  vm::StepOutcome outcome = vm::StepOutcome::Terminated;
  std::optional<PropertySite> site;  // assertion or fault location
  std::size_t choices_used = 0;
  bool choices_exhausted = false;  // reached a nondet call with no choice left
  bool choice_out_of_range = false;
  std::vector<std::uint64_t> final_timers;
};

// Concrete execution that resolves the i-th nondet call with choices[i].
ReplayResult replay(const vm::Program& p, const std::vector<std::int64_t>& choices, const Bounds& b = {});

std::string format_counterexample(const Counterexample& c);

// Human-readable verdict in the style of a bounded model checker.
std::string format_verdict(const Verdict& v);

// {verdict, violated_property {file, line, expr}, nondet_choices, timer_trace,
//  paths_explored, runtime_ms}
std::string verdict_to_json(const Verdict& v, int indent = 2);

}  // namespace timedc
