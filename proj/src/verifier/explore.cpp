#include <omp.h>

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "timedc/verifier.hpp"

namespace timedc {
namespace {

using vm::State;
using vm::StepInfo;
using vm::StepOutcome;

// Frontier size above which the level-synchronous search hands over to the
// depth-first reference.
constexpr std::size_t kMaxFrontier = std::size_t{1} << 17;

struct SubResult {
  std::uint64_t paths = 0;
  bool stopped = false;  // violation or fault
  VerdictKind stop_kind = VerdictKind::Failed;
  std::optional<Counterexample> cex;
  std::optional<Counterexample> bound;  // first bound hit
  std::string bound_resource;
  bool budget_exhausted = false;
  std::optional<std::uint64_t> min_value;
};

class Explorer {
 public:
  Explorer(const vm::Program& p, const Bounds& b, const ExploreOptions& o, std::optional<std::size_t> min_timer)
      : p_(p), b_(b), o_(o), min_timer_(min_timer) {
    limits_.unwind = b.unwind;
    limits_.nondet_width = b.nondet_width;
    limits_.check_asserts = o.check_asserts && !min_timer;
  }

  const vm::StepLimits& limits() const { return limits_; }

  Counterexample counterexample(const State& s, const StepInfo& info, const std::string& category,
                                const std::string& what) const {
    Counterexample c;
    c.violated = PropertySite{category, p_.file, info.loc.line, p_.functions[info.function].name, what};
    c.nondet_choices = s.choices;
    c.timer_names = p_.timers;
    for (const auto& e : s.trace_entries()) {
      std::string event;
      switch (e.kind) {
        case vm::TraceEntry::Kind::Initial: event = "initial"; break;
        case vm::TraceEntry::Kind::Call: event = "call " + p_.functions[e.ref].name; break;
        case vm::TraceEntry::Kind::Reset: event = "reset " + p_.timers[e.ref]; break;
        case vm::TraceEntry::Kind::Assert:
          event = "assert " + p_.assertions[e.ref].expression + (e.outcome ? " holds" : " fails");
          break;
      }
      c.states.push_back({std::move(event), e.line, e.timers});
    }
    return c;
  }

  // Accounts for a path that ended; returns true when exploration must stop.
  bool finish(const State& s, StepOutcome out, const StepInfo& info, SubResult& r) const {
    ++r.paths;
    switch (out) {
      case StepOutcome::Terminated:
        if (min_timer_) {
          const std::uint64_t v = s.timers[*min_timer_];
          r.min_value = r.min_value ? std::min(*r.min_value, v) : v;
        }
        return false;
      case StepOutcome::Pruned: return false;
      case StepOutcome::AssertionViolated:
        r.stopped = true;
        r.stop_kind = VerdictKind::Failed;
        r.cex = counterexample(s, info, "assertion", p_.assertions[info.assertion].expression);
        return true;
      case StepOutcome::Fault:
        r.stopped = true;
        r.stop_kind = VerdictKind::RuntimeFault;
        r.cex = counterexample(s, info, "runtime fault", info.message);
        return true;
      case StepOutcome::UnwindExceeded:
      case StepOutcome::NondetWidthExceeded:
        if (!r.bound) {
          r.bound_resource = out == StepOutcome::UnwindExceeded ? "unwind" : "nondet_width";
          r.bound = counterexample(s, info, r.bound_resource, info.message);
        }
        return false;
      case StepOutcome::Continue:
      case StepOutcome::Branched: break;
    }
    return false;
  }

  // Depth-first search below `root`, nondet values ascending.
  void subtree(State root, SubResult& r) const {
    struct Pending {
      State state;
      std::int64_t next;
      std::int64_t hi;
    };
    std::unordered_set<std::string> visited;
    std::vector<Pending> stack;
    auto process = [&](State s) {
      StepInfo info;
      const StepOutcome out = vm::run(p_, s, limits_, info);
      if (out == StepOutcome::Branched) {
        if (o_.merge_states && !visited.insert(s.key()).second) return false;
        stack.push_back({std::move(s), info.lo, info.hi});
        return false;
      }
      return finish(s, out, info, r);
    };
    if (process(std::move(root))) return;
    while (!stack.empty()) {
      if (r.paths >= b_.max_paths) {
        r.budget_exhausted = true;
        return;
      }
      Pending& top = stack.back();
      const std::int64_t v = top.next;
      State child;
      if (top.next >= top.hi) {
        child = std::move(top.state);
        stack.pop_back();
      } else {
        child = top.state;
        ++top.next;
      }
      vm::apply_choice(p_, child, v);
      if (process(std::move(child))) return;
    }
  }

 private:
  const vm::Program& p_;
  Bounds b_;
  ExploreOptions o_;
  std::optional<std::size_t> min_timer_;
  vm::StepLimits limits_;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<State> start(const vm::Program& p, Verdict& v) {
  try {
    return vm::initial_state(p);
  } catch (const model::TimerOverflow& e) {
    v.kind = VerdictKind::RuntimeFault;
    Counterexample c;
    c.violated = PropertySite{"runtime fault", p.file, p.functions[p.main].loc.line, "main", e.what()};
    c.timer_names = p.timers;
    v.counterexample = std::move(c);
    return std::nullopt;
  }
}

Verdict to_verdict(const SubResult& r) {
  Verdict v;
  v.paths_explored = r.paths;
  if (r.stopped) {
    v.kind = r.stop_kind;
    v.counterexample = r.cex;
  } else if (r.budget_exhausted) {
    v.kind = VerdictKind::BoundExceeded;
    v.bound_resource = "max_paths";
  } else if (r.bound) {
    v.kind = VerdictKind::BoundExceeded;
    v.bound_resource = r.bound_resource;
    v.counterexample = r.bound;
  }
  return v;
}

Verdict run_serial(const vm::Program& p, const Bounds& b, const ExploreOptions& o,
                   std::optional<std::size_t> min_timer, std::optional<std::uint64_t>* min_value) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  auto root = start(p, v);
  if (!root) return v;
  const Explorer ex(p, b, o, min_timer);
  SubResult r;
  ex.subtree(std::move(*root), r);
  v = to_verdict(r);
  if (min_value) *min_value = r.min_value;
  v.runtime_ms = elapsed_ms(t0);
  return v;
}

// Level-synchronous search: every state of the frontier runs to its next
// nondet point on a worker, then children are deduplicated in frontier order
// against one visited set. The set of expanded states and the path count are
// those of the depth-first reference. Anything other than an exhaustive clean
// run (violation, fault, bound, budget, oversized frontier) is redone by the
// reference so that the reported counterexample is the first in exploration
// order.
Verdict run_parallel(const vm::Program& p, const Bounds& b, const ExploreOptions& o,
                     std::optional<std::size_t> min_timer, std::optional<std::uint64_t>* min_value) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict failed_start;
  auto root = start(p, failed_start);
  if (!root) return failed_start;
  const Explorer ex(p, b, o, min_timer);
  const int jobs = o.jobs > 0 ? static_cast<int>(o.jobs) : omp_get_max_threads();

  struct Slot {
    State state;
    StepOutcome out = StepOutcome::Continue;
    StepInfo info;
    std::string key;
  };
  std::vector<Slot> level(1);
  level[0].state = std::move(*root);
  std::unordered_set<std::string> visited;
  SubResult r;
  bool handover = false;
  while (!level.empty() && !handover) {
    const int n = static_cast<int>(level.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
    for (int k = 0; k < n; ++k) {
      Slot& s = level[static_cast<std::size_t>(k)];
      s.out = vm::run(p, s.state, ex.limits(), s.info);
      if (s.out == StepOutcome::Branched && o.merge_states) s.key = s.state.key();
    }
    std::size_t width_sum = 0;
    for (const auto& s : level) {
      if (s.out == StepOutcome::Branched) width_sum += static_cast<std::size_t>(s.info.hi - s.info.lo) + 1;
    }
    std::vector<Slot> next;
    next.reserve(std::min(width_sum, kMaxFrontier));
    for (auto& s : level) {
      if (s.out != StepOutcome::Branched) {
        ex.finish(s.state, s.out, s.info, r);
        if (r.stopped || r.bound || r.paths >= b.max_paths) {
          handover = true;
          break;
        }
        continue;
      }
      if (o.merge_states && !visited.insert(std::move(s.key)).second) continue;
      const auto width = static_cast<std::uint64_t>(s.info.hi - s.info.lo) + 1;
      if (next.size() + width > kMaxFrontier) {
        handover = true;
        break;
      }
      for (std::int64_t v = s.info.lo;; ++v) {
        next.emplace_back();
        if (v == s.info.hi) {
          next.back().state = std::move(s.state);
          vm::apply_choice(p, next.back().state, v);
          break;
        }
        next.back().state = s.state;
        vm::apply_choice(p, next.back().state, v);
      }
    }
    level = std::move(next);
  }
  if (handover) return run_serial(p, b, o, min_timer, min_value);
  Verdict v = to_verdict(r);
  if (min_value) *min_value = r.min_value;
  v.runtime_ms = elapsed_ms(t0);
  return v;
}

std::size_t timer_index(const vm::Program& p, const std::string& timer) {
  auto it = std::find(p.timers.begin(), p.timers.end(), timer);
  if (it == p.timers.end()) throw std::invalid_argument("unknown timer '" + timer + "'");
  return static_cast<std::size_t>(it - p.timers.begin());
}

}  // namespace

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Successful: return "successful";
    case VerdictKind::Failed: return "failed";
    case VerdictKind::BoundExceeded: return "bound_exceeded";
    case VerdictKind::RuntimeFault: return "runtime_fault";
  }
  return "?";
}

Verdict explore(const vm::Program& p, const Bounds& b, const ExploreOptions& o) {
  return run_parallel(p, b, o, std::nullopt, nullptr);
}

Verdict explore(const Ast& instrumented, const std::string& file, const Bounds& b, const ExploreOptions& o) {
  return explore(vm::lower(instrumented, file), b, o);
}

Verdict explore_serial(const vm::Program& p, const Bounds& b, const ExploreOptions& o) {
  return run_serial(p, b, o, std::nullopt, nullptr);
}

MinResult min_path_value(const vm::Program& p, const std::string& timer, const Bounds& b,
                         const ExploreOptions& o) {
  std::optional<std::uint64_t> value;
  const Verdict v = run_parallel(p, b, o, timer_index(p, timer), &value);
  MinResult r;
  r.kind = v.kind;
  r.paths_explored = v.paths_explored;
  r.bound_resource = v.bound_resource;
  if (v.kind == VerdictKind::Successful) r.value = value;
  return r;
}

ReplayResult replay(const vm::Program& p, const std::vector<std::int64_t>& choices, const Bounds& b) {
  ReplayResult r;
  vm::StepLimits limits;
  limits.unwind = b.unwind;
  limits.nondet_width = b.nondet_width;
  State s = vm::initial_state(p);
  while (true) {
    StepInfo info;
    const StepOutcome out = vm::run(p, s, limits, info);
    if (out == StepOutcome::Branched) {
      if (r.choices_used >= choices.size()) {
        r.choices_exhausted = true;
        r.outcome = out;
        break;
      }
      const std::int64_t v = choices[r.choices_used++];
      if (v < info.lo || v > info.hi) {
        r.choice_out_of_range = true;
        r.outcome = out;
        break;
      }
      vm::apply_choice(p, s, v);
      continue;
    }
    r.outcome = out;
    if (out != StepOutcome::Terminated && out != StepOutcome::Pruned) {
      const std::string what =
          out == StepOutcome::AssertionViolated ? p.assertions[info.assertion].expression : info.message;
      const std::string category = out == StepOutcome::AssertionViolated ? "assertion"
                                   : out == StepOutcome::Fault           ? "runtime fault"
                                   : out == StepOutcome::UnwindExceeded  ? "unwind"
                                                                         : "nondet_width";
      r.site = PropertySite{category, p.file, info.loc.line, p.functions[info.function].name, what};
    }
    break;
  }
  r.final_timers = s.timers.values();
  return r;
}

}  // namespace timedc
