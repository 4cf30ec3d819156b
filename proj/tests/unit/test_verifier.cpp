#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "random_program.hpp"
#include "timedc/interpreter.hpp"
#include "timedc/pipeline.hpp"
#include "timedc/scenarios.hpp"
#include "timedc/verifier.hpp"

using namespace timedc;

namespace {

vm::Program prog(const std::string& text, unsigned width = 64) {
  CompileOptions o;
  o.timer_width = width;
  return compile(SourceUnit("t.c", text), o).program;
}

Verdict check(const std::string& text, Bounds b = {}) { return explore(prog(text), b); }

ExploreOptions jobs(unsigned n) {
  ExploreOptions o;
  o.jobs = n;
  return o;
}

std::uint64_t timer_after_event(const vm::Program& p, const std::string& event, std::uint64_t before) {
  for (const auto& f : p.functions) {
    if (event == "call " + f.name) return before + f.duration;
  }
  return before;
}

}  // namespace

TEST(Step, TimerResetAssignment) {
  const vm::Program p = prog("//@ DEFINE-TIMER T;\n//@ WCET-FUNCTION [7]\nvoid f(void) {}\n"
                             "int main(void) {\n  f();\n  //@ RESET-TIMER T;\n  return 0;\n}");
  vm::State s = vm::initial_state(p);
  vm::StepInfo info;
  vm::StepLimits limits;
  EXPECT_EQ(vm::step(p, s, limits, info), vm::StepOutcome::Continue);  // call f
  EXPECT_EQ(s.timers[0], 7u);
  while (s.stack.size() > 1) vm::step(p, s, limits, info);
  EXPECT_EQ(s.timers[0], 7u);
  vm::step(p, s, limits, info);
  EXPECT_EQ(s.timers[0], 0u);
}

TEST(Step, NondetBranches) {
  const vm::Program p = prog("int main(void) { int x; x = nondet_int(0, 1); return x; }");
  vm::State s = vm::initial_state(p);
  vm::StepInfo info;
  EXPECT_EQ(vm::run(p, s, {}, info), vm::StepOutcome::Branched);
  EXPECT_EQ(info.lo, 0);
  EXPECT_EQ(info.hi, 1);
}

TEST(Step, EnteringAnnotatedFunctionAdvancesEveryTimer) {
  const vm::Program p = prog("//@ DEFINE-TIMER A;\n//@ DEFINE-TIMER B;\n//@ WCET-FUNCTION [5000]\n"
                             "void printHR(void) {}\nint main(void) {\n  //@ RESET-TIMER B;\n  printHR();\n  return 0;\n}");
  vm::State s = vm::initial_state(p);
  vm::StepInfo info;
  EXPECT_EQ(vm::run(p, s, {}, info), vm::StepOutcome::Terminated);
  EXPECT_EQ(s.timers.values(), (std::vector<std::uint64_t>{5000, 5000}));
}

TEST(Explore, Tautology) {
  const Verdict v = check("int main(void) { assert(1); return 0; }");
  EXPECT_EQ(v.kind, VerdictKind::Successful);
  EXPECT_EQ(v.paths_explored, 1u);
}

TEST(Explore, FirstCounterexampleIsLeastChoiceVector) {
  const Verdict v = check("int main(void) { int a; int b; a = nondet_int(0, 3); b = nondet_int(0, 3);\n"
                          "assert(a + b < 4); return 0; }");
  ASSERT_EQ(v.kind, VerdictKind::Failed);
  EXPECT_EQ(v.counterexample->nondet_choices, (std::vector<std::int64_t>{1, 3}));
}

TEST(Explore, AssertFalseAtEntry) {
  const Verdict v = check("int main(void) { assert(0); return 0; }");
  ASSERT_EQ(v.kind, VerdictKind::Failed);
  EXPECT_TRUE(v.counterexample->nondet_choices.empty());
  ASSERT_EQ(v.counterexample->states.size(), 2u);
  EXPECT_EQ(v.counterexample->states[0].event, "initial");
  EXPECT_EQ(v.counterexample->violated.line, 1u);
}

TEST(Explore, UnwindBound) {
  const std::string loop = "int main(void) { int i; for (i = 0; i < 10; i++) { } return 0; }";
  EXPECT_EQ(check(loop, Bounds{10, 4096, 1000}).kind, VerdictKind::Successful);
  const Verdict v = check(loop, Bounds{9, 4096, 1000});
  EXPECT_EQ(v.kind, VerdictKind::BoundExceeded);
  EXPECT_EQ(v.bound_resource, "unwind");
}

TEST(Explore, ViolationAfterBoundHitStillFails) {
  const Verdict v = check("int main(void) { int c; int i; c = nondet_int(0, 1);\n"
                          "if (c == 0) { i = 0; while (1) { i++; } }\nassert(c == 0);\nreturn 0; }",
                          Bounds{5, 4096, 1000});
  EXPECT_EQ(v.kind, VerdictKind::Failed);
  EXPECT_EQ(v.counterexample->violated.line, 3u);
}

TEST(Explore, NondetWidthBound) {
  const Verdict v = check("int main(void) { int x; x = nondet_int(0, 100); return 0; }", Bounds{128, 50, 1000});
  EXPECT_EQ(v.kind, VerdictKind::BoundExceeded);
  EXPECT_EQ(v.bound_resource, "nondet_width");
}

TEST(Explore, PathBudget) {
  const Verdict v = check("int main(void) { int x; int y; x = nondet_int(0, 9); y = nondet_int(0, 9); return 0; }",
                          Bounds{128, 4096, 20});
  EXPECT_EQ(v.kind, VerdictKind::BoundExceeded);
  EXPECT_EQ(v.bound_resource, "max_paths");
}

TEST(Explore, RuntimeFaults) {
  EXPECT_EQ(check("int main(void) { int x; int y; x = nondet_int(0, 2); y = 6 / (x - 1); return 0; }").kind,
            VerdictKind::RuntimeFault);
  const Verdict v = check("int a[3];\nint main(void) { int i; i = nondet_int(0, 3); a[i] = 1; return 0; }");
  ASSERT_EQ(v.kind, VerdictKind::RuntimeFault);
  EXPECT_EQ(v.counterexample->nondet_choices, (std::vector<std::int64_t>{3}));
}

TEST(Explore, TimerOverflowAtConfiguredWidth) {
  const std::string text = "//@ DEFINE-TIMER T;\n//@ WCET-FUNCTION [3000000000]\nvoid f(void) {}\n"
                           "int main(void) { f(); f(); return 0; }";
  EXPECT_EQ(explore(prog(text, 64), {}).kind, VerdictKind::Successful);
  EXPECT_EQ(explore(prog(text, 32), {}).kind, VerdictKind::RuntimeFault);
}

TEST(Explore, AssumePrunes) {
  EXPECT_EQ(check("int main(void) { int x; x = nondet_int(0, 5); __VERIFIER_assume(x < 3); assert(x != 4); return 0; }")
                .kind,
            VerdictKind::Successful);
}

TEST(Explore, ShortCircuitCallsOnlyWhenNeeded) {
  const std::string text =
      "//@ DEFINE-TIMER T;\n//@ WCET-FUNCTION [10]\nint probe(int v) { return v; }\n"
      "int main(void) {\n  int i;\n  //@ RESET-TIMER T;\n  for (i = 0; i < 5; i++) {\n"
      "    if ((i == 4) && probe(i)) { }\n  }\n  //@ ASSERT-TIMER (T == 10);\n  return 0;\n}";
  EXPECT_EQ(check(text).kind, VerdictKind::Successful);
}

TEST(Explore, IntegerTruncationOnStore) {
  EXPECT_EQ(check("int main(void) { unsigned char c; int x; c = 255; c = c + 1; x = 2147483647; x = x + 1;\n"
                  "assert(c == 0); assert(x < 0); return 0; }")
                .kind,
            VerdictKind::Successful);
}

TEST(Explore, ConventionalModeIgnoresTiming) {
  const std::string text = "//@ DEFINE-TIMER T;\n//@ WCET-FUNCTION [10]\nvoid f(void) {}\n"
                           "int main(void) {\n  f();\n  //@ ASSERT-TIMER (T < 5);\n  assert(1);\n  return 0;\n}";
  CompileOptions o;
  EXPECT_EQ(explore(compile(SourceUnit("t.c", text), o).program, {}).kind, VerdictKind::Failed);
  o.conventional = true;
  EXPECT_EQ(explore(compile(SourceUnit("t.c", text), o).program, {}).kind, VerdictKind::Successful);
}

TEST(Explore, MergingDoesNotChangeVerdicts) {
  std::mt19937_64 rng(77);
  ExploreOptions no_merge;
  no_merge.merge_states = false;
  for (int i = 0; i < 60; ++i) {
    const auto rp = timedc::testing::generate(rng);
    const vm::Program p = prog(rp.source);
    const Verdict a = explore(p, {});
    const Verdict b = explore(p, {}, no_merge);
    ASSERT_EQ(a.kind, b.kind) << rp.source;
    if (a.counterexample) {
      EXPECT_EQ(a.counterexample->nondet_choices, b.counterexample->nondet_choices);
    }
  }
}

TEST(Explore, RandomProgramsAgreeWithTruthTable) {
  std::mt19937_64 rng(4242);
  int failed = 0;
  for (int i = 0; i < 300; ++i) {
    const auto rp = timedc::testing::generate(rng);
    ASSERT_LE(rp.nondet_calls, 12);
    const auto table = timedc::testing::brute_force(rp);
    const vm::Program p = prog(rp.source);
    const Verdict v = explore(p, {});
    ASSERT_EQ(v.kind == VerdictKind::Failed, table.any_violation) << rp.source;
    ASSERT_TRUE(v.kind == VerdictKind::Failed || v.kind == VerdictKind::Successful) << rp.source;
    if (!table.any_violation) continue;
    ++failed;
    EXPECT_EQ(v.counterexample->nondet_choices, table.first_choices) << rp.source;
    EXPECT_EQ(v.counterexample->violated.line, table.first_line) << rp.source;
    const ReplayResult r = replay(p, v.counterexample->nondet_choices);
    EXPECT_EQ(r.outcome, vm::StepOutcome::AssertionViolated);
    ASSERT_TRUE(r.site.has_value());
    EXPECT_EQ(r.site->line, v.counterexample->violated.line);
  }
  EXPECT_GT(failed, 50);
  EXPECT_LT(failed, 290);
}

TEST(Explore, ParallelEqualsSerialForAnyWorkerCount) {
  std::mt19937_64 rng(99);
  std::vector<std::string> sources;
  for (int i = 0; i < 40; ++i) sources.push_back(timedc::testing::generate(rng).source);
  sources.push_back(scenarios::gen_bridge({}));
  scenarios::OximeterSpec oxi;
  oxi.error_model = scenarios::ErrorModel::NondetPlacement;
  oxi.error_rate = scenarios::Rate::parse("0.5");
  sources.push_back(scenarios::gen_oximeter(oxi));
  for (const auto& src : sources) {
    const vm::Program p = prog(src);
    Verdict serial = explore_serial(p, {});
    serial.runtime_ms = 0;
    const std::string want = verdict_to_json(serial);
    for (unsigned n : {1u, 2u, 3u, 8u}) {
      Verdict v = explore(p, {}, jobs(n));
      v.runtime_ms = 0;
      ASSERT_EQ(verdict_to_json(v), want) << "jobs=" << n << "\n" << src;
    }
  }
}

TEST(MinPathValue, BridgeInstances) {
  const auto min_of = [](const scenarios::BridgeSpec& s) {
    const MinResult m = min_path_value(prog(scenarios::gen_bridge(s)), scenarios::kBridgeTimer, {});
    EXPECT_EQ(m.kind, VerdictKind::Successful);
    return m.value.value_or(0);
  };
  scenarios::BridgeSpec s;
  EXPECT_EQ(min_of(s), 60u);
  s.fastest_ferries = true;
  EXPECT_EQ(min_of(s), 65u);
  EXPECT_EQ(min_of({{5, 10}, 60, scenarios::Comparison::Less, false}), 10u);
  EXPECT_EQ(min_of({{1, 1, 1, 1}, 5, scenarios::Comparison::LessEqual, false}), 5u);
}

TEST(MinPathValue, AgreesWithScheduleEnumerator) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    std::vector<std::uint64_t> t(n);
    for (auto& x : t) x = std::uniform_int_distribution<std::uint64_t>(1, 30)(rng);
    std::sort(t.begin(), t.end());
    for (bool ferry : {false, true}) {
      scenarios::BridgeSpec s{t, 60, scenarios::Comparison::Less, ferry};
      const MinResult m = min_path_value(prog(scenarios::gen_bridge(s)), scenarios::kBridgeTimer, {});
      ASSERT_EQ(m.kind, VerdictKind::Successful);
      EXPECT_EQ(*m.value, timedc::testing::bridge_min_schedule(t, ferry));
    }
  }
}

TEST(MinPathValue, MatchesAppendedAssertion) {
  const MinResult m = min_path_value(prog(scenarios::gen_bridge({})), scenarios::kBridgeTimer, {});
  for (std::uint64_t c = 50; c <= 70; ++c) {
    scenarios::BridgeSpec s{{5, 10, 20, 25}, c, scenarios::Comparison::GreaterEqual, false};
    const bool failed = explore(prog(scenarios::gen_bridge(s)), {}).kind == VerdictKind::Failed;
    EXPECT_EQ(*m.value < c, failed) << c;
  }
}

TEST(Counterexample, TimerTraceSteps) {
  const vm::Program p = prog(scenarios::gen_bridge({}));
  const Verdict v = explore(p, {});
  ASSERT_EQ(v.kind, VerdictKind::Failed);
  const auto& st = v.counterexample->states;
  ASSERT_GE(st.size(), 2u);
  EXPECT_GE(st.back().timers[0], 60u);
  for (std::size_t i = 1; i < st.size(); ++i) {
    const auto& ev = st[i].event;
    std::uint64_t want = st[i - 1].timers[0];
    if (ev.rfind("reset", 0) == 0) want = 0;
    else want = timer_after_event(p, ev, want);
    EXPECT_EQ(st[i].timers[0], want) << ev;
  }
}

TEST(Counterexample, TextReport) {
  const Verdict v = explore(prog(scenarios::gen_bridge({})), {});
  const std::string text = format_verdict(v);
  EXPECT_NE(text.find("Violated property:"), std::string::npos);
  EXPECT_NE(text.find("  assertion\n  __timing__ < 60\n"), std::string::npos);
  EXPECT_NE(text.find("VERIFICATION FAILED"), std::string::npos);
  scenarios::OximeterSpec oxi;
  oxi.error_rate = scenarios::Rate::parse("1");
  EXPECT_NE(format_verdict(explore(prog(scenarios::gen_oximeter(oxi)), {})).find("TIMER < 1000000"),
            std::string::npos);
  EXPECT_NE(format_verdict(check("int main(void) { return 0; }")).find("VERIFICATION SUCCESSFUL"), std::string::npos);
}

TEST(Counterexample, JsonFields) {
  const auto j = nlohmann::json::parse(verdict_to_json(explore(prog(scenarios::gen_bridge({})), {})));
  EXPECT_EQ(j["verdict"], "failed");
  EXPECT_EQ(j["violated_property"]["expr"], "__timing__ < 60");
  EXPECT_TRUE(j["nondet_choices"].is_array());
  EXPECT_TRUE(j["timer_trace"].back()["timers"]["__timing__"].get<std::uint64_t>() >= 60);
  EXPECT_TRUE(j.contains("paths_explored"));
  EXPECT_TRUE(j.contains("runtime_ms"));
  const auto ok = nlohmann::json::parse(verdict_to_json(check("int main(void) { return 0; }")));
  EXPECT_TRUE(ok["violated_property"].is_null());
}

TEST(Replay, ChoiceHandling) {
  const vm::Program p = prog("int main(void) { int x; x = nondet_int(0, 1); assert(x == 0); return 0; }");
  EXPECT_EQ(replay(p, {0}).outcome, vm::StepOutcome::Terminated);
  EXPECT_EQ(replay(p, {1}).outcome, vm::StepOutcome::AssertionViolated);
  EXPECT_TRUE(replay(p, {}).choices_exhausted);
  EXPECT_TRUE(replay(p, {7}).choice_out_of_range);
}
