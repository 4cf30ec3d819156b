#include <gtest/gtest.h>

#include <map>

#include "json.hpp"
#include "oracles.hpp"
#include "timedc/interpreter.hpp"
#include "timedc/pipeline.hpp"
#include "timedc/scenarios.hpp"

using namespace timedc;
using namespace timedc::scenarios;

namespace {

vm::Program prog(const std::string& text) { return compile(SourceUnit("s.c", text)).program; }

std::map<std::string, int> call_counts(const vm::Program& p, vm::State& s) {
  vm::StepInfo info;
  EXPECT_EQ(vm::run(p, s, {}, info), vm::StepOutcome::Terminated);
  std::map<std::string, int> n;
  for (const auto& e : s.trace_entries()) {
    if (e.kind == vm::TraceEntry::Kind::Call) ++n[p.functions[e.ref].name];
  }
  return n;
}

OximeterSpec at_rate(const std::string& rate) {
  OximeterSpec s;
  s.error_rate = Rate::parse(rate);
  return s;
}

}  // namespace

TEST(Rate, Parsing) {
  const Rate a = Rate::parse("0.166");
  EXPECT_EQ(a.num, 83u);
  EXPECT_EQ(a.den, 500u);
  EXPECT_EQ(a.floor_times(75), 12u);
  EXPECT_EQ(Rate::parse("1/6").floor_times(75), 12u);
  EXPECT_EQ(Rate::parse("33.3%").floor_times(75), 24u);
  EXPECT_EQ(Rate::parse(" 1.0 ").floor_times(75), 75u);
  EXPECT_EQ(Rate::parse(".5").floor_times(75), 37u);
  EXPECT_EQ(Rate::parse("0").floor_times(75), 0u);
  for (const char* bad : {"", "1.5", "-0.1", "abc", "1/0", "3/2", "0.", "1..2"}) {
    EXPECT_THROW(Rate::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rate, Percent) {
  EXPECT_EQ(Rate::parse("0.166").percent(), "16.6%");
  EXPECT_EQ(Rate::parse("0.20").percent(), "20%");
  EXPECT_EQ(Rate::parse("1/6").percent(), "16.7%");
  EXPECT_EQ(Rate::parse("1").percent(), "100%");
}

TEST(Rate, Defaults) {
  std::vector<std::uint64_t> errors;
  for (const auto& r : default_rates()) errors.push_back(r.floor_times(75));
  EXPECT_EQ(errors, (std::vector<std::uint64_t>{0, 12, 15, 18, 24, 37, 75}));
}

TEST(Bridge, Validation) {
  EXPECT_THROW(gen_bridge({{10, 5, 20, 25}, 60, Comparison::Less, false}), std::invalid_argument);
  EXPECT_THROW(gen_bridge({{5}, 60, Comparison::Less, false}), std::invalid_argument);
  EXPECT_THROW(gen_bridge({{0, 5}, 60, Comparison::Less, false}), std::invalid_argument);
  EXPECT_EQ(parse_comparison(">="), Comparison::GreaterEqual);
  EXPECT_THROW(parse_comparison("=>"), std::invalid_argument);
}

TEST(Bridge, SourceShape) {
  const std::string src = gen_bridge({});
  EXPECT_NE(src.find("//@ DEFINE-TIMER __timing__;"), std::string::npos);
  EXPECT_NE(src.find("//@ ASSERT-TIMER (__timing__ < 60);"), std::string::npos);
  EXPECT_NE(src.find("//@ WCET-FUNCTION [25]"), std::string::npos);
  EXPECT_EQ(bridge_file_name({}), "__bridge__LT60.c");
}

TEST(Bridge, VerdictPair) {
  const ScenarioReport r = run_bridge({});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].verdict.kind, VerdictKind::Failed);
  EXPECT_GE(r.rows[0].verdict.counterexample->states.back().timers[0], 60u);
  EXPECT_EQ(r.rows[1].verdict.kind, VerdictKind::Successful);
  ASSERT_EQ(r.facts.size(), 2u);
  EXPECT_EQ(r.facts[0].second, 60u);
  EXPECT_EQ(r.facts[1].second, 65u);
}

TEST(Bridge, EqualSpeeds) {
  BridgeSpec s{{1, 1, 1, 1}, 5, Comparison::LessEqual, false};
  EXPECT_EQ(explore(prog(gen_bridge(s)), {}).kind, VerdictKind::Successful);
  s.deadline = 4;
  EXPECT_EQ(explore(prog(gen_bridge(s)), {}).kind, VerdictKind::Failed);
  EXPECT_EQ(timedc::testing::bridge_min_schedule({1, 1, 1, 1}, false), 5u);
}

TEST(Oximeter, ZeroErrorDurationMatchesCallCountOracle) {
  const std::uint64_t oracle = timedc::testing::OximeterCallCounts{}.total(0, 0, true);
  ASSERT_EQ(oracle, 592300u);
  const vm::Program p = prog(gen_oximeter({}));
  const ReplayResult r = replay(p, {});
  EXPECT_EQ(r.outcome, vm::StepOutcome::Terminated);
  EXPECT_EQ(r.final_timers, (std::vector<std::uint64_t>{oracle}));
}

TEST(Oximeter, DurationMatchesOracleAtEveryErrorCount) {
  const timedc::testing::OximeterCallCounts oracle;
  for (bool retry : {true, false}) {
    for (const char* rate : {"0", "0.1", "0.166", "1/3", "0.5", "0.9", "1"}) {
      OximeterSpec s = at_rate(rate);
      s.retry_on_checksum_error = retry;
      s.status_error_rate = Rate::parse("0.04");
      const ReplayResult r = replay(prog(gen_oximeter(s)), {});
      EXPECT_EQ(r.final_timers.at(0), oracle.total(s.checksum_errors(), s.status_errors(), retry)) << rate;
    }
  }
}

TEST(Oximeter, FrameAccounting) {
  const vm::Program p = prog(gen_oximeter({}));
  vm::State s = vm::initial_state(p);
  const auto n = call_counts(p, s);
  EXPECT_EQ(n.at("receiveSensorData"), 375);
  EXPECT_EQ(n.at("checkStatus"), 75);
  EXPECT_EQ(n.at("checkSum"), 75);
  EXPECT_EQ(n.count("printCheckSumError"), 0u);
  EXPECT_EQ(n.at("storeHRMSB") + n.at("storeHRLSB") + n.at("storeSpO2"), 9);
  EXPECT_EQ(n.at("insertLog"), 2);
}

TEST(Oximeter, RetryRereadsTheFrame) {
  const vm::Program p = prog(gen_oximeter(at_rate("0.2")));
  vm::State s = vm::initial_state(p);
  const auto n = call_counts(p, s);
  EXPECT_EQ(n.at("printCheckSumError"), 15);
  EXPECT_EQ(n.at("receiveSensorData"), 375 + 15 * 5);
}

TEST(Oximeter, Endpoints) {
  EXPECT_EQ(explore(prog(gen_oximeter(at_rate("0"))), {}).kind, VerdictKind::Successful);
  const Verdict v = explore(prog(gen_oximeter(at_rate("1.0"))), {});
  ASSERT_EQ(v.kind, VerdictKind::Failed);
  EXPECT_EQ(v.counterexample->violated.expression, "TIMER < 1000000");
}

TEST(Oximeter, HardwareSectionIsOptional) {
  const std::string src = gen_oximeter({});
  CompileOptions o;
  o.defines = {"HARDWARE"};
  EXPECT_EQ(explore(compile(SourceUnit("s.c", src), o).program, {}).kind, VerdictKind::Successful);
}

TEST(Oximeter, DefaultMatrix) {
  const ScenarioReport r = run_matrix(default_rates(), {});
  std::vector<VerdictKind> kinds;
  for (const auto& row : r.rows) kinds.push_back(row.verdict.kind);
  const auto S = VerdictKind::Successful;
  const auto F = VerdictKind::Failed;
  EXPECT_EQ(kinds, (std::vector<VerdictKind>{S, S, S, S, S, F, F}));
  EXPECT_EQ(r.model, "retry-on-checksum-error (deterministic-count)");
  EXPECT_NE(format_report(r).find("Model: retry-on-checksum-error"), std::string::npos);
}

TEST(Oximeter, NondetPlacementAgrees) {
  OximeterSpec base;
  base.error_model = ErrorModel::NondetPlacement;
  const ScenarioReport nd = run_matrix(default_rates(), base);
  const ScenarioReport det = run_matrix(default_rates(), {});
  for (std::size_t i = 0; i < nd.rows.size(); ++i) EXPECT_EQ(nd.rows[i].verdict.kind, det.rows[i].verdict.kind) << i;
}

TEST(Oximeter, PrintOnlyModel) {
  OximeterSpec base;
  base.retry_on_checksum_error = false;
  const ScenarioReport r = run_matrix(parse_rates("0.5,1"), base);
  EXPECT_EQ(r.rows[0].verdict.kind, VerdictKind::Successful);
  EXPECT_EQ(r.rows[1].verdict.kind, VerdictKind::Failed);
  EXPECT_EQ(r.model, "print-only (deterministic-count)");
}

TEST(Oximeter, Monotonic) {
  bool failed = false;
  for (int k = 0; k <= 75; ++k) {
    const Verdict v = explore(prog(gen_oximeter(at_rate(std::to_string(k) + "/75"))), {});
    if (failed) {
      EXPECT_EQ(v.kind, VerdictKind::Failed) << k;
    }
    failed = v.kind == VerdictKind::Failed;
    // 592,300 + 15,000 k < 1,000,000 exactly when k <= 27
    EXPECT_EQ(failed, k >= 28) << k;
  }
}

TEST(Report, EmptyAndSingleRow) {
  EXPECT_TRUE(run_matrix({}, {}).rows.empty());
  const ScenarioReport r = run_matrix(parse_rates("0"), {});
  ASSERT_EQ(r.rows.size(), 1u);
  const std::string text = format_report(r, false);
  EXPECT_NE(text.find("% Checksum Error"), std::string::npos);
  EXPECT_NE(text.find("successful"), std::string::npos);
  EXPECT_EQ(text.find("Time(s)"), std::string::npos);
  EXPECT_NE(format_report(r, true).find("Time(s)"), std::string::npos);
}

TEST(Report, JsonIsStable) {
  const ScenarioReport r = run_matrix(parse_rates("0,1"), {});
  const std::string a = report_to_json(r);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["result"]["verdict"], "failed");
  EXPECT_EQ(a, report_to_json(run_matrix(parse_rates("0,1"), {})));
}
