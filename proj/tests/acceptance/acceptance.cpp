// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "c_tokens.hpp"
#include "model_properties.hpp"
#include "oracles.hpp"
#include "random_program.hpp"
#include "timedc/cli.hpp"
#include "timedc/frontend.hpp"
#include "timedc/instrument.hpp"
#include "timedc/pipeline.hpp"
#include "timedc/scenarios.hpp"
#include "timedc/verifier.hpp"

using namespace timedc;
namespace sc = timedc::scenarios;

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
  vm::Program program;
  Counterexample cex;
  std::string origin;
};

// Failures collected by criteria 1, 5, 6 and 7 for the replay check.
std::vector<Failure> g_failures;

vm::Program prog(const std::string& file, const std::string& text) { return compile(SourceUnit(file, text)).program; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void keep(const vm::Program& p, const Verdict& v, const std::string& origin) {
  if (v.kind == VerdictKind::Failed && v.counterexample) g_failures.push_back({p, *v.counterexample, origin});
}

bool c1(std::string& note) {
  const auto t0 = Clock::now();
  sc::BridgeSpec lt;
  sc::BridgeSpec ge;
  ge.comparison = sc::Comparison::GreaterEqual;
  const vm::Program plt = prog(sc::bridge_file_name(lt), sc::gen_bridge(lt));
  const vm::Program pge = prog(sc::bridge_file_name(ge), sc::gen_bridge(ge));
  const Verdict a = explore(plt, {});
  const Verdict b = explore(pge, {});
  const double t = seconds_since(t0);
  keep(plt, a, "bridge <60");
  const bool a_ok = a.kind == VerdictKind::Failed && a.counterexample && !a.counterexample->states.empty() &&
                    a.counterexample->states.back().timers.at(0) >= 60 &&
                    a.counterexample->violated.expression == "__timing__ < 60";
  note = "<60: " + std::string(to_string(a.kind)) +
         (a.counterexample ? " (final " + std::to_string(a.counterexample->states.back().timers.at(0)) + ")" : "") +
         ", >=60: " + to_string(b.kind) + ", " + std::to_string(t) + " s";
  return a_ok && b.kind == VerdictKind::Successful && t < 5.0;
}

bool c2(std::string& note) {
  sc::BridgeSpec s;
  const MinResult all = min_path_value(prog("b.c", sc::gen_bridge(s)), sc::kBridgeTimer, {});
  s.fastest_ferries = true;
  const MinResult ferry = min_path_value(prog("b.c", sc::gen_bridge(s)), sc::kBridgeTimer, {});
  const std::uint64_t o_all = testing::bridge_min_schedule(s.crossing_times, false);
  const std::uint64_t o_ferry = testing::bridge_min_schedule(s.crossing_times, true);
  note = "min " + std::to_string(all.value.value_or(0)) + " (enumerator " + std::to_string(o_all) +
         "), fastest ferries " + std::to_string(ferry.value.value_or(0)) + " (enumerator " +
         std::to_string(o_ferry) + ")";
  return all.value == 60u && ferry.value == 65u && o_all == 60 && o_ferry == 65;
}

bool c3(std::string& note) {
  const std::string out =
      emit_c(instrument(load_annotated(SourceUnit("skeleton.c", slurp(TIMEDC_FIXTURES "/skeleton.c"))), "skeleton.c"));
  const auto toks = testing::c_tokens(out);
  const auto segments = testing::elided_segments(slurp(TIMEDC_FIXTURES "/skeleton_reference.txt"));
  std::size_t at = 0;
  std::size_t matched = 0;
  std::size_t tokens = 0;
  for (const auto& seg : segments) {
    const auto want = testing::c_tokens(seg);
    bool found = false;
    for (std::size_t i = at; i + want.size() <= toks.size(); ++i) {
      if (std::equal(want.begin(), want.end(), toks.begin() + static_cast<std::ptrdiff_t>(i))) {
        at = i + want.size();
        found = true;
        break;
      }
    }
    if (!found) break;
    ++matched;
    tokens += want.size();
  }
  const bool golden = out == slurp(TIMEDC_GOLDEN "/skeleton.c");
  note = std::to_string(matched) + "/" + std::to_string(segments.size()) + " segments, " + std::to_string(tokens) +
         " tokens in order; golden file " + (golden ? "identical" : "differs");
  return matched == segments.size() && !segments.empty() && golden;
}

bool c4(std::string& note) {
  const auto t = testing::check_model_properties(1000003, 1000);
  const model::DurationMap d{{"f1", 1}, {"f2", 2}, {"f3", 3}, {"f4", 4}, {"f5", 5}};
  const std::uint64_t worked = model::path_duration(testing::worked_path(d), d);
  note = std::to_string(t.paths) + " random paths, " + std::to_string(t.failures.size()) +
         " property failures; worked path " + std::to_string(worked);
  return t.ok() && t.paths >= 1000 && worked == 15;
}

bool c5(std::string& note) {
  const std::uint64_t oracle = testing::OximeterCallCounts{}.total(0, 0, true);
  sc::OximeterSpec zero;
  sc::OximeterSpec full;
  full.error_rate = sc::Rate::parse("1.0");
  const vm::Program p0 = prog("oxi0.c", sc::gen_oximeter(zero));
  const vm::Program p1 = prog("oxi100.c", sc::gen_oximeter(full));
  const Verdict a = explore(p0, {});
  const Verdict b = explore(p1, {});
  keep(p1, b, "oximeter 100%");
  const ReplayResult run = replay(p0, {});
  const std::uint64_t final_timer = run.final_timers.empty() ? 0 : run.final_timers[0];
  note = "0%: " + std::string(to_string(a.kind)) + ", 100%: " + to_string(b.kind) + ", zero-error timer " +
         std::to_string(final_timer) + " (oracle " + std::to_string(oracle) + ")";
  return oracle == 592300 && final_timer == oracle && a.kind == VerdictKind::Successful &&
         b.kind == VerdictKind::Failed;
}

bool c6(std::string& note) {
  const auto t0 = Clock::now();
  const sc::ScenarioReport r = sc::run_matrix(sc::default_rates(), {});
  const double t = seconds_since(t0);
  std::string kinds;
  std::size_t ok = 0;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    kinds += (i ? "," : "") + std::string(row.verdict.kind == VerdictKind::Successful ? "S" : "F");
    ok += row.verdict.kind == VerdictKind::Successful && i < 5;
    bad += row.verdict.kind == VerdictKind::Failed && i >= 5;
    if (row.verdict.kind == VerdictKind::Failed) keep(prog(row.file, row.source), row.verdict, "matrix " + row.label);
  }
  const std::string text = sc::format_report(r);
  const bool model_shown = text.find("Model: " + r.model) != std::string::npos &&
                           r.model.find("retry-on-checksum-error") != std::string::npos;
  note = kinds + " under " + r.model + ", " + std::to_string(t) + " s";
  return r.rows.size() == 7 && ok == 5 && bad == 2 && model_shown && t < 60.0;
}

bool c7(std::string& note) {
  std::mt19937_64 rng(7007);
  std::size_t agree = 0;
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    const auto rp = testing::generate(rng);
    const auto table = testing::brute_force(rp);
    const vm::Program p = prog("rand" + std::to_string(i) + ".c", rp.source);
    const Verdict v = explore(p, {});
    keep(p, v, "random #" + std::to_string(i));
    bool same = rp.nondet_calls <= 12 && (v.kind == VerdictKind::Failed) == table.any_violation &&
                (v.kind == VerdictKind::Failed || v.kind == VerdictKind::Successful);
    if (same && table.any_violation) {
      ++violations;
      same = v.counterexample->nondet_choices == table.first_choices &&
             v.counterexample->violated.line == table.first_line;
    }
    agree += same;
  }
  note = std::to_string(agree) + "/100 agree (" + std::to_string(violations) + " with violations)";
  return agree == 100;
}

bool c8(std::string& note) {
  std::size_t ok = 0;
  std::string first_bad;
  for (const auto& f : g_failures) {
    const ReplayResult r = replay(f.program, f.cex.nondet_choices);
    const bool same = r.outcome == vm::StepOutcome::AssertionViolated && r.site &&
                      r.site->line == f.cex.violated.line && r.site->expression == f.cex.violated.expression &&
                      r.choices_used == f.cex.nondet_choices.size();
    ok += same;
    if (!same && first_bad.empty()) first_bad = f.origin;
  }
  note = std::to_string(ok) + "/" + std::to_string(g_failures.size()) + " failures replayed" +
         (first_bad.empty() ? "" : ", first mismatch: " + first_bad);
  return ok == g_failures.size() && g_failures.size() >= 4;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

bool c9(std::string& note) {
  const auto dir = std::filesystem::temp_directory_path() / "timedc_acceptance";
  std::filesystem::create_directories(dir);
  sc::OximeterSpec nd;
  nd.error_model = sc::ErrorModel::NondetPlacement;
  nd.error_rate = sc::Rate::parse("0.5");
  std::mt19937_64 rng(9);
  const std::vector<std::pair<std::string, std::string>> inputs{
      {"bridge.c", sc::gen_bridge({})},
      {"oximeter_nd.c", sc::gen_oximeter(nd)},
      {"random.c", testing::generate(rng).source},
  };
  std::vector<std::vector<std::string>> commands;
  for (const auto& [name, text] : inputs) {
    const auto path = (dir / name).string();
    std::ofstream(path) << text;
    commands.push_back({"translate", path});
    for (const char* jobs : {"1", "2", "4", "7"}) commands.push_back({"verify", path, "--json", "--jobs", jobs});
  }
  for (const char* jobs : {"1", "3"}) {
    commands.push_back({"scenario", "bridge", "--json", "--jobs", jobs});
    commands.push_back({"scenario", "oximeter", "--json", "--jobs", jobs});
    commands.push_back({"scenario", "oximeter", "--json", "--error-model", "nondet-placement", "--jobs", jobs});
  }
  std::size_t identical = 0;
  std::size_t groups = 0;
  std::map<std::string, std::string> by_command;
  for (const auto& cmd : commands) {
    std::string key;
    for (std::size_t i = 0; i < cmd.size(); ++i) {
      if (i > 0 && cmd[i - 1] == "--jobs") continue;
      key += cmd[i] + ' ';
    }
    const std::string first = run_cli(cmd);
    const std::string second = run_cli(cmd);
    auto [it, fresh] = by_command.emplace(key, first);
    groups += fresh;
    identical += first == second && it->second == first;
  }
  std::filesystem::remove_all(dir);
  note = std::to_string(identical) + "/" + std::to_string(commands.size()) + " runs identical across " +
         std::to_string(groups) + " commands and worker counts";
  return identical == commands.size();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<bool(std::string&)>>> criteria{
      {"bridge verdict pair", c1},       {"bridge minimum crossing time", c2},
      {"translation golden file", c3},   {"path-duration algebra", c4},
      {"oximeter endpoints", c5},        {"oximeter matrix", c6},
      {"verifier vs truth table", c7},   {"counterexample replay", c8},
      {"deterministic JSON", c9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = criteria[i].second(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- " << note
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
