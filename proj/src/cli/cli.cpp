#include "timedc/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "timedc/frontend.hpp"
#include "timedc/instrument.hpp"
#include "timedc/pipeline.hpp"
#include "timedc/scenarios.hpp"
#include "timedc/verifier.hpp"

namespace timedc::cli {
namespace {

struct VerifyFlags {
  std::uint32_t unwind = 128;
  std::uint64_t max_paths = 1000000;
  std::uint64_t nondet_width = 4096;
  unsigned timer_width = 64;
  unsigned jobs = 0;
  bool json = false;
  bool timing = false;
  bool no_merge = false;
};

void add_verify_flags(CLI::App* cmd, VerifyFlags& f) {
  cmd->add_option("--unwind", f.unwind, "Maximum iterations per loop entry")->check(CLI::PositiveNumber);
  cmd->add_option("--max-paths", f.max_paths, "Exploration budget in completed paths")->check(CLI::PositiveNumber);
  cmd->add_option("--nondet-width", f.nondet_width, "Maximum values per nondet call")->check(CLI::PositiveNumber);
  cmd->add_option("--timer-width", f.timer_width, "Timer width in bits")->check(CLI::IsMember({32, 64}));
  cmd->add_option("--jobs", f.jobs, "Worker threads (0: OpenMP default)");
  cmd->add_flag("--json", f.json, "Print the verdict as JSON");
  cmd->add_flag("--timing", f.timing, "Measure and report wall-clock runtime");
  cmd->add_flag("--no-merge", f.no_merge, "Do not skip already explored states");
}

Bounds bounds_of(const VerifyFlags& f) { return Bounds{f.unwind, f.nondet_width, f.max_paths}; }

ExploreOptions explore_options_of(const VerifyFlags& f) {
  ExploreOptions o;
  o.jobs = f.jobs;
  o.merge_states = !f.no_merge;
  return o;
}

int exit_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::Successful: return kSuccessful;
    case VerdictKind::Failed:
    case VerdictKind::RuntimeFault: return kFailed;
    case VerdictKind::BoundExceeded: return kBoundExceeded;
  }
  return kError;
}

void print_diagnostics(const std::vector<Diagnostic>& ds, std::ostream& err) {
  for (const auto& d : ds) err << d.format() << '\n';
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool write_file(const std::filesystem::path& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << path.string() << ": error: cannot write file\n";
    return false;
  }
  return true;
}

int cmd_translate(const std::string& input, const std::string& output, const std::set<std::string>& defines,
                  std::ostream& out, std::ostream& err) {
  const AnnotatedProgram p = load_annotated_file(input, FrontendOptions{defines});
  print_diagnostics(p.warnings, err);
  const std::string text = emit_c(instrument(p, input));
  if (output.empty() || output == "-") {
    out << text;
    return kSuccessful;
  }
  return write_file(output, text, err) ? kSuccessful : kError;
}

int cmd_verify(const std::string& input, const VerifyFlags& f, bool conventional, const std::set<std::string>& defines,
               std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CompileOptions co;
  co.defines = defines;
  co.timer_width = f.timer_width;
  co.conventional = conventional;
  const Compiled c = compile(read_source_file(input), co);
  print_diagnostics(c.warnings, err);
  Verdict v = explore(c.program, bounds_of(f), explore_options_of(f));
  v.runtime_ms = f.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
                          : 0.0;
  if (f.json) {
    out << verdict_to_json(v) << '\n';
  } else {
    out << format_verdict(v);
    if (f.timing) out << "Runtime: " << std::fixed << std::setprecision(3) << v.runtime_ms / 1000.0 << " s\n";
  }
  return exit_code(v.kind);
}

int cmd_replay(const std::string& input, const std::string& choices, const VerifyFlags& f,
               const std::set<std::string>& defines, std::ostream& out) {
  CompileOptions co;
  co.defines = defines;
  co.timer_width = f.timer_width;
  const Compiled c = compile(read_source_file(input), co);
  std::vector<std::int64_t> values;
  for (const auto& s : split_csv(choices)) values.push_back(std::stoll(s));
  const ReplayResult r = replay(c.program, values, bounds_of(f));
  switch (r.outcome) {
    case vm::StepOutcome::Terminated: out << "Terminated"; break;
    case vm::StepOutcome::AssertionViolated: out << "Assertion violated"; break;
    case vm::StepOutcome::Fault: out << "Runtime fault"; break;
    case vm::StepOutcome::Pruned: out << "Pruned by assumption"; break;
    default: out << "Stopped at a bound"; break;
  }
  out << " after " << r.choices_used << " choices";
  if (r.choices_exhausted) out << " (ran out of choices)";
  if (r.choice_out_of_range) out << " (choice out of range)";
  out << '\n';
  if (r.site) out << "  file " << r.site->file << " line " << r.site->line << "\n  " << r.site->expression << '\n';
  for (std::size_t i = 0; i < r.final_timers.size() && i < c.program.timers.size(); ++i) {
    out << "  " << c.program.timers[i] << " = " << r.final_timers[i] << '\n';
  }
  return r.outcome == vm::StepOutcome::AssertionViolated || r.outcome == vm::StepOutcome::Fault ? kFailed
                                                                                                  : kSuccessful;
}

struct ScenarioFlags {
  std::string rates;
  std::string status_rate = "0";
  std::string error_model = "deterministic-count";
  bool no_retry = false;
  std::string times = "5,10,20,25";
  std::optional<std::uint64_t> deadline;
  std::string emit_dir;
};

int cmd_scenario(const std::string& name, const ScenarioFlags& s, const VerifyFlags& f, std::ostream& out,
                 std::ostream& err) {
  scenarios::RunOptions ro;
  ro.bounds = bounds_of(f);
  ro.explore = explore_options_of(f);
  ro.timer_width = f.timer_width;
  scenarios::ScenarioReport report;
  if (name == "bridge") {
    scenarios::BridgeSpec spec;
    spec.crossing_times.clear();
    for (const auto& t : split_csv(s.times)) spec.crossing_times.push_back(std::stoull(t));
    if (s.deadline) spec.deadline = *s.deadline;
    report = scenarios::run_bridge(spec, ro);
  } else if (name == "oximeter") {
    scenarios::OximeterSpec spec;
    spec.error_model = scenarios::parse_error_model(s.error_model);
    spec.retry_on_checksum_error = !s.no_retry;
    spec.status_error_rate = scenarios::Rate::parse(s.status_rate);
    if (s.deadline) spec.deadline = *s.deadline;
    const auto rates = s.rates.empty() ? scenarios::default_rates() : scenarios::parse_rates(s.rates);
    report = scenarios::run_matrix(rates, spec, ro);
  } else {
    err << "error: unknown scenario '" << name << "' (expected bridge or oximeter)\n";
    return kError;
  }
  if (!s.emit_dir.empty()) {
    std::filesystem::create_directories(s.emit_dir);
    for (const auto& row : report.rows) {
      if (!write_file(std::filesystem::path(s.emit_dir) / row.file, row.source, err)) return kError;
    }
  }
  out << (f.json ? scenarios::report_to_json(report, f.timing) + "\n" : scenarios::format_report(report, f.timing));
  return kSuccessful;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timing-annotated MiniC translator and bounded verifier", "timedc"};
  app.require_subcommand(1);
  std::vector<std::string> defines;

  std::string input;
  std::string output;
  auto* translate = app.add_subcommand("translate", "Write the explicit-time C program");
  translate->add_option("input", input, "Annotated source")->required();
  translate->add_option("-o,--output", output, "Output file (default: stdout)");
  translate->add_option("--define", defines, "Preprocessor flag, repeatable");

  VerifyFlags vf;
  bool conventional = false;
  auto* verify = app.add_subcommand("verify", "Check timing assertions within bounds");
  verify->add_option("input", input, "Annotated or already instrumented source")->required();
  verify->add_option("--define", defines, "Preprocessor flag, repeatable");
  verify->add_flag("--conventional", conventional, "Ignore timing annotations; check only plain asserts");
  add_verify_flags(verify, vf);

  std::string choices;
  auto* replay_cmd = app.add_subcommand("replay", "Run one path with the given nondet choices");
  replay_cmd->add_option("input", input, "Annotated or already instrumented source")->required();
  replay_cmd->add_option("--choices", choices, "Comma-separated nondet values");
  replay_cmd->add_option("--define", defines, "Preprocessor flag, repeatable");
  replay_cmd->add_option("--unwind", vf.unwind, "Maximum iterations per loop entry");
  replay_cmd->add_option("--timer-width", vf.timer_width, "Timer width in bits")->check(CLI::IsMember({32, 64}));

  std::string scenario_name;
  ScenarioFlags sf;
  auto* scenario = app.add_subcommand("scenario", "Generate and verify a case study (bridge, oximeter)");
  scenario->add_option("name", scenario_name, "bridge or oximeter")->required();
  scenario->add_option("--rates", sf.rates, "Checksum error rates, e.g. 0,0.166,1/2,100%");
  scenario->add_option("--status-rate", sf.status_rate, "Status error rate");
  scenario->add_option("--error-model", sf.error_model, "deterministic-count or nondet-placement");
  scenario->add_flag("--no-retry", sf.no_retry, "A checksum error costs only the error print");
  scenario->add_option("--times", sf.times, "Bridge crossing times, non-decreasing");
  scenario->add_option("--deadline", sf.deadline, "Deadline in time units");
  scenario->add_option("--emit-dir", sf.emit_dir, "Write the generated sources here");
  add_verify_flags(scenario, vf);

  std::vector<std::string> argv_store{"timedc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccessful : kError;
  }
  const std::set<std::string> define_set(defines.begin(), defines.end());

  try {
    if (translate->parsed()) return cmd_translate(input, output, define_set, out, err);
    if (verify->parsed()) return cmd_verify(input, vf, conventional, define_set, out, err);
    if (replay_cmd->parsed()) return cmd_replay(input, choices, vf, define_set, out);
    if (scenario->parsed()) return cmd_scenario(scenario_name, sf, vf, out, err);
  } catch (const FrontendError& e) {
    print_diagnostics(e.diagnostics(), err);
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace timedc::cli
