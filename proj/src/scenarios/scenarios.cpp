#include "timedc/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "timedc/pipeline.hpp"

namespace timedc::scenarios {
namespace {

std::uint64_t parse_digits(const std::string& s, const std::string& whole) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("malformed rate '" + whole + "'");
  }
  return std::stoull(s);
}

std::uint64_t pow10(std::size_t n) {
  std::uint64_t p = 1;
  while (n-- > 0) p *= 10;
  return p;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

}  // namespace

Rate Rate::parse(const std::string& raw) {
  const std::string text = trim(raw);
  std::string body = text;
  std::uint64_t scale = 1;
  if (!body.empty() && body.back() == '%') {
    body.pop_back();
    scale = 100;
  }
  Rate r;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    r.num = parse_digits(body.substr(0, slash), text);
    r.den = parse_digits(body.substr(slash + 1), text);
  } else {
    const auto dot = body.find('.');
    std::string whole = body.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed rate '" + text + "'");
    if (frac.size() > 9) throw std::invalid_argument("too many decimals in rate '" + text + "'");
    if (dot != std::string::npos && frac.empty()) throw std::invalid_argument("malformed rate '" + text + "'");
    const std::uint64_t w = whole.empty() ? 0 : parse_digits(whole, text);
    const std::uint64_t f = frac.empty() ? 0 : parse_digits(frac, text);
    r.den = pow10(frac.size());
    r.num = w * r.den + f;
  }
  if (r.den == 0) throw std::invalid_argument("zero denominator in rate '" + text + "'");
  r.den *= scale;
  const std::uint64_t g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  if (r.num > r.den) throw std::invalid_argument("rate '" + text + "' is above 1");
  r.text = text;
  return r;
}

std::uint64_t Rate::floor_times(std::uint64_t n) const { return num * n / den; }

std::string Rate::percent() const {
  const std::uint64_t tenths = (num * 2000 + den) / (2 * den);
  std::string out = std::to_string(tenths / 10);
  if (tenths % 10 != 0) out += "." + std::to_string(tenths % 10);
  return out + "%";
}

std::vector<Rate> default_rates() { return parse_rates("0,0.166,0.20,0.25,0.333,0.50,1.0"); }

std::vector<Rate> parse_rates(const std::string& csv) {
  std::vector<Rate> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rate::parse(item));
  return out;
}

// ---- bridge ----

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Equal: return "==";
    case Comparison::NotEqual: return "!=";
  }
  return "?";
}

Comparison parse_comparison(const std::string& op) {
  for (auto c : {Comparison::Less, Comparison::LessEqual, Comparison::Greater, Comparison::GreaterEqual,
                 Comparison::Equal, Comparison::NotEqual}) {
    if (op == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown comparison '" + op + "'");
}

void validate(const BridgeSpec& spec) {
  const auto& t = spec.crossing_times;
  if (t.size() < 2 || t.size() > 8) throw std::invalid_argument("bridge needs between 2 and 8 persons");
  if (!std::is_sorted(t.begin(), t.end())) throw std::invalid_argument("crossing times must be non-decreasing");
  if (t.front() == 0) throw std::invalid_argument("crossing times must be positive");
}

std::string bridge_file_name(const BridgeSpec& spec) {
  static const char* tags[] = {"LT", "LE", "GT", "GE", "EQ", "NE"};
  std::string name = "__bridge__";
  name += tags[static_cast<int>(spec.comparison)];
  name += std::to_string(spec.deadline);
  if (spec.fastest_ferries) name += "_ferry";
  return name + ".c";
}

std::string gen_bridge(const BridgeSpec& spec) {
  validate(spec);
  const auto& t = spec.crossing_times;
  const std::size_t n = t.size();
  const std::string last = std::to_string(n - 1);
  std::ostringstream os;
  os << "// Bridge crossing: " << n << " persons, one lamp, at most two on the bridge.\n"
     << "// A pair moves at the speed of its slower member.\n"
     << "//@ DEFINE-TIMER " << kBridgeTimer << ";\n\n"
     << "int side[" << n << "];\n"
     << "int lamp;\n"
     << "int crossed;\n\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << "//@ WCET-FUNCTION [" << t[i] << "]\n"
       << "void walkP" << i + 1 << "(void) {\n}\n\n";
  }
  os << "//@ WCET-FUNCTION [0]\n"
     << "void walk(int p) {\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << (i == 0 ? "  if" : "  } else if") << " (p == " << i << ") {\n"
       << "    walkP" << i + 1 << "();\n";
  }
  os << "  }\n}\n\n";
  os << "int main(void) {\n"
     << "  int a;\n"
     << "  int b;\n"
     << "  int r;\n"
     << "  //@ RESET-TIMER " << kBridgeTimer << ";\n"
     << "  while (crossed < " << n << ") {\n"
     << "    a = nondet_int(0, " << last << ");\n"
     << "    b = nondet_int(0, " << last << ");\n"
     << "    __VERIFIER_assume(a < b);\n"
     << "    __VERIFIER_assume(side[a] == lamp && side[b] == lamp);\n";
  if (spec.fastest_ferries) os << "    __VERIFIER_assume(a == 0);\n";
  os << "    side[a] = 1;\n"
     << "    side[b] = 1;\n"
     << "    lamp = 1;\n"
     << "    crossed = crossed + 2;\n"
     << "    walk(b);\n"
     << "    if (crossed < " << n << ") {\n"
     << "      r = nondet_int(0, " << last << ");\n"
     << "      __VERIFIER_assume(side[r] == lamp);\n";
  if (spec.fastest_ferries) os << "      __VERIFIER_assume(r == 0);\n";
  os << "      side[r] = 0;\n"
     << "      lamp = 0;\n"
     << "      crossed = crossed - 1;\n"
     << "      walk(r);\n"
     << "    }\n"
     << "  }\n"
     << "  //@ ASSERT-TIMER (" << kBridgeTimer << ' ' << to_string(spec.comparison) << ' ' << spec.deadline
     << ");\n"
     << "  return 0;\n"
     << "}\n";
  return os.str();
}

// ---- oximeter ----

const char* to_string(ErrorModel m) {
  return m == ErrorModel::DeterministicCount ? "deterministic-count" : "nondet-placement";
}

ErrorModel parse_error_model(const std::string& name) {
  if (name == "deterministic-count") return ErrorModel::DeterministicCount;
  if (name == "nondet-placement") return ErrorModel::NondetPlacement;
  throw std::invalid_argument("unknown error model '" + name + "'");
}

std::vector<std::pair<std::string, std::uint64_t>> OximeterSpec::table_wcet() {
  return {
      {"receiveSensorData", 1000}, {"checkStatus", 700},   {"printStatusError", 10000},
      {"checkSum", 2000},          {"printCheckSumError", 10000}, {"storeHRMSB", 200},
      {"storeHRLSB", 200},         {"storeSpO2", 200},     {"averageHR", 800},
      {"averageSpO2", 800},        {"getHR", 200},         {"getSpO2", 200},
      {"printHR", 5000},           {"printSpO2", 5000},    {"insertLog", 500},
  };
}

std::uint64_t OximeterSpec::wcet_of(const std::string& function) const {
  for (const auto& [name, d] : wcet) {
    if (name == function) return d;
  }
  throw std::invalid_argument("no WCET for " + function);
}

void validate(const OximeterSpec& spec) {
  if (spec.packets == 0 || spec.frames_per_packet == 0 || spec.bytes_per_frame < 5) {
    throw std::invalid_argument("oximeter needs at least one packet, one frame and five bytes per frame");
  }
  if (spec.frames_per_packet < 3) throw std::invalid_argument("oximeter needs at least three frames per packet");
  for (const auto& [name, d] : OximeterSpec::table_wcet()) spec.wcet_of(name);
}

std::string oximeter_file_name(const OximeterSpec& spec, std::size_t id) {
  std::string pct = spec.error_rate.percent();
  pct.pop_back();
  std::replace(pct.begin(), pct.end(), '.', '_');
  return "__oximeter__" + std::to_string(id) + "_" + pct + ".c";
}

std::string model_name(const OximeterSpec& spec) {
  std::string m = spec.retry_on_checksum_error ? "retry-on-checksum-error" : "print-only";
  m += " (";
  m += to_string(spec.error_model);
  m += ")";
  return m;
}

std::string gen_oximeter(const OximeterSpec& spec) {
  validate(spec);
  const auto w = [&](const char* f) { return "//@ WCET-FUNCTION [" + std::to_string(spec.wcet_of(f)) + "]\n"; };
  const bool nondet = spec.error_model == ErrorModel::NondetPlacement;
  const std::uint32_t bytes = spec.bytes_per_frame;
  std::ostringstream os;
  os << "// Pulse oximeter: " << spec.packets << " packets per second, " << spec.frames_per_packet
     << " frames per packet, " << bytes << " bytes per frame.\n"
     << "// Checksum errors: " << spec.checksum_errors() << " of " << spec.frames() << " frames ("
     << (nondet ? "any placement, at most that many" : "earliest frames") << ").\n"
     << "// Cost model: " << model_name(spec) << ".\n"
     << "#if HARDWARE\n"
     << "extern int readSerialPort(void);\n"
     << "#endif\n"
     << "extern void printLCD(char text[], unsigned int line, unsigned int column);\n\n"
     << "//@ DEFINE-TIMER " << kOximeterTimer << ";\n\n"
     << "const int LINE1 = 1;\n"
     << "const int LINE2 = 2;\n"
     << "const int STATUS_ERRORS = " << spec.status_errors() << ";\n"
     << "const int CHECKSUM_ERRORS = " << spec.checksum_errors() << ";\n\n"
     << "unsigned char Byte[" << bytes << "];\n"
     << "int hrMSB[" << spec.packets << "];\n"
     << "int hrLSB[" << spec.packets << "];\n"
     << "int spo2[" << spec.packets << "];\n"
     << "int avgHR;\n"
     << "int avgSpO2;\n"
     << "unsigned int logBuffer[2];\n"
     << "int logSize;\n";
  if (nondet) os << "int checksumErrors;\n";
  os << '\n';

  os << w("receiveSensorData") << "unsigned char receiveSensorData(void) {\n"
     << "#if HARDWARE\n"
     << "  return readSerialPort();\n"
     << "#else\n"
     << "  return 1;\n"
     << "#endif\n"
     << "}\n\n";
  os << w("checkStatus") << "int checkStatus(int frame) {\n"
     << "  return frame < STATUS_ERRORS;\n"
     << "}\n\n";
  os << w("printStatusError") << "void printStatusError(unsigned int line) {\n"
     << "  char text[16];\n"
     << "  printLCD(text, line, 1);\n"
     << "}\n\n";
  os << w("checkSum") << "int checkSum(int frame) {\n";
  if (nondet) {
    os << "  int e;\n"
       << "  e = 0;\n"
       << "  if (checksumErrors < CHECKSUM_ERRORS) {\n"
       << "    e = nondet_int(0, 1);\n"
       << "  }\n"
       << "  checksumErrors = checksumErrors + e;\n"
       << "  return e;\n";
  } else {
    os << "  return frame < CHECKSUM_ERRORS;\n";
  }
  os << "}\n\n";
  os << w("printCheckSumError") << "void printCheckSumError(unsigned int line) {\n"
     << "  char text[16];\n"
     << "  printLCD(text, line, 1);\n"
     << "}\n\n";
  for (const char* f : {"storeHRMSB", "storeHRLSB", "storeSpO2"}) {
    const std::string arr = std::string(f) == "storeHRMSB" ? "hrMSB" : std::string(f) == "storeHRLSB" ? "hrLSB" : "spo2";
    os << w(f) << "void " << f << "(unsigned char value, int packet) {\n"
       << "  " << arr << "[packet] = value;\n"
       << "}\n\n";
  }
  os << w("averageHR") << "void averageHR(void) {\n"
     << "  int k;\n"
     << "  int sum;\n"
     << "  sum = 0;\n"
     << "  for (k = 0; k < " << spec.packets << "; k++) {\n"
     << "    sum = sum + hrMSB[k] * 256 + hrLSB[k];\n"
     << "  }\n"
     << "  avgHR = sum / " << spec.packets << ";\n"
     << "}\n\n";
  os << w("averageSpO2") << "void averageSpO2(void) {\n"
     << "  int k;\n"
     << "  int sum;\n"
     << "  sum = 0;\n"
     << "  for (k = 0; k < " << spec.packets << "; k++) {\n"
     << "    sum = sum + spo2[k];\n"
     << "  }\n"
     << "  avgSpO2 = sum / " << spec.packets << ";\n"
     << "}\n\n";
  os << w("getHR") << "int getHR(void) {\n  return avgHR;\n}\n\n";
  os << w("getSpO2") << "int getSpO2(void) {\n  return avgSpO2;\n}\n\n";
  os << w("printHR") << "void printHR(unsigned int line, unsigned int valueHR) {\n"
     << "  char sHR[16];\n"
     << "  printLCD(sHR, line, 1);\n"
     << "}\n\n";
  os << w("printSpO2") << "void printSpO2(unsigned int line, unsigned int valueSpO2) {\n"
     << "  char sSpO2[16];\n"
     << "  printLCD(sSpO2, line, 1);\n"
     << "}\n\n";
  os << w("insertLog") << "void insertLog(unsigned int value) {\n"
     << "  logBuffer[logSize] = value;\n"
     << "  logSize = logSize + 1;\n"
     << "}\n\n";
  if (spec.retry_on_checksum_error) {
    os << "//@ WCET-FUNCTION [0]\n"
       << "void rereadFrame(void) {\n"
       << "  int b;\n"
       << "  for (b = 0; b < " << bytes << "; b++) {\n"
       << "    Byte[b] = receiveSensorData();\n"
       << "  }\n"
       << "}\n\n";
  }
  os << "int main(void) {\n"
     << "  int i;\n"
     << "  int j;\n"
     << "  int k;\n"
     << "  unsigned int HR;\n"
     << "  unsigned int SpO2;\n"
     << "  //@ RESET-TIMER " << kOximeterTimer << ";\n"
     << "  for (k = 0; k < " << spec.packets << "; k++) {\n"
     << "    for (j = 0; j < " << spec.frames_per_packet << "; j++) {\n"
     << "      for (i = 0; i < " << bytes << "; i++) {\n"
     << "        Byte[i] = receiveSensorData();\n"
     << "        if ((i == 1) && checkStatus(k * " << spec.frames_per_packet << " + j)) {\n"
     << "          printStatusError(LINE1);\n"
     << "        }\n"
     << "        if ((i == 4) && checkSum(k * " << spec.frames_per_packet << " + j)) {\n"
     << "          printCheckSumError(LINE2);\n";
  if (spec.retry_on_checksum_error) os << "          rereadFrame();\n";
  os << "        }\n"
     << "        if (i == 3) {\n"
     << "          if (j == 0) {\n"
     << "            storeHRMSB(Byte[i], k);\n"
     << "          }\n"
     << "          if (j == 1) {\n"
     << "            storeHRLSB(Byte[i], k);\n"
     << "          }\n"
     << "          if (j == 2) {\n"
     << "            storeSpO2(Byte[i], k);\n"
     << "          }\n"
     << "        }\n"
     << "      }\n"
     << "    }\n"
     << "  }\n"
     << "  averageHR();\n"
     << "  averageSpO2();\n"
     << "  HR = getHR();\n"
     << "  SpO2 = getSpO2();\n"
     << "  printHR(LINE1, HR);\n"
     << "  printSpO2(LINE2, SpO2);\n"
     << "  insertLog(HR);\n"
     << "  insertLog(SpO2);\n"
     << "  //@ ASSERT-TIMER (" << kOximeterTimer << " < " << spec.deadline << ");\n"
     << "  return 0;\n"
     << "}\n";
  return os.str();
}

// ---- running ----

Verdict verify_source(const std::string& file, const std::string& source, const RunOptions& options) {
  CompileOptions co;
  co.timer_width = options.timer_width;
  const Compiled c = compile(SourceUnit(file, source), co);
  return explore(c.program, options.bounds, options.explore);
}

namespace {

ScenarioRow run_row(std::string label, std::string file, std::string source, const RunOptions& options) {
  ScenarioRow row;
  row.label = std::move(label);
  row.file = std::move(file);
  row.source = std::move(source);
  const auto t0 = std::chrono::steady_clock::now();
  row.verdict = verify_source(row.file, row.source, options);
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

ScenarioReport run_matrix(const std::vector<Rate>& rates, const OximeterSpec& base, const RunOptions& options) {
  ScenarioReport report;
  report.scenario = "oximeter";
  report.model = model_name(base);
  report.label_header = "% Checksum Error";
  for (std::size_t i = 0; i < rates.size(); ++i) {
    OximeterSpec spec = base;
    spec.error_rate = rates[i];
    report.rows.push_back(run_row(rates[i].percent(), oximeter_file_name(spec, i + 1), gen_oximeter(spec), options));
  }
  return report;
}

ScenarioReport run_bridge(const BridgeSpec& base, const RunOptions& options) {
  ScenarioReport report;
  report.scenario = "bridge";
  std::ostringstream model;
  model << "crossing times";
  for (auto t : base.crossing_times) model << ' ' << t;
  report.model = model.str();
  report.label_header = "Assertion";
  for (auto cmp : {Comparison::Less, Comparison::GreaterEqual}) {
    BridgeSpec spec = base;
    spec.comparison = cmp;
    const std::string label = std::string(kBridgeTimer) + " " + to_string(cmp) + " " + std::to_string(spec.deadline);
    report.rows.push_back(run_row(label, bridge_file_name(spec), gen_bridge(spec), options));
  }
  for (bool ferry : {false, true}) {
    BridgeSpec spec = base;
    spec.fastest_ferries = ferry;
    CompileOptions co;
    co.timer_width = options.timer_width;
    const Compiled c = compile(SourceUnit(bridge_file_name(spec), gen_bridge(spec)), co);
    const MinResult m = min_path_value(c.program, kBridgeTimer, options.bounds, options.explore);
    if (m.kind == VerdictKind::Successful && m.value) {
      report.facts.emplace_back(ferry ? "fastest_ferries_time" : "optimal_time", *m.value);
    }
  }
  return report;
}

std::string format_report(const ScenarioReport& report, bool show_times) {
  std::ostringstream os;
  os << "Scenario: " << report.scenario << '\n' << "Model: " << report.model << "\n\n";
  std::size_t width = report.label_header.size();
  for (const auto& r : report.rows) width = std::max(width, r.label.size());
  os << std::left << std::setw(4) << "ID" << std::setw(static_cast<int>(width) + 2) << report.label_header;
  if (show_times) os << std::setw(10) << "Time(s)";
  os << "Result\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    os << std::left << std::setw(4) << i + 1 << std::setw(static_cast<int>(width) + 2) << r.label;
    if (show_times) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(3) << r.runtime_ms / 1000.0;
      os << std::setw(10) << t.str();
    }
    std::string result = to_string(r.verdict.kind);
    std::replace(result.begin(), result.end(), '_', ' ');
    os << result << '\n';
  }
  if (!report.facts.empty()) os << '\n';
  for (const auto& [name, value] : report.facts) os << name << ": " << value << '\n';
  return os.str();
}

std::string report_to_json(const ScenarioReport& report, bool include_runtime, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scenario"] = report.scenario;
  j["model"] = report.model;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    Verdict v = r.verdict;
    if (!include_runtime) v.runtime_ms = 0;
    rows.push_back({{"id", i + 1},
                    {"label", r.label},
                    {"file", r.file},
                    {"runtime_ms", include_runtime ? r.runtime_ms : 0.0},
                    {"result", ordered_json::parse(verdict_to_json(v))}});
  }
  j["rows"] = std::move(rows);
  ordered_json facts = ordered_json::object();
  for (const auto& [name, value] : report.facts) facts[name] = value;
  j["facts"] = std::move(facts);
  return j.dump(indent);
}

}  // namespace timedc::scenarios
