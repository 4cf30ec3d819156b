#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "timedc/verifier.hpp"

namespace timedc::scenarios {

// Exact non-negative rational; "0.166", "1/6", "16.6%" and "1" all parse.
struct Rate {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rate parse(const std::string& text);  // throws std::invalid_argument
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::uint64_t floor_times(std::uint64_t n) const;
  std::string percent() const;  // "16.6%"
  std::string text;             // spelling as given, for reports
};

std::vector<Rate> default_rates();
std::vector<Rate> parse_rates(const std::string& csv);

// ---- bridge crossing ----

enum class Comparison { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };

const char* to_string(Comparison c);
Comparison parse_comparison(const std::string& op);  // "<", ">=", ...

struct BridgeSpec {
  std::vector<std::uint64_t> crossing_times{5, 10, 20, 25};
  std::uint64_t deadline = 60;
  Comparison comparison = Comparison::Less;
  // Only the fastest person escorts others and carries the lamp back.
  bool fastest_ferries = false;
};

inline constexpr const char* kBridgeTimer = "__timing__";

void validate(const BridgeSpec& spec);  // throws std::invalid_argument
std::string gen_bridge(const BridgeSpec& spec);
std::string bridge_file_name(const BridgeSpec& spec);  // __bridge__LT60.c

// ---- pulse oximeter ----

enum class ErrorModel { DeterministicCount, NondetPlacement };

const char* to_string(ErrorModel m);
ErrorModel parse_error_model(const std::string& name);

struct OximeterSpec {
  std::uint32_t packets = 3;
  std::uint32_t frames_per_packet = 25;
  std::uint32_t bytes_per_frame = 5;
  std::vector<std::pair<std::string, std::uint64_t>> wcet = table_wcet();
  std::uint64_t deadline = 1000000;
  Rate error_rate;
  ErrorModel error_model = ErrorModel::DeterministicCount;
  bool retry_on_checksum_error = true;
  Rate status_error_rate;

  static std::vector<std::pair<std::string, std::uint64_t>> table_wcet();
  std::uint32_t frames() const { return packets * frames_per_packet; }
  std::uint64_t checksum_errors() const { return error_rate.floor_times(frames()); }
  std::uint64_t status_errors() const { return status_error_rate.floor_times(frames()); }
  std::uint64_t wcet_of(const std::string& function) const;
};

inline constexpr const char* kOximeterTimer = "TIMER";

void validate(const OximeterSpec& spec);
std::string gen_oximeter(const OximeterSpec& spec);
std::string oximeter_file_name(const OximeterSpec& spec, std::size_t id);
// Names the cost model so reports carry the reconstruction caveat.
std::string model_name(const OximeterSpec& spec);

// ---- reports ----

struct ScenarioRow {
  std::string label;  // rate percentage or assertion text
  std::string file;
  std::string source;
  Verdict verdict;
  double runtime_ms = 0;
};

struct ScenarioReport {
  std::string scenario;  // "bridge" or "oximeter"
  std::string model;
  std::string label_header;
  std::vector<ScenarioRow> rows;
  std::vector<std::pair<std::string, std::uint64_t>> facts;  // extra named results
};

struct RunOptions {
  Bounds bounds;
  ExploreOptions explore;
  unsigned timer_width = 64;
};

ScenarioReport run_matrix(const std::vector<Rate>& rates, const OximeterSpec& base, const RunOptions& options = {});
// The pair of runs (<deadline, >=deadline) plus the minimum crossing times.
ScenarioReport run_bridge(const BridgeSpec& base, const RunOptions& options = {});

// Compiles and verifies one generated source.
Verdict verify_source(const std::string& file, const std::string& source, const RunOptions& options);

std::string format_report(const ScenarioReport& report, bool show_times = true);
std::string report_to_json(const ScenarioReport& report, bool include_runtime = false, int indent = 2);

}  // namespace timedc::scenarios
