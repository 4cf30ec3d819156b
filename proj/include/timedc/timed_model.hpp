#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace timedc::model {

struct TimerId {
  std::string name;
  std::size_t index = 0;  // position in definition order

  friend bool operator==(const TimerId&, const TimerId&) = default;
};

class UnknownFunction : public std::runtime_error {
 public:
  explicit UnknownFunction(const std::string& function)
      : std::runtime_error("no duration known for function '" + function + "'"), function_(function) {}
  const std::string& function() const { return function_; }

 private:
  std::string function_;
};

class TimerOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// D: function name -> worst-case duration in abstract time units.
class DurationMap {
 public:
  DurationMap() = default;
  DurationMap(std::initializer_list<std::pair<const std::string, std::uint64_t>> init) : map_(init) {}

  void set(const std::string& function, std::uint64_t duration) { map_[function] = duration; }
  bool contains(const std::string& function) const { return map_.contains(function); }
  std::uint64_t at(const std::string& function) const;
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, std::uint64_t>& entries() const { return map_; }

 private:
  std::map<std::string, std::uint64_t> map_;
};

struct CallEvent {
  std::string function;
  std::uint64_t duration = 0;
};
struct ResetEvent {
  std::size_t timer = 0;  // TimerId::index
};
struct AssertEvent {
  std::string expression;
  bool outcome = true;
};

using TimedEvent = std::variant<CallEvent, ResetEvent, AssertEvent>;

// pi[n..m]: `events` labels the transitions s_n -> ... -> s_m.
struct ExecutionPath {
  std::vector<TimedEvent> events;
  std::size_t start = 0;

  std::size_t end() const { return start + events.size(); }
};

// One value per timer. Increments that do not fit the configured width throw
// TimerOverflow instead of wrapping.
class TimerValuation {
 public:
  TimerValuation() = default;
  explicit TimerValuation(std::size_t timers, unsigned width = 64);
  TimerValuation(std::vector<std::uint64_t> values, unsigned width = 64);

  std::size_t size() const { return values_.size(); }
  unsigned width() const { return width_; }
  std::uint64_t max_value() const;
  std::uint64_t operator[](std::size_t i) const { return values_[i]; }
  const std::vector<std::uint64_t>& values() const { return values_; }

  void advance(std::uint64_t duration);
  void reset(std::size_t timer);

  friend bool operator==(const TimerValuation&, const TimerValuation&) = default;

 private:
  std::vector<std::uint64_t> values_;
  unsigned width_ = 64;
};

// D(e): the function's duration for a call, 0 for resets and assertion checks.
std::uint64_t event_duration(const TimedEvent& e, const DurationMap& d);

std::uint64_t path_duration(const ExecutionPath& p, const DurationMap& d);

// Call advances every timer by the call's duration, Reset zeroes one timer,
// AssertCheck leaves the valuation unchanged.
TimerValuation apply_event(TimerValuation v, const TimedEvent& e);

TimerValuation apply_path(TimerValuation v, const ExecutionPath& p);

}  // namespace timedc::model
