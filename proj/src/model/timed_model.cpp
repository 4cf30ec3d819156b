#include "timedc/timed_model.hpp"

#include <limits>

namespace timedc::model {

std::uint64_t DurationMap::at(const std::string& function) const {
  auto it = map_.find(function);
  if (it == map_.end()) throw UnknownFunction(function);
  return it->second;
}

TimerValuation::TimerValuation(std::size_t timers, unsigned width) : values_(timers, 0), width_(width) {
  if (width != 32 && width != 64) throw std::invalid_argument("timer width must be 32 or 64");
}

TimerValuation::TimerValuation(std::vector<std::uint64_t> values, unsigned width)
    : values_(std::move(values)), width_(width) {
  if (width != 32 && width != 64) throw std::invalid_argument("timer width must be 32 or 64");
  for (auto v : values_) {
    if (v > max_value()) throw TimerOverflow("timer value exceeds " + std::to_string(width) + " bits");
  }
}

std::uint64_t TimerValuation::max_value() const {
  return width_ == 64 ? std::numeric_limits<std::uint64_t>::max() : std::numeric_limits<std::uint32_t>::max();
}

void TimerValuation::advance(std::uint64_t duration) {
  const std::uint64_t limit = max_value();
  for (auto v : values_) {
    if (v > limit - duration || duration > limit) {
      throw TimerOverflow("timer overflow: " + std::to_string(v) + " + " + std::to_string(duration) +
                          " exceeds " + std::to_string(width_) + " bits");
    }
  }
  for (auto& v : values_) v += duration;
}

void TimerValuation::reset(std::size_t timer) { values_.at(timer) = 0; }

std::uint64_t event_duration(const TimedEvent& e, const DurationMap& d) {
  if (const auto* call = std::get_if<CallEvent>(&e)) return d.at(call->function);
  return 0;
}

std::uint64_t path_duration(const ExecutionPath& p, const DurationMap& d) {
  std::uint64_t total = 0;
  for (const auto& e : p.events) {
    const std::uint64_t step = event_duration(e, d);
    if (total > std::numeric_limits<std::uint64_t>::max() - step) throw TimerOverflow("path duration overflow");
    total += step;
  }
  return total;
}

TimerValuation apply_event(TimerValuation v, const TimedEvent& e) {
  if (const auto* call = std::get_if<CallEvent>(&e)) {
    v.advance(call->duration);
  } else if (const auto* reset = std::get_if<ResetEvent>(&e)) {
    v.reset(reset->timer);
  }
  return v;
}

TimerValuation apply_path(TimerValuation v, const ExecutionPath& p) {
  for (const auto& e : p.events) v = apply_event(std::move(v), e);
  return v;
}

}  // namespace timedc::model
