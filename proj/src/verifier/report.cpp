#include <sstream>

#include "json.hpp"
#include "timedc/verifier.hpp"

namespace timedc {
namespace {

void site_block(std::ostream& os, const PropertySite& s) {
  os << "  file " << s.file << " line " << s.line << " function " << s.function << '\n';
  os << "  " << s.category << '\n';
  os << "  " << s.expression << '\n';
}

}  // namespace

std::string format_counterexample(const Counterexample& c) {
  std::ostringstream os;
  os << "Counterexample:\n";
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    const auto& st = c.states[i];
    os << "\nState " << i << " line " << st.line << ": " << st.event << '\n';
    for (std::size_t t = 0; t < st.timers.size() && t < c.timer_names.size(); ++t) {
      os << "  " << c.timer_names[t] << " = " << st.timers[t] << '\n';
    }
  }
  os << "\nNondet choices:";
  if (c.nondet_choices.empty()) os << " (none)";
  for (auto v : c.nondet_choices) os << ' ' << v;
  os << "\n\nViolated property:\n";
  site_block(os, c.violated);
  return os.str();
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  switch (v.kind) {
    case VerdictKind::Successful:
      os << "Paths explored: " << v.paths_explored << "\n\nVERIFICATION SUCCESSFUL\n";
      break;
    case VerdictKind::Failed:
    case VerdictKind::RuntimeFault:
      if (v.counterexample) os << format_counterexample(*v.counterexample);
      os << "\nVERIFICATION FAILED\n";
      break;
    case VerdictKind::BoundExceeded:
      os << "Bound exceeded: " << v.bound_resource << '\n';
      if (v.counterexample) site_block(os, v.counterexample->violated);
      os << "Paths explored: " << v.paths_explored << "\n\nVERIFICATION INCONCLUSIVE\n";
      break;
  }
  return os.str();
}

std::string verdict_to_json(const Verdict& v, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["verdict"] = to_string(v.kind);
  const Counterexample* c = v.counterexample ? &*v.counterexample : nullptr;
  if (c) {
    j["violated_property"] = {{"file", c->violated.file}, {"line", c->violated.line}, {"expr", c->violated.expression}};
  } else {
    j["violated_property"] = nullptr;
  }
  j["nondet_choices"] = c ? ordered_json(c->nondet_choices) : ordered_json::array();
  ordered_json trace = ordered_json::array();
  if (c) {
    for (std::size_t i = 0; i < c->states.size(); ++i) {
      const auto& st = c->states[i];
      ordered_json timers = ordered_json::object();
      for (std::size_t t = 0; t < st.timers.size() && t < c->timer_names.size(); ++t) {
        timers[c->timer_names[t]] = st.timers[t];
      }
      trace.push_back({{"state", i}, {"event", st.event}, {"line", st.line}, {"timers", std::move(timers)}});
    }
  }
  j["timer_trace"] = std::move(trace);
  j["paths_explored"] = v.paths_explored;
  j["runtime_ms"] = v.runtime_ms;
  return j.dump(indent);
}

}  // namespace timedc
