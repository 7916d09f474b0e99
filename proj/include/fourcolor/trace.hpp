#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fourcolor/color.hpp"

namespace fourcolor {

enum class EventKind {
  BaseCase,
  SeparatingSplit,
  LowDegree,
  RingDirect,
  StrategyAttempt,
  FallbackKempe,
  FallbackOracle,
  GapEvent,
};

inline constexpr std::array kAllEventKinds{
    EventKind::BaseCase,        EventKind::SeparatingSplit, EventKind::LowDegree,      EventKind::RingDirect,
    EventKind::StrategyAttempt, EventKind::FallbackKempe,   EventKind::FallbackOracle, EventKind::GapEvent,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::BaseCase: return "BaseCase";
    case EventKind::SeparatingSplit: return "SeparatingSplit";
    case EventKind::LowDegree: return "LowDegree";
    case EventKind::RingDirect: return "RingDirect";
    case EventKind::StrategyAttempt: return "StrategyAttempt";
    case EventKind::FallbackKempe: return "FallbackKempe";
    case EventKind::FallbackOracle: return "FallbackOracle";
    case EventKind::GapEvent: return "GapEvent";
  }
  return "?";
}

struct TraceEvent {
  EventKind kind = EventKind::BaseCase;
  std::size_t depth = 0;   ///< recursion depth of the emitting call
  std::size_t order = 0;   ///< vertex count of the graph at that call
  VertexId vertex = -1;    ///< local id of the vertex involved, if any
  int degree = 0;
  std::string strategy;    ///< "S0".."S4" for ladder steps
  bool success = false;
  std::string detail;

  bool operator==(const TraceEvent&) const = default;
};

/// Audit trail of one four_color call.
class Trace {
 public:
  void add(TraceEvent e) {
    ++counts_[static_cast<std::size_t>(e.kind)];
    if (!e.strategy.empty()) {
      ++strategy_counters_[e.strategy + ".attempts"];
      if (e.success) ++strategy_counters_[e.strategy + ".successes"];
    }
    events_.push_back(std::move(e));
  }

  /// Free-form counters for observations that are not events.
  void note(const std::string& key) { ++notes_[key]; }

  const std::vector<TraceEvent>& events() const { return events_; }
  std::size_t count(EventKind k) const { return counts_[static_cast<std::size_t>(k)]; }
  const std::map<std::string, std::size_t>& strategy_counters() const { return strategy_counters_; }
  const std::map<std::string, std::size_t>& notes() const { return notes_; }

  std::string summary() const {
    std::string s;
    for (EventKind k : kAllEventKinds)
      if (count(k) > 0) s += std::string(to_string(k)) + "=" + std::to_string(count(k)) + " ";
    for (const auto& [key, n] : strategy_counters_) s += key + "=" + std::to_string(n) + " ";
    for (const auto& [key, n] : notes_) s += key + "=" + std::to_string(n) + " ";
    if (!s.empty()) s.pop_back();
    return s;
  }

  bool operator==(const Trace&) const = default;

 private:
  std::vector<TraceEvent> events_;
  std::array<std::size_t, kAllEventKinds.size()> counts_{};
  std::map<std::string, std::size_t> strategy_counters_;
  std::map<std::string, std::size_t> notes_;
};

}  // namespace fourcolor
