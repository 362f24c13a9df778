#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uc/sdr.hpp"

namespace uc {

using FootprintId = std::uint32_t;
using CellId = std::uint32_t;

inline constexpr FootprintId kNoFootprint = 0xffffffffu;
inline constexpr CellId kNoCell = 0xffffffffu;

enum class Phase : std::uint8_t { Filter, Abstract, Concrete };

enum class TraceAction : std::uint8_t {
  Selected,   // filter picked this footprint as the starting point
  Created,    // a footprint was created here (train mode only)
  Updated,    // a footprint mixed in the current SDR (train mode only)
  Activated,  // a footprint won a similarity comparison
  Rejected,   // a footprint fell below its cell's threshold
};

struct TraceEvent {
  Phase phase;
  CellId cell = kNoCell;
  FootprintId footprint = kNoFootprint;
  double similarity = 0.0;
  double threshold = 0.0;
  TraceAction action;
};

// Ordered record of one pass through the three phases. Events appear in
// phase order filter -> abstract -> concrete; evaluation-mode traces never
// contain Created or Updated events.
struct DecisionTrace {
  std::vector<TraceEvent> events;
  bool unknown = false;
  std::optional<std::string> label;
  std::optional<Sdr> projection;
};

const char* to_string(Phase p);
const char* to_string(TraceAction a);

// Human-readable rendering, one line per event plus the outcome.
std::string render_text(const DecisionTrace& trace);

}  // namespace uc
