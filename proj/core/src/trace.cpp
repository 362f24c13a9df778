#include "uc/trace.hpp"

#include <sstream>

namespace uc {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Filter: return "filter";
    case Phase::Abstract: return "abstract";
    case Phase::Concrete: return "concrete";
  }
  return "?";
}

const char* to_string(TraceAction a) {
  switch (a) {
    case TraceAction::Selected: return "selected";
    case TraceAction::Created: return "created";
    case TraceAction::Updated: return "updated";
    case TraceAction::Activated: return "activated";
    case TraceAction::Rejected: return "rejected";
  }
  return "?";
}

std::string render_text(const DecisionTrace& trace) {
  std::ostringstream out;
  out.precision(6);
  for (const auto& e : trace.events) {
    out << to_string(e.phase) << ": " << to_string(e.action);
    if (e.footprint != kNoFootprint) out << " footprint " << e.footprint;
    if (e.cell != kNoCell) out << " in cell " << e.cell;
    out << " (similarity " << e.similarity << ", threshold " << e.threshold
        << ")\n";
  }
  if (trace.unknown)
    out << "outcome: unknown (no seed footprint met its threshold)\n";
  else if (trace.label)
    out << "outcome: label " << *trace.label << "\n";
  else
    out << "outcome: projection without label\n";
  return out.str();
}

}  // namespace uc
