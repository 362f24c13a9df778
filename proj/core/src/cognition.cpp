#include "uc/cognition.hpp"

#include <algorithm>
#include <cmath>

#include "uc/errors.hpp"

namespace uc {
namespace {

void require_dims(const Sdr& a, const Sdr& b, const char* who) {
  if (a.data_len() != b.data_len() || a.meta_len() != b.meta_len())
    throw DimensionError(std::string(who) + ": SDR layout mismatch");
}

}  // namespace

void fp_update(Footprint& fp, const Sdr& input) {
  require_dims(fp.sdr, input, "fp_update");
  const double n = static_cast<double>(fp.n);
  auto& values = fp.sdr.values_;
  const auto in = input.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = (values[i] * n + in[i]) / (n + 1.0);
  fp.n += 1;
}

Activation fp_activate(const Footprint& fp, const Sdr& input) {
  require_dims(fp.sdr, input, "fp_activate");
  const auto f = fp.sdr.values();
  const auto in = input.values();
  std::vector<double> arch(f.size());
  std::vector<double> proj(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    arch[i] = (in[i] + f[i]) / 2.0;
    proj[i] = std::clamp(in[i] * 2.0 - f[i], 0.0, 1.0);
  }
  return Activation{
      Sdr(std::move(arch), input.data_len(), input.meta_len()),
      Sdr(std::move(proj), input.data_len(), input.meta_len()),
  };
}

Nodule::Nodule(RecordSpec spec, Mode mode) : spec_(std::move(spec)), mode_(mode) {
  spec_.validate();
  cells_.push_back(Cell{});  // the seed cell, empty with threshold 1
  attention_.emplace_back();
}

Nodule Nodule::from_parts(RecordSpec spec, Mode mode,
                          std::vector<Footprint> footprints,
                          std::vector<Cell> cells) {
  Nodule n(std::move(spec), mode);
  if (cells.empty()) throw FormatError("Nodule::from_parts: no seed cell");
  n.footprints_ = std::move(footprints);
  n.cells_ = std::move(cells);
  n.attention_.assign(n.cells_.size(), CellAttention{});

  // Structural integrity; thresholds are trusted as given.
  const auto& fps = n.footprints_;
  const auto& cs = n.cells_;
  if (cs[0].parent != kNoFootprint)
    throw FormatError("Nodule::from_parts: seed cell has a parent");
  std::vector<std::size_t> seen_fp(fps.size(), 0);
  for (std::size_t c = 0; c < cs.size(); ++c) {
    for (FootprintId f : cs[c].footprints) {
      if (f >= fps.size() || fps[f].cell != c)
        throw FormatError("Nodule::from_parts: footprint/cell link broken");
      seen_fp[f]++;
    }
    if (c != 0) {
      const FootprintId p = cs[c].parent;
      if (p >= fps.size() || fps[p].child != c)
        throw FormatError("Nodule::from_parts: parent link broken");
    }
  }
  for (std::size_t f = 0; f < fps.size(); ++f) {
    if (seen_fp[f] != 1)
      throw FormatError("Nodule::from_parts: footprint not in exactly one cell");
    if (fps[f].child != kNoCell &&
        (fps[f].child >= cs.size() || cs[fps[f].child].parent != f))
      throw FormatError("Nodule::from_parts: child link broken");
    if (fps[f].n < 1) throw FormatError("Nodule::from_parts: footprint n < 1");
    if (fps[f].sdr.data_len() != n.spec_.data_len() ||
        fps[f].sdr.meta_len() != n.spec_.meta_len())
      throw FormatError("Nodule::from_parts: footprint SDR layout mismatch");
  }
  // Reachability from the seed.
  std::vector<bool> reached(cs.size(), false);
  std::vector<CellId> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const CellId c = stack.back();
    stack.pop_back();
    for (FootprintId f : cs[c].footprints) {
      const CellId child = fps[f].child;
      if (child != kNoCell) {
        if (reached[child])
          throw FormatError("Nodule::from_parts: cell reached twice");
        reached[child] = true;
        stack.push_back(child);
      }
    }
  }
  if (!std::ranges::all_of(reached, [](bool b) { return b; }))
    throw FormatError("Nodule::from_parts: unreachable cell");
  return n;
}

std::size_t Nodule::depth_of_cell(CellId id) const {
  std::size_t depth = 1;
  while (cells_[id].parent != kNoFootprint) {
    id = footprints_[cells_[id].parent].cell;
    ++depth;
  }
  return depth;
}

std::size_t Nodule::max_depth() const {
  std::size_t mx = 0;
  for (CellId c = 0; c < cells_.size(); ++c)
    mx = std::max(mx, depth_of_cell(c));
  return mx;
}

std::vector<double> Nodule::similarity_row(CellId cell, const Sdr& sdr) const {
  const auto& ids = cells_[cell].footprints;
  std::vector<double> row(ids.size());
  for (std::size_t j = 0; j < ids.size(); ++j)
    row[j] = similarity(sdr, footprints_[ids[j]].sdr);
  return row;
}

CellAttention& Nodule::attention_cache(CellId cell) {
  CellAttention& cache = attention_[cell];
  const auto& ids = cells_[cell].footprints;
  if (cache.size() != ids.size()) {
    // Rebuild from scratch (first mutation after from_parts).
    cache = CellAttention{};
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::vector<double> row(i);
      for (std::size_t j = 0; j < i; ++j)
        row[j] = similarity(footprints_[ids[i]].sdr, footprints_[ids[j]].sdr);
      cache.append(row);
    }
  }
  return cache;
}

void Nodule::refresh_threshold(CellId cell) {
  cells_[cell].threshold = attention_[cell].attention();
}

FootprintId Nodule::add_footprint(CellId cell, const Sdr& sdr,
                                  DecisionTrace* trace, Phase phase) {
  CellAttention& cache = attention_cache(cell);
  const FootprintId id = static_cast<FootprintId>(footprints_.size());
  std::vector<double> row = similarity_row(cell, sdr);
  footprints_.push_back(Footprint{sdr, 1, cell, kNoCell});
  cells_[cell].footprints.push_back(id);
  cache.append(row);
  refresh_threshold(cell);
  if (trace)
    trace->events.push_back(TraceEvent{phase, cell, id, 1.0,
                                       cells_[cell].threshold,
                                       TraceAction::Created});
  return id;
}

void Nodule::update_footprint(FootprintId id, const Sdr& input,
                              DecisionTrace* trace) {
  Footprint& fp = footprints_[id];
  const CellId cell = fp.cell;
  CellAttention& cache = attention_cache(cell);
  const double sim_before = similarity(input, fp.sdr);
  fp_update(fp, input);
  // Refresh this footprint's similarity row; everything else is unchanged.
  const auto& ids = cells_[cell].footprints;
  std::vector<double> row(ids.size());
  std::size_t self = 0;
  for (std::size_t j = 0; j < ids.size(); ++j) {
    if (ids[j] == id) {
      self = j;
      row[j] = 1.0;
    } else {
      row[j] = similarity(fp.sdr, footprints_[ids[j]].sdr);
    }
  }
  cache.update(self, row);
  refresh_threshold(cell);
  if (trace)
    trace->events.push_back(TraceEvent{Phase::Abstract, cell, id, sim_before,
                                       cells_[cell].threshold,
                                       TraceAction::Updated});
}

FootprintId Nodule::filter_phase(const Sdr& input, DecisionTrace* trace) const {
  if (input.data_len() != spec_.data_len())
    throw DimensionError("filter_phase: input does not match the model spec");
  FootprintId best = kNoFootprint;
  double best_sim = -1.0;
  for (FootprintId id = 0; id < footprints_.size(); ++id) {
    const double s = similarity(input, footprints_[id].sdr);
    if (s >= cells_[footprints_[id].cell].threshold && s > best_sim) {
      best = id;
      best_sim = s;
    }
  }
  if (trace && best != kNoFootprint)
    trace->events.push_back(TraceEvent{
        Phase::Filter, footprints_[best].cell, best, best_sim,
        cells_[footprints_[best].cell].threshold, TraceAction::Selected});
  return best;
}

FootprintId Nodule::grow(FootprintId selected, const Sdr& input,
                         DecisionTrace* trace) {
  if (mode_ != Mode::Train)
    throw InternalError("grow: called in evaluation mode");
  if (selected == kNoFootprint)
    return add_footprint(seed_cell(), input, trace, Phase::Filter);
  if (footprints_[selected].child != kNoCell)
    return add_footprint(footprints_[selected].child, input, trace,
                         Phase::Filter);
  // Leaf split: a fresh cell under `selected` holding a copy of the input
  // and a copy of the parent footprint (pre-update), in that id order.
  const CellId cid = static_cast<CellId>(cells_.size());
  cells_.push_back(Cell{{}, 1.0, selected});
  attention_.emplace_back();
  footprints_[selected].child = cid;
  const Sdr parent_copy = footprints_[selected].sdr;
  const FootprintId start = add_footprint(cid, input, trace, Phase::Filter);
  add_footprint(cid, parent_copy, trace, Phase::Filter);
  return start;
}

Sdr Nodule::abstract_phase(FootprintId start, const Sdr& input,
                           DecisionTrace* trace) {
  if (start >= footprints_.size())
    throw InternalError("abstract_phase: bad start footprint");
  Sdr current = input;
  FootprintId id = start;
  for (;;) {
    if (mode_ == Mode::Train) update_footprint(id, current, trace);
    const Footprint& fp = footprints_[id];
    if (trace)
      trace->events.push_back(TraceEvent{
          Phase::Abstract, fp.cell, id, similarity(current, fp.sdr),
          cells_[fp.cell].threshold, TraceAction::Activated});
    current = fp_activate(fp, current).archetype;
    if (fp.cell == seed_cell()) break;
    id = cells_[fp.cell].parent;
  }
  return current;
}

FootprintId Nodule::concrete_phase(const Sdr& archetype,
                                   DecisionTrace* trace) const {
  Sdr current = archetype;
  CellId cell = seed_cell();
  FootprintId last = kNoFootprint;
  for (;;) {
    const Cell& c = cells_[cell];
    FootprintId best = kNoFootprint;
    double best_sim = -1.0;
    std::vector<double> sims(c.footprints.size());
    for (std::size_t j = 0; j < c.footprints.size(); ++j) {
      const FootprintId id = c.footprints[j];
      sims[j] = similarity(current, footprints_[id].sdr);
      if (sims[j] >= c.threshold && sims[j] > best_sim) {
        best = id;
        best_sim = sims[j];
      }
    }
    if (best == kNoFootprint) {
      // Nothing in this cell is similar enough; record why and stop. At the
      // seed cell this is the "I do not know" outcome.
      if (trace)
        for (std::size_t j = 0; j < c.footprints.size(); ++j)
          trace->events.push_back(TraceEvent{Phase::Concrete, cell,
                                             c.footprints[j], sims[j],
                                             c.threshold,
                                             TraceAction::Rejected});
      return last;
    }
    if (trace)
      trace->events.push_back(TraceEvent{Phase::Concrete, cell, best, best_sim,
                                         c.threshold, TraceAction::Activated});
    last = best;
    const Footprint& fp = footprints_[best];
    if (fp.child == kNoCell) return last;
    current = fp_activate(fp, current).projection;
    cell = fp.child;
  }
}

ProcessResult Nodule::process(const Sdr& input) {
  if (mode_ == Mode::Eval) return process_eval(input);

  ProcessResult result;
  DecisionTrace& trace = result.trace;
  const FootprintId selected = filter_phase(input, &trace);
  const FootprintId start = grow(selected, input, &trace);
  const Sdr archetype = abstract_phase(start, input, &trace);
  const FootprintId last = concrete_phase(archetype, &trace);
  if (last == kNoFootprint) {
    result.unknown = trace.unknown = true;
    return result;
  }
  result.projection = footprints_[last].sdr;
  result.label = decode_label(*result.projection, spec_);
  trace.projection = result.projection;
  trace.label = result.label;
  return result;
}

ProcessResult Nodule::process_eval(const Sdr& input) const {
  ProcessResult result;
  DecisionTrace& trace = result.trace;
  FootprintId selected = filter_phase(input, &trace);
  if (selected == kNoFootprint) {
    // No footprint clears its cell's threshold. Evaluation still has to
    // anchor the abstraction somewhere, so it falls back to the most
    // similar footprint overall; rejection is decided later, when the
    // abstracted input faces the seed cell in the concreting phase.
    double best_sim = -1.0;
    for (FootprintId id = 0; id < footprints_.size(); ++id) {
      const double s = similarity(input, footprints_[id].sdr);
      if (s > best_sim) {
        selected = id;
        best_sim = s;
      }
    }
    if (selected == kNoFootprint) {  // empty model
      result.unknown = trace.unknown = true;
      return result;
    }
    trace.events.push_back(TraceEvent{
        Phase::Filter, footprints_[selected].cell, selected, best_sim,
        cells_[footprints_[selected].cell].threshold, TraceAction::Selected});
  }
  // Abstract without updates: walk the parent chain by hand to keep this
  // method const.
  Sdr current = input;
  FootprintId id = selected;
  for (;;) {
    const Footprint& fp = footprints_[id];
    trace.events.push_back(TraceEvent{
        Phase::Abstract, fp.cell, id, similarity(current, fp.sdr),
        cells_[fp.cell].threshold, TraceAction::Activated});
    current = fp_activate(fp, current).archetype;
    if (fp.cell == seed_cell()) break;
    id = cells_[fp.cell].parent;
  }
  const FootprintId last = concrete_phase(current, &trace);
  if (last == kNoFootprint) {
    result.unknown = trace.unknown = true;
    return result;
  }
  result.projection = footprints_[last].sdr;
  result.label = decode_label(*result.projection, spec_);
  trace.projection = result.projection;
  trace.label = result.label;
  return result;
}

TrainStats Nodule::train(std::span<const Record> records,
                         std::span<const std::string> labels, int epochs) {
  if (mode_ != Mode::Train)
    throw InternalError("train: nodule is in evaluation mode");
  if (epochs < 1) throw ValueError("train: epochs must be >= 1");
  if (!labels.empty() && labels.size() != records.size())
    throw DimensionError("train: labels do not line up with records");

  std::vector<Sdr> encoded;
  encoded.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::optional<std::string> label;
    if (!labels.empty() && spec_.meta_len() > 0) label = labels[i];
    encoded.push_back(encode_record(records[i], spec_, label));
  }
  TrainStats stats;
  stats.epochs = epochs;
  for (int e = 0; e < epochs; ++e) {
    for (const Sdr& sdr : encoded) {
      process(sdr);
      ++stats.records;
    }
  }
  stats.footprints = footprints_.size();
  stats.cells = cells_.size();
  stats.max_depth = max_depth();
  stats.peak_memory_bytes = memory_bytes();
  return stats;
}

ProcessResult Nodule::predict(const Record& record) const {
  return process_eval(encode_record(record, spec_));
}

std::size_t Nodule::memory_bytes() const {
  const std::size_t dims = spec_.data_len() + spec_.meta_len();
  std::size_t bytes = footprints_.size() * (dims * sizeof(double) + sizeof(Footprint));
  for (const auto& c : cells_)
    bytes += sizeof(Cell) + c.footprints.size() * sizeof(FootprintId);
  for (const auto& a : attention_) bytes += a.size() * a.size() * sizeof(double);
  return bytes;
}

void Nodule::check_invariants() const {
  if (cells_.empty() || cells_[0].parent != kNoFootprint)
    throw InternalError("invariant: missing or malformed seed cell");

  std::vector<std::size_t> membership(footprints_.size(), 0);
  for (CellId c = 0; c < cells_.size(); ++c) {
    const Cell& cell = cells_[c];
    for (FootprintId f : cell.footprints) {
      if (f >= footprints_.size() || footprints_[f].cell != c)
        throw InternalError("invariant: footprint/cell membership broken");
      membership[f]++;
    }
    if (c != 0) {
      if (cell.parent >= footprints_.size() ||
          footprints_[cell.parent].child != c)
        throw InternalError("invariant: parent footprint link broken");
    }
  }
  for (FootprintId f = 0; f < footprints_.size(); ++f) {
    const Footprint& fp = footprints_[f];
    if (membership[f] != 1)
      throw InternalError("invariant: footprint not in exactly one cell");
    if (fp.n < 1) throw InternalError("invariant: footprint n < 1");
    if (fp.sdr.data_len() != spec_.data_len() ||
        fp.sdr.meta_len() != spec_.meta_len())
      throw InternalError("invariant: footprint SDR layout mismatch");
    for (double v : fp.sdr.values())
      if (!(v >= 0.0 && v <= 1.0))
        throw InternalError("invariant: footprint value outside [0, 1]");
    if (fp.child != kNoCell &&
        (fp.child >= cells_.size() || cells_[fp.child].parent != f))
      throw InternalError("invariant: child cell link broken");
  }

  // Every cell reachable from the seed, exactly once.
  std::vector<bool> reached(cells_.size(), false);
  std::vector<CellId> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const CellId c = stack.back();
    stack.pop_back();
    for (FootprintId f : cells_[c].footprints) {
      const CellId child = footprints_[f].child;
      if (child == kNoCell) continue;
      if (reached[child]) throw InternalError("invariant: cell reached twice");
      reached[child] = true;
      stack.push_back(child);
    }
  }
  for (bool r : reached)
    if (!r) throw InternalError("invariant: unreachable cell");

  // Threshold freshness: stored thresholds must equal a from-scratch
  // Spatial Attention recomputation bit for bit.
  for (CellId c = 0; c < cells_.size(); ++c) {
    std::vector<Sdr> sdrs;
    sdrs.reserve(cells_[c].footprints.size());
    for (FootprintId f : cells_[c].footprints) sdrs.push_back(footprints_[f].sdr);
    const double fresh = spatial_attention(sdrs);
    if (fresh != cells_[c].threshold)
      throw InternalError("invariant: stale cell threshold");
  }
}

FlatStore::FlatStore(RecordSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

void FlatStore::add(const Record& record, const std::optional<std::string>& label) {
  add_encoded(encode_record(record, spec_, label));
}

void FlatStore::add_encoded(Sdr sdr) {
  if (sdr.data_len() != spec_.data_len() || sdr.meta_len() != spec_.meta_len())
    throw DimensionError("FlatStore::add_encoded: SDR layout mismatch");
  entries_.push_back(std::move(sdr));
}

std::optional<std::string> FlatStore::predict(const Record& record) const {
  return predict_encoded(encode_record(record, spec_));
}

std::optional<std::string> FlatStore::predict_encoded(const Sdr& query) const {
  if (entries_.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_sim = -1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double s = similarity(query, entries_[i]);
    if (s > best_sim) {  // strictly greater keeps the smallest id on ties
      best = i;
      best_sim = s;
    }
  }
  return decode_label(entries_[best], spec_);
}

}  // namespace uc
