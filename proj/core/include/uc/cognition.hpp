#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uc/embodiment.hpp"
#include "uc/sdr.hpp"
#include "uc/spatial_attention.hpp"
#include "uc/trace.hpp"

namespace uc {

// The constructive representation primitive: a running element-wise mean of
// the n inputs mixed into it (data and metadata alike), plus an optional
// child cell refining the inputs it stands for.
struct Footprint {
  Sdr sdr;
  std::uint64_t n = 1;
  CellId cell = kNoCell;   // owning cell
  CellId child = kNoCell;  // refinement cell, if any
};

// An ordered set of footprints sharing one similarity threshold. The seed
// cell (id 0) has no parent; every other cell hangs off exactly one parent
// footprint.
struct Cell {
  std::vector<FootprintId> footprints;  // creation order
  double threshold = 1.0;
  FootprintId parent = kNoFootprint;
};

enum class Mode : std::uint8_t { Train, Eval };

struct ProcessResult {
  bool unknown = false;
  std::optional<Sdr> projection;
  std::optional<std::string> label;
  DecisionTrace trace;
};

struct TrainStats {
  int epochs = 0;
  std::size_t records = 0;
  std::size_t footprints = 0;
  std::size_t cells = 0;
  std::size_t max_depth = 0;
  std::size_t peak_memory_bytes = 0;  // model payload estimate
};

// Update / activation primitives (Footprint level). fp_update folds the
// input into the running mean and bumps n; fp_activate produces the
// archetype (input + fp)/2 and the projection clamp(2*input - fp, 0, 1).
// Both run element-wise over data and metadata.
void fp_update(Footprint& fp, const Sdr& input);

struct Activation {
  Sdr archetype;
  Sdr projection;
};
Activation fp_activate(const Footprint& fp, const Sdr& input);

// The trained model: a tree of cells rooted at the seed cell, stored as
// id-indexed arenas (ids are creation-ordered and stable, which makes every
// tie-break and the serialized form deterministic).
class Nodule {
 public:
  explicit Nodule(RecordSpec spec, Mode mode = Mode::Train);

  // Rebuilds a nodule from parts (deserialization, hand-built fixtures).
  // Validates structural integrity; thresholds are taken as stored.
  static Nodule from_parts(RecordSpec spec, Mode mode,
                           std::vector<Footprint> footprints,
                           std::vector<Cell> cells);

  const RecordSpec& spec() const { return spec_; }
  Mode mode() const { return mode_; }
  void set_mode(Mode mode) { mode_ = mode; }

  std::span<const Footprint> footprints() const { return footprints_; }
  std::span<const Cell> cells() const { return cells_; }
  static constexpr CellId seed_cell() { return 0; }
  bool empty() const { return footprints_.empty(); }

  std::size_t depth_of_cell(CellId id) const;  // seed = 1
  std::size_t max_depth() const;

  // --- the three phases --------------------------------------------------
  // Filtering: the best footprint over the whole tree among those meeting
  // their own cell's threshold (inclusive); ties go to the smallest id.
  // kNoFootprint when nothing qualifies.
  FootprintId filter_phase(const Sdr& input, DecisionTrace* trace = nullptr) const;

  // Train-mode growth for the filter outcome; returns the footprint the
  // abstracting phase starts from (the deepest footprint touched).
  FootprintId grow(FootprintId selected, const Sdr& input,
                   DecisionTrace* trace = nullptr);

  // Walks the parent chain from `start` to the seed, updating (train mode)
  // and activating each footprint with the running archetype; returns the
  // seed-level archetype.
  Sdr abstract_phase(FootprintId start, const Sdr& input,
                     DecisionTrace* trace = nullptr);

  // Threshold-gated descent from the seed cell. Returns the last activated
  // footprint's id, or kNoFootprint when the seed cell rejects the
  // archetype outright ("I do not know").
  FootprintId concrete_phase(const Sdr& archetype,
                             DecisionTrace* trace = nullptr) const;

  // Full pipeline in the nodule's current mode.
  ProcessResult process(const Sdr& input);

  // Evaluation-mode pipeline; never mutates the model.
  ProcessResult process_eval(const Sdr& input) const;

  // Encodes and trains over the records (labels line up with records) for
  // the given number of epochs, in order. Fully deterministic.
  TrainStats train(std::span<const Record> records,
                   std::span<const std::string> labels, int epochs = 1);

  // Evaluation-mode process of one raw record; returns label or unknown.
  ProcessResult predict(const Record& record) const;

  // Tree integrity, value ranges, and threshold freshness; throws
  // InternalError on any violation.
  void check_invariants() const;

  std::size_t memory_bytes() const;  // SDR payload estimate

 private:
  FootprintId add_footprint(CellId cell, const Sdr& sdr, DecisionTrace* trace,
                            Phase phase);
  void update_footprint(FootprintId id, const Sdr& input, DecisionTrace* trace);
  void refresh_threshold(CellId cell);
  std::vector<double> similarity_row(CellId cell, const Sdr& sdr) const;
  CellAttention& attention_cache(CellId cell);

  RecordSpec spec_;
  Mode mode_ = Mode::Train;
  std::vector<Footprint> footprints_;
  std::vector<Cell> cells_;
  std::vector<CellAttention> attention_;  // per cell, derived state
};

// Degenerate store used as a testing oracle: verbatim copies of every
// training input in one flat cell, no updates, no thresholds. Prediction is
// exactly 1-nearest-neighbour under the shared similarity (ties to the
// smallest id).
class FlatStore {
 public:
  explicit FlatStore(RecordSpec spec);

  const RecordSpec& spec() const { return spec_; }
  std::size_t size() const { return entries_.size(); }

  void add(const Record& record, const std::optional<std::string>& label);
  void add_encoded(Sdr sdr);

  // Label of the most similar stored copy; nullopt when the store is empty
  // or the winner carries no label.
  std::optional<std::string> predict(const Record& record) const;
  std::optional<std::string> predict_encoded(const Sdr& query) const;

 private:
  RecordSpec spec_;
  std::vector<Sdr> entries_;
};

}  // namespace uc
