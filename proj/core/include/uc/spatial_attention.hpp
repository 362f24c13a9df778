#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uc/sdr.hpp"

namespace uc {

// Pairwise similarity matrix of one cell's footprints, maintained
// incrementally so that a threshold refresh after a single footprint change
// costs one row instead of a full rebuild. attention() reduces the matrix
// exactly the way spatial_attention() does, so both paths agree bit for bit.
class CellAttention {
 public:
  std::size_t size() const { return n_; }

  // Appends a footprint given its similarities to the footprints already
  // present (row.size() == size()). The self-similarity is fixed at 1.
  void append(std::span<const double> row);

  // Replaces footprint i's similarities to every footprint, self included
  // (row.size() == size(), row[i] == 1).
  void update(std::size_t i, std::span<const double> row);

  double at(std::size_t i, std::size_t j) const { return sim_[i * n_ + j]; }

  // Mean over footprints of (max row similarity + min row similarity) / 2.
  // 1.0 for an empty cell.
  double attention() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> sim_;  // n_ x n_, row-major, symmetric, diagonal 1
};

// Per-cell similarity threshold: for each footprint take the max and min of
// its similarities to all footprints of the cell (itself included), average
// the two, then average over footprints. Empty input yields 1.0, as does a
// single footprint (max = min = self-similarity = 1).
//
// include_self=false drops the self term from the max/min ranges; it exists
// for sensitivity experiments only and falls back to 1.0 for cells of one.
double spatial_attention(std::span<const Sdr> footprints,
                         bool include_self = true);

}  // namespace uc
