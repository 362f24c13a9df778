#include "uc/spatial_attention.hpp"

#include <algorithm>

#include "uc/errors.hpp"

namespace uc {

void CellAttention::append(std::span<const double> row) {
  if (row.size() != n_)
    throw DimensionError("CellAttention::append: row length != size()");
  const std::size_t m = n_ + 1;
  std::vector<double> next(m * m);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) next[i * m + j] = sim_[i * n_ + j];
  for (std::size_t j = 0; j < n_; ++j) {
    next[n_ * m + j] = row[j];
    next[j * m + n_] = row[j];
  }
  next[n_ * m + n_] = 1.0;
  sim_ = std::move(next);
  n_ = m;
}

void CellAttention::update(std::size_t i, std::span<const double> row) {
  if (i >= n_ || row.size() != n_)
    throw DimensionError("CellAttention::update: bad index or row length");
  for (std::size_t j = 0; j < n_; ++j) {
    sim_[i * n_ + j] = row[j];
    sim_[j * n_ + i] = row[j];
  }
}

double CellAttention::attention() const {
  if (n_ == 0) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double mx = sim_[i * n_];
    double mn = sim_[i * n_];
    for (std::size_t j = 1; j < n_; ++j) {
      mx = std::max(mx, sim_[i * n_ + j]);
      mn = std::min(mn, sim_[i * n_ + j]);
    }
    acc += (mx + mn) / 2.0;
  }
  return acc / static_cast<double>(n_);
}

double spatial_attention(std::span<const Sdr> footprints, bool include_self) {
  const std::size_t n = footprints.size();
  if (include_self) {
    CellAttention cache;
    std::vector<double> row;
    for (std::size_t i = 0; i < n; ++i) {
      row.resize(i);
      for (std::size_t j = 0; j < i; ++j)
        row[j] = similarity(footprints[i], footprints[j]);
      cache.append(row);
    }
    return cache.attention();
  }
  // Sensitivity variant: distinct pairs only.
  if (n < 2) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mx = -1.0, mn = 2.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double s = similarity(footprints[i], footprints[j]);
      mx = std::max(mx, s);
      mn = std::min(mn, s);
    }
    acc += (mx + mn) / 2.0;
  }
  return acc / static_cast<double>(n);
}

}  // namespace uc
