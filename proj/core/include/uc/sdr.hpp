#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uc {

// Fixed-length vector of doubles in [0, 1]. The leading data_len dimensions
// carry encoded input data; the trailing meta_len dimensions carry encoded
// label metadata. Metadata rides along through footprint arithmetic but is
// invisible to similarity.
//
// Encoders may build intermediate segments with data_len == 0 (a bare label
// part, consumed by concat); anything fed to similarity or stored in a model
// has data_len >= 1.
class Sdr {
 public:
  Sdr() = default;
  Sdr(std::vector<double> values, std::size_t data_len, std::size_t meta_len);

  // Convenience: all dimensions are data.
  static Sdr data(std::vector<double> values);
  // Convenience: all dimensions are metadata.
  static Sdr meta(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::size_t data_len() const { return data_len_; }
  std::size_t meta_len() const { return meta_len_; }

  std::span<const double> values() const { return values_; }
  std::span<const double> data_part() const {
    return std::span<const double>(values_).first(data_len_);
  }
  std::span<const double> meta_part() const {
    return std::span<const double>(values_).last(meta_len_);
  }

  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const Sdr&) const = default;

 private:
  friend class Nodule;  // in-place footprint arithmetic
  friend Sdr average_with(const Sdr&, const Sdr&);
  friend Sdr project_from(const Sdr&, const Sdr&);

  std::vector<double> values_;
  std::size_t data_len_ = 0;
  std::size_t meta_len_ = 0;
};

// 1 - ||a.data - b.data||_2 / sqrt(data_len). Scores land in [0, 1], with 1
// exactly on data-identical inputs. Metadata dimensions are never read.
// Throws DimensionError when the data parts differ in length (or are empty).
double similarity(const Sdr& a, const Sdr& b);

// Concatenates the data parts in order; the single metadata-bearing part (if
// any) supplies the trailing metadata. Throws ValueError on an empty list or
// when more than one part carries metadata.
Sdr concat(std::span<const Sdr> parts);

}  // namespace uc
