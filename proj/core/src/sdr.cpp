#include "uc/sdr.hpp"

#include <cmath>

#include "uc/errors.hpp"

namespace uc {

Sdr::Sdr(std::vector<double> values, std::size_t data_len, std::size_t meta_len)
    : values_(std::move(values)), data_len_(data_len), meta_len_(meta_len) {
  if (values_.size() != data_len_ + meta_len_)
    throw DimensionError("Sdr: length != data_len + meta_len");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValueError("Sdr: element outside [0, 1]");
  }
}

Sdr Sdr::data(std::vector<double> values) {
  const std::size_t n = values.size();
  return Sdr(std::move(values), n, 0);
}

Sdr Sdr::meta(std::vector<double> values) {
  const std::size_t n = values.size();
  return Sdr(std::move(values), 0, n);
}

double similarity(const Sdr& a, const Sdr& b) {
  const std::size_t n = a.data_len();
  if (n != b.data_len())
    throw DimensionError("similarity: data_len mismatch");
  if (n == 0)
    throw DimensionError("similarity: empty data part");
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pa[i] - pb[i];
    sum += d * d;
  }
  return 1.0 - std::sqrt(sum) / std::sqrt(static_cast<double>(n));
}

Sdr concat(std::span<const Sdr> parts) {
  if (parts.empty()) throw ValueError("concat: empty part list");
  std::size_t data_len = 0;
  const Sdr* meta_part = nullptr;
  for (const Sdr& p : parts) {
    data_len += p.data_len();
    if (p.meta_len() > 0) {
      if (meta_part) throw ValueError("concat: more than one metadata part");
      meta_part = &p;
    }
  }
  std::vector<double> out;
  out.reserve(data_len + (meta_part ? meta_part->meta_len() : 0));
  for (const Sdr& p : parts) {
    const auto d = p.data_part();
    out.insert(out.end(), d.begin(), d.end());
  }
  std::size_t meta_len = 0;
  if (meta_part) {
    const auto m = meta_part->meta_part();
    out.insert(out.end(), m.begin(), m.end());
    meta_len = m.size();
  }
  return Sdr(std::move(out), data_len, meta_len);
}

}  // namespace uc
