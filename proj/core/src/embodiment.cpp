#include "uc/embodiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "uc/errors.hpp"

namespace uc {
namespace {

constexpr double kActiveTol = 1e-9;  // "maximal dimension" tolerance

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

// Indices whose value sits within kActiveTol of the segment maximum.
std::vector<std::size_t> maximal_dimensions(std::span<const double> segment) {
  double mx = 0.0;
  for (double v : segment) mx = std::max(mx, v);
  std::vector<std::size_t> idx;
  if (mx <= 0.0) return idx;
  for (std::size_t i = 0; i < segment.size(); ++i)
    if (segment[i] >= mx - kActiveTol) idx.push_back(i);
  return idx;
}

}  // namespace

std::size_t FeatureSpec::segment_len() const {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NumericFeature>)
          return static_cast<std::size_t>(f.bins);
        else if constexpr (std::is_same_v<T, CategoricalFeature>)
          return f.categories.size();
        else if constexpr (std::is_same_v<T, GreyImageFeature>)
          return static_cast<std::size_t>(f.width) * f.height;
        else
          return 3u * static_cast<std::size_t>(f.width) * f.height;
      },
      kind);
}

void FeatureSpec::validate() const {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, NumericFeature>) {
          if (!std::isfinite(f.min) || !std::isfinite(f.max) || !(f.min < f.max))
            throw ConfigError("numeric feature: min must be < max and finite");
          if (f.bins < 1) throw ConfigError("numeric feature: bins must be >= 1");
          const int ov = f.effective_overlap();
          if (ov < 0 || ov >= f.bins)
            throw ConfigError("numeric feature: overlap must be in [0, bins)");
        } else if constexpr (std::is_same_v<T, CategoricalFeature>) {
          if (f.categories.empty())
            throw ConfigError("categorical feature: no categories");
          std::set<std::string> seen(f.categories.begin(), f.categories.end());
          if (seen.size() != f.categories.size())
            throw ConfigError("categorical feature: duplicate categories");
        } else {
          if (f.width < 1 || f.height < 1)
            throw ConfigError("image feature: width and height must be >= 1");
        }
      },
      kind);
}

std::size_t RecordSpec::data_len() const {
  std::size_t n = 0;
  for (const auto& f : features) n += f.segment_len();
  return n;
}

std::size_t RecordSpec::segment_offset(std::size_t feature) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < feature; ++i) off += features[i].segment_len();
  return off;
}

std::optional<std::size_t> RecordSpec::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < label_categories.size(); ++i)
    if (label_categories[i] == label) return i;
  return std::nullopt;
}

void RecordSpec::validate() const {
  if (features.empty()) throw ConfigError("record spec: no features");
  for (const auto& f : features) f.validate();
  if (data_len() == 0) throw ConfigError("record spec: zero data length");
  std::set<std::string> seen(label_categories.begin(), label_categories.end());
  if (seen.size() != label_categories.size())
    throw ConfigError("record spec: duplicate label categories");
}

std::vector<double> encode_numeric(double v, const NumericFeature& spec) {
  if (!std::isfinite(v)) throw ValueError("encode_numeric: non-finite value");
  const double clamped = std::clamp(v, spec.min, spec.max);
  const double rel = (clamped - spec.min) / (spec.max - spec.min);
  int base = static_cast<int>(std::floor(rel * spec.bins));
  base = std::clamp(base, 0, spec.bins - 1);
  const int ov = spec.effective_overlap();
  const int lo = std::max(0, base - ov);
  const int hi = std::min(spec.bins - 1, base + ov);
  auto segment = zeros(static_cast<std::size_t>(spec.bins));
  for (int i = lo; i <= hi; ++i) segment[static_cast<std::size_t>(i)] = 1.0;
  return segment;
}

std::optional<double> decode_numeric(std::span<const double> segment,
                                     const NumericFeature& spec) {
  if (segment.size() != static_cast<std::size_t>(spec.bins))
    throw DimensionError("decode_numeric: segment length != bins");
  const auto active = maximal_dimensions(segment);
  if (active.empty()) return std::nullopt;  // missing value

  const std::size_t lo = active.front();
  const std::size_t hi = active.back();
  const std::size_t count = active.size();
  const bool contiguous = count == hi - lo + 1;
  const std::size_t full = 2u * static_cast<std::size_t>(spec.effective_overlap()) + 1;
  const int ov = spec.effective_overlap();

  // The overlap window is symmetric except where the segment boundary cut it
  // off; an edge-truncated window still pins down the base bin from its
  // untruncated side. Everything else (full windows, footprint-averaged
  // plateaus) falls back to the median active index.
  std::size_t base;
  if (contiguous && count < full && lo == 0 &&
      hi + 1 < static_cast<std::size_t>(spec.bins)) {
    base = hi - static_cast<std::size_t>(ov);
  } else if (contiguous && count < full && lo > 0 &&
             hi + 1 == static_cast<std::size_t>(spec.bins)) {
    base = lo + static_cast<std::size_t>(ov);
  } else {
    base = active[(count - 1) / 2];
  }
  const double width = (spec.max - spec.min) / spec.bins;
  return spec.min + (static_cast<double>(base) + 0.5) * width;
}

std::vector<double> encode_categorical(const std::string& category,
                                       const CategoricalFeature& spec) {
  auto segment = zeros(spec.categories.size());
  for (std::size_t i = 0; i < spec.categories.size(); ++i) {
    if (spec.categories[i] == category) {
      segment[i] = 1.0;
      return segment;
    }
  }
  throw ValueError("encode_categorical: unknown category '" + category + "'");
}

std::optional<std::string> decode_categorical(std::span<const double> segment,
                                              const CategoricalFeature& spec) {
  if (segment.size() != spec.categories.size())
    throw DimensionError("decode_categorical: segment length != categories");
  double mx = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (segment[i] > mx) {  // strictly greater: ties keep the lowest index
      mx = segment[i];
      arg = i;
    }
  }
  if (mx <= 0.0) return std::nullopt;
  return spec.categories[arg];
}

std::vector<double> encode_grey_image(const GreyImage& image,
                                      const GreyImageFeature& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.width) * spec.height;
  if (image.width != spec.width || image.height != spec.height ||
      image.pixels.size() != n)
    throw DimensionError("encode_grey_image: image does not match spec");
  std::vector<double> segment(n);
  for (std::size_t i = 0; i < n; ++i) segment[i] = image.pixels[i] / 255.0;
  return segment;
}

GreyImage decode_grey_image(std::span<const double> segment,
                            const GreyImageFeature& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.width) * spec.height;
  if (segment.size() != n)
    throw DimensionError("decode_grey_image: segment length mismatch");
  GreyImage image{spec.width, spec.height, std::vector<std::uint8_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::clamp(segment[i], 0.0, 1.0);
    image.pixels[i] = static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
  }
  return image;
}

std::vector<double> encode_rgb_image(const RgbImage& image,
                                     const RgbImageFeature& spec) {
  const std::size_t n = 3u * static_cast<std::size_t>(spec.width) * spec.height;
  if (image.width != spec.width || image.height != spec.height ||
      image.pixels.size() != n)
    throw DimensionError("encode_rgb_image: image does not match spec");
  std::vector<double> segment(n);
  for (std::size_t i = 0; i < n; ++i) segment[i] = image.pixels[i] / 255.0;
  return segment;
}

RgbImage decode_rgb_image(std::span<const double> segment,
                          const RgbImageFeature& spec) {
  const std::size_t n = 3u * static_cast<std::size_t>(spec.width) * spec.height;
  if (segment.size() != n)
    throw DimensionError("decode_rgb_image: segment length mismatch");
  RgbImage image{spec.width, spec.height, std::vector<std::uint8_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::clamp(segment[i], 0.0, 1.0);
    image.pixels[i] = static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
  }
  return image;
}

Sdr encode_record(const Record& record, const RecordSpec& spec,
                  const std::optional<std::string>& label) {
  if (record.size() != spec.features.size())
    throw DimensionError("encode_record: record arity does not match spec");
  std::vector<double> values;
  values.reserve(spec.data_len() + spec.meta_len());
  for (std::size_t i = 0; i < record.size(); ++i) {
    const auto& fspec = spec.features[i];
    const Value& v = record[i];
    if (std::holds_alternative<std::monostate>(v)) {
      const auto seg = zeros(fspec.segment_len());
      values.insert(values.end(), seg.begin(), seg.end());
      continue;
    }
    std::vector<double> seg = std::visit(
        [&](const auto& f) -> std::vector<double> {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, NumericFeature>) {
            if (!std::holds_alternative<double>(v))
              throw ValueError("encode_record: expected numeric value");
            return encode_numeric(std::get<double>(v), f);
          } else if constexpr (std::is_same_v<T, CategoricalFeature>) {
            if (!std::holds_alternative<std::string>(v))
              throw ValueError("encode_record: expected categorical value");
            return encode_categorical(std::get<std::string>(v), f);
          } else if constexpr (std::is_same_v<T, GreyImageFeature>) {
            if (!std::holds_alternative<GreyImage>(v))
              throw ValueError("encode_record: expected grey image");
            return encode_grey_image(std::get<GreyImage>(v), f);
          } else {
            if (!std::holds_alternative<RgbImage>(v))
              throw ValueError("encode_record: expected RGB image");
            return encode_rgb_image(std::get<RgbImage>(v), f);
          }
        },
        fspec.kind);
    values.insert(values.end(), seg.begin(), seg.end());
  }
  const std::size_t data_len = values.size();
  values.resize(data_len + spec.meta_len(), 0.0);
  if (label) {
    const auto idx = spec.label_index(*label);
    if (!idx)
      throw ValueError("encode_record: unknown label '" + *label + "'");
    values[data_len + *idx] = 1.0;
  }
  return Sdr(std::move(values), data_len, spec.meta_len());
}

std::optional<std::string> decode_label(const Sdr& sdr, const RecordSpec& spec) {
  if (sdr.meta_len() != spec.meta_len())
    throw DimensionError("decode_label: metadata length mismatch");
  if (spec.meta_len() == 0) return std::nullopt;
  const auto meta = sdr.meta_part();
  double mx = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < meta.size(); ++i) {
    if (meta[i] > mx) {
      mx = meta[i];
      arg = i;
    }
  }
  if (mx <= 0.0) return std::nullopt;
  return spec.label_categories[arg];
}

Record decode_record(const Sdr& sdr, const RecordSpec& spec) {
  if (sdr.data_len() != spec.data_len())
    throw DimensionError("decode_record: data length mismatch");
  Record out;
  out.reserve(spec.features.size());
  std::size_t off = 0;
  for (const auto& fspec : spec.features) {
    const auto seg = sdr.values().subspan(off, fspec.segment_len());
    off += fspec.segment_len();
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, NumericFeature>) {
            const auto v = decode_numeric(seg, f);
            out.emplace_back(v ? Value(*v) : Value(std::monostate{}));
          } else if constexpr (std::is_same_v<T, CategoricalFeature>) {
            const auto v = decode_categorical(seg, f);
            out.emplace_back(v ? Value(*v) : Value(std::monostate{}));
          } else if constexpr (std::is_same_v<T, GreyImageFeature>) {
            out.emplace_back(decode_grey_image(seg, f));
          } else {
            out.emplace_back(decode_rgb_image(seg, f));
          }
        },
        fspec.kind);
  }
  return out;
}

}  // namespace uc
