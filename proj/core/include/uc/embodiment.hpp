#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "uc/sdr.hpp"

namespace uc {

// Numeric values are spread over `bins` ordinal bins; the base bin plus
// `overlap` neighbours on each side light up (truncated at the segment
// boundaries, bins are not cyclic). overlap < 0 means "default": 10% of bins.
struct NumericFeature {
  double min = 0.0;
  double max = 1.0;
  int bins = 100;
  int overlap = -1;

  int effective_overlap() const { return overlap >= 0 ? overlap : bins / 10; }
  bool operator==(const NumericFeature&) const = default;
};

struct CategoricalFeature {
  std::vector<std::string> categories;  // ordered, unique

  bool operator==(const CategoricalFeature&) const = default;
};

struct GreyImageFeature {
  int width = 0;
  int height = 0;

  bool operator==(const GreyImageFeature&) const = default;
};

struct RgbImageFeature {
  int width = 0;
  int height = 0;

  bool operator==(const RgbImageFeature&) const = default;
};

struct FeatureSpec {
  std::variant<NumericFeature, CategoricalFeature, GreyImageFeature,
               RgbImageFeature>
      kind;

  std::size_t segment_len() const;
  void validate() const;  // throws ConfigError on a malformed spec
  bool operator==(const FeatureSpec&) const = default;
};

// Layout contract for a whole record: data segments in feature order,
// followed by a one-hot label metadata part when label_categories is
// non-empty.
struct RecordSpec {
  std::vector<FeatureSpec> features;
  std::vector<std::string> label_categories;

  std::size_t data_len() const;
  std::size_t meta_len() const { return label_categories.size(); }
  std::size_t segment_offset(std::size_t feature) const;
  std::optional<std::size_t> label_index(const std::string& label) const;
  void validate() const;

  bool operator==(const RecordSpec&) const = default;
};

// Raw pixel buffers, one byte per channel sample, row-major. RgbImage is
// channel-planar: the full R plane, then G, then B (the CIFAR-10 layout).
struct GreyImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  bool operator==(const GreyImage&) const = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // 3 * width * height

  bool operator==(const RgbImage&) const = default;
};

// One raw cell of a record. monostate marks a missing value, which encodes
// as an all-zero segment.
using Value = std::variant<std::monostate, double, std::string, GreyImage, RgbImage>;
using Record = std::vector<Value>;

// --- per-feature encoders/decoders ---------------------------------------

// Bins v (clamped to [min, max]) and lights the overlap window around the
// base bin. Throws ValueError on non-finite v.
std::vector<double> encode_numeric(double v, const NumericFeature& spec);

// Inverse of encode_numeric: centre of the recovered base bin. An all-zero
// segment decodes to nullopt (missing). Fractional segments (footprint
// averages) are handled through the maximal-dimension rule.
std::optional<double> decode_numeric(std::span<const double> segment,
                                     const NumericFeature& spec);

std::vector<double> encode_categorical(const std::string& category,
                                       const CategoricalFeature& spec);
std::optional<std::string> decode_categorical(std::span<const double> segment,
                                              const CategoricalFeature& spec);

std::vector<double> encode_grey_image(const GreyImage& image,
                                      const GreyImageFeature& spec);
GreyImage decode_grey_image(std::span<const double> segment,
                            const GreyImageFeature& spec);

std::vector<double> encode_rgb_image(const RgbImage& image,
                                     const RgbImageFeature& spec);
RgbImage decode_rgb_image(std::span<const double> segment,
                          const RgbImageFeature& spec);

// --- whole-record composition ---------------------------------------------

// Encodes a record against the spec. Missing values become all-zero
// segments; the label (when given) becomes the one-hot metadata part, and an
// absent label leaves the metadata part all zero.
Sdr encode_record(const Record& record, const RecordSpec& spec,
                  const std::optional<std::string>& label = std::nullopt);

// Argmax over the metadata part, ties to the lowest index; nullopt when the
// metadata part is absent or all zero.
std::optional<std::string> decode_label(const Sdr& sdr, const RecordSpec& spec);

// Per-feature inverse of encode_record (labels are not part of a Record).
Record decode_record(const Sdr& sdr, const RecordSpec& spec);

}  // namespace uc
