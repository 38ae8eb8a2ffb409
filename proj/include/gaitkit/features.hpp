#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gaitkit/types.hpp"

namespace gaitkit {

/// Table-layout constants: 13 per-axis features x 2 nodes x 3 axes, plus
/// 3 magnitude features per node = 84.
inline constexpr int kAxisFeatureCount = 13;
inline constexpr int kMagnitudeFeatureCount = 3;
inline constexpr int kFeatureCount = 2 * 3 * kAxisFeatureCount + 2 * kMagnitudeFeatureCount;

inline constexpr std::array<const char*, kAxisFeatureCount> kAxisFeatureNames{
    "Max",    "Min",    "Mean",   "Median",   "StD",     "MF",      "PeakX1",
    "PeakX2", "PeakY1", "PeakY2", "PeakFreq", "NumPeak", "IntegSpec"};

inline constexpr std::array<const char*, kMagnitudeFeatureCount> kMagnitudeFeatureNames{
    "AM", "SqSum25", "SqSum75"};

/// The fixed 84-name order: Ankle/Chest x X/Y/Z x the 13 axis features,
/// then Ankle/Chest x {AM, SqSum25, SqSum75}. Names look like
/// "Ankle_PeakFreq_X" and "Chest_AM".
const std::vector<std::string>& canonical_feature_names();

/// Per-sample Euclidean norm of the three axes.
std::vector<double> magnitude(const std::array<std::vector<double>, 3>& node_axes);

struct AxisFeatures {
  std::array<double, kAxisFeatureCount> values{};
  bool mf_degenerate = false;  // zero total spectral power
};

/// The 13 Table-1 per-axis features of one window axis. StD uses the
/// population divisor; the median of an even count is the mean of the two
/// middle order statistics.
AxisFeatures axis_features(std::span<const double> axis_samples, double sample_rate_hz);

/// [AM, SqSum25, SqSum75]: mean magnitude, and squared sums of magnitudes
/// strictly below the window's own 25th / 75th magnitude percentile
/// (linear-interpolation percentile).
std::array<double, kMagnitudeFeatureCount> magnitude_features(
    const std::array<std::vector<double>, 3>& node_axes);

/// Assembles the 84-value vector for one window in canonical name order.
FeatureVector assemble_vector(const Window& w, double sample_rate_hz);

/// Extracts vectors for many windows into one matrix with canonical names.
/// max_threads > 1 splits the windows across threads; results are
/// positionally merged, so the matrix is identical at any thread count.
FeatureMatrix extract_features(const std::vector<Window>& windows,
                               double sample_rate_hz, int max_threads = 1);

/// Percentile q in [0,100] by linear interpolation between order statistics.
double percentile(std::vector<double> values, double q);

/// Winsorization bounds (1st/99th percentile) and min/max of the clipped
/// training values, per feature.
NormalizationParams fit_normalizer(const FeatureMatrix& train);

/// clamp to [clip_lo, clip_hi] then min-max rescale into [0, 1]; a constant
/// feature maps to 0. Throws SchemaError on name mismatch.
FeatureMatrix apply_normalizer(const FeatureMatrix& m, const NormalizationParams& params);

}  // namespace gaitkit
