#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace gaitkit {

enum class Node { Ankle = 0, Chest = 1 };
inline constexpr std::array<Node, 2> kNodes{Node::Ankle, Node::Chest};

inline const char* node_name(Node n) {
  return n == Node::Ankle ? "ankle" : "chest";
}

inline constexpr std::array<const char*, 3> kAxisNames{"X", "Y", "Z"};

/// Missing accelerometer cells are carried as quiet NaN.
inline bool is_null(double v) { return std::isnan(v); }
inline double null_value() { return std::nan(""); }

/// One sensor node's raw track: timestamps plus three axis arrays of equal
/// length. Timestamps are strictly increasing; axis cells may be null.
struct NodeTrack {
  std::vector<double> time;
  std::array<std::vector<double>, 3> axis;  // x, y, z

  std::size_t size() const { return time.size(); }
};

/// Per-node time-stamped tri-axial samples for one subject-session,
/// possibly non-uniform and with null cells.
struct RawRecording {
  std::string subject_id;
  std::string session_id;
  std::array<NodeTrack, 2> node;  // [ankle, chest]

  NodeTrack& track(Node n) { return node[static_cast<std::size_t>(n)]; }
  const NodeTrack& track(Node n) const { return node[static_cast<std::size_t>(n)]; }
};

/// Per-node, per-axis calibration: reading -> (reading - offset) * scale.
struct CalibrationConfig {
  struct AxisCal {
    double offset = 0.0;
    double scale = 1.0;
  };
  std::array<std::array<AxisCal, 3>, 2> node_axis;  // [node][axis]

  static CalibrationConfig identity() { return {}; }
};

/// Both nodes resampled onto one shared grid t_i = start_time + i/rate.
struct UniformSeries {
  std::string subject_id;
  std::string session_id;
  double start_time = 0.0;
  double sample_rate = 50.0;
  std::array<std::array<std::vector<double>, 3>, 2> node;  // [node][axis]

  std::size_t size() const { return node[0][0].size(); }
  /// Grid time by index; never accumulated, so spacing is 1/rate by
  /// construction.
  double time_at(std::size_t i) const {
    return start_time + static_cast<double>(i) / sample_rate;
  }
  std::vector<double>& axis(Node n, int a) {
    return node[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
  }
  const std::vector<double>& axis(Node n, int a) const {
    return node[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
  }
};

/// One fixed-length dual-node segment with its subject label.
struct Window {
  std::string subject_id;
  std::string session_id;
  int window_index = 0;
  std::array<std::array<std::vector<double>, 3>, 2> samples;  // [node][axis]

  std::size_t length() const { return samples[0][0].size(); }
  const std::vector<double>& axis(Node n, int a) const {
    return samples[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
  }
  std::vector<double>& axis(Node n, int a) {
    return samples[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)];
  }
};

/// One row of the feature matrix. Values follow the canonical name order
/// of the matrix that owns the row.
struct FeatureVector {
  std::vector<double> values;
  std::string label;
  std::set<std::string> degenerate_flags;  // names whose fallback fired
};

/// Per-feature winsorize-then-rescale parameters, keyed to the feature
/// names they were fitted on.
struct NormalizationParams {
  std::vector<std::string> names;
  std::vector<double> clip_lo;
  std::vector<double> clip_hi;
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const { return clip_lo.size(); }
};

struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<FeatureVector> rows;
  /// Present once a normalizer has been fitted for this matrix.
  NormalizationParams normalization;
  bool normalization_fitted = false;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_features() const { return names.size(); }
};

}  // namespace gaitkit
