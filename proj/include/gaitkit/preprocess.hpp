#pragma once

#include <string>
#include <vector>

#include "gaitkit/types.hpp"

namespace gaitkit {

/// Parses one node CSV (`timestamp,ax,ay,az`, header required). Empty accel
/// cells become nulls. Throws MalformedInput on schema or monotonicity
/// violations.
NodeTrack parse_node_csv(const std::string& csv_text);

/// Builds a dual-node recording from the two per-node CSV texts.
/// Throws InsufficientData if any axis has fewer than 2 non-null samples.
RawRecording parse_recording(const std::string& ankle_csv,
                             const std::string& chest_csv,
                             std::string subject_id, std::string session_id);

/// Parses the plain-text calibration file (`<node>.<axis>.offset = v` /
/// `<node>.<axis>.scale = v`, one per line, `#` comments). All 12 keys are
/// required and every scale must be nonzero; otherwise ConfigError.
CalibrationConfig parse_calibration(const std::string& text);

/// Replaces interior nulls by linear interpolation in time between the
/// nearest non-null neighbors; leading/trailing nulls take the nearest
/// non-null value. Identity on null-free input.
RawRecording fill_nulls(RawRecording rec);

/// Applies (reading - offset) * scale per node/axis.
RawRecording calibrate(RawRecording rec, const CalibrationConfig& cal);

/// Linearly interpolates both nodes onto one shared grid t_0 + i/rate over
/// the overlap of their time spans; t_0 is the later of the two first
/// timestamps. Throws InsufficientData when the overlap is shorter than
/// min_overlap_seconds.
UniformSeries resample(const RawRecording& rec, double rate_hz = 50.0,
                       double min_overlap_seconds = 5.0);

/// Subtracts each axis's mean over the full recording. Idempotent.
UniformSeries remove_mean(UniformSeries series);

/// Chops the series into consecutive non-overlapping windows of
/// window_samples; the trailing partial window is dropped. Throws
/// InsufficientData when fewer than window_samples samples exist.
std::vector<Window> segment(const UniformSeries& series, int window_samples = 250);

}  // namespace gaitkit
