#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gaitkit/types.hpp"

namespace gaitkit {

/// Deterministic gait model for one synthetic subject: a 3-harmonic sine
/// stack per node/axis on a per-subject cadence, plus gravity offset and
/// Gaussian noise. Session variation multiplies cadence and amplitudes by
/// bounded jitter.
struct SubjectProfile {
  std::string subject_id;
  double cadence_hz = 1.8;  // fundamental step frequency
  struct AxisModel {
    std::array<double, 3> amplitude{};  // harmonics 1..3
    std::array<double, 3> phase{};      // radians
    double gravity_offset = 0.0;
  };
  std::array<std::array<AxisModel, 3>, 2> node_axis;  // [node][axis]
  double noise_sigma = 0.4;
  double session_perturbation = 0.08;  // fractional jitter per session
};

struct GenSpec {
  std::vector<SubjectProfile> subjects;
  int sessions = 2;
  double duration_seconds = 160.0;
  double nominal_rate_hz = 50.0;
  double timestamp_jitter = 0.05;  // fraction of the nominal interval
  double null_probability = 0.01;  // per cell
  std::uint64_t seed = 0;
};

/// A separable default profile: cadence 1.5 + 0.3 * index, distinct
/// harmonic mixes per node/axis.
SubjectProfile default_profile(int subject_index);

/// GenSpec with `subjects` default profiles.
GenSpec default_spec(int subjects, int sessions, double duration_seconds,
                     std::uint64_t seed);

/// One recording per subject-session, fully determined by spec.seed.
/// Per-subject and per-session seeds are derived independently, so output
/// does not depend on generation order. Throws InvalidArgument when the
/// spec violates its bounds (duration >= 10 s, null_probability < 0.2).
std::vector<RawRecording> generate(const GenSpec& spec);

/// Fixed-format CSV for one node of a recording (the ingestion schema).
std::string recording_to_csv(const RawRecording& rec, Node node);

/// Writes `<subject>_<session>_<node>.csv` files plus `manifest.json`.
/// Returns the written file names (manifest last).
std::vector<std::string> write_dataset(const GenSpec& spec,
                                       const std::filesystem::path& dir);

}  // namespace gaitkit
