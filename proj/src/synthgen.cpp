#include "gaitkit/synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gaitkit/errors.hpp"
#include "gaitkit/rng.hpp"

namespace gaitkit {

SubjectProfile default_profile(int subject_index) {
  SubjectProfile p;
  p.subject_id = "s" + std::to_string(subject_index + 1);
  p.cadence_hz = 1.5 + 0.3 * subject_index;
  p.noise_sigma = 0.4;
  p.session_perturbation = 0.08;

  // Ankle sees the stride directly; the chest is attenuated and leads in
  // phase. Small per-subject amplitude twists keep harmonic mixes distinct.
  const double twist = 0.07 * subject_index;
  for (int node = 0; node < 2; ++node) {
    const double gain = node == 0 ? 1.0 : 0.45;
    for (int axis = 0; axis < 3; ++axis) {
      auto& am = p.node_axis[node][axis];
      const double axis_gain = axis == 0 ? 1.0 : axis == 1 ? 0.8 : 0.6;
      am.amplitude = {gain * axis_gain * (1.0 + twist),
                      gain * axis_gain * (0.45 + 0.5 * twist),
                      gain * axis_gain * (0.20 + 0.25 * twist)};
      am.phase = {0.3 * axis + 0.2 * node, 0.9 * axis + 0.1 * subject_index,
                  1.7 * axis};
      am.gravity_offset = axis == 2 ? 9.81 : (axis == 1 ? 0.4 : 0.1);
    }
  }
  return p;
}

GenSpec default_spec(int subjects, int sessions, double duration_seconds,
                     std::uint64_t seed) {
  GenSpec spec;
  for (int i = 0; i < subjects; ++i) spec.subjects.push_back(default_profile(i));
  spec.sessions = sessions;
  spec.duration_seconds = duration_seconds;
  spec.seed = seed;
  return spec;
}

namespace {

void validate(const GenSpec& spec) {
  if (spec.subjects.empty()) throw InvalidArgument("gen spec has no subjects");
  if (spec.sessions < 1) throw InvalidArgument("gen spec needs >= 1 session");
  if (spec.duration_seconds < 10.0) {
    throw InvalidArgument("gen spec duration must be >= 10 s");
  }
  if (spec.null_probability < 0.0 || spec.null_probability >= 0.2) {
    throw InvalidArgument("gen spec null_probability must be in [0, 0.2)");
  }
  if (spec.timestamp_jitter < 0.0 || spec.timestamp_jitter >= 1.0) {
    throw InvalidArgument("gen spec timestamp_jitter must be in [0, 1)");
  }
  if (spec.nominal_rate_hz <= 0.0) throw InvalidArgument("gen spec rate must be positive");
  for (const SubjectProfile& p : spec.subjects) {
    if (p.cadence_hz <= 0.0) throw InvalidArgument("cadence must be positive");
    if (p.noise_sigma < 0.0) throw InvalidArgument("noise_sigma must be >= 0");
    for (const auto& node : p.node_axis) {
      for (const auto& am : node) {
        for (double a : am.amplitude) {
          if (a < 0.0) throw InvalidArgument("amplitudes must be >= 0");
        }
      }
    }
  }
}

}  // namespace

std::vector<RawRecording> generate(const GenSpec& spec) {
  validate(spec);

  std::vector<RawRecording> out;
  out.reserve(spec.subjects.size() * static_cast<std::size_t>(spec.sessions));

  for (std::size_t si = 0; si < spec.subjects.size(); ++si) {
    const SubjectProfile& p = spec.subjects[si];
    for (int sess = 0; sess < spec.sessions; ++sess) {
      const std::uint64_t session_seed = derive_seed(spec.seed, si, static_cast<std::uint64_t>(sess));

      // Session-level variation, shared by both nodes: one cadence factor
      // and per-node/axis/harmonic amplitude factors.
      Rng srng(session_seed);
      const double cadence_factor = 1.0 + p.session_perturbation * uniform_range(srng, -1.0, 1.0);
      std::array<std::array<std::array<double, 3>, 3>, 2> amp_factor{};
      for (auto& node : amp_factor) {
        for (auto& axis : node) {
          for (double& f : axis) {
            f = 1.0 + p.session_perturbation * uniform_range(srng, -1.0, 1.0);
          }
        }
      }

      RawRecording rec;
      rec.subject_id = p.subject_id;
      rec.session_id = "r" + std::to_string(sess + 1);

      const double cadence = p.cadence_hz * cadence_factor;
      const double dt = 1.0 / spec.nominal_rate_hz;
      const auto n = static_cast<std::size_t>(
          std::floor(spec.duration_seconds * spec.nominal_rate_hz));

      for (int node = 0; node < 2; ++node) {
        Rng rng(derive_seed(session_seed, 0x6e6f6465, static_cast<std::uint64_t>(node)));
        NodeTrack& track = rec.node[static_cast<std::size_t>(node)];
        track.time.resize(n);
        for (int a = 0; a < 3; ++a) track.axis[a].resize(n);

        for (std::size_t i = 0; i < n; ++i) {
          // Jitter stays below half an interval per side, so time is monotonic.
          const double u = uniform_range(rng, -0.5, 0.5) * spec.timestamp_jitter;
          const double t = (static_cast<double>(i) + u) * dt;
          track.time[i] = t;

          for (int a = 0; a < 3; ++a) {
            const auto& am = p.node_axis[static_cast<std::size_t>(node)][static_cast<std::size_t>(a)];
            double v = am.gravity_offset;
            for (int h = 0; h < 3; ++h) {
              const double amp = am.amplitude[static_cast<std::size_t>(h)] *
                                 amp_factor[static_cast<std::size_t>(node)]
                                           [static_cast<std::size_t>(a)]
                                           [static_cast<std::size_t>(h)];
              v += amp * std::sin(2.0 * M_PI * (h + 1) * cadence * t +
                                  am.phase[static_cast<std::size_t>(h)]);
            }
            if (p.noise_sigma > 0.0) v += p.noise_sigma * normal(rng);
            const bool null_cell = uniform_double(rng) < spec.null_probability;
            track.axis[static_cast<std::size_t>(a)][i] = null_cell ? null_value() : v;
          }
        }
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::string recording_to_csv(const RawRecording& rec, Node node) {
  const NodeTrack& track = rec.track(node);
  std::string out = "timestamp,ax,ay,az\n";
  out.reserve(out.size() + track.size() * 48);
  char buf[64];
  for (std::size_t i = 0; i < track.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9f", track.time[i]);
    out += buf;
    for (int a = 0; a < 3; ++a) {
      out += ',';
      const double v = track.axis[static_cast<std::size_t>(a)][i];
      if (!is_null(v)) {
        std::snprintf(buf, sizeof(buf), "%.9f", v);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> write_dataset(const GenSpec& spec,
                                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<RawRecording> recordings = generate(spec);

  std::vector<std::string> files;
  nlohmann::json manifest_files = nlohmann::json::array();
  for (const RawRecording& rec : recordings) {
    for (Node node : kNodes) {
      const std::string name =
          rec.subject_id + "_" + rec.session_id + "_" + node_name(node) + ".csv";
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw ConfigError("cannot write " + (dir / name).string());
      out << recording_to_csv(rec, node);
      files.push_back(name);
      manifest_files.push_back(nlohmann::json{{"file", name},
                                              {"subject", rec.subject_id},
                                              {"session", rec.session_id},
                                              {"node", node_name(node)}});
    }
  }

  nlohmann::json subjects = nlohmann::json::array();
  for (const SubjectProfile& p : spec.subjects) {
    nlohmann::json nodes = nlohmann::json::array();
    for (int node = 0; node < 2; ++node) {
      nlohmann::json axes = nlohmann::json::array();
      for (int a = 0; a < 3; ++a) {
        const auto& am = p.node_axis[static_cast<std::size_t>(node)][static_cast<std::size_t>(a)];
        axes.push_back(nlohmann::json{{"amplitude", am.amplitude},
                                      {"phase", am.phase},
                                      {"gravity_offset", am.gravity_offset}});
      }
      nodes.push_back(nlohmann::json{{"node", node == 0 ? "ankle" : "chest"},
                                     {"axes", std::move(axes)}});
    }
    subjects.push_back(nlohmann::json{{"subject", p.subject_id},
                                      {"cadence_hz", p.cadence_hz},
                                      {"noise_sigma", p.noise_sigma},
                                      {"session_perturbation", p.session_perturbation},
                                      {"nodes", std::move(nodes)}});
  }
  nlohmann::json manifest{
      {"format", "gaitkit-manifest"},
      {"version", 1},
      {"seed", spec.seed},
      {"sessions", spec.sessions},
      {"duration_seconds", spec.duration_seconds},
      {"nominal_rate_hz", spec.nominal_rate_hz},
      {"timestamp_jitter", spec.timestamp_jitter},
      {"null_probability", spec.null_probability},
      {"subjects", std::move(subjects)},
      {"files", std::move(manifest_files)}};

  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw ConfigError("cannot write manifest.json");
  out << manifest.dump(2) << "\n";
  files.push_back("manifest.json");
  return files;
}

}  // namespace gaitkit
