#include "gaitkit/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gaitkit/errors.hpp"

namespace gaitkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no, const char* what) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw MalformedInput("line " + std::to_string(line_no) + ": unparsable " +
                         what + " cell '" + cell + "'");
  }
  return v;
}

int non_null_count(const std::vector<double>& axis) {
  int n = 0;
  for (double v : axis)
    if (!is_null(v)) ++n;
  return n;
}

}  // namespace

NodeTrack parse_node_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw MalformedInput("empty CSV");

  auto header = split_csv_line(trim(line));
  const std::vector<std::string> expected{"timestamp", "ax", "ay", "az"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i >= header.size() || trim(header[i]) != expected[i]) {
      throw MalformedInput("CSV header must be 'timestamp,ax,ay,az'; column " +
                           std::to_string(i + 1) + " is missing or wrong");
    }
  }
  if (header.size() != expected.size()) {
    throw MalformedInput("CSV header has extra columns");
  }

  NodeTrack track;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    auto cells = split_csv_line(t);
    if (cells.size() != 4) {
      throw MalformedInput("line " + std::to_string(line_no) +
                           ": expected 4 cells, got " + std::to_string(cells.size()));
    }
    double ts = parse_number(trim(cells[0]), line_no, "timestamp");
    if (!track.time.empty() && ts <= track.time.back()) {
      throw MalformedInput("line " + std::to_string(line_no) +
                           ": timestamps not strictly increasing");
    }
    track.time.push_back(ts);
    for (int a = 0; a < 3; ++a) {
      std::string cell = trim(cells[a + 1]);
      track.axis[a].push_back(cell.empty() ? null_value()
                                           : parse_number(cell, line_no, "accel"));
    }
  }
  return track;
}

RawRecording parse_recording(const std::string& ankle_csv,
                             const std::string& chest_csv,
                             std::string subject_id, std::string session_id) {
  RawRecording rec;
  rec.subject_id = std::move(subject_id);
  rec.session_id = std::move(session_id);
  rec.track(Node::Ankle) = parse_node_csv(ankle_csv);
  rec.track(Node::Chest) = parse_node_csv(chest_csv);

  for (Node n : kNodes) {
    for (int a = 0; a < 3; ++a) {
      if (non_null_count(rec.track(n).axis[a]) < 2) {
        throw InsufficientData(std::string(node_name(n)) + " axis " +
                               kAxisNames[a] + " has fewer than 2 non-null samples");
      }
    }
  }
  return rec;
}

CalibrationConfig parse_calibration(const std::string& text) {
  CalibrationConfig cal;
  std::array<std::array<std::array<bool, 2>, 3>, 2> seen{};  // [node][axis][offset/scale]

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("calibration line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));

    std::size_t d1 = key.find('.');
    std::size_t d2 = key.rfind('.');
    if (d1 == std::string::npos || d1 == d2) {
      throw ConfigError("calibration key '" + key + "' is not <node>.<axis>.<field>");
    }
    std::string node_s = key.substr(0, d1);
    std::string axis_s = key.substr(d1 + 1, d2 - d1 - 1);
    std::string field = key.substr(d2 + 1);

    int ni = node_s == "ankle" ? 0 : node_s == "chest" ? 1 : -1;
    int ai = axis_s == "x" ? 0 : axis_s == "y" ? 1 : axis_s == "z" ? 2 : -1;
    if (ni < 0 || ai < 0 || (field != "offset" && field != "scale")) {
      throw ConfigError("unknown calibration key '" + key + "'");
    }

    char* end = nullptr;
    double v = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ConfigError("calibration key '" + key + "': bad value '" + val + "'");
    }
    if (field == "offset") {
      cal.node_axis[ni][ai].offset = v;
      seen[ni][ai][0] = true;
    } else {
      if (v == 0.0) throw ConfigError("calibration key '" + key + "': scale must be nonzero");
      cal.node_axis[ni][ai].scale = v;
      seen[ni][ai][1] = true;
    }
  }

  for (int ni = 0; ni < 2; ++ni) {
    for (int ai = 0; ai < 3; ++ai) {
      for (int f = 0; f < 2; ++f) {
        if (!seen[ni][ai][f]) {
          throw ConfigError(std::string("calibration missing key '") +
                            node_name(static_cast<Node>(ni)) + "." +
                            (ai == 0 ? "x" : ai == 1 ? "y" : "z") + "." +
                            (f == 0 ? "offset" : "scale") + "'");
        }
      }
    }
  }
  return cal;
}

RawRecording fill_nulls(RawRecording rec) {
  for (Node n : kNodes) {
    NodeTrack& track = rec.track(n);
    for (int a = 0; a < 3; ++a) {
      std::vector<double>& v = track.axis[a];
      const std::vector<double>& t = track.time;
      if (non_null_count(v) == 0) {
        throw InsufficientData(std::string(node_name(n)) + " axis " +
                               kAxisNames[a] + " is all null");
      }

      // Indices of non-null samples, in order.
      std::vector<std::size_t> known;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_null(v[i])) known.push_back(i);

      // Leading/trailing nulls take the nearest known value.
      for (std::size_t i = 0; i < known.front(); ++i) v[i] = v[known.front()];
      for (std::size_t i = known.back() + 1; i < v.size(); ++i) v[i] = v[known.back()];

      // Interior nulls: linear interpolation in time between neighbors.
      for (std::size_t g = 0; g + 1 < known.size(); ++g) {
        std::size_t lo = known[g], hi = known[g + 1];
        for (std::size_t i = lo + 1; i < hi; ++i) {
          double w = (t[i] - t[lo]) / (t[hi] - t[lo]);
          v[i] = v[lo] + w * (v[hi] - v[lo]);
        }
      }
    }
  }
  return rec;
}

RawRecording calibrate(RawRecording rec, const CalibrationConfig& cal) {
  for (int ni = 0; ni < 2; ++ni) {
    for (int ai = 0; ai < 3; ++ai) {
      const auto& c = cal.node_axis[ni][ai];
      if (c.scale == 0.0) {
        throw ConfigError("calibration scale is zero");
      }
      for (double& v : rec.node[ni].axis[ai]) {
        if (!is_null(v)) v = (v - c.offset) * c.scale;
      }
    }
  }
  return rec;
}

namespace {

// Linear interpolation of (times, values) at t; t is clamped to the sampled
// span, which only matters for sub-ulp overshoot at the grid ends.
double interp_at(const std::vector<double>& times, const std::vector<double>& values,
                 double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times.begin());
  if (hi == 0) hi = 1;
  if (hi == times.size()) hi = times.size() - 1;
  std::size_t lo = hi - 1;
  double w = (t - times[lo]) / (times[hi] - times[lo]);
  w = std::clamp(w, 0.0, 1.0);
  if (w == 0.0) return values[lo];  // exact at the knots
  if (w == 1.0) return values[hi];
  return values[lo] + w * (values[hi] - values[lo]);
}

}  // namespace

UniformSeries resample(const RawRecording& rec, double rate_hz,
                       double min_overlap_seconds) {
  for (Node n : kNodes) {
    const NodeTrack& track = rec.track(n);
    if (track.size() < 2) {
      throw InsufficientData(std::string(node_name(n)) + " has fewer than 2 samples");
    }
    for (int a = 0; a < 3; ++a) {
      for (double v : track.axis[a]) {
        if (is_null(v)) throw InvalidArgument("resample requires null-free input");
      }
    }
  }

  // Shared grid over the overlap; anchored at the later first timestamp.
  const double t0 = std::max(rec.track(Node::Ankle).time.front(),
                             rec.track(Node::Chest).time.front());
  const double t_end = std::min(rec.track(Node::Ankle).time.back(),
                                rec.track(Node::Chest).time.back());
  const double overlap = t_end - t0;
  if (overlap < min_overlap_seconds - 1e-9) {
    throw InsufficientData("node overlap " + std::to_string(overlap) +
                           " s is shorter than " + std::to_string(min_overlap_seconds) + " s");
  }

  const std::size_t n_samples =
      static_cast<std::size_t>(std::floor(overlap * rate_hz + 1e-9)) + 1;

  UniformSeries out;
  out.subject_id = rec.subject_id;
  out.session_id = rec.session_id;
  out.start_time = t0;
  out.sample_rate = rate_hz;
  for (Node n : kNodes) {
    const NodeTrack& track = rec.track(n);
    for (int a = 0; a < 3; ++a) {
      std::vector<double>& dst = out.axis(n, a);
      dst.resize(n_samples);
      for (std::size_t i = 0; i < n_samples; ++i) {
        dst[i] = interp_at(track.time, track.axis[a], out.time_at(i));
      }
    }
  }
  return out;
}

UniformSeries remove_mean(UniformSeries series) {
  for (Node n : kNodes) {
    for (int a = 0; a < 3; ++a) {
      std::vector<double>& v = series.axis(n, a);
      if (v.empty()) continue;

      double mn = v[0], mx = v[0];
      for (double x : v) {
        mn = std::min(mn, x);
        mx = std::max(mx, x);
      }
      if (mn == mx) {  // constant axis: subtract exactly
        for (double& x : v) x = 0.0;
        continue;
      }

      // Two-pass compensated mean keeps the residual near one ulp.
      double sum = 0.0;
      for (double x : v) sum += x;
      double mean = sum / static_cast<double>(v.size());
      double resid = 0.0;
      for (double x : v) resid += x - mean;
      mean += resid / static_cast<double>(v.size());
      for (double& x : v) x -= mean;
    }
  }
  return series;
}

std::vector<Window> segment(const UniformSeries& series, int window_samples) {
  if (window_samples <= 0) throw InvalidArgument("window_samples must be positive");
  const std::size_t w = static_cast<std::size_t>(window_samples);
  const std::size_t n = series.size();
  if (n < w) {
    throw InsufficientData("series has " + std::to_string(n) +
                           " samples, need at least " + std::to_string(w));
  }

  std::vector<Window> windows;
  windows.reserve(n / w);
  for (std::size_t wi = 0; wi * w + w <= n; ++wi) {
    Window win;
    win.subject_id = series.subject_id;
    win.session_id = series.session_id;
    win.window_index = static_cast<int>(wi);
    for (Node node : kNodes) {
      for (int a = 0; a < 3; ++a) {
        const std::vector<double>& src = series.axis(node, a);
        win.axis(node, a).assign(src.begin() + static_cast<std::ptrdiff_t>(wi * w),
                                 src.begin() + static_cast<std::ptrdiff_t>(wi * w + w));
      }
    }
    windows.push_back(std::move(win));
  }
  return windows;
}

}  // namespace gaitkit
