#include "gaitkit/features.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gaitkit/errors.hpp"
#include "gaitkit/spectral.hpp"

namespace gaitkit {

const std::vector<std::string>& canonical_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    out.reserve(kFeatureCount);
    const std::array<const char*, 2> nodes{"Ankle", "Chest"};
    for (const char* node : nodes) {
      for (const char* axis : kAxisNames) {
        for (const char* feat : kAxisFeatureNames) {
          out.push_back(std::string(node) + "_" + feat + "_" + axis);
        }
      }
    }
    for (const char* node : nodes) {
      for (const char* feat : kMagnitudeFeatureNames) {
        out.push_back(std::string(node) + "_" + feat);
      }
    }
    return out;
  }();
  return names;
}

std::vector<double> magnitude(const std::array<std::vector<double>, 3>& node_axes) {
  const std::size_t n = node_axes[0].size();
  if (node_axes[1].size() != n || node_axes[2].size() != n) {
    throw ShapeError("magnitude: axis lengths differ");
  }
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::sqrt(node_axes[0][i] * node_axes[0][i] +
                       node_axes[1][i] * node_axes[1][i] +
                       node_axes[2][i] * node_axes[2][i]);
  }
  return mag;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("percentile of empty set");
  std::sort(values.begin(), values.end());
  const double rank = q / 100.0 * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

AxisFeatures axis_features(std::span<const double> axis_samples, double sample_rate_hz) {
  const std::size_t n = axis_samples.size();
  if (n == 0) throw ShapeError("axis_features: empty input");

  AxisFeatures out;
  double mx = axis_samples[0], mn = axis_samples[0], sum = 0.0;
  for (double v : axis_samples) {
    mx = std::max(mx, v);
    mn = std::min(mn, v);
    sum += v;
  }
  const double mean = sum / static_cast<double>(n);

  double ss = 0.0;
  for (double v : axis_samples) ss += (v - mean) * (v - mean);
  const double stdev = std::sqrt(ss / static_cast<double>(n));

  std::vector<double> sorted(axis_samples.begin(), axis_samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = (n % 2 == 1)
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  const Psd p = psd(axis_samples, sample_rate_hz);
  out.mf_degenerate = p.total_power() <= 0.0;
  const double mf = median_frequency(p);
  const SpectralPeaks peaks = find_peaks(p);

  out.values = {mx,
                mn,
                mean,
                median,
                stdev,
                mf,
                peaks.peak_x1,
                peaks.peak_x2,
                peaks.peak_y1,
                peaks.peak_y2,
                peaks.peak_freq,
                static_cast<double>(peaks.num_peaks),
                peaks.integ_spec};
  return out;
}

std::array<double, kMagnitudeFeatureCount> magnitude_features(
    const std::array<std::vector<double>, 3>& node_axes) {
  const std::vector<double> mag = magnitude(node_axes);
  double sum = 0.0;
  for (double m : mag) sum += m;
  const double am = sum / static_cast<double>(mag.size());

  const double p25 = percentile(mag, 25.0);
  const double p75 = percentile(mag, 75.0);
  double sq25 = 0.0, sq75 = 0.0;
  for (double m : mag) {
    if (m < p25) sq25 += m * m;  // strictly below; ties excluded
    if (m < p75) sq75 += m * m;
  }
  return {am, sq25, sq75};
}

FeatureVector assemble_vector(const Window& w, double sample_rate_hz) {
  FeatureVector fv;
  fv.label = w.subject_id;
  fv.values.reserve(kFeatureCount);

  const auto& names = canonical_feature_names();
  for (Node node : kNodes) {
    for (int a = 0; a < 3; ++a) {
      const AxisFeatures af = axis_features(w.axis(node, a), sample_rate_hz);
      for (double v : af.values) fv.values.push_back(v);
      if (af.mf_degenerate) {
        // Index of this axis block's MF slot (feature 6 of 13).
        std::size_t base = (static_cast<std::size_t>(node) * 3 + static_cast<std::size_t>(a)) *
                           kAxisFeatureCount;
        fv.degenerate_flags.insert(names[base + 5]);
      }
    }
  }
  for (Node node : kNodes) {
    for (double v : magnitude_features(w.samples[static_cast<std::size_t>(node)])) {
      fv.values.push_back(v);
    }
  }
  return fv;
}

FeatureMatrix extract_features(const std::vector<Window>& windows,
                               double sample_rate_hz, int max_threads) {
  FeatureMatrix m;
  m.names = canonical_feature_names();
  m.rows.resize(windows.size());

  const std::size_t n = windows.size();
  std::size_t threads = max_threads > 1 ? std::min<std::size_t>(max_threads, n) : 1;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      m.rows[i] = assemble_vector(windows[i], sample_rate_hz);
    }
    return m;
  }

  // Rows are written to disjoint preallocated slots, so the result is
  // independent of scheduling.
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) {
        m.rows[i] = assemble_vector(windows[i], sample_rate_hz);
      }
    });
  }
  for (auto& th : pool) th.join();
  return m;
}

NormalizationParams fit_normalizer(const FeatureMatrix& train) {
  if (train.num_rows() < 2) throw InvalidArgument("fit_normalizer needs >= 2 rows");
  const std::size_t d = train.num_features();

  NormalizationParams params;
  params.names = train.names;
  params.clip_lo.resize(d);
  params.clip_hi.resize(d);
  params.min.resize(d);
  params.max.resize(d);

  std::vector<double> column(train.num_rows());
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t r = 0; r < train.num_rows(); ++r) column[r] = train.rows[r].values[f];
    const double lo = percentile(column, 1.0);
    const double hi = percentile(column, 99.0);
    params.clip_lo[f] = lo;
    params.clip_hi[f] = hi;
    double mn = std::clamp(column[0], lo, hi);
    double mx = mn;
    for (double v : column) {
      double c = std::clamp(v, lo, hi);
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    params.min[f] = mn;
    params.max[f] = mx;
  }
  return params;
}

FeatureMatrix apply_normalizer(const FeatureMatrix& m, const NormalizationParams& params) {
  if (params.size() != m.num_features()) {
    throw SchemaError("normalizer fitted for " + std::to_string(params.size()) +
                      " features, matrix has " + std::to_string(m.num_features()));
  }
  if (params.names != m.names) {
    throw SchemaError("normalizer feature names do not match the matrix");
  }

  FeatureMatrix out = m;
  for (FeatureVector& row : out.rows) {
    if (row.values.size() != params.size()) {
      throw SchemaError("feature row length does not match normalizer");
    }
    for (std::size_t f = 0; f < params.size(); ++f) {
      double v = std::clamp(row.values[f], params.clip_lo[f], params.clip_hi[f]);
      const double range = params.max[f] - params.min[f];
      row.values[f] = range > 0.0 ? (v - params.min[f]) / range : 0.0;
    }
  }
  out.normalization = params;
  out.normalization_fitted = true;
  return out;
}

}  // namespace gaitkit
