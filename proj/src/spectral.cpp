#include "gaitkit/spectral.hpp"

#include <cmath>

#include "gaitkit/errors.hpp"

namespace gaitkit {

double Psd::total_power() const {
  double sum = 0.0;
  for (double p : power) sum += p;
  return sum;
}

std::size_t Psd::band_limit_bin() const {
  if (bin_hz <= 0.0 || power.empty()) return 0;
  auto k = static_cast<std::size_t>(std::floor(kSpectralBandHz / bin_hz + 1e-9));
  return std::min(k, power.size() - 1);
}

Psd psd(std::span<const double> samples, double sample_rate_hz) {
  const std::size_t n = samples.size();
  if (n < 4 || n % 2 != 0) {
    throw ShapeError("psd expects an even window length >= 4, got " +
                     std::to_string(n));
  }
  if (sample_rate_hz <= 0.0) throw InvalidArgument("sample rate must be positive");

  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);

  // Direct DFT with a shared twiddle table indexed by (k*t) mod n. The
  // window is 250 samples, so O(n^2) costs microseconds and avoids any
  // padding that would move the bin grid off 0.2 Hz multiples.
  std::vector<double> cos_tab(n), sin_tab(n);
  for (std::size_t j = 0; j < n; ++j) {
    double angle = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
    cos_tab[j] = std::cos(angle);
    sin_tab[j] = std::sin(angle);
  }

  const std::size_t half = n / 2;
  Psd out;
  out.bin_hz = sample_rate_hz / static_cast<double>(n);
  out.power.resize(half + 1);
  const double norm = 1.0 / (static_cast<double>(n) * sample_rate_hz);
  for (std::size_t k = 0; k <= half; ++k) {
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      double x = samples[t] - mean;
      re += x * cos_tab[idx];
      im += x * sin_tab[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    double scale = (k == 0 || k == half) ? 1.0 : 2.0;
    out.power[k] = scale * (re * re + im * im) * norm;
  }
  return out;
}

double median_frequency(const Psd& p) {
  const double total = p.total_power();
  if (total <= 0.0) return 0.0;
  const double half = 0.5 * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < p.power.size(); ++k) {
    cum += p.power[k];
    if (cum >= half) return p.freq_at(k);
  }
  return p.freq_at(p.power.size() - 1);
}

SpectralPeaks find_peaks(const Psd& p) {
  SpectralPeaks out;
  const std::size_t limit = p.band_limit_bin();

  // Rounding residue of an otherwise-empty bin sits ~16 orders below the
  // real content; the relative floor keeps it from minting peaks.
  const double floor = p.total_power() * 1e-12;

  for (std::size_t k = 1; k <= limit && k + 1 < p.power.size(); ++k) {
    if (p.power[k] > floor && p.power[k] > p.power[k - 1] &&
        p.power[k] > p.power[k + 1]) {
      out.peaks.emplace_back(p.freq_at(k), p.power[k]);
    }
  }
  out.num_peaks = static_cast<int>(out.peaks.size());
  if (!out.peaks.empty()) {
    out.peak_x1 = out.peaks[0].first;
    out.peak_y1 = out.peaks[0].second;
  }
  if (out.peaks.size() > 1) {
    out.peak_x2 = out.peaks[1].first;
    out.peak_y2 = out.peaks[1].second;
  }

  double best = floor;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (p.power[k] > best) {
      best = p.power[k];
      best_k = k;
    }
  }
  // best_k stays 0 when the band holds no real power; 0 Hz marks "no content".
  out.peak_freq = p.freq_at(best_k);
  out.integ_spec = integrate_spectrum(p);
  return out;
}

double integrate_spectrum(const Psd& p) {
  const std::size_t limit = p.band_limit_bin();
  double sum = 0.0;
  for (std::size_t k = 0; k <= limit && k < p.power.size(); ++k) sum += p.power[k];
  return sum * p.bin_hz;
}

}  // namespace gaitkit
