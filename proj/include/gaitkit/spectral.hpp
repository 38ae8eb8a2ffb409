#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gaitkit {

/// Upper edge of the band the Table-1 peak features examine.
inline constexpr double kSpectralBandHz = 5.0;

/// One-sided power spectral density on bins f_k = k * bin_hz,
/// k = 0 .. power.size()-1 (last bin is Nyquist).
struct Psd {
  double bin_hz = 0.0;
  std::vector<double> power;

  double freq_at(std::size_t k) const { return bin_hz * static_cast<double>(k); }
  double total_power() const;
  /// Largest k with freq_at(k) <= kSpectralBandHz.
  std::size_t band_limit_bin() const;
};

/// Peaks of the sub-5 Hz band. A peak is an interior bin strictly greater
/// than both neighbors and above a 1e-12 relative power floor (DFT rounding
/// residue in otherwise-empty bins must not register); DC is never a
/// candidate. Missing first/second peaks carry the (0, 0) sentinel.
struct SpectralPeaks {
  std::vector<std::pair<double, double>> peaks;  // (freq, power), ascending freq
  double peak_x1 = 0.0, peak_y1 = 0.0;
  double peak_x2 = 0.0, peak_y2 = 0.0;
  double peak_freq = 0.0;  // frequency of the max-power sub-5 Hz bin, 0 if band empty
  int num_peaks = 0;
  double integ_spec = 0.0;  // rectangle-rule integral over 0..5 Hz
};

/// Raw one-sided periodogram of the mean-subtracted input: length-N DFT,
/// power_k = c_k |X_k|^2 / (N * rate) with c = 1 at DC and Nyquist, 2
/// elsewhere. Satisfies sum(power) * bin_hz == mean square of the
/// mean-subtracted input (Parseval). N must be even and >= 4, else
/// ShapeError.
Psd psd(std::span<const double> samples, double sample_rate_hz);

/// Smallest bin frequency at which cumulative power reaches half the total;
/// 0 when the spectrum is empty (degenerate).
double median_frequency(const Psd& p);

SpectralPeaks find_peaks(const Psd& p);

/// Rectangle-rule integral of the PSD from 0 to 5 Hz inclusive.
double integrate_spectrum(const Psd& p);

}  // namespace gaitkit
