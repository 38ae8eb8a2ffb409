#include <doctest.h>

#include <cmath>
#include <vector>

#include "gaitkit/errors.hpp"
#include "gaitkit/rng.hpp"
#include "gaitkit/spectral.hpp"

using namespace gaitkit;

namespace {

std::vector<double> sine_window(double freq_hz, double amp = 1.0, double phase = 0.0,
                                int n = 250, double rate = 50.0) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = amp * std::sin(2.0 * M_PI * freq_hz * i / rate + phase);
  }
  return v;
}

// Time-domain oracle: mean square after mean subtraction.
double mean_square_centered(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size());
}

std::vector<double> random_window(Rng& rng, int n = 250) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform_range(rng, -3.0, 5.0);
  return v;
}

}  // namespace

TEST_CASE("psd bins are 0.2 Hz apart for a 250-sample window at 50 Hz") {
  Psd p = psd(std::vector<double>(250, 0.0), 50.0);
  CHECK(p.power.size() == 126);
  CHECK(p.bin_hz == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p.freq_at(125) == doctest::Approx(25.0).epsilon(1e-12));
  for (double v : p.power) CHECK(v == 0.0);
}

TEST_CASE("psd rejects wrong lengths") {
  CHECK_THROWS_AS(psd(std::vector<double>(3, 0.0), 50.0), ShapeError);
  CHECK_THROWS_AS(psd(std::vector<double>(251, 0.0), 50.0), ShapeError);
}

TEST_CASE("unit 2 Hz sine concentrates power at bin 10") {
  // Analytic oracle: |X_k0|^2 = (N/2)^2 for a bin-aligned unit sine, so
  // power = 2 * (N/2)^2 / (N * rate) = 2.5, and Parseval gives
  // 2.5 * 0.2 = 0.5 = the sine's mean square.
  Psd p = psd(sine_window(2.0), 50.0);
  CHECK(p.power[10] == doctest::Approx(2.5).epsilon(1e-9));
  for (std::size_t k = 0; k < p.power.size(); ++k) {
    if (k != 10) CHECK(p.power[k] <= 1e-9);
  }
}

TEST_CASE("Parseval holds against the time-domain oracle") {
  Rng rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> w = random_window(rng);
    Psd p = psd(w, 50.0);
    const double spectral = p.total_power() * p.bin_hz;
    const double temporal = mean_square_centered(w);
    CHECK(std::abs(spectral - temporal) <= 1e-6 * temporal);
    for (double v : p.power) CHECK(v >= 0.0);
  }
}

TEST_CASE("median frequency of single-bin mass") {
  Psd p;
  p.bin_hz = 0.2;
  p.power.assign(126, 0.0);
  p.power[10] = 3.7;
  CHECK(median_frequency(p) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("median frequency of a uniform spectrum is bin 62") {
  Psd p;
  p.bin_hz = 0.2;
  p.power.assign(126, 1.0);
  CHECK(median_frequency(p) == doctest::Approx(12.4).epsilon(1e-12));
}

TEST_CASE("median frequency equals a brute-force cumulative scan") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Psd p;
    p.bin_hz = 0.2;
    p.power.resize(126);
    for (double& v : p.power) v = uniform_double(rng) < 0.3 ? 0.0 : uniform_double(rng);

    // Independent oracle: scan bins until half the total is covered.
    double total = 0.0;
    for (double v : p.power) total += v;
    double freq = 0.0;
    if (total > 0.0) {
      double cum = 0.0;
      for (std::size_t k = 0; k < p.power.size(); ++k) {
        cum += p.power[k];
        if (cum >= 0.5 * total) {
          freq = 0.2 * static_cast<double>(k);
          break;
        }
      }
    }
    CHECK(median_frequency(p) == freq);

    // The cumulative-half property holds at the answer and fails just below.
    if (total > 0.0) {
      double below = 0.0, upto = 0.0;
      for (std::size_t k = 0; k < p.power.size(); ++k) {
        if (p.freq_at(k) <= freq) upto += p.power[k];
        if (p.freq_at(k) <= freq - p.bin_hz) below += p.power[k];
      }
      CHECK(upto >= 0.5 * total);
      CHECK(below < 0.5 * total);
    }
  }
}

TEST_CASE("median frequency of an empty spectrum is 0") {
  Psd p;
  p.bin_hz = 0.2;
  p.power.assign(126, 0.0);
  CHECK(median_frequency(p) == 0.0);
}

TEST_CASE("strictly decreasing power has no peaks") {
  Psd p;
  p.bin_hz = 0.2;
  for (int k = 0; k < 126; ++k) p.power.push_back(126.0 - k);
  SpectralPeaks peaks = find_peaks(p);
  CHECK(peaks.num_peaks == 0);
  CHECK(peaks.peak_x1 == 0.0);
  CHECK(peaks.peak_y1 == 0.0);
  CHECK(peaks.peak_x2 == 0.0);
  CHECK(peaks.peak_y2 == 0.0);
  CHECK(peaks.peak_freq == doctest::Approx(0.2).epsilon(1e-12));  // bin 1 is the band max
}

TEST_CASE("single interior maximum at bin 8") {
  Psd p;
  p.bin_hz = 0.2;
  p.power.assign(126, 0.0);
  p.power[8] = 5.0;
  SpectralPeaks peaks = find_peaks(p);
  CHECK(peaks.num_peaks == 1);
  CHECK(peaks.peak_x1 == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(peaks.peak_y1 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(peaks.peak_x2 == 0.0);
  CHECK(peaks.peak_freq == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("sum of 1.6 and 3.2 Hz sines peaks at bins 8 and 16 in order") {
  std::vector<double> w = sine_window(1.6);
  std::vector<double> second = sine_window(3.2, 0.7, 0.4);
  for (int i = 0; i < 250; ++i) w[i] += second[i];

  SpectralPeaks peaks = find_peaks(psd(w, 50.0));
  REQUIRE(peaks.num_peaks == 2);
  CHECK(peaks.peak_x1 == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(peaks.peak_x2 == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(peaks.peak_y1 > peaks.peak_y2);  // amplitudes 1.0 vs 0.7
  CHECK(peaks.peak_freq == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("reported peaks satisfy the strict-neighbor definition") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Psd p;
    p.bin_hz = 0.2;
    p.power.resize(126);
    for (double& v : p.power) v = uniform_double(rng);

    SpectralPeaks peaks = find_peaks(p);
    CHECK(peaks.num_peaks == static_cast<int>(peaks.peaks.size()));
    double prev = -1.0;
    for (const auto& [freq, amp] : peaks.peaks) {
      CHECK(freq > 0.0);
      CHECK(freq <= 5.0);
      CHECK(freq > prev);
      prev = freq;
      const auto k = static_cast<std::size_t>(std::llround(freq / 0.2));
      CHECK(p.power[k] == amp);
      CHECK(p.power[k] > p.power[k - 1]);
      CHECK(p.power[k] > p.power[k + 1]);
    }
  }
}

TEST_CASE("integrate_spectrum rectangle rule") {
  Psd p;
  p.bin_hz = 0.2;
  SUBCASE("zero spectrum integrates to zero") {
    p.power.assign(126, 0.0);
    CHECK(integrate_spectrum(p) == 0.0);
  }
  SUBCASE("constant power c integrates to c * 26 * 0.2") {
    p.power.assign(126, 3.0);
    CHECK(integrate_spectrum(p) == doctest::Approx(3.0 * 26.0 * 0.2).epsilon(1e-12));
  }
}

TEST_CASE("2 Hz sine: the sub-5 Hz integral captures the whole mean square") {
  std::vector<double> w = sine_window(2.0);
  Psd p = psd(w, 50.0);
  const double integral = integrate_spectrum(p);
  const double oracle = mean_square_centered(w);
  CHECK(std::abs(integral - oracle) <= 1e-6 * oracle);
}

TEST_CASE("psd matches a frozen external periodogram reference") {
  // Integer-derived fixture; reference bins come from an independent
  // one-sided boxcar density periodogram (mean-detrended, fs = 50).
  std::vector<double> x(250);
  for (int i = 0; i < 250; ++i) {
    x[static_cast<std::size_t>(i)] = ((i * 17) % 23) - 11 + 0.25 * ((i * 5) % 13);
  }
  const Psd p = psd(x, 50.0);

  const std::pair<std::size_t, double> ref[] = {
      {0, 0.0},
      {1, 0.0021985324514931202},
      {10, 0.11685730408671693},
      {25, 0.0765624301235497},
      {63, 1.1215196006791934},
      {125, 0.108045},
  };
  for (const auto& [k, expected] : ref) {
    CHECK(std::abs(p.power[k] - expected) <= 1e-9 * (1.0 + expected));
  }
  CHECK(std::abs(p.total_power() - 224.28762500000005) <= 1e-6);
  CHECK(std::abs(integrate_spectrum(p) - 2.763603809247485) <= 1e-9);
}

TEST_CASE("psd generalizes to other even window lengths") {
  // 500 samples at 50 Hz: 0.1 Hz bins, Nyquist at bin 250.
  Rng rng(66);
  std::vector<double> w(500);
  for (double& v : w) v = uniform_range(rng, -1.0, 2.0);
  Psd p = psd(w, 50.0);
  CHECK(p.power.size() == 251);
  CHECK(p.bin_hz == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.band_limit_bin() == 50);

  const double spectral = p.total_power() * p.bin_hz;
  CHECK(spectral == doctest::Approx(mean_square_centered(w)).epsilon(1e-9));
}

TEST_CASE("integrate_spectrum is monotone in sub-band power") {
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    Psd p;
    p.bin_hz = 0.2;
    p.power.resize(126);
    for (double& v : p.power) v = uniform_double(rng);
    const double before = integrate_spectrum(p);
    const auto bin = static_cast<std::size_t>(bounded_uint(rng, 26));
    p.power[bin] += uniform_double(rng);
    CHECK(integrate_spectrum(p) >= before);
  }
}
