// Acceptance suite: eight go/no-go checks over the full pipeline, each
// printed as one PASS/FAIL line. Exit code 0 only when every criterion
// holds at its stated tolerance and runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitkit/classifiers.hpp"
#include "gaitkit/evaluation.hpp"
#include "gaitkit/features.hpp"
#include "gaitkit/io.hpp"
#include "gaitkit/pipeline.hpp"
#include "gaitkit/preprocess.hpp"
#include "gaitkit/rng.hpp"
#include "gaitkit/selection.hpp"
#include "gaitkit/spectral.hpp"
#include "gaitkit/synthgen.hpp"
#include "gaitkit/types.hpp"

using namespace gaitkit;
namespace fs = std::filesystem;

namespace {

int checks_failed = 0;

#define EXPECT(cond, what)                              \
  do {                                                  \
    if (!(cond)) {                                      \
      ++checks_failed;                                  \
      detail += std::string("; FAILED: ") + (what);     \
    }                                                   \
  } while (0)

// The fixed synthetic benchmark: 4 subjects at cadences 1.5/1.8/2.1/2.4 Hz,
// 2 sessions, 64 windows per subject, seed 7.
constexpr std::uint64_t kBenchSeed = 7;

FeatureMatrix benchmark_matrix() {
  GenSpec spec = default_spec(4, 2, 160.0, kBenchSeed);
  spec.null_probability = 0.01;

  std::vector<Window> windows;
  PipelineConfig cfg;
  for (const RawRecording& rec : generate(spec)) {
    std::vector<Window> w = preprocess_recording(rec, CalibrationConfig::identity(), cfg);
    windows.insert(windows.end(), w.begin(), w.end());
  }
  return extract_features(windows, 50.0, 1);
}

std::vector<std::string> labels_of(const FeatureMatrix& m) {
  std::vector<std::string> labels;
  for (const auto& row : m.rows) labels.push_back(row.label);
  return labels;
}

// ------------------------------------------------------------ criterion 1

bool criterion_feature_count(std::string& detail) {
  GenSpec spec = default_spec(4, 2, 130.0, 3);  // 4 x 2 x 26 = 208 windows
  spec.null_probability = 0.01;

  std::vector<Window> windows;
  PipelineConfig cfg;
  for (const RawRecording& rec : generate(spec)) {
    std::vector<Window> w = preprocess_recording(rec, CalibrationConfig::identity(), cfg);
    windows.insert(windows.end(), w.begin(), w.end());
  }
  EXPECT(windows.size() >= 200, "need >= 200 windows, got " + std::to_string(windows.size()));
  windows.resize(200);

  const auto& names = canonical_feature_names();
  EXPECT(names.size() == 84, "canonical name list is not 84 long");
  const FeatureMatrix m = extract_features(windows, 50.0, 1);
  EXPECT(m.names == names, "matrix names differ from canonical order");
  for (const auto& row : m.rows) {
    if (row.values.size() != 84) {
      EXPECT(false, "row with " + std::to_string(row.values.size()) + " values");
      break;
    }
  }
  detail = "200 windows x 84 features, canonical order";
  return checks_failed == 0;
}

// ------------------------------------------------------------ criterion 2

bool criterion_spectral(std::string& detail) {
  Rng rng(1002);
  int peaks_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> w(250);
    for (double& v : w) v = uniform_range(rng, -4.0, 4.0);
    const Psd p = psd(w, 50.0);

    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= 250.0;
    double ms = 0.0;
    for (double v : w) ms += (v - mean) * (v - mean);
    ms /= 250.0;

    const double spectral = p.total_power() * p.bin_hz;
    if (std::abs(spectral - ms) > 1e-6 * ms) {
      EXPECT(false, "Parseval violation at trial " + std::to_string(trial));
      break;
    }

    const SpectralPeaks peaks = find_peaks(p);
    for (const auto& [freq, amp] : peaks.peaks) {
      const auto k = static_cast<std::size_t>(std::llround(freq / p.bin_hz));
      ++peaks_checked;
      if (!(k >= 1 && freq <= 5.0 && p.power[k] == amp &&
            p.power[k] > p.power[k - 1] && p.power[k] > p.power[k + 1])) {
        EXPECT(false, "reported peak fails strict-neighbor recheck");
        break;
      }
    }
  }

  std::vector<double> sine(250);
  for (int i = 0; i < 250; ++i) sine[i] = std::sin(2.0 * M_PI * 2.0 * i / 50.0);
  const double mf = median_frequency(psd(sine, 50.0));
  EXPECT(std::abs(mf - 2.0) <= 0.2, "2 Hz sine MF = " + std::to_string(mf));

  detail = "Parseval on 1000 windows, " + std::to_string(peaks_checked) +
           " peaks rechecked, sine MF = " + std::to_string(mf) + " Hz";
  return checks_failed == 0;
}

// ------------------------------------------------------------ criterion 3

bool criterion_preprocess(std::string& detail) {
  // Affine exactness of the resampler.
  Rng rng(1003);
  for (int trial = 0; trial < 5; ++trial) {
    const double slope = uniform_range(rng, -4.0, 4.0);
    const double intercept = uniform_range(rng, -9.0, 9.0);
    RawRecording rec;
    for (Node n : kNodes) {
      double t = uniform_range(rng, -0.02, 0.02);
      for (int i = 0; i < 500; ++i) {
        rec.track(n).time.push_back(t);
        for (int a = 0; a < 3; ++a) rec.track(n).axis[a].push_back(slope * t + intercept);
        t += uniform_range(rng, 1.0 / 55.0, 1.0 / 45.0);
      }
    }
    const UniformSeries s = resample(rec);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double expect = slope * s.time_at(i) + intercept;
      if (std::abs(s.axis(Node::Ankle, 0)[i] - expect) >
          1e-9 * std::max(1.0, std::abs(expect))) {
        EXPECT(false, "resampler not affine-exact");
        break;
      }
    }
  }

  // Mean removal: idempotent and zero-mean at tolerance.
  UniformSeries s;
  for (Node n : kNodes) {
    for (int a = 0; a < 3; ++a) {
      for (int i = 0; i < 2000; ++i) s.axis(n, a).push_back(uniform_range(rng, -20, 30));
    }
  }
  const UniformSeries once = remove_mean(s);
  const UniformSeries twice = remove_mean(once);
  for (Node n : kNodes) {
    for (int a = 0; a < 3; ++a) {
      double sum = 0.0, mx = 0.0;
      for (std::size_t i = 0; i < once.axis(n, a).size(); ++i) {
        sum += once.axis(n, a)[i];
        mx = std::max(mx, std::abs(once.axis(n, a)[i]));
        if (std::abs(once.axis(n, a)[i] - twice.axis(n, a)[i]) > 1e-12) {
          EXPECT(false, "mean removal not idempotent");
          break;
        }
      }
      EXPECT(std::abs(sum / 2000.0) <= 1e-9 * (mx + 1.0), "axis mean above tolerance");
    }
  }

  // Segment arithmetic.
  UniformSeries long_series;
  for (Node n : kNodes) {
    for (int a = 0; a < 3; ++a) long_series.axis(n, a).assign(1500, 0.0);
  }
  EXPECT(segment(long_series).size() == 6, "1500 samples did not give 6 windows");

  detail = "affine-exact resampling, idempotent mean removal, 1500 -> 6 windows";
  return checks_failed == 0;
}

// ------------------------------------------------------------ criterion 4

FeatureMatrix selection_fixture(int n_features, int n_rows, int n_classes,
                                std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix m;
  for (int f = 0; f < n_features; ++f) m.names.push_back("f" + std::to_string(f));
  std::vector<double> weight(n_features), noise(n_features);
  for (int f = 0; f < n_features; ++f) {
    weight[f] = uniform_range(rng, 0.0, 1.0);
    noise[f] = uniform_range(rng, 0.2, 1.5);
  }
  for (int r = 0; r < n_rows; ++r) {
    FeatureVector row;
    row.label = "c" + std::to_string(r % n_classes);
    for (int f = 0; f < n_features; ++f) {
      row.values.push_back(weight[f] * (r % n_classes) + noise[f] * normal(rng));
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

bool criterion_selection(std::string& detail) {
  int exact_matches = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FeatureMatrix m = selection_fixture(12, 120, 3, 4000 + seed);
    const SelectionResult result = best_first_search(m);

    const SuTable su = compute_su_table(m);
    double best = -1.0;
    for (unsigned mask = 1; mask < (1u << 12); ++mask) {
      std::vector<int> subset;
      for (int f = 0; f < 12; ++f) {
        if (mask & (1u << f)) subset.push_back(f);
      }
      best = std::max(best, cfs_merit(subset, su));
    }
    if (std::abs(result.merit - best) <= 1e-9) {
      ++exact_matches;
    } else {
      EXPECT(false, "seed " + std::to_string(seed) + ": best-first merit " +
                        std::to_string(result.merit) + " != exhaustive " +
                        std::to_string(best));
    }
  }

  int planted_found = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(4100 + seed);
    FeatureMatrix m;
    m.names.push_back("perfect");
    for (int f = 0; f < 10; ++f) m.names.push_back("noise" + std::to_string(f));
    for (int r = 0; r < 160; ++r) {
      FeatureVector row;
      const int cls = r % 4;
      row.label = "c" + std::to_string(cls);
      row.values.push_back(static_cast<double>(cls));
      for (int f = 0; f < 10; ++f) row.values.push_back(normal(rng));
      m.rows.push_back(std::move(row));
    }
    const SelectionResult result = best_first_search(m);
    bool found = false;
    for (const auto& name : result.selected) found |= (name == "perfect");
    if (found) {
      ++planted_found;
    } else {
      EXPECT(false, "seed " + std::to_string(seed) + ": planted feature missed");
    }
  }

  detail = std::to_string(exact_matches) + "/20 exhaustive matches, " +
           std::to_string(planted_found) + "/20 planted features found";
  return checks_failed == 0;
}

// ------------------------------------------------------------ criterion 5

bool criterion_classifiers(std::string& detail) {
  Rng rng(1005);

  // 1-NN versus the exhaustive scan, 20 query sets.
  for (int set = 0; set < 20; ++set) {
    FeatureMatrix m;
    m.names = {"a", "b", "c"};
    for (int r = 0; r < 80; ++r) {
      FeatureVector row;
      row.values = {normal(rng), normal(rng), normal(rng)};
      row.label = "c" + std::to_string(static_cast<int>(bounded_uint(rng, 4)));
      m.rows.push_back(std::move(row));
    }
    const TrainedModel knn = train_knn(m, {});
    for (int q = 0; q < 10; ++q) {
      const std::vector<double> query{normal(rng), normal(rng), normal(rng)};
      double best_d2 = 1e300;
      std::size_t best_r = 0;
      for (std::size_t r = 0; r < m.num_rows(); ++r) {
        double d2 = 0.0;
        for (int f = 0; f < 3; ++f) {
          const double d = m.rows[r].values[f] - query[f];
          d2 += d * d;
        }
        if (d2 < best_d2) {
          best_d2 = d2;
          best_r = r;
        }
      }
      if (knn.predict(query) != m.rows[best_r].label) {
        EXPECT(false, "1-NN disagrees with brute force at set " + std::to_string(set));
        break;
      }
    }
  }

  // Gaussian NB argmax versus a from-scratch score.
  {
    FeatureMatrix m;
    m.names = {"x", "y"};
    for (int i = 0; i < 60; ++i) {
      FeatureVector a, b;
      a.values = {normal(rng), 2.0 * normal(rng) + 1.0};
      a.label = "p";
      b.values = {normal(rng) + 2.0, 0.5 * normal(rng) - 1.0};
      b.label = "q";
      m.rows.push_back(a);
      m.rows.push_back(b);
    }
    const TrainedModel nb = train_gaussian_nb(m, {});
    double mu[2][2] = {}, var[2][2] = {};
    int count[2] = {};
    for (const auto& row : m.rows) {
      const int c = row.label == "p" ? 0 : 1;
      ++count[c];
      for (int f = 0; f < 2; ++f) mu[c][f] += row.values[f];
    }
    for (int c = 0; c < 2; ++c) {
      for (int f = 0; f < 2; ++f) mu[c][f] /= count[c];
    }
    for (const auto& row : m.rows) {
      const int c = row.label == "p" ? 0 : 1;
      for (int f = 0; f < 2; ++f) {
        var[c][f] += (row.values[f] - mu[c][f]) * (row.values[f] - mu[c][f]);
      }
    }
    for (int c = 0; c < 2; ++c) {
      for (int f = 0; f < 2; ++f) var[c][f] = std::max(var[c][f] / count[c], 1e-9);
    }
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<double> q{uniform_range(rng, -3, 5), uniform_range(rng, -4, 4)};
      double best_score = -1e300;
      int best = 0;
      for (int c = 0; c < 2; ++c) {
        double s = std::log(count[c] / static_cast<double>(m.num_rows()));
        for (int f = 0; f < 2; ++f) {
          const double d = q[f] - mu[c][f];
          s += -0.5 * std::log(2.0 * M_PI * var[c][f]) - d * d / (2.0 * var[c][f]);
        }
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      if (nb.predict(q) != (best == 0 ? "p" : "q")) {
        EXPECT(false, "NB argmax disagrees with log-density oracle");
        break;
      }
    }
  }

  // LDA argmax versus the closed-form 2x2 discriminant.
  {
    FeatureMatrix m;
    m.names = {"x", "y"};
    const double centers[3][2] = {{0, 0}, {5, 0}, {0, 5}};
    for (int c = 0; c < 3; ++c) {
      for (int i = 0; i < 40; ++i) {
        FeatureVector row;
        row.values = {centers[c][0] + normal(rng), centers[c][1] + normal(rng)};
        row.label = "c" + std::to_string(c);
        m.rows.push_back(std::move(row));
      }
    }
    Hyperparams hp;
    hp.lda.ridge = 0.0;
    const TrainedModel lda = train_lda(m, hp);

    double mu[3][2] = {};
    int count[3] = {};
    for (const auto& row : m.rows) {
      const int c = row.label[1] - '0';
      ++count[c];
      for (int f = 0; f < 2; ++f) mu[c][f] += row.values[f];
    }
    for (int c = 0; c < 3; ++c) {
      for (int f = 0; f < 2; ++f) mu[c][f] /= count[c];
    }
    double s00 = 0, s01 = 0, s11 = 0;
    for (const auto& row : m.rows) {
      const int c = row.label[1] - '0';
      const double dx = row.values[0] - mu[c][0];
      const double dy = row.values[1] - mu[c][1];
      s00 += dx * dx;
      s01 += dx * dy;
      s11 += dy * dy;
    }
    const double denom = static_cast<double>(m.num_rows()) - 3.0;
    s00 /= denom;
    s01 /= denom;
    s11 /= denom;
    const double det = s00 * s11 - s01 * s01;
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<double> q{uniform_range(rng, -3, 8), uniform_range(rng, -3, 8)};
      double best_score = -1e300;
      int best = 0;
      for (int c = 0; c < 3; ++c) {
        const double w0 = (s11 * mu[c][0] - s01 * mu[c][1]) / det;
        const double w1 = (-s01 * mu[c][0] + s00 * mu[c][1]) / det;
        const double score = q[0] * w0 + q[1] * w1 -
                             0.5 * (mu[c][0] * w0 + mu[c][1] * w1) +
                             std::log(count[c] / static_cast<double>(m.num_rows()));
        if (score > best_score) {
          best_score = score;
          best = c;
        }
      }
      if (lda.predict(q) != "c" + std::to_string(best)) {
        EXPECT(false, "LDA argmax disagrees with discriminant oracle");
        break;
      }
    }
  }

  // SVM: box constraints and complementarity on separable fixtures.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng srng(5200 + seed);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
      x.push_back({normal(srng) - 3.0, normal(srng)});
      y.push_back(-1);
      x.push_back({normal(srng) + 3.0, normal(srng)});
      y.push_back(+1);
    }
    Hyperparams::Svm hp;
    const BinarySvmFit fit = train_binary_svm(x, y, hp);
    const double bound_eps = 1e-8 * hp.c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT(fit.alpha[i] >= -1e-12 && fit.alpha[i] <= hp.c + 1e-12,
             "alpha outside [0, C]");
      double f = fit.bias;
      for (std::size_t d = 0; d < 2; ++d) f += fit.weights[d] * x[i][d];
      const double margin = y[i] * f;
      if (fit.alpha[i] <= bound_eps) {
        EXPECT(margin >= 1.0 - 1e-4, "zero-alpha point inside the margin");
      } else if (fit.alpha[i] >= hp.c - bound_eps) {
        EXPECT(margin <= 1.0 + 1e-4, "C-bound point outside the margin");
      } else {
        EXPECT(std::abs(margin - 1.0) <= 1e-4, "free support vector off the margin");
      }
    }
  }

  // Tree memorization on clean data.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng trng(5300 + seed);
    FeatureMatrix m;
    m.names = {"a", "b"};
    for (int r = 0; r < 90; ++r) {
      FeatureVector row;
      row.values = {normal(trng), normal(trng)};
      row.label = "c" + std::to_string(static_cast<int>(bounded_uint(trng, 4)));
      m.rows.push_back(std::move(row));
    }
    const TrainedModel tree = train_decision_tree(m, {});
    int hits = 0;
    for (const auto& row : m.rows) {
      if (tree.predict(row.values) == row.label) ++hits;
    }
    EXPECT(hits == static_cast<int>(m.num_rows()), "tree below 100% training accuracy");
  }

  detail = "knn scan, nb/lda oracles, svm kkt, tree memorization";
  return checks_failed == 0;
}

// ------------------------------------------------------------ criterion 6

bool criterion_benchmark(std::string& detail) {
  const FeatureMatrix m = benchmark_matrix();
  std::map<std::string, int> per_subject;
  for (const auto& row : m.rows) ++per_subject[row.label];
  EXPECT(per_subject.size() == 4, "expected 4 subjects");
  for (const auto& [subject, count] : per_subject) {
    EXPECT(count >= 60, subject + " has " + std::to_string(count) + " windows");
  }

  const FoldPlan plan = make_folds(labels_of(m), 5, kBenchSeed);

  // Decision tree on all 84 features.
  const double tree_acc =
      cross_validate(m, ClassifierKind::DecisionTree, {}, plan).accuracy;
  EXPECT(tree_acc >= 0.90, "tree accuracy " + std::to_string(tree_acc));

  // 1-NN on all features, then on the CFS-selected subset.
  const double knn_all = cross_validate(m, ClassifierKind::Knn, {}, plan).accuracy;
  const SelectionResult sel = best_first_search(apply_normalizer(m, fit_normalizer(m)));
  const FeatureMatrix sub = select_columns(m, sel.selected);
  const double knn_sel = cross_validate(sub, ClassifierKind::Knn, {}, plan).accuracy;
  EXPECT(knn_sel >= 0.95, "1-NN selected-feature accuracy " + std::to_string(knn_sel));
  EXPECT(knn_sel + 1e-12 >= knn_all, "selection reduced 1-NN accuracy: " +
                                         std::to_string(knn_all) + " -> " +
                                         std::to_string(knn_sel));

  // Label-permutation control, mean accuracy over 20 seeded shuffles.
  double sum = 0.0;
  for (int t = 0; t < 20; ++t) {
    FeatureMatrix shuffled = m;
    std::vector<std::string> labels = labels_of(m);
    Rng rng(derive_seed(6000, static_cast<std::uint64_t>(t)));
    shuffle(labels, rng);
    for (std::size_t r = 0; r < labels.size(); ++r) shuffled.rows[r].label = labels[r];
    const FoldPlan perm_plan = make_folds(labels, 5, static_cast<std::uint64_t>(t));
    sum += cross_validate(shuffled, ClassifierKind::Knn, {}, perm_plan).accuracy;
  }
  const double chance = sum / 20.0;
  EXPECT(chance >= 0.15 && chance <= 0.35,
         "permutation control " + std::to_string(chance));

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "tree(all)=%.3f knn(all)=%.3f knn(%zu selected)=%.3f chance=%.3f",
                tree_acc, knn_all, sel.selected.size(), knn_sel, chance);
  detail = buf;
  return checks_failed == 0;
}

// -------------------------------------------------------- criteria 7 and 8

std::map<std::string, std::string> run_into(const fs::path& dir) {
  GenSpec spec = default_spec(4, 2, 160.0, kBenchSeed);
  spec.null_probability = 0.01;
  write_dataset(spec, dir / "data");

  PipelineConfig cfg;
  cfg.out_dir = dir;
  cfg.seed = kBenchSeed;
  cfg.selection = SelectionMode::CfsBestFirst;
  cfg.classifiers = {ClassifierKind::DecisionTree, ClassifierKind::Knn};
  run_pipeline(cfg);

  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
    }
  }
  return files;
}

std::string strip_timing(const std::string& name, const std::string& content) {
  if (name.ends_with(".json")) {
    nlohmann::json j = nlohmann::json::parse(content);
    j.erase("timing");
    return j.dump();
  }
  if (name.ends_with(".txt")) {
    std::string out;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("Speed", 0) != 0) out += line + "\n";
    }
    return out;
  }
  return content;
}

fs::path acceptance_dir;
std::map<std::string, std::string> run_a, run_b;

bool criterion_determinism(std::string& detail) {
  acceptance_dir = fs::temp_directory_path() / "gaitkit_acceptance";
  fs::remove_all(acceptance_dir);
  run_a = run_into(acceptance_dir / "a");
  run_b = run_into(acceptance_dir / "b");

  EXPECT(!run_a.empty(), "first run produced no artifacts");
  EXPECT(run_a.size() == run_b.size(), "runs produced different artifact sets");
  int compared = 0;
  for (const auto& [name, content] : run_a) {
    if (run_b.count(name) == 0) {
      EXPECT(false, "missing artifact " + name);
      continue;
    }
    ++compared;
    if (strip_timing(name, content) != strip_timing(name, run_b.at(name))) {
      EXPECT(false, "artifact differs: " + name);
    }
  }

  // Fold-partition invariants on every run. Each row must be tested
  // exactly once: the aggregated confusion of every report sums to the
  // row count.
  const FeatureMatrix m = features_from_json(
      nlohmann::json::parse(run_a.at("features.json")));
  for (const auto& [name, content] : run_a) {
    if (name.find("reports/") != 0) continue;
    const EvalReport r = report_from_json(nlohmann::json::parse(content));
    long total = 0;
    for (const auto& row : r.confusion) {
      for (long v : row) total += v;
    }
    EXPECT(total == static_cast<long>(m.num_rows()),
           name + ": confusion total " + std::to_string(total));
  }
  const FoldPlan plan = make_folds(labels_of(m), 5, kBenchSeed);
  std::map<std::string, std::map<int, int>> per_class;
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    EXPECT(plan.assignment[r] >= 0 && plan.assignment[r] < 5, "fold index out of range");
    ++per_class[m.rows[r].label][plan.assignment[r]];
  }
  for (const auto& [cls, folds] : per_class) {
    int mn = 1 << 20, mx = 0;
    for (int f = 0; f < 5; ++f) {
      const auto it = folds.find(f);
      const int n = it == folds.end() ? 0 : it->second;
      mn = std::min(mn, n);
      mx = std::max(mx, n);
    }
    EXPECT(mx - mn <= 1, "stratification imbalance for " + cls);
  }

  detail = std::to_string(compared) + " artifacts byte-identical modulo timing";
  return checks_failed == 0;
}

bool criterion_protocol(std::string& detail) {
  EXPECT(run_a.count("selection.json") == 1, "selection.json missing");
  const SelectionResult sel_a =
      selection_from_json(nlohmann::json::parse(run_a.at("selection.json")));
  const SelectionResult sel_b =
      selection_from_json(nlohmann::json::parse(run_b.at("selection.json")));
  EXPECT(sel_a.selected == sel_b.selected, "selected subsets differ across runs");
  EXPECT(!sel_a.selected.empty(), "empty selection");

  detail = "subset size " + std::to_string(sel_a.selected.size()) +
           ", stable across runs (merit " + std::to_string(sel_a.merit) +
           "); selected subsets are dataset-specific and subsets reported "
           "for other datasets cannot be checked without their data";
  return checks_failed == 0;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 = no stated budget
  std::function<bool(std::string&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "feature-count contract", 5.0, criterion_feature_count},
      {2, "spectral correctness", 10.0, criterion_spectral},
      {3, "preprocessing exactness", 0.0, criterion_preprocess},
      {4, "selection oracle", 30.0, criterion_selection},
      {5, "classifier oracles", 0.0, criterion_classifiers},
      {6, "end-to-end synthetic benchmark", 60.0, criterion_benchmark},
      {7, "determinism", 0.0, criterion_determinism},
      {8, "protocol reproduction", 0.0, criterion_protocol},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    checks_failed = 0;
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail += std::string("; exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && elapsed >= c.budget_seconds) {
      ok = false;
      detail += "; over the " + std::to_string(c.budget_seconds) + " s budget";
    }
    std::printf("[%s] criterion %d: %s (%.2f s) -- %s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, elapsed, detail.c_str());
    if (!ok) ++failures;
  }

  if (!acceptance_dir.empty()) fs::remove_all(acceptance_dir);
  return failures == 0 ? 0 : 1;
}
