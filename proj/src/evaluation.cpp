#include "gaitkit/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaitkit/errors.hpp"
#include "gaitkit/features.hpp"
#include "gaitkit/rng.hpp"

namespace gaitkit {

FoldPlan make_folds(const std::vector<std::string>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("k-fold needs k >= 2");

  std::map<std::string, std::vector<int>> by_class;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    by_class[labels[r]].push_back(static_cast<int>(r));
  }
  for (const auto& [cls, rows] : by_class) {
    if (rows.size() < static_cast<std::size_t>(k)) {
      throw StratificationError("class '" + cls + "' has " +
                                    std::to_string(rows.size()) + " rows, fewer than k = " +
                                    std::to_string(k),
                                cls);
    }
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(labels.size(), 0);

  Rng rng(derive_seed(seed, 0x666f6c64));  // "fold" stream
  for (auto& [cls, rows] : by_class) {     // std::map: deterministic class order
    shuffle(rows, rng);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      plan.assignment[static_cast<std::size_t>(rows[i])] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
  }
  return plan;
}

NormalizeMode normalize_mode_from_name(const std::string& name) {
  if (name == "per-fold") return NormalizeMode::PerFold;
  if (name == "global") return NormalizeMode::Global;
  throw InvalidArgument("normalize mode must be 'per-fold' or 'global', got '" + name + "'");
}

const char* normalize_mode_name(NormalizeMode mode) {
  return mode == NormalizeMode::PerFold ? "per-fold" : "global";
}

FeatureMatrix select_columns(const FeatureMatrix& m, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const std::string& name : names) {
    auto it = std::find(m.names.begin(), m.names.end(), name);
    if (it == m.names.end()) throw SchemaError("unknown feature '" + name + "'");
    idx.push_back(static_cast<std::size_t>(it - m.names.begin()));
  }

  FeatureMatrix out;
  out.names = names;
  out.rows.reserve(m.rows.size());
  for (const FeatureVector& row : m.rows) {
    FeatureVector r;
    r.label = row.label;
    r.degenerate_flags = row.degenerate_flags;
    r.values.reserve(idx.size());
    for (std::size_t i : idx) r.values.push_back(row.values[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

namespace {

FeatureMatrix take_rows(const FeatureMatrix& m, const std::vector<int>& rows) {
  FeatureMatrix out;
  out.names = m.names;
  out.rows.reserve(rows.size());
  for (int r : rows) out.rows.push_back(m.rows[static_cast<std::size_t>(r)]);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EvalReport cross_validate(const FeatureMatrix& m, ClassifierKind kind,
                          const Hyperparams& hp, const FoldPlan& plan,
                          NormalizeMode mode, const FoldObserver& observer,
                          const FoldFeatureSelector& nested_selector) {
  if (plan.assignment.size() != m.num_rows()) {
    throw InvalidArgument("fold plan covers " + std::to_string(plan.assignment.size()) +
                          " rows, matrix has " + std::to_string(m.num_rows()));
  }

  std::vector<std::string> classes;
  {
    std::map<std::string, int> seen;
    for (const auto& row : m.rows) seen.emplace(row.label, 0);
    for (const auto& [label, _] : seen) classes.push_back(label);
  }
  std::map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < classes.size(); ++c) class_index[classes[c]] = c;

  EvalReport report;
  report.kind = kind;
  report.k = plan.k;
  report.seed = plan.seed;
  report.classes = classes;
  report.confusion.assign(classes.size(), std::vector<long>(classes.size(), 0));

  NormalizationParams global_params;
  if (mode == NormalizeMode::Global) global_params = fit_normalizer(m);

  for (int fold = 0; fold < plan.k; ++fold) {
    std::vector<int> train_rows, test_rows;
    for (std::size_t r = 0; r < m.num_rows(); ++r) {
      (plan.assignment[r] == fold ? test_rows : train_rows).push_back(static_cast<int>(r));
    }
    if (train_rows.empty() || test_rows.empty()) continue;

    const auto t_train0 = std::chrono::steady_clock::now();
    FeatureMatrix train_m = take_rows(m, train_rows);
    FeatureMatrix test_m = take_rows(m, test_rows);

    const NormalizationParams& params =
        mode == NormalizeMode::Global ? global_params : fit_normalizer(train_m);
    train_m = apply_normalizer(train_m, params);
    test_m = apply_normalizer(test_m, params);

    if (nested_selector) {
      const std::vector<std::string> picked = nested_selector(train_m);
      train_m = select_columns(train_m, picked);
      test_m = select_columns(test_m, picked);
    }

    TrainedModel model = [&] {
      try {
        return train(kind, train_m, hp);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("fold " + std::to_string(fold) + ": " + e.what(),
                               e.class_a, e.class_b);
      } catch (const GaitError& e) {
        throw GaitError("fold " + std::to_string(fold) + ": " + e.what());
      }
    }();
    report.train_seconds += seconds_since(t_train0);

    if (observer) observer(fold, model);

    const auto t_eval0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < test_m.num_rows(); ++i) {
      const std::string& predicted = model.predict(test_m.rows[i].values);
      report.confusion[class_index.at(test_m.rows[i].label)][class_index.at(predicted)]++;
    }
    report.eval_seconds += seconds_since(t_eval0);
  }

  long total = 0, diag = 0;
  report.tpr.assign(classes.size(), 0.0);
  report.fnr.assign(classes.size(), 0.0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    long row_sum = 0;
    for (std::size_t p = 0; p < classes.size(); ++p) {
      row_sum += report.confusion[c][p];
      total += report.confusion[c][p];
    }
    diag += report.confusion[c][c];
    if (row_sum > 0) {
      report.tpr[c] = static_cast<double>(report.confusion[c][c]) / static_cast<double>(row_sum);
      report.fnr[c] = 1.0 - report.tpr[c];
    }
  }
  report.accuracy = total > 0 ? static_cast<double>(diag) / static_cast<double>(total) : 0.0;
  return report;
}

std::string render_report_text(const EvalReport& r) {
  std::ostringstream out;
  char buf[160];

  std::snprintf(buf, sizeof(buf), "Classifier: %s (k = %d, seed = %llu)\n",
                classifier_kind_name(r.kind), r.k,
                static_cast<unsigned long long>(r.seed));
  out << buf;
  std::snprintf(buf, sizeof(buf), "Accuracy: %.1f%%   Speed: %.3f s (train %.3f, eval %.3f)\n",
                100.0 * r.accuracy, r.train_seconds + r.eval_seconds, r.train_seconds,
                r.eval_seconds);
  out << buf;

  std::size_t width = 8;
  for (const auto& c : r.classes) width = std::max(width, c.size() + 2);

  out << "\n" << std::string(width, ' ') << "TPR     FNR\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-*s%.3f   %.3f\n", static_cast<int>(width),
                  r.classes[c].c_str(), r.tpr[c], r.fnr[c]);
    out << buf;
  }

  out << "\nConfusion (rows = true, cols = predicted):\n" << std::string(width, ' ');
  for (const auto& c : r.classes) {
    std::snprintf(buf, sizeof(buf), "%*s", static_cast<int>(width), c.c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(width), r.classes[c].c_str());
    out << buf;
    for (std::size_t p = 0; p < r.classes.size(); ++p) {
      std::snprintf(buf, sizeof(buf), "%*ld", static_cast<int>(width), r.confusion[c][p]);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json report_to_json(const EvalReport& r) {
  // Wall-clock numbers live in a separate "timing" object so determinism
  // checks can strip one key.
  return nlohmann::json{
      {"format", "gaitkit-report"},
      {"version", 1},
      {"classifier", classifier_kind_name(r.kind)},
      {"k", r.k},
      {"seed", r.seed},
      {"classes", r.classes},
      {"accuracy", r.accuracy},
      {"confusion", r.confusion},
      {"tpr", r.tpr},
      {"fnr", r.fnr},
      {"timing",
       nlohmann::json{{"train_seconds", r.train_seconds}, {"eval_seconds", r.eval_seconds}}}};
}

EvalReport report_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "gaitkit-report" || j.value("version", 0) != 1) {
    throw SchemaError("not a gaitkit-report v1 document");
  }
  EvalReport r;
  r.kind = classifier_kind_from_name(j.at("classifier").get<std::string>());
  r.k = j.at("k").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.classes = j.at("classes").get<std::vector<std::string>>();
  r.accuracy = j.at("accuracy").get<double>();
  r.confusion = j.at("confusion").get<std::vector<std::vector<long>>>();
  r.tpr = j.at("tpr").get<std::vector<double>>();
  r.fnr = j.at("fnr").get<std::vector<double>>();
  r.train_seconds = j.at("timing").at("train_seconds").get<double>();
  r.eval_seconds = j.at("timing").at("eval_seconds").get<double>();
  return r;
}

std::string render_comparison_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  char buf[64];
  const int name_w = 14;
  const int col_w = 15;

  out << std::string(name_w, ' ');
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%*s", col_w, classifier_kind_name(r.kind));
    out << buf;
  }
  out << "\n";

  std::snprintf(buf, sizeof(buf), "%-*s", name_w, "Accuracy (%)");
  out << buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%*.1f", col_w, 100.0 * r.accuracy);
    out << buf;
  }
  out << "\n";

  std::snprintf(buf, sizeof(buf), "%-*s", name_w, "Speed (s)");
  out << buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%*.2f", col_w, r.train_seconds + r.eval_seconds);
    out << buf;
  }
  out << "\n";
  return out.str();
}

}  // namespace gaitkit
