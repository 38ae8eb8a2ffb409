#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaitkit/classifiers.hpp"
#include "gaitkit/types.hpp"

namespace gaitkit {

/// Stratified fold assignment: per class, rows are shuffled by the seeded
/// deterministic generator and dealt round-robin, so per-class fold sizes
/// differ by at most one.
struct FoldPlan {
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // fold index per row
};

FoldPlan make_folds(const std::vector<std::string>& labels, int k, std::uint64_t seed);

enum class NormalizeMode { PerFold, Global };

NormalizeMode normalize_mode_from_name(const std::string& name);
const char* normalize_mode_name(NormalizeMode mode);

struct EvalReport {
  ClassifierKind kind = ClassifierKind::DecisionTree;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> classes;
  std::vector<std::vector<long>> confusion;  // row = true, column = predicted
  double accuracy = 0.0;
  std::vector<double> tpr;
  std::vector<double> fnr;
  double train_seconds = 0.0;
  double eval_seconds = 0.0;
};

/// Called once per fold with the model trained on that fold's training rows.
using FoldObserver = std::function<void(int fold, const TrainedModel& model)>;

/// Picks a feature subset from one fold's (normalized) training matrix;
/// used for nested per-fold selection.
using FoldFeatureSelector =
    std::function<std::vector<std::string>(const FeatureMatrix& train)>;

/// Runs the full k-fold protocol: per fold, fit the normalizer on the
/// training rows (or once globally), train, and predict the held-out rows.
/// One confusion matrix is aggregated over all folds; every row is
/// predicted exactly once.
EvalReport cross_validate(const FeatureMatrix& m, ClassifierKind kind,
                          const Hyperparams& hp, const FoldPlan& plan,
                          NormalizeMode mode = NormalizeMode::PerFold,
                          const FoldObserver& observer = {},
                          const FoldFeatureSelector& nested_selector = {});

/// Columns subset of a matrix, in the order given.
FeatureMatrix select_columns(const FeatureMatrix& m, const std::vector<std::string>& names);

std::string render_report_text(const EvalReport& r);
nlohmann::json report_to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::json& j);

/// Table-2-style comparison: metric rows by classifier columns.
std::string render_comparison_table(const std::vector<EvalReport>& reports);

}  // namespace gaitkit
