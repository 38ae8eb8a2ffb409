#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaitkit/types.hpp"

namespace gaitkit {

enum class ClassifierKind { DecisionTree, Lda, Knn, SvmOvo, GaussianNb };

inline constexpr std::array<ClassifierKind, 5> kAllClassifiers{
    ClassifierKind::DecisionTree, ClassifierKind::Lda, ClassifierKind::Knn,
    ClassifierKind::SvmOvo, ClassifierKind::GaussianNb};

const char* classifier_kind_name(ClassifierKind kind);
ClassifierKind classifier_kind_from_name(const std::string& name);

struct Hyperparams {
  struct Tree {
    int min_leaf = 1;
    int max_depth = 0;  // 0 = unlimited
  } tree;
  struct Knn {
    int k = 1;  // Euclidean metric
  } knn;
  struct Lda {
    double ridge = 1e-6;
  } lda;
  struct Svm {
    double c = 1.0;
    double tolerance = 1e-4;
    int max_passes = 10000;  // sweep budget before ConvergenceError
  } svm;
  struct Nb {
    double variance_floor = 1e-9;
  } nb;
};

// Learned state per classifier kind. Kept public so tests can inspect
// structure and the serializer can stay dumb.

struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;  // go left when value <= threshold
  int left = -1;
  int right = -1;
  int leaf_class = -1;
};
struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct LdaModel {
  // Discriminant per class c: score = dot(w[c], x) + bias[c].
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
};

struct KnnModel {
  int k = 1;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;  // class indices
};

struct BinarySvm {
  int class_a = 0;  // decision value >= 0 votes class_a
  int class_b = 0;
  std::vector<double> weights;
  double bias = 0.0;
};
struct SvmOvoModel {
  std::vector<BinarySvm> pairs;
};

struct NbModel {
  std::vector<double> log_prior;
  std::vector<std::vector<double>> mean;      // [class][feature]
  std::vector<std::vector<double>> variance;  // floored
};

/// A trained classifier: immutable, safe for concurrent prediction, and
/// serializable to a versioned JSON document that reloads bit-exactly.
class TrainedModel {
 public:
  using Params = std::variant<TreeModel, LdaModel, KnnModel, SvmOvoModel, NbModel>;

  TrainedModel(ClassifierKind kind, Hyperparams hp, std::vector<std::string> feature_names,
               std::vector<std::string> classes, Params params);

  ClassifierKind kind() const { return kind_; }
  const Hyperparams& hyperparams() const { return hp_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const Params& params() const { return params_; }

  /// Predicts the label of one feature vector (canonical order of
  /// feature_names). Throws ShapeError on length mismatch.
  const std::string& predict(std::span<const double> features) const;

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& j);

 private:
  ClassifierKind kind_;
  Hyperparams hp_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> classes_;
  Params params_;
};

TrainedModel train_decision_tree(const FeatureMatrix& train, const Hyperparams& hp);
TrainedModel train_lda(const FeatureMatrix& train, const Hyperparams& hp);
TrainedModel train_knn(const FeatureMatrix& train, const Hyperparams& hp);
TrainedModel train_svm_ovo(const FeatureMatrix& train, const Hyperparams& hp);
TrainedModel train_gaussian_nb(const FeatureMatrix& train, const Hyperparams& hp);

/// Dispatch by kind.
TrainedModel train(ClassifierKind kind, const FeatureMatrix& train, const Hyperparams& hp);

/// One soft-margin linear SVM trained by sequential minimal optimization
/// on the dual. Exposed so the dual variables can be checked directly.
struct BinarySvmFit {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> alpha;  // per training row
};
BinarySvmFit train_binary_svm(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y,  // +1 / -1
                              const Hyperparams::Svm& hp);

}  // namespace gaitkit
