#include "gaitkit/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "gaitkit/errors.hpp"

namespace gaitkit {

const char* classifier_kind_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::DecisionTree: return "decision_tree";
    case ClassifierKind::Lda: return "lda";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::SvmOvo: return "svm_ovo";
    case ClassifierKind::GaussianNb: return "gaussian_nb";
  }
  throw InvalidArgument("unknown classifier kind");
}

ClassifierKind classifier_kind_from_name(const std::string& name) {
  for (ClassifierKind k : kAllClassifiers) {
    if (name == classifier_kind_name(k)) return k;
  }
  throw InvalidArgument("unknown classifier kind '" + name + "'");
}

namespace {

struct Dataset {
  std::vector<std::vector<double>> x;  // n rows of d features
  std::vector<int> y;                  // class indices
  std::vector<std::string> classes;    // sorted ascending
  std::size_t dim = 0;
};

Dataset to_dataset(const FeatureMatrix& m) {
  if (m.num_rows() == 0) throw InvalidArgument("training matrix is empty");
  Dataset ds;
  ds.dim = m.num_features();

  std::map<std::string, int> ids;
  for (const auto& row : m.rows) ids.emplace(row.label, 0);
  int next = 0;
  for (auto& [label, id] : ids) {
    id = next++;
    ds.classes.push_back(label);
  }

  ds.x.reserve(m.num_rows());
  ds.y.reserve(m.num_rows());
  for (const auto& row : m.rows) {
    if (row.values.size() != ds.dim) throw ShapeError("ragged feature matrix");
    ds.x.push_back(row.values);
    ds.y.push_back(ids.at(row.label));
  }
  return ds;
}

int majority_class(const std::vector<int>& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = static_cast<int>(c);  // tie keeps lowest
  }
  return best;
}

double gini(const std::vector<int>& counts, int total) {
  if (total == 0) return 0.0;
  double g = 1.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / total;
    g -= p * p;
  }
  return g;
}

// ------------------------------------------------------------------ tree

struct TreeBuilder {
  const Dataset& ds;
  const Hyperparams::Tree hp;
  TreeModel model;

  int build(std::vector<int> rows, int depth) {
    const int n_classes = static_cast<int>(ds.classes.size());
    std::vector<int> counts(n_classes, 0);
    for (int r : rows) ++counts[ds.y[static_cast<std::size_t>(r)]];

    const bool pure = *std::max_element(counts.begin(), counts.end()) ==
                      static_cast<int>(rows.size());
    const bool depth_capped = hp.max_depth > 0 && depth >= hp.max_depth;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_impurity = 0.0;
    if (!pure && !depth_capped && static_cast<int>(rows.size()) >= 2 * hp.min_leaf) {
      best_impurity = std::numeric_limits<double>::infinity();
      std::vector<std::pair<double, int>> vals(rows.size());  // (value, class)
      for (std::size_t f = 0; f < ds.dim; ++f) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto r = static_cast<std::size_t>(rows[i]);
          vals[i] = {ds.x[r][f], ds.y[r]};
        }
        std::sort(vals.begin(), vals.end());

        std::vector<int> left(n_classes, 0);
        std::vector<int> right = counts;
        const int n = static_cast<int>(vals.size());
        for (int i = 0; i < n - 1; ++i) {
          ++left[vals[static_cast<std::size_t>(i)].second];
          --right[vals[static_cast<std::size_t>(i)].second];
          if (vals[static_cast<std::size_t>(i)].first ==
              vals[static_cast<std::size_t>(i + 1)].first) {
            continue;  // threshold must sit between distinct values
          }
          const int nl = i + 1, nr = n - nl;
          if (nl < hp.min_leaf || nr < hp.min_leaf) continue;
          const double impurity =
              (nl * gini(left, nl) + nr * gini(right, nr)) / n;
          if (impurity < best_impurity) {
            best_impurity = impurity;
            best_feature = static_cast<int>(f);
            best_threshold = 0.5 * (vals[static_cast<std::size_t>(i)].first +
                                    vals[static_cast<std::size_t>(i + 1)].first);
          }
        }
      }
    }

    const int node_index = static_cast<int>(model.nodes.size());
    model.nodes.emplace_back();
    if (best_feature < 0) {
      model.nodes[static_cast<std::size_t>(node_index)].leaf_class = majority_class(counts);
      return node_index;
    }

    std::vector<int> left_rows, right_rows;
    for (int r : rows) {
      const auto rr = static_cast<std::size_t>(r);
      (ds.x[rr][static_cast<std::size_t>(best_feature)] <= best_threshold ? left_rows
                                                                          : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = build(std::move(left_rows), depth + 1);
    const int right = build(std::move(right_rows), depth + 1);
    TreeNode& node = model.nodes[static_cast<std::size_t>(node_index)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    return node_index;
  }
};

// ------------------------------------------------------ small linalg (LDA)

// In-place Cholesky A = L L^T of a d x d row-major symmetric matrix; the
// lower triangle of `a` becomes L. Returns false when A is not positive
// definite.
bool cholesky(std::vector<double>& a, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) sum -= a[i * d + k] * a[j * d + k];
      if (i == j) {
        if (sum <= 0.0 || !std::isfinite(sum)) return false;
        a[i * d + i] = std::sqrt(sum);
      } else {
        a[i * d + j] = sum / a[j * d + j];
      }
    }
  }
  return true;
}

// Solves L L^T x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t d,
                                   std::vector<double> b) {
  for (std::size_t i = 0; i < d; ++i) {  // forward: L z = b
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l[i * d + k] * b[k];
    b[i] = sum / l[i * d + i];
  }
  for (std::size_t ii = d; ii > 0; --ii) {  // backward: L^T x = z
    const std::size_t i = ii - 1;
    double sum = b[i];
    for (std::size_t k = i + 1; k < d; ++k) sum -= l[k * d + i] * b[k];
    b[i] = sum / l[i * d + i];
  }
  return b;
}

}  // namespace

// --------------------------------------------------------------- training

TrainedModel train_decision_tree(const FeatureMatrix& m, const Hyperparams& hp) {
  Dataset ds = to_dataset(m);
  TreeBuilder builder{ds, hp.tree, {}};
  std::vector<int> all(ds.x.size());
  std::iota(all.begin(), all.end(), 0);
  builder.build(std::move(all), 0);
  return TrainedModel(ClassifierKind::DecisionTree, hp, m.names, ds.classes,
                      std::move(builder.model));
}

TrainedModel train_lda(const FeatureMatrix& m, const Hyperparams& hp) {
  Dataset ds = to_dataset(m);
  const std::size_t d = ds.dim;
  const std::size_t n = ds.x.size();
  const std::size_t n_classes = ds.classes.size();
  if (n_classes < 2) throw InvalidArgument("lda needs >= 2 classes");

  std::vector<std::size_t> counts(n_classes, 0);
  for (int y : ds.y) ++counts[static_cast<std::size_t>(y)];
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] < 2) {
      throw InvalidArgument("lda needs >= 2 rows per class; class '" +
                            ds.classes[c] + "' has " + std::to_string(counts[c]));
    }
  }

  std::vector<std::vector<double>> means(n_classes, std::vector<double>(d, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    const auto c = static_cast<std::size_t>(ds.y[r]);
    for (std::size_t f = 0; f < d; ++f) means[c][f] += ds.x[r][f];
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& v : means[c]) v /= static_cast<double>(counts[c]);
  }

  // Pooled within-class covariance with divisor (n - C), plus ridge.
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto c = static_cast<std::size_t>(ds.y[r]);
    for (std::size_t i = 0; i < d; ++i) {
      const double di = ds.x[r][i] - means[c][i];
      for (std::size_t j = 0; j <= i; ++j) {
        cov[i * d + j] += di * (ds.x[r][j] - means[c][j]);
      }
    }
  }
  const double denom = static_cast<double>(n - n_classes);
  if (denom <= 0.0) throw InvalidArgument("lda needs more rows than classes");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cov[i * d + j] /= denom;
      cov[j * d + i] = cov[i * d + j];
    }
    cov[i * d + i] += hp.lda.ridge;
  }

  if (!cholesky(cov, d)) {
    throw NumericalError("lda: pooled covariance is singular even after ridge " +
                         std::to_string(hp.lda.ridge));
  }

  LdaModel model;
  model.weights.resize(n_classes);
  model.bias.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    model.weights[c] = cholesky_solve(cov, d, means[c]);
    double quad = 0.0;
    for (std::size_t f = 0; f < d; ++f) quad += means[c][f] * model.weights[c][f];
    const double prior = static_cast<double>(counts[c]) / static_cast<double>(n);
    model.bias[c] = -0.5 * quad + std::log(prior);
  }
  return TrainedModel(ClassifierKind::Lda, hp, m.names, ds.classes, std::move(model));
}

TrainedModel train_knn(const FeatureMatrix& m, const Hyperparams& hp) {
  Dataset ds = to_dataset(m);
  if (hp.knn.k < 1) throw InvalidArgument("knn k must be >= 1");
  if (static_cast<std::size_t>(hp.knn.k) > ds.x.size()) {
    throw InvalidArgument("knn k = " + std::to_string(hp.knn.k) + " exceeds " +
                          std::to_string(ds.x.size()) + " training rows");
  }
  KnnModel model;
  model.k = hp.knn.k;
  model.rows = std::move(ds.x);
  model.labels = std::move(ds.y);
  return TrainedModel(ClassifierKind::Knn, hp, m.names, ds.classes, std::move(model));
}

BinarySvmFit train_binary_svm(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y, const Hyperparams::Svm& hp) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw InvalidArgument("binary svm: bad inputs");
  const std::size_t d = x[0].size();
  const double c_box = hp.c;
  const double tol = hp.tolerance;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d, 0.0);
  double b = 0.0;

  auto decision = [&](std::size_t i) {
    double s = b;
    for (std::size_t f = 0; f < d; ++f) s += w[f] * x[i][f];
    return s;
  };
  auto dot = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t f = 0; f < d; ++f) s += x[i][f] * x[j][f];
    return s;
  };

  // One SMO pair update; returns true if alpha moved.
  auto take_step = [&](std::size_t i, std::size_t j) {
    if (i == j) return false;
    const double yi = y[i], yj = y[j];
    const double ei = decision(i) - yi;
    const double ej = decision(j) - yj;
    const double ai_old = alpha[i], aj_old = alpha[j];

    double lo, hi;
    if (yi != yj) {
      lo = std::max(0.0, aj_old - ai_old);
      hi = std::min(c_box, c_box + aj_old - ai_old);
    } else {
      lo = std::max(0.0, ai_old + aj_old - c_box);
      hi = std::min(c_box, ai_old + aj_old);
    }
    if (lo >= hi) return false;

    const double eta = dot(i, i) + dot(j, j) - 2.0 * dot(i, j);
    if (eta <= 0.0) return false;  // duplicate points; nothing to optimize

    double aj = aj_old + yj * (ei - ej) / eta;
    aj = std::clamp(aj, lo, hi);
    if (std::abs(aj - aj_old) < 1e-12) return false;
    const double ai = ai_old + yi * yj * (aj_old - aj);

    alpha[i] = ai;
    alpha[j] = aj;
    for (std::size_t f = 0; f < d; ++f) {
      w[f] += yi * (ai - ai_old) * x[i][f] + yj * (aj - aj_old) * x[j][f];
    }
    const double b1 = b - ei - yi * (ai - ai_old) * dot(i, i) - yj * (aj - aj_old) * dot(i, j);
    const double b2 = b - ej - yi * (ai - ai_old) * dot(i, j) - yj * (aj - aj_old) * dot(j, j);
    if (ai > 0.0 && ai < c_box) {
      b = b1;
    } else if (aj > 0.0 && aj < c_box) {
      b = b2;
    } else {
      b = 0.5 * (b1 + b2);
    }
    return true;
  };

  bool converged = false;
  for (int pass = 0; pass < hp.max_passes; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = y[i] * (decision(i) - y[i]);  // y_i * E_i
      const bool violates = (ri < -tol && alpha[i] < c_box) || (ri > tol && alpha[i] > 0.0);
      if (!violates) continue;

      // Second-choice heuristic: the j with the largest |E_i - E_j|.
      const double ei = decision(i) - y[i];
      std::size_t best_j = n;
      double best_gap = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double gap = std::abs(ei - (decision(j) - y[j]));
        if (gap > best_gap) {
          best_gap = gap;
          best_j = j;
        }
      }
      if (best_j < n && take_step(i, best_j)) {
        changed = true;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {  // fall back to a full scan
        if (j == i || j == best_j) continue;
        if (take_step(i, j)) {
          changed = true;
          break;
        }
      }
    }
    if (!changed) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("svm did not converge within " +
                               std::to_string(hp.max_passes) + " passes",
                           "", "");
  }

  // Re-derive the bias from the free support vectors; falls back to the
  // midpoint of the feasible interval when every alpha is at a bound.
  const double bound_eps = 1e-8 * std::max(c_box, 1.0);
  double free_sum = 0.0;
  int free_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > bound_eps && alpha[i] < c_box - bound_eps) {
      double wx = 0.0;
      for (std::size_t f = 0; f < d; ++f) wx += w[f] * x[i][f];
      free_sum += y[i] - wx;
      ++free_count;
    }
  }
  if (free_count > 0) {
    b = free_sum / free_count;
  } else {
    double max_neg = -std::numeric_limits<double>::infinity();
    double min_pos = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double wx = 0.0;
      for (std::size_t f = 0; f < d; ++f) wx += w[f] * x[i][f];
      if (y[i] > 0) {
        min_pos = std::min(min_pos, wx);
      } else {
        max_neg = std::max(max_neg, wx);
      }
    }
    if (std::isfinite(max_neg) && std::isfinite(min_pos)) {
      b = -0.5 * (max_neg + min_pos);
    }
  }

  return BinarySvmFit{std::move(w), b, std::move(alpha)};
}

TrainedModel train_svm_ovo(const FeatureMatrix& m, const Hyperparams& hp) {
  Dataset ds = to_dataset(m);
  const std::size_t n_classes = ds.classes.size();
  if (n_classes < 2) throw InvalidArgument("svm needs >= 2 classes");

  SvmOvoModel model;
  for (std::size_t a = 0; a < n_classes; ++a) {
    for (std::size_t bcls = a + 1; bcls < n_classes; ++bcls) {
      std::vector<std::vector<double>> x;
      std::vector<int> y;
      for (std::size_t r = 0; r < ds.x.size(); ++r) {
        if (ds.y[r] == static_cast<int>(a)) {
          x.push_back(ds.x[r]);
          y.push_back(+1);
        } else if (ds.y[r] == static_cast<int>(bcls)) {
          x.push_back(ds.x[r]);
          y.push_back(-1);
        }
      }
      try {
        BinarySvmFit fit = train_binary_svm(x, y, hp.svm);
        model.pairs.push_back(BinarySvm{static_cast<int>(a), static_cast<int>(bcls),
                                        std::move(fit.weights), fit.bias});
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what(), ds.classes[a], ds.classes[bcls]);
      }
    }
  }
  return TrainedModel(ClassifierKind::SvmOvo, hp, m.names, ds.classes, std::move(model));
}

TrainedModel train_gaussian_nb(const FeatureMatrix& m, const Hyperparams& hp) {
  Dataset ds = to_dataset(m);
  const std::size_t d = ds.dim;
  const std::size_t n_classes = ds.classes.size();

  std::vector<std::size_t> counts(n_classes, 0);
  for (int y : ds.y) ++counts[static_cast<std::size_t>(y)];

  NbModel model;
  model.log_prior.resize(n_classes);
  model.mean.assign(n_classes, std::vector<double>(d, 0.0));
  model.variance.assign(n_classes, std::vector<double>(d, 0.0));

  for (std::size_t r = 0; r < ds.x.size(); ++r) {
    const auto c = static_cast<std::size_t>(ds.y[r]);
    for (std::size_t f = 0; f < d; ++f) model.mean[c][f] += ds.x[r][f];
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& v : model.mean[c]) v /= static_cast<double>(counts[c]);
  }
  for (std::size_t r = 0; r < ds.x.size(); ++r) {
    const auto c = static_cast<std::size_t>(ds.y[r]);
    for (std::size_t f = 0; f < d; ++f) {
      const double del = ds.x[r][f] - model.mean[c][f];
      model.variance[c][f] += del * del;
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& v : model.variance[c]) {
      v = std::max(v / static_cast<double>(counts[c]), hp.nb.variance_floor);
    }
    model.log_prior[c] = std::log(static_cast<double>(counts[c]) /
                                  static_cast<double>(ds.x.size()));
  }
  return TrainedModel(ClassifierKind::GaussianNb, hp, m.names, ds.classes, std::move(model));
}

TrainedModel train(ClassifierKind kind, const FeatureMatrix& m, const Hyperparams& hp) {
  switch (kind) {
    case ClassifierKind::DecisionTree: return train_decision_tree(m, hp);
    case ClassifierKind::Lda: return train_lda(m, hp);
    case ClassifierKind::Knn: return train_knn(m, hp);
    case ClassifierKind::SvmOvo: return train_svm_ovo(m, hp);
    case ClassifierKind::GaussianNb: return train_gaussian_nb(m, hp);
  }
  throw InvalidArgument("unknown classifier kind");
}

// ------------------------------------------------------------- prediction

TrainedModel::TrainedModel(ClassifierKind kind, Hyperparams hp,
                           std::vector<std::string> feature_names,
                           std::vector<std::string> classes, Params params)
    : kind_(kind),
      hp_(hp),
      feature_names_(std::move(feature_names)),
      classes_(std::move(classes)),
      params_(std::move(params)) {}

namespace {

int predict_tree(const TreeModel& m, std::span<const double> x) {
  int node = 0;
  while (m.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& nd = m.nodes[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
  }
  return m.nodes[static_cast<std::size_t>(node)].leaf_class;
}

int predict_lda(const LdaModel& m, std::span<const double> x) {
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.weights.size(); ++c) {
    double s = m.bias[c];
    for (std::size_t f = 0; f < x.size(); ++f) s += m.weights[c][f] * x[f];
    if (s > best_score) {  // tie keeps lowest class index
      best_score = s;
      best = static_cast<int>(c);
    }
  }
  return best;
}

int predict_knn(const KnnModel& m, std::span<const double> x, std::size_t n_classes) {
  std::vector<std::pair<double, std::size_t>> dist(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    double d2 = 0.0;
    for (std::size_t f = 0; f < x.size(); ++f) {
      const double del = m.rows[r][f] - x[f];
      d2 += del * del;
    }
    dist[r] = {d2, r};  // equal distances break toward the lower row index
  }
  const auto k = static_cast<std::size_t>(m.k);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

  std::vector<int> votes(n_classes, 0);
  for (std::size_t i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(m.labels[dist[i].second])];
  const int top = *std::max_element(votes.begin(), votes.end());
  // Vote tie: the nearest neighbor whose label is among the tied winners.
  for (std::size_t i = 0; i < k; ++i) {
    const int label = m.labels[dist[i].second];
    if (votes[static_cast<std::size_t>(label)] == top) return label;
  }
  return 0;  // unreachable
}

int predict_svm(const SvmOvoModel& m, std::span<const double> x, std::size_t n_classes) {
  std::vector<int> votes(n_classes, 0);
  for (const BinarySvm& pair : m.pairs) {
    double s = pair.bias;
    for (std::size_t f = 0; f < x.size(); ++f) s += pair.weights[f] * x[f];
    ++votes[static_cast<std::size_t>(s >= 0.0 ? pair.class_a : pair.class_b)];
  }
  int best = 0;
  for (std::size_t c = 1; c < n_classes; ++c) {
    if (votes[c] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  }
  return best;
}

int predict_nb(const NbModel& m, std::span<const double> x) {
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.log_prior.size(); ++c) {
    double s = m.log_prior[c];
    for (std::size_t f = 0; f < x.size(); ++f) {
      const double var = m.variance[c][f];
      const double del = x[f] - m.mean[c][f];
      s += -0.5 * std::log(2.0 * M_PI * var) - del * del / (2.0 * var);
    }
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

const std::string& TrainedModel::predict(std::span<const double> features) const {
  if (features.size() != feature_names_.size()) {
    throw ShapeError("predict expects " + std::to_string(feature_names_.size()) +
                     " features, got " + std::to_string(features.size()));
  }
  int cls = 0;
  switch (kind_) {
    case ClassifierKind::DecisionTree:
      cls = predict_tree(std::get<TreeModel>(params_), features);
      break;
    case ClassifierKind::Lda:
      cls = predict_lda(std::get<LdaModel>(params_), features);
      break;
    case ClassifierKind::Knn:
      cls = predict_knn(std::get<KnnModel>(params_), features, classes_.size());
      break;
    case ClassifierKind::SvmOvo:
      cls = predict_svm(std::get<SvmOvoModel>(params_), features, classes_.size());
      break;
    case ClassifierKind::GaussianNb:
      cls = predict_nb(std::get<NbModel>(params_), features);
      break;
  }
  return classes_[static_cast<std::size_t>(cls)];
}

// ----------------------------------------------------------- serialization

namespace {

using nlohmann::json;

json hyperparams_to_json(ClassifierKind kind, const Hyperparams& hp) {
  switch (kind) {
    case ClassifierKind::DecisionTree:
      return json{{"min_leaf", hp.tree.min_leaf}, {"max_depth", hp.tree.max_depth}};
    case ClassifierKind::Lda:
      return json{{"ridge", hp.lda.ridge}};
    case ClassifierKind::Knn:
      return json{{"k", hp.knn.k}, {"metric", "euclidean"}};
    case ClassifierKind::SvmOvo:
      return json{{"c", hp.svm.c},
                  {"kernel", "linear"},
                  {"tolerance", hp.svm.tolerance},
                  {"max_passes", hp.svm.max_passes}};
    case ClassifierKind::GaussianNb:
      return json{{"variance_floor", hp.nb.variance_floor}};
  }
  return {};
}

Hyperparams hyperparams_from_json(ClassifierKind kind, const json& j) {
  Hyperparams hp;
  switch (kind) {
    case ClassifierKind::DecisionTree:
      hp.tree.min_leaf = j.at("min_leaf").get<int>();
      hp.tree.max_depth = j.at("max_depth").get<int>();
      break;
    case ClassifierKind::Lda:
      hp.lda.ridge = j.at("ridge").get<double>();
      break;
    case ClassifierKind::Knn:
      hp.knn.k = j.at("k").get<int>();
      break;
    case ClassifierKind::SvmOvo:
      hp.svm.c = j.at("c").get<double>();
      hp.svm.tolerance = j.at("tolerance").get<double>();
      hp.svm.max_passes = j.at("max_passes").get<int>();
      break;
    case ClassifierKind::GaussianNb:
      hp.nb.variance_floor = j.at("variance_floor").get<double>();
      break;
  }
  return hp;
}

json params_to_json(const TrainedModel::Params& params) {
  json out;
  if (const auto* tree = std::get_if<TreeModel>(&params)) {
    json nodes = json::array();
    for (const TreeNode& n : tree->nodes) {
      nodes.push_back(json{{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"leaf_class", n.leaf_class}});
    }
    out["nodes"] = std::move(nodes);
  } else if (const auto* lda = std::get_if<LdaModel>(&params)) {
    out["weights"] = lda->weights;
    out["bias"] = lda->bias;
  } else if (const auto* knn = std::get_if<KnnModel>(&params)) {
    out["k"] = knn->k;
    out["rows"] = knn->rows;
    out["labels"] = knn->labels;
  } else if (const auto* svm = std::get_if<SvmOvoModel>(&params)) {
    json pairs = json::array();
    for (const BinarySvm& p : svm->pairs) {
      pairs.push_back(json{{"class_a", p.class_a},
                           {"class_b", p.class_b},
                           {"weights", p.weights},
                           {"bias", p.bias}});
    }
    out["pairs"] = std::move(pairs);
  } else if (const auto* nb = std::get_if<NbModel>(&params)) {
    out["log_prior"] = nb->log_prior;
    out["mean"] = nb->mean;
    out["variance"] = nb->variance;
  }
  return out;
}

TrainedModel::Params params_from_json(ClassifierKind kind, const json& j) {
  switch (kind) {
    case ClassifierKind::DecisionTree: {
      TreeModel m;
      for (const json& n : j.at("nodes")) {
        m.nodes.push_back(TreeNode{n.at("feature").get<int>(),
                                   n.at("threshold").get<double>(),
                                   n.at("left").get<int>(), n.at("right").get<int>(),
                                   n.at("leaf_class").get<int>()});
      }
      return m;
    }
    case ClassifierKind::Lda: {
      LdaModel m;
      m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
      m.bias = j.at("bias").get<std::vector<double>>();
      return m;
    }
    case ClassifierKind::Knn: {
      KnnModel m;
      m.k = j.at("k").get<int>();
      m.rows = j.at("rows").get<std::vector<std::vector<double>>>();
      m.labels = j.at("labels").get<std::vector<int>>();
      return m;
    }
    case ClassifierKind::SvmOvo: {
      SvmOvoModel m;
      for (const json& p : j.at("pairs")) {
        m.pairs.push_back(BinarySvm{p.at("class_a").get<int>(), p.at("class_b").get<int>(),
                                    p.at("weights").get<std::vector<double>>(),
                                    p.at("bias").get<double>()});
      }
      return m;
    }
    case ClassifierKind::GaussianNb: {
      NbModel m;
      m.log_prior = j.at("log_prior").get<std::vector<double>>();
      m.mean = j.at("mean").get<std::vector<std::vector<double>>>();
      m.variance = j.at("variance").get<std::vector<std::vector<double>>>();
      return m;
    }
  }
  throw InvalidArgument("unknown classifier kind in model document");
}

}  // namespace

nlohmann::json TrainedModel::to_json() const {
  return json{{"format", "gaitkit-model"},
              {"version", 1},
              {"kind", classifier_kind_name(kind_)},
              {"hyperparams", hyperparams_to_json(kind_, hp_)},
              {"feature_names", feature_names_},
              {"classes", classes_},
              {"params", params_to_json(params_)}};
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "gaitkit-model" || j.value("version", 0) != 1) {
    throw SchemaError("not a gaitkit-model v1 document");
  }
  const ClassifierKind kind = classifier_kind_from_name(j.at("kind").get<std::string>());
  return TrainedModel(kind, hyperparams_from_json(kind, j.at("hyperparams")),
                      j.at("feature_names").get<std::vector<std::string>>(),
                      j.at("classes").get<std::vector<std::string>>(),
                      params_from_json(kind, j.at("params")));
}

}  // namespace gaitkit
