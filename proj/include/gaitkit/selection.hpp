#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gaitkit/types.hpp"

namespace gaitkit {

inline constexpr int kDiscretizationBins = 10;

/// Equal-width binning of a continuous series over its observed range.
/// A constant series maps to bin 0 everywhere.
std::vector<int> discretize(std::span<const double> values, int bins = kDiscretizationBins);

/// Symmetric uncertainty SU(a,b) = 2 I(a;b) / (H(a) + H(b)), entropies in
/// bits; 0 when both series are constant. Inputs are already-discretized
/// series of equal length.
double symmetric_uncertainty(std::span<const int> a, std::span<const int> b);

/// Precomputed SU values for one matrix: feature-class and feature-feature.
struct SuTable {
  std::vector<double> feature_class;             // SU(f, label)
  std::vector<std::vector<double>> feature_pair; // SU(f, g), full symmetric
};

SuTable compute_su_table(const FeatureMatrix& m);

/// Correlation-based subset merit: k * mean_cf / sqrt(k + k(k-1) * mean_ff).
double cfs_merit(const std::vector<int>& subset, const SuTable& su);
double cfs_merit(const std::vector<std::string>& subset, const FeatureMatrix& m);

struct SelectionResult {
  std::vector<std::string> selected;  // matrix column order
  double merit = 0.0;
  long visited = 0;  // distinct subsets evaluated
};

/// Called for every subset the search evaluates.
using SelectionAudit = std::function<void(const std::vector<int>& subset, double merit)>;

/// Forward best-first search over feature subsets scored by cfs_merit.
/// Expands the best open subset by one feature at a time and stops after
/// stale_limit consecutive expansions without improving the best merit.
/// Deterministic: ties break toward smaller subsets, then lexicographically
/// smaller name lists.
SelectionResult best_first_search(const FeatureMatrix& m, int stale_limit = 5,
                                  const SelectionAudit& audit = {});

}  // namespace gaitkit
