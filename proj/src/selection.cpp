#include "gaitkit/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "gaitkit/errors.hpp"

namespace gaitkit {

std::vector<int> discretize(std::span<const double> values, int bins) {
  if (bins < 1) throw InvalidArgument("discretize needs >= 1 bin");
  std::vector<int> out(values.size(), 0);
  if (values.empty()) return out;

  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) return out;  // constant series

  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i < values.size(); ++i) {
    int b = static_cast<int>((values[i] - lo) / width);
    out[i] = std::clamp(b, 0, bins - 1);
  }
  return out;
}

namespace {

double entropy_bits(const std::unordered_map<long, long>& counts, double n) {
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double symmetric_uncertainty(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw ShapeError("symmetric_uncertainty: length mismatch " +
                     std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.empty()) return 0.0;

  const double n = static_cast<double>(a.size());
  std::unordered_map<long, long> ca, cb, cab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++cab[static_cast<long>(a[i]) * 100003L + b[i]];
  }
  const double ha = entropy_bits(ca, n);
  const double hb = entropy_bits(cb, n);
  if (ha + hb <= 0.0) return 0.0;

  const double mi = ha + hb - entropy_bits(cab, n);
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

SuTable compute_su_table(const FeatureMatrix& m) {
  const std::size_t d = m.num_features();
  const std::size_t n = m.num_rows();

  // Class labels become dense integer ids in sorted order.
  std::map<std::string, int> label_ids;
  for (const auto& row : m.rows) label_ids.emplace(row.label, 0);
  int next = 0;
  for (auto& [_, id] : label_ids) id = next++;
  std::vector<int> cls(n);
  for (std::size_t r = 0; r < n; ++r) cls[r] = label_ids.at(m.rows[r].label);

  std::vector<std::vector<int>> disc(d);
  std::vector<double> column(n);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t r = 0; r < n; ++r) column[r] = m.rows[r].values[f];
    disc[f] = discretize(column);
  }

  SuTable su;
  su.feature_class.resize(d);
  su.feature_pair.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t f = 0; f < d; ++f) {
    su.feature_class[f] = symmetric_uncertainty(disc[f], cls);
    su.feature_pair[f][f] = 1.0;
    for (std::size_t g = f + 1; g < d; ++g) {
      const double v = symmetric_uncertainty(disc[f], disc[g]);
      su.feature_pair[f][g] = v;
      su.feature_pair[g][f] = v;
    }
  }
  return su;
}

double cfs_merit(const std::vector<int>& subset, const SuTable& su) {
  if (subset.empty()) throw InvalidArgument("cfs_merit of empty subset");
  const double k = static_cast<double>(subset.size());

  double sum_cf = 0.0;
  for (int f : subset) sum_cf += su.feature_class[static_cast<std::size_t>(f)];
  const double mean_cf = sum_cf / k;

  double mean_ff = 0.0;
  if (subset.size() > 1) {
    double sum_ff = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        sum_ff += su.feature_pair[static_cast<std::size_t>(subset[i])]
                                 [static_cast<std::size_t>(subset[j])];
      }
    }
    mean_ff = sum_ff / (k * (k - 1.0) / 2.0);
  }

  const double denom = std::sqrt(k + k * (k - 1.0) * mean_ff);
  return denom > 0.0 ? k * mean_cf / denom : 0.0;
}

double cfs_merit(const std::vector<std::string>& subset, const FeatureMatrix& m) {
  std::vector<int> idx;
  idx.reserve(subset.size());
  for (const std::string& name : subset) {
    auto it = std::find(m.names.begin(), m.names.end(), name);
    if (it == m.names.end()) throw SchemaError("unknown feature '" + name + "'");
    idx.push_back(static_cast<int>(it - m.names.begin()));
  }
  return cfs_merit(idx, compute_su_table(m));
}

namespace {

struct Candidate {
  std::vector<int> subset;       // sorted feature indices
  std::vector<std::string> key;  // alphabetically sorted names, for ties
  double merit = 0.0;
};

std::vector<std::string> name_key(const std::vector<int>& subset,
                                  const std::vector<std::string>& names) {
  std::vector<std::string> key;
  key.reserve(subset.size());
  for (int f : subset) key.push_back(names[static_cast<std::size_t>(f)]);
  std::sort(key.begin(), key.end());
  return key;
}

// merit desc, then smaller subset, then lexicographically smaller name list.
bool better(const Candidate& a, const Candidate& b) {
  if (a.merit != b.merit) return a.merit > b.merit;
  if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
  return a.key < b.key;
}

}  // namespace

SelectionResult best_first_search(const FeatureMatrix& m, int stale_limit,
                                  const SelectionAudit& audit) {
  const std::size_t d = m.num_features();
  if (d < 2) throw InvalidArgument("best_first_search needs >= 2 features");
  std::set<std::string> distinct_labels;
  for (const auto& row : m.rows) distinct_labels.insert(row.label);
  if (distinct_labels.size() < 2) {
    throw InvalidArgument("best_first_search needs >= 2 classes");
  }

  const SuTable su = compute_su_table(m);

  std::vector<Candidate> open;              // unordered; best popped by scan
  std::set<std::vector<int>> seen;          // every subset ever generated
  open.push_back(Candidate{{}, {}, 0.0});   // empty start node, never a candidate
  seen.insert({});

  SelectionResult result;
  Candidate best;
  bool have_best = false;
  int stale = 0;

  while (!open.empty() && stale < stale_limit) {
    auto it = std::min_element(open.begin(), open.end(),
                               [](const Candidate& a, const Candidate& b) {
                                 return better(a, b);
                               });
    Candidate node = std::move(*it);
    open.erase(it);

    bool improved = false;
    for (std::size_t f = 0; f < d; ++f) {
      if (std::binary_search(node.subset.begin(), node.subset.end(), static_cast<int>(f)))
        continue;
      Candidate child;
      child.subset = node.subset;
      child.subset.insert(
          std::lower_bound(child.subset.begin(), child.subset.end(), static_cast<int>(f)),
          static_cast<int>(f));
      if (!seen.insert(child.subset).second) continue;

      child.key = name_key(child.subset, m.names);
      child.merit = cfs_merit(child.subset, su);
      ++result.visited;
      if (audit) audit(child.subset, child.merit);

      if (!have_best || better(child, best)) {
        if (!have_best || child.merit > best.merit) improved = true;
        best = child;
        have_best = true;
      }
      open.push_back(std::move(child));
    }
    stale = improved ? 0 : stale + 1;
  }

  if (have_best) {
    result.merit = best.merit;
    for (int f : best.subset) result.selected.push_back(m.names[static_cast<std::size_t>(f)]);
  }
  return result;
}

}  // namespace gaitkit
