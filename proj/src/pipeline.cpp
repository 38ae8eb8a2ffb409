#include "gaitkit/pipeline.hpp"

#include <cmath>
#include <iostream>

#include <nlohmann/json.hpp>

#include "gaitkit/errors.hpp"
#include "gaitkit/features.hpp"
#include "gaitkit/io.hpp"
#include "gaitkit/preprocess.hpp"

namespace gaitkit {

SelectionMode selection_mode_from_name(const std::string& name) {
  if (name == "none") return SelectionMode::None;
  if (name == "cfs-bestfirst") return SelectionMode::CfsBestFirst;
  throw InvalidArgument("selection must be 'none' or 'cfs-bestfirst', got '" + name + "'");
}

int PipelineConfig::window_samples() const {
  const double exact = window_seconds * sample_rate;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 || rounded < 4.0) {
    throw ConfigError("window_seconds * sample_rate must be an integer >= 4");
  }
  if (std::fmod(rounded, 2.0) != 0.0) {
    throw ConfigError("window_seconds * sample_rate must be even");
  }
  if (k_folds < 2) throw ConfigError("k_folds must be >= 2");
  return static_cast<int>(rounded);
}

std::vector<Window> preprocess_recording(const RawRecording& rec,
                                         const CalibrationConfig& cal,
                                         const PipelineConfig& cfg) {
  RawRecording filled = fill_nulls(rec);
  RawRecording calibrated = calibrate(std::move(filled), cal);
  UniformSeries series = resample(calibrated, cfg.sample_rate, cfg.window_seconds);
  series = remove_mean(std::move(series));
  return segment(series, cfg.window_samples());
}

void stage_preprocess(const PipelineConfig& cfg) {
  const CalibrationConfig cal = cfg.calibration
                                    ? parse_calibration(read_file(*cfg.calibration))
                                    : CalibrationConfig::identity();

  const std::vector<RawRecording> recordings = load_data_dir(cfg.effective_data_dir());
  std::vector<Window> windows;
  for (const RawRecording& rec : recordings) {
    std::vector<Window> w = preprocess_recording(rec, cal, cfg);
    windows.insert(windows.end(), std::make_move_iterator(w.begin()),
                   std::make_move_iterator(w.end()));
  }
  if (windows.empty()) throw InsufficientData("no windows produced from data dir");

  write_file(cfg.out_dir / "windows.json",
             windows_to_json(windows, cfg.sample_rate).dump(2) + "\n");
}

void stage_extract(const PipelineConfig& cfg) {
  const nlohmann::json j = nlohmann::json::parse(read_file(cfg.out_dir / "windows.json"));
  const auto [windows, rate] = windows_from_json(j);

  const FeatureMatrix m = extract_features(windows, rate, cfg.max_threads);
  write_file(cfg.out_dir / "features.csv", features_to_csv(m));
  write_file(cfg.out_dir / "features.json", features_to_json(m).dump(2) + "\n");
}

namespace {

FeatureMatrix load_features(const PipelineConfig& cfg) {
  return features_from_json(
      nlohmann::json::parse(read_file(cfg.out_dir / "features.json")));
}

}  // namespace

SelectionResult stage_select(const PipelineConfig& cfg) {
  FeatureMatrix m = load_features(cfg);
  // Selection mirrors the one-shot protocol: fit a normalizer on the full
  // matrix, then search the normalized matrix once.
  m = apply_normalizer(m, fit_normalizer(m));
  SelectionResult result = best_first_search(m);
  write_file(cfg.out_dir / "selection.json", selection_to_json(result).dump(2) + "\n");
  return result;
}

namespace {

std::vector<EvalReport> evaluate_matrix(const FeatureMatrix& m, const PipelineConfig& cfg,
                                        const FoldFeatureSelector& nested) {
  std::vector<std::string> labels;
  labels.reserve(m.num_rows());
  for (const auto& row : m.rows) labels.push_back(row.label);
  const FoldPlan plan = make_folds(labels, cfg.k_folds, cfg.seed);

  std::vector<EvalReport> reports;
  for (ClassifierKind kind : cfg.classifiers) {
    reports.push_back(
        cross_validate(m, kind, cfg.hyperparams, plan, cfg.normalize, {}, nested));
  }
  return reports;
}

void write_reports(const PipelineConfig& cfg, const std::vector<EvalReport>& reports,
                   const std::string& tag) {
  for (const EvalReport& r : reports) {
    write_file(cfg.out_dir / "reports" /
                   ("report_" + tag + "_" + classifier_kind_name(r.kind) + ".json"),
               report_to_json(r).dump(2) + "\n");
  }
  const std::string table = render_comparison_table(reports);
  write_file(cfg.out_dir / ("comparison_" + tag + ".txt"), table);
  std::cout << (tag == "all" ? "== All features ==\n" : "== Selected features ==\n")
            << table << "\n";
}

}  // namespace

void stage_evaluate(const PipelineConfig& cfg) {
  const FeatureMatrix m = load_features(cfg);

  write_reports(cfg, evaluate_matrix(m, cfg, {}), "all");

  if (cfg.selection == SelectionMode::CfsBestFirst) {
    if (cfg.nested_selection) {
      // Leakage-free variant: rerun the search inside every training fold.
      const FoldFeatureSelector nested = [](const FeatureMatrix& train) {
        return best_first_search(train).selected;
      };
      write_reports(cfg, evaluate_matrix(m, cfg, nested), "selected");
    } else {
      if (!std::filesystem::exists(cfg.out_dir / "selection.json")) {
        throw ConfigError("no selection.json under '" + cfg.out_dir.string() +
                          "'; run the select stage first (or use run)");
      }
      const SelectionResult sel = selection_from_json(
          nlohmann::json::parse(read_file(cfg.out_dir / "selection.json")));
      std::cout << "Selected " << sel.selected.size() << " features (merit "
                << sel.merit << ", visited " << sel.visited << " subsets)\n";
      const FeatureMatrix sub = select_columns(m, sel.selected);
      write_reports(cfg, evaluate_matrix(sub, cfg, {}), "selected");
    }
  }
}

std::string stage_report(const PipelineConfig& cfg) {
  const std::filesystem::path dir = cfg.out_dir / "reports";
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("no reports under '" + dir.string() + "'; run evaluate first");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::string out;
  for (const auto& f : files) {
    const EvalReport r = report_from_json(nlohmann::json::parse(read_file(f)));
    out += "--- " + f.filename().string() + " ---\n";
    out += render_report_text(r);
    out += "\n";
  }
  return out;
}

int run_pipeline(const PipelineConfig& cfg) {
  cfg.window_samples();  // validate config up front
  stage_preprocess(cfg);
  stage_extract(cfg);
  if (cfg.selection == SelectionMode::CfsBestFirst && !cfg.nested_selection) {
    stage_select(cfg);
  }
  stage_evaluate(cfg);
  return 0;
}

}  // namespace gaitkit
