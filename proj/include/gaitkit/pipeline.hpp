#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gaitkit/classifiers.hpp"
#include "gaitkit/evaluation.hpp"
#include "gaitkit/selection.hpp"
#include "gaitkit/types.hpp"

namespace gaitkit {

enum class SelectionMode { None, CfsBestFirst };

SelectionMode selection_mode_from_name(const std::string& name);

struct PipelineConfig {
  std::filesystem::path out_dir = "gaitkit_out";
  std::filesystem::path data_dir;  // empty -> out_dir / "data"
  std::optional<std::filesystem::path> calibration;
  double window_seconds = 5.0;
  double sample_rate = 50.0;
  int k_folds = 5;
  std::uint64_t seed = 0;
  NormalizeMode normalize = NormalizeMode::PerFold;
  SelectionMode selection = SelectionMode::None;
  bool nested_selection = false;
  std::vector<ClassifierKind> classifiers{kAllClassifiers.begin(), kAllClassifiers.end()};
  Hyperparams hyperparams;
  int max_threads = 1;

  std::filesystem::path effective_data_dir() const {
    return data_dir.empty() ? out_dir / "data" : data_dir;
  }
  /// Window length in samples; ConfigError unless integral and even.
  int window_samples() const;
};

/// Full preprocessing of one raw recording: fill nulls, calibrate,
/// resample, remove the per-axis mean, and segment.
std::vector<Window> preprocess_recording(const RawRecording& rec,
                                         const CalibrationConfig& cal,
                                         const PipelineConfig& cfg);

// Each stage reads the previous stage's artifact from cfg.out_dir and
// writes its own, so any stage can be rerun on its own.
void stage_preprocess(const PipelineConfig& cfg);  // data dir -> windows.json
void stage_extract(const PipelineConfig& cfg);     // windows.json -> features.{csv,json}
SelectionResult stage_select(const PipelineConfig& cfg);  // features.json -> selection.json
void stage_evaluate(const PipelineConfig& cfg);    // features.json -> reports + tables
std::string stage_report(const PipelineConfig& cfg);  // re-render saved reports

/// preprocess -> extract -> (select) -> evaluate. Returns 0 on success.
int run_pipeline(const PipelineConfig& cfg);

}  // namespace gaitkit
