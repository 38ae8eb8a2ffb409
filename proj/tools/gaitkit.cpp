// gaitkit command-line front end.
//
// Subcommands mirror the pipeline stages; every stage reads the previous
// stage's artifact from the --out directory, so runs are resumable and
// individually rerunnable.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "gaitkit/errors.hpp"
#include "gaitkit/io.hpp"
#include "gaitkit/pipeline.hpp"
#include "gaitkit/synthgen.hpp"

namespace {

int thread_cap_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAITKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
  }
  return static_cast<int>(std::min(hw, 8u));
}

std::vector<gaitkit::ClassifierKind> parse_classifier_list(const std::string& csv) {
  std::vector<gaitkit::ClassifierKind> kinds;
  std::string token;
  std::stringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token == "tree") {
      kinds.push_back(gaitkit::ClassifierKind::DecisionTree);
    } else if (token == "lda") {
      kinds.push_back(gaitkit::ClassifierKind::Lda);
    } else if (token == "knn") {
      kinds.push_back(gaitkit::ClassifierKind::Knn);
    } else if (token == "svm") {
      kinds.push_back(gaitkit::ClassifierKind::SvmOvo);
    } else if (token == "nb") {
      kinds.push_back(gaitkit::ClassifierKind::GaussianNb);
    } else {
      throw gaitkit::InvalidArgument("unknown classifier '" + token +
                                     "' (use tree,lda,knn,svm,nb)");
    }
  }
  if (kinds.empty()) throw gaitkit::InvalidArgument("empty classifier list");
  return kinds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accelerometer gait-recognition pipeline"};
  app.require_subcommand(1);

  gaitkit::PipelineConfig cfg;
  cfg.max_threads = thread_cap_from_env();

  std::string out_dir = "gaitkit_out";
  std::string data_dir;
  std::string calibration;
  std::string normalize = "per-fold";
  std::string selection = "none";
  std::string classifiers;
  bool all_classifiers = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory for all artifacts");
    cmd->add_option("--seed", cfg.seed, "Deterministic seed");
  };
  auto add_pipeline_options = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("--data-dir", data_dir, "Input CSV directory (default <out>/data)");
    cmd->add_option("--calibration", calibration, "Calibration key-value file");
    cmd->add_option("--window-seconds", cfg.window_seconds, "Window length in seconds");
    cmd->add_option("--sample-rate", cfg.sample_rate, "Resampling rate in Hz");
    cmd->add_option("--k-folds", cfg.k_folds, "Cross-validation folds");
    cmd->add_option("--normalize", normalize, "per-fold|global");
    cmd->add_option("--select", selection, "none|cfs-bestfirst");
    cmd->add_flag("--nested", cfg.nested_selection, "Rerun selection inside each training fold");
    cmd->add_option("--classifiers", classifiers, "Comma list of tree,lda,knn,svm,nb");
    cmd->add_flag("--all-classifiers", all_classifiers, "Evaluate all five classifiers");
    cmd->add_option("--knn-k", cfg.hyperparams.knn.k, "k for k-NN");
    cmd->add_option("--svm-c", cfg.hyperparams.svm.c, "Soft-margin C");
    cmd->add_option("--svm-tol", cfg.hyperparams.svm.tolerance, "SMO KKT tolerance");
    cmd->add_option("--svm-max-passes", cfg.hyperparams.svm.max_passes,
                    "SMO sweep budget before giving up");
    cmd->add_option("--lda-ridge", cfg.hyperparams.lda.ridge, "LDA covariance ridge");
    cmd->add_option("--nb-var-floor", cfg.hyperparams.nb.variance_floor,
                    "Naive Bayes variance floor");
    cmd->add_option("--tree-min-leaf", cfg.hyperparams.tree.min_leaf, "Tree minimum leaf size");
    cmd->add_option("--tree-max-depth", cfg.hyperparams.tree.max_depth,
                    "Tree depth cap (0 = unlimited)");
  };

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset into <out>/data");
  int synth_subjects = 4;
  int synth_sessions = 2;
  double synth_duration = 160.0;
  double synth_noise = 0.4;
  double synth_jitter = 0.05;
  double synth_null = 0.01;
  add_common(synth);
  synth->add_option("--subjects", synth_subjects, "Number of subjects");
  synth->add_option("--sessions", synth_sessions, "Sessions per subject");
  synth->add_option("--duration", synth_duration, "Seconds per session");
  synth->add_option("--noise", synth_noise, "Gaussian noise sigma");
  synth->add_option("--jitter", synth_jitter, "Timestamp jitter fraction");
  synth->add_option("--null-prob", synth_null, "Per-cell null probability");

  auto* preprocess = app.add_subcommand("preprocess", "Parse, clean, resample, and window");
  add_pipeline_options(preprocess);
  auto* extract = app.add_subcommand("extract", "Compute the 84-feature matrix");
  add_pipeline_options(extract);
  auto* select = app.add_subcommand("select", "Correlation-based best-first feature selection");
  add_pipeline_options(select);
  auto* evaluate = app.add_subcommand("evaluate", "Cross-validate the classifiers");
  add_pipeline_options(evaluate);
  auto* run = app.add_subcommand("run", "Full pipeline: preprocess through evaluate");
  add_pipeline_options(run);
  auto* report = app.add_subcommand("report", "Re-render saved report JSONs as text");
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  std::string stage = "config";
  try {
    cfg.out_dir = out_dir;
    cfg.data_dir = data_dir;
    if (!calibration.empty()) cfg.calibration = calibration;
    cfg.normalize = gaitkit::normalize_mode_from_name(normalize);
    cfg.selection = gaitkit::selection_mode_from_name(selection);
    if (!classifiers.empty() && !all_classifiers) {
      cfg.classifiers = parse_classifier_list(classifiers);
    }

    if (synth->parsed()) {
      stage = "synth";
      gaitkit::GenSpec spec =
          gaitkit::default_spec(synth_subjects, synth_sessions, synth_duration, cfg.seed);
      spec.null_probability = synth_null;
      spec.timestamp_jitter = synth_jitter;
      for (auto& subject : spec.subjects) subject.noise_sigma = synth_noise;
      const auto files = gaitkit::write_dataset(spec, cfg.effective_data_dir());
      std::cout << "wrote " << files.size() << " files to "
                << cfg.effective_data_dir().string() << "\n";
    } else if (preprocess->parsed()) {
      stage = "preprocess";
      gaitkit::stage_preprocess(cfg);
    } else if (extract->parsed()) {
      stage = "extract";
      gaitkit::stage_extract(cfg);
    } else if (select->parsed()) {
      stage = "select";
      const auto result = gaitkit::stage_select(cfg);
      std::cout << "selected " << result.selected.size() << " features (merit "
                << result.merit << ", visited " << result.visited << " subsets)\n";
    } else if (evaluate->parsed()) {
      stage = "evaluate";
      gaitkit::stage_evaluate(cfg);
    } else if (run->parsed()) {
      stage = "run";
      return gaitkit::run_pipeline(cfg);
    } else if (report->parsed()) {
      stage = "report";
      std::cout << gaitkit::stage_report(cfg);
    }
  } catch (const gaitkit::GaitError& e) {
    std::cerr << "[" << stage << "] error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "[" << stage << "] unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
