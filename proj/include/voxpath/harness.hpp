#pragma once

#include <cstdint>
#include <string>

#include "voxpath/common.hpp"
#include "voxpath/select.hpp"

namespace voxpath {

struct ManifestEntry {
    std::string path;
    int label = 0;  // 0 healthy, 1 pathological
    std::string speaker;
    std::string gender;  // "M" / "F"
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

// CSV with header path,label,speaker,gender; relative paths resolve
// against the manifest location.
Manifest load_manifest(const std::string& path);

struct ExtractConfig {
    double rate = 16000.0;
    double frame_ms = 25.0;
    double hop_ms = 10.0;
    std::size_t mel_filters = 20;
    double f_max = 350.0;  // Hz, maximum expected fundamental
    std::uint64_t seed = 0;  // echoed into the metadata sidecar
};

struct ExtractResult {
    FeatureMatrix matrix;
    std::vector<std::string> paths;    // parallel to matrix rows
    std::vector<std::string> genders;  // parallel to matrix rows
    std::vector<std::string> warnings;
    ExtractConfig config;
};

// Stable column ordering: the scalar features first, then every
// (sequence feature x statistic) pair as "<local>__<stat>".
std::vector<std::string> feature_column_names();

// One recording through the whole local-feature + statistics pipeline.
std::vector<double> extract_features(const Signal& sig, const ExtractConfig& cfg);

// All manifest entries, in parallel across recordings. Unreadable files are
// skipped with a warning.
ExtractResult extract_all(const Manifest& manifest, const ExtractConfig& cfg);

struct ExperimentConfig {
    std::string classifier = "forest";  // "forest" or "knn"
    std::size_t repetitions = 100;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    double train_fraction = 0.75;
    std::size_t knn_k = 5;
    std::size_t forest_trees = 100;
};

struct Confusion {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

double acc_percent(const Confusion& c);
double sen_percent(const Confusion& c);
double spe_percent(const Confusion& c);

struct RepetitionResult {
    double acc = 0.0, sen = 0.0, spe = 0.0;
    std::size_t n_selected = 0;
    bool selection_fallback = false;
    double oob_accuracy = kMissing;  // forest only
};

struct MeanStd {
    double mean = 0.0, std = 0.0;
};

struct ExperimentReport {
    std::vector<RepetitionResult> repetitions;
    MeanStd acc, sen, spe, n_selected;
    ExperimentConfig config;
};

// Stratified 75/25 splits (speaker-disjoint when speaker ids repeat),
// train-fitted normalization and selection, classification, repeated with
// per-repetition seed = master seed + index.
ExperimentReport run_experiment(const FeatureMatrix& fm, const ExperimentConfig& cfg);

// Minimum reliable observed error rate, percent: 100 * 30 / n.
double rule_of_30(std::size_t n_trials);

// ---- file formats ----

void write_feature_csv(const std::string& path, const ExtractResult& result);
// Reads the matrix back; expects the same header layout the writer emits.
ExtractResult read_feature_csv(const std::string& path);

void write_pvalue_csv(const std::string& path, const SelectionResult& sel);

void write_report_json(const std::string& path, const ExperimentReport& report);
// Human-readable summary table.
std::string report_table(const ExperimentReport& report);

void write_extract_sidecar(const std::string& csv_path, const ExtractResult& result);

}  // namespace voxpath
