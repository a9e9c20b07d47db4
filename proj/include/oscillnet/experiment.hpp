#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oscillnet/io.hpp"
#include "oscillnet/jordan.hpp"
#include "oscillnet/phase.hpp"

namespace oscillnet::experiment {

// One phase-dynamics run: model, initial phases, integrator settings
// and analysis thresholds. Built from a flat key = value config file
// plus optional key=value overrides (overrides win).
struct ExperimentConfig {
    jordan::JordanBlockModel model{0.0, 1.0, 3};
    jordan::Variant variant = jordan::Variant::Unitary;
    // 4m reals: Re/Im up, Re/Im down per mode; defaults to all zeros.
    phase::PhaseState init;
    double dt = 1e-3;
    double t_end = 1000.0;
    int stride = 100;
    phase::DivergenceThresholds thresholds;
    double conv_threshold = 0.05;
    double guard = 700.0;
    std::filesystem::path output_dir = "run-out";

    // Flat snapshot in canonical key order, as written to manifests.
    io::KeyValueList entries() const;
};

// Accepted keys: omega, d, m, variant, init, dt, t_end, stride,
// slope_min, r2_min, curvature_rel, conv_threshold, guard, output_dir.
// Later assignments win; unknown keys are rejected; ranges validated
// (dt > 0, t_end > dt, m >= 1, stride >= 1, guard > 0).
ExperimentConfig make_config(const io::KeyValueList& entries);
ExperimentConfig load_config(const std::filesystem::path& file,
                             const std::vector<std::string>& overrides = {});

struct RunManifest {
    std::filesystem::path dir;
    std::string version;
    std::string started_utc;
    std::string finished_utc;
    io::KeyValueList config_entries;
    // Emitted file name -> FNV-1a content digest (hex).
    std::vector<std::pair<std::string, std::string>> files;
};

// Runs the phase integration and the linear-system oracle, writes
// phases.csv, oracle.csv, differences.csv (m >= 3 only), logdiv.csv
// and summary.txt into config.output_dir, then writes manifest.txt
// last as the completion marker. On any failure the partially written
// files are removed before the error propagates.
RunManifest run_experiment(const ExperimentConfig& config);

// Reads manifest.txt from a completed run directory and verifies every
// recorded digest against the file on disk; throws std::invalid_argument
// on a missing or inconsistent run.
RunManifest read_manifest(const std::filesystem::path& run_dir);

// Rebuilds a trajectory from a persisted phases.csv/oracle.csv file
// (metadata header carries the model and integrator settings).
phase::PhaseTrajectory load_trajectory_csv(const std::filesystem::path& file);

struct ColumnDeviation {
    std::string column;
    double max_abs_dev = 0.0;
};

struct ClassificationDiff {
    std::string series;
    std::string class_a;
    std::string class_b;
};

struct CompareReport {
    double max_abs_dev = 0.0;
    std::vector<ColumnDeviation> columns;
    std::vector<ClassificationDiff> class_diffs;  // only series that differ
};

// Compares phases.csv of two completed runs column by column and
// re-derives the divergence classifications from each run's own data
// and thresholds. Requires equal m and identical sample-time grids.
CompareReport compare_runs(const std::filesystem::path& run_a,
                           const std::filesystem::path& run_b);

// Plot-ready export. Figure keys:
//   f4 -> six two-column files (t, Re-phase difference), one per
//         coupling pair (requires m >= 3)
//   f5 -> one two-column file (t, Im delta) per branch and mode
//         of the first three modes (requires m >= 3)
//   f6 -> two files (ln t, |Im delta|) for mode 1 up/down, t > 0 rows
// Files land in <run_dir>/export; returns the written paths.
std::vector<std::filesystem::path> export_plot_data(const std::filesystem::path& run_dir,
                                                    const std::string& figure);

}  // namespace oscillnet::experiment
