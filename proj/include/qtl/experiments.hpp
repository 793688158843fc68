#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtl/dataset.hpp"
#include "qtl/model.hpp"
#include "qtl/transfer.hpp"

namespace qtl {

// Usage or configuration problem; the CLI maps this to exit code 2.
// Anything else thrown during a run maps to exit code 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string experiment = "spirals";  // spirals | cq | qc | qq
    std::string model = "dressed";       // spirals only: dressed | baseline

    int n_qubits = 4;
    int quantum_depth = 5;

    SpiralsConfig spirals;  // spirals experiment; its seed is derived from `seed`

    std::string train_features;  // cq (required), qc (optional)
    std::string test_features;

    std::string source_checkpoint;          // qc: pre-trained A; empty = random stand-in
    int truncate_to = -1;                   // qc: layers kept in A' (-1 = all)
    std::vector<int> head_depths{1, 2, 3};  // qc sweep

    int qq_total_depth = 4;
    int qq_frozen_depth = 2;
    long qq_pretrain_iterations = 300;

    TrainConfig train;  // budget, batch size, learning rate, schedule, cadence
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    void validate() const;  // throws ConfigError
};

// Named presets bundling the published hyper-parameter rows:
//   spirals     - 2D benchmark: depth 5, 1000 iterations, batch 10
//   ants-bees   - feature classification: depth 6, 30 epochs, batch 4,
//                 lr 4e-4 decayed by 0.1 every 10 epochs
//   dogs-cats   - depth 5, 3 epochs, batch 8, lr 1e-3
//   planes-cars - depth 4, 3 epochs, batch 8, lr 7e-4
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct TrainOutcome {
    double final_accuracy = 0.0;
    double best_accuracy = 0.0;
    std::string checkpoint_path;
    std::string metrics_path;
};

// Runs the configured experiment; writes metrics.csv and model.ckpt.json
// into out_dir (plus per-head files for qc).
TrainOutcome cmd_train(const RunConfig& config);

struct EvalOutcome {
    double accuracy = 0.0;
    int n_correct = 0;
    int n_samples = 0;
};

// dataset_ref: path of a feature CSV, or "preset:spirals" to regenerate the
// spirals test set from `seed`. Writes eval.json into out_dir.
EvalOutcome cmd_eval(const std::string& checkpoint_path, const std::string& dataset_ref,
                     std::uint64_t seed, const std::string& out_dir);

// Evaluates predict over a steps x steps lattice on [min, max]^2 and writes
// region.csv (columns x,y,class; the x index is the outer loop).
void cmd_decision_region(const std::string& checkpoint_path, double grid_min, double grid_max,
                         int steps, const std::string& out_dir);

struct QqCompareConfig {
    int n_qubits = 4;
    int total_depth = 4;
    int frozen_depth = 2;
    long pretrain_iterations = 300;
    int n_train = 240;
    int n_test = 120;
    TrainConfig train;
    int n_seeds = 1;
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    void validate() const;
};

struct QqCompareOutcome {
    long comparison_iteration = 0;  // 25% of the budget
    double median_transfer_loss = 0.0;
    double median_scratch_loss = 0.0;
    bool transfer_below_scratch = false;
};

// Runs both arms for each seed; writes aligned transfer/scratch metrics CSVs
// and summary.json.
QqCompareOutcome cmd_qq_compare(const QqCompareConfig& config);

void cmd_gen_features(int width, int n_train, int n_test, double separation, double sigma,
                      std::uint64_t seed, const std::string& out_dir);
void cmd_gen_spirals(const SpiralsConfig& config, const std::string& out_dir);

// shared helpers (also used by tests)
std::string format_double(double value);  // shortest round-trip decimal
void write_metrics_csv(const std::vector<TraceRow>& trace, const std::string& path);

}  // namespace qtl
