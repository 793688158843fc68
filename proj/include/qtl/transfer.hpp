#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtl/bare_circuit.hpp"
#include "qtl/dataset.hpp"
#include "qtl/model.hpp"

namespace qtl {

enum class TransferScheme { CQ, QC, QQ };

const char* transfer_scheme_name(TransferScheme scheme);

// A' = first `keep` layers of the source circuit, weights copied verbatim.
BareCircuitSpec truncate_quantum(const BareCircuitSpec& spec, int keep);

// Single bare circuit: the frozen prefix keeps its weights and is masked out
// of the gradient set; `trainable_depth` fresh rows are appended with the
// standard small-angle initialization.
BareClassifier compose_qq(const BareCircuitSpec& frozen, int trainable_depth, int n_classes,
                          Rng& rng);

// One plan drives all three schemes; validation is per scheme.
struct TransferPlan {
    TransferScheme scheme = TransferScheme::CQ;

    // network A (QC: required source circuit; QQ: pre-trained in-run)
    std::optional<BareCircuitSpec> source;
    int truncate_to = 0;  // layers kept in A'

    int n_qubits = 4;
    int n_classes = 2;

    int cq_quantum_depth = 6;            // CQ: depth of the dressed head's circuit
    std::vector<int> qc_head_depths{1};  // QC: classical head depths to sweep
    int qq_total_depth = 4;              // QQ: frozen prefix + fresh layers
    int qq_pretrain_depth = -1;          // QQ: depth of A; -1 = qq_total_depth

    Dataset train_b, test_b;  // dataset B (all schemes)
    Dataset train_a, test_a;  // dataset A (QQ pre-training)

    TrainConfig pretrain;  // QQ arm (a)
    TrainConfig train;     // head/arm training budget
    std::uint64_t init_seed = 0;
};

struct ExperimentReport {
    TrainResult result;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    Model model;
};

// Dressed circuit over externally extracted feature vectors; the upstream
// extractor is outside the process, so the whole dressed head trains.
ExperimentReport run_cq(const TransferPlan& plan);

struct QcHeadReport {
    int head_depth = 0;
    TrainResult result;
    ClassicalBaseline head;
};

struct QcReport {
    BareCircuitSpec extractor;  // A' actually used (frozen)
    Dataset train_features, test_features;
    std::vector<QcHeadReport> heads;
};

// Frozen truncated circuit maps every sample to its Z-expectation features;
// a classical head trains on those features for each requested depth.
QcReport run_qc(const TransferPlan& plan);

struct QqComparison {
    TrainResult pretrain;        // task A
    BareCircuitSpec frozen_prefix;
    TrainResult transfer;        // frozen prefix + fresh layers on task B
    TrainResult scratch;         // equal-depth circuit from scratch on task B
    BareClassifier transfer_model;
    BareClassifier scratch_model;
};

// Pre-train on task A, truncate and freeze, append fresh layers and train on
// task B; train an equal-total-depth circuit from scratch on task B with the
// same seed protocol. Both arms see identical batch sequences.
QqComparison run_qq(const TransferPlan& plan);

}  // namespace qtl
