#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtl/matrix.hpp"

namespace qtl {

// Labeled real-vector samples.
struct Dataset {
    Matrix features;          // n_samples x width
    std::vector<int> labels;  // each in [0, n_classes)
    int n_classes = 0;

    int size() const { return features.rows; }
    int width() const { return features.cols; }

    void validate() const;

    bool operator==(const Dataset&) const = default;
};

struct SpiralsConfig {
    int n_train = 2000;
    int n_test = 200;
    double turns = 1.0;
    double noise_sigma = 0.05;
    std::uint64_t seed = 0;
};

struct TrainTestSplit {
    Dataset train;
    Dataset test;
};

// Two concentric spiral arms, one per class. Class c point at parameter
// t in (0.05, 1]: radius t, angle 2*pi*turns*t + pi*c, plus Gaussian jitter.
// The lower cutoff on t keeps the two arms from collapsing onto the origin.
TrainTestSplit gen_spirals(const SpiralsConfig& config);

// Two isotropic Gaussian classes centered at +-(separation/2) * u for a
// fixed random unit vector u. Stand-in for externally extracted features.
TrainTestSplit gen_feature_blobs(int width, int n_train, int n_test, double separation,
                                 double sigma, std::uint64_t seed);

// Synthetic circuit-input classification task: coordinates drawn uniformly
// from [-1, -0.5] u [0.5, 1], label 1 when the product of all coordinates is
// positive (the complement when inverted). The magnitude floor keeps the
// classes well separated; inversion yields a related-but-distinct task for
// transfer experiments.
TrainTestSplit gen_quantum_task(int n_qubits, int n_train, int n_test, bool invert,
                                std::uint64_t seed);

// Feature-file CSV contract: UTF-8, LF endings, header
// `label,f0,...,f{w-1}`, one sample per line as an integer label followed
// by w floats written in 17-significant-digit scientific notation.
void save_feature_file(const Dataset& dataset, const std::string& path);
Dataset load_feature_file(const std::string& path);

// Deterministic permutation of all indices, chunked into batches; the final
// short chunk is kept.
std::vector<std::vector<int>> batches(const Dataset& dataset, int batch_size,
                                      std::uint64_t epoch_seed);

}  // namespace qtl
