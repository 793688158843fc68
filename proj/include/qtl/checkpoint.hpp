#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qtl/model.hpp"

namespace qtl {

inline constexpr int kCheckpointFormatVersion = 1;

// Serializable Adam state for checkpoint round-trips.
struct AdamSnapshot {
    long step_count = 0;
    double learning_rate = 0.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::vector<double> m;
    std::vector<double> v;

    bool operator==(const AdamSnapshot&) const = default;
};

AdamSnapshot snapshot_adam(const Adam& adam);
Adam restore_adam(const AdamSnapshot& snapshot);

struct Checkpoint {
    Model model;
    std::uint64_t rng_seed = 0;
    std::optional<AdamSnapshot> optimizer;
};

// Versioned JSON document: format_version, model_kind (dressed | baseline |
// bare_qq), architecture, parameters as nested arrays, frozen_masks,
// optional optimizer_state, rng_seed. Doubles are written in shortest
// round-trip form, so a load reproduces forward outputs bit-exactly.
void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace qtl
