#include "qtl/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qtl {

using nlohmann::json;

namespace {

[[noreturn]] void shape_error(const std::string& what) {
    throw std::runtime_error("checkpoint shape mismatch: " + what);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols, const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        shape_error(name + " must have " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            shape_error(name + " row " + std::to_string(r) + " must have " +
                        std::to_string(cols) + " entries");
        }
        for (int c = 0; c < cols; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

std::vector<double> vector_from_json(const json& j, int size, const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != size) {
        shape_error(name + " must have " + std::to_string(size) + " entries");
    }
    return j.get<std::vector<double>>();
}

json dense_to_json(const DenseLayer& layer) {
    return json{{"W", matrix_to_json(layer.W)}, {"b", layer.b}};
}

DenseLayer dense_from_json(const json& params, int n_in, int n_out, Activation activation,
                           bool frozen, const std::string& name) {
    DenseLayer layer;
    layer.W = matrix_from_json(params.at("W"), n_out, n_in, name + ".W");
    layer.b = vector_from_json(params.at("b"), n_out, name + ".b");
    layer.activation = activation;
    layer.frozen = frozen;
    return layer;
}

json model_to_json(const Model& model) {
    json doc;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DressedCircuit>) {
                doc["model_kind"] = "dressed";
                doc["architecture"] = {{"n_in", m.n_in()},
                                       {"n_qubits", m.bare.n_qubits},
                                       {"quantum_depth", m.bare.depth()},
                                       {"n_out", m.n_out()},
                                       {"pre_activation", activation_name(m.pre.activation)},
                                       {"post_activation", activation_name(m.post.activation)}};
                doc["parameters"] = {{"pre", dense_to_json(m.pre)},
                                     {"quantum_weights", matrix_to_json(m.bare.weights)},
                                     {"post", dense_to_json(m.post)}};
                doc["frozen_masks"] = {{"pre", m.pre.frozen},
                                       {"quantum", m.quantum_frozen},
                                       {"post", m.post.frozen}};
            } else if constexpr (std::is_same_v<T, ClassicalBaseline>) {
                json sizes = json::array();
                json activations = json::array();
                json layers = json::array();
                json frozen = json::array();
                sizes.push_back(m.n_in());
                for (const DenseLayer& layer : m.layers) {
                    sizes.push_back(layer.n_out());
                    activations.push_back(activation_name(layer.activation));
                    layers.push_back(dense_to_json(layer));
                    frozen.push_back(layer.frozen);
                }
                doc["model_kind"] = "baseline";
                doc["architecture"] = {{"sizes", sizes}, {"activations", activations}};
                doc["parameters"] = {{"layers", layers}};
                doc["frozen_masks"] = {{"layers", frozen}};
            } else {
                doc["model_kind"] = "bare_qq";
                doc["architecture"] = {{"n_qubits", m.bare.n_qubits},
                                       {"quantum_depth", m.bare.depth()},
                                       {"n_classes", m.n_classes}};
                doc["parameters"] = {{"quantum_weights", matrix_to_json(m.bare.weights)}};
                json rows = json::array();
                for (std::uint8_t flag : m.row_frozen) rows.push_back(flag != 0);
                doc["frozen_masks"] = {{"rows", rows}};
            }
        },
        model);
    return doc;
}

Model model_from_json(const json& doc) {
    const std::string kind = doc.at("model_kind").get<std::string>();
    const json& arch = doc.at("architecture");
    const json& params = doc.at("parameters");
    const json& frozen = doc.at("frozen_masks");

    if (kind == "dressed") {
        const int n_in = arch.at("n_in").get<int>();
        const int n_qubits = arch.at("n_qubits").get<int>();
        const int depth = arch.at("quantum_depth").get<int>();
        const int n_out = arch.at("n_out").get<int>();
        DressedCircuit m;
        m.pre = dense_from_json(params.at("pre"), n_in, n_qubits,
                                activation_from_name(arch.at("pre_activation").get<std::string>()),
                                frozen.at("pre").get<bool>(), "pre");
        m.bare = BareCircuitSpec(
            n_qubits, matrix_from_json(params.at("quantum_weights"), depth, n_qubits,
                                       "quantum_weights"));
        m.post = dense_from_json(params.at("post"), n_qubits, n_out,
                                 activation_from_name(arch.at("post_activation").get<std::string>()),
                                 frozen.at("post").get<bool>(), "post");
        m.quantum_frozen = frozen.at("quantum").get<bool>();
        m.validate();
        return m;
    }
    if (kind == "baseline") {
        const auto sizes = arch.at("sizes").get<std::vector<int>>();
        const auto activations = arch.at("activations").get<std::vector<std::string>>();
        const json& layers = params.at("layers");
        const auto layer_frozen = frozen.at("layers").get<std::vector<bool>>();
        if (sizes.size() < 2 || activations.size() + 1 != sizes.size() ||
            layers.size() + 1 != sizes.size() || layer_frozen.size() + 1 != sizes.size()) {
            shape_error("baseline layer descriptions disagree");
        }
        ClassicalBaseline m;
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
            m.layers.push_back(dense_from_json(layers[i], sizes[i], sizes[i + 1],
                                               activation_from_name(activations[i]),
                                               layer_frozen[i],
                                               "layers[" + std::to_string(i) + "]"));
        }
        m.validate();
        return m;
    }
    if (kind == "bare_qq") {
        const int n_qubits = arch.at("n_qubits").get<int>();
        const int depth = arch.at("quantum_depth").get<int>();
        BareClassifier m;
        m.bare = BareCircuitSpec(
            n_qubits, matrix_from_json(params.at("quantum_weights"), depth, n_qubits,
                                       "quantum_weights"));
        const auto rows = frozen.at("rows").get<std::vector<bool>>();
        if (static_cast<int>(rows.size()) != depth) {
            shape_error("frozen row mask must cover every layer");
        }
        m.row_frozen.assign(rows.begin(), rows.end());
        m.n_classes = arch.at("n_classes").get<int>();
        m.validate();
        return m;
    }
    throw std::runtime_error("checkpoint: unknown model_kind '" + kind + "'");
}

}  // namespace

AdamSnapshot snapshot_adam(const Adam& adam) {
    AdamSnapshot s;
    s.step_count = adam.step_count();
    s.learning_rate = adam.learning_rate();
    s.beta1 = adam.beta1();
    s.beta2 = adam.beta2();
    s.epsilon = adam.epsilon();
    s.m = adam.first_moments();
    s.v = adam.second_moments();
    return s;
}

Adam restore_adam(const AdamSnapshot& s) {
    return Adam(s.learning_rate, s.beta1, s.beta2, s.epsilon, s.step_count, s.m, s.v);
}

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
    json doc = model_to_json(checkpoint.model);
    doc["format_version"] = kCheckpointFormatVersion;
    doc["rng_seed"] = checkpoint.rng_seed;
    if (checkpoint.optimizer.has_value()) {
        const AdamSnapshot& s = *checkpoint.optimizer;
        doc["optimizer_state"] = {{"step_count", s.step_count},
                                  {"learning_rate", s.learning_rate},
                                  {"beta1", s.beta1},
                                  {"beta2", s.beta2},
                                  {"epsilon", s.epsilon},
                                  {"m", s.m},
                                  {"v", s.v}};
    } else {
        doc["optimizer_state"] = nullptr;
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << doc.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("checkpoint parse error in " + path + ": " + e.what());
    }

    try {
        const int version = doc.at("format_version").get<int>();
        if (version != kCheckpointFormatVersion) {
            throw std::runtime_error("checkpoint format version mismatch: file has " +
                                     std::to_string(version) + ", expected " +
                                     std::to_string(kCheckpointFormatVersion));
        }
        Checkpoint out;
        out.model = model_from_json(doc);
        out.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
        if (doc.contains("optimizer_state") && !doc.at("optimizer_state").is_null()) {
            const json& o = doc.at("optimizer_state");
            AdamSnapshot s;
            s.step_count = o.at("step_count").get<long>();
            s.learning_rate = o.at("learning_rate").get<double>();
            s.beta1 = o.at("beta1").get<double>();
            s.beta2 = o.at("beta2").get<double>();
            s.epsilon = o.at("epsilon").get<double>();
            s.m = o.at("m").get<std::vector<double>>();
            s.v = o.at("v").get<std::vector<double>>();
            out.optimizer = std::move(s);
        }
        return out;
    } catch (const json::exception& e) {
        throw std::runtime_error("checkpoint " + path + " is malformed: " + e.what());
    }
}

}  // namespace qtl
