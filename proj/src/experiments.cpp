#include "qtl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qtl/checkpoint.hpp"

namespace qtl {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDataTag = 0x64617461;
constexpr std::uint64_t kInitTag = 0x696e6974;
constexpr std::uint64_t kShuffleTag = 0x73686366;
constexpr std::uint64_t kExtractorTag = 0x65787472;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    }
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

void write_json_file(const std::string& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::string format_accuracy(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BareCircuitSpec extract_bare(const Model& model, const std::string& origin) {
    if (const auto* dressed = std::get_if<DressedCircuit>(&model)) {
        return dressed->bare;
    }
    if (const auto* bare = std::get_if<BareClassifier>(&model)) {
        return bare->bare;
    }
    throw ConfigError(origin + ": checkpoint has no quantum block to extract");
}

void save_model(const Model& model, std::uint64_t seed, const std::string& path) {
    save_checkpoint(Checkpoint{model, seed, std::nullopt}, path);
}

double batch_loss_at(const std::vector<TraceRow>& trace, long iteration) {
    for (const TraceRow& row : trace) {
        if (row.iteration == iteration && row.train_loss.has_value()) {
            return *row.train_loss;
        }
    }
    throw std::runtime_error("trace has no loss at iteration " + std::to_string(iteration));
}

double train_set_loss_at(const std::vector<TraceRow>& trace, long iteration) {
    for (const TraceRow& row : trace) {
        if (row.iteration == iteration && row.train_set_loss.has_value()) {
            return *row.train_set_loss;
        }
    }
    throw std::runtime_error("trace has no training-set loss at iteration " +
                             std::to_string(iteration));
}

TrainOutcome run_and_persist(Model model, const Dataset& train_data, const Dataset& test_data,
                             const RunConfig& config, TrainConfig train_config) {
    train_config.seed = derive_seed(config.seed, kShuffleTag);
    const TrainResult result = train(model, train_data, test_data, train_config);

    TrainOutcome outcome;
    outcome.final_accuracy = result.final_accuracy;
    outcome.best_accuracy = result.best_accuracy;
    outcome.metrics_path = join(config.out_dir, "metrics.csv");
    outcome.checkpoint_path = join(config.out_dir, "model.ckpt.json");

    write_metrics_csv(result.trace, outcome.metrics_path);
    const Model& to_save =
        train_config.track_best && result.best_model.has_value() ? *result.best_model : model;
    save_model(to_save, config.seed, outcome.checkpoint_path);

    std::cout << "experiment=" << config.experiment
              << " final_accuracy=" << format_accuracy(outcome.final_accuracy)
              << " best_accuracy=" << format_accuracy(outcome.best_accuracy) << "\n";
    return outcome;
}

TrainOutcome train_spirals(const RunConfig& config) {
    SpiralsConfig spirals = config.spirals;
    spirals.seed = derive_seed(config.seed, kDataTag);
    const TrainTestSplit split = gen_spirals(spirals);

    Rng init(derive_seed(config.seed, kInitTag));
    Model model = config.model == "baseline"
                      ? Model{make_baseline({2, 4, 4, 2}, init)}
                      : Model{make_dressed(2, config.n_qubits, config.quantum_depth, 2, init)};
    return run_and_persist(std::move(model), split.train, split.test, config, config.train);
}

TrainOutcome train_cq(const RunConfig& config) {
    Dataset train_data = load_feature_file(config.train_features);
    Dataset test_data = load_feature_file(config.test_features);
    const int n_classes = std::max(train_data.n_classes, test_data.n_classes);
    train_data.n_classes = n_classes;
    test_data.n_classes = n_classes;
    if (train_data.width() != test_data.width()) {
        throw ConfigError("cq: train/test feature widths differ (" +
                          std::to_string(train_data.width()) + " vs " +
                          std::to_string(test_data.width()) + ")");
    }

    Rng init(derive_seed(config.seed, kInitTag));
    Model model =
        make_dressed(train_data.width(), config.n_qubits, config.quantum_depth, n_classes, init);
    return run_and_persist(std::move(model), train_data, test_data, config, config.train);
}

TrainOutcome train_qc(const RunConfig& config) {
    TransferPlan plan;
    plan.scheme = TransferScheme::QC;
    plan.n_qubits = config.n_qubits;
    plan.qc_head_depths = config.head_depths;
    plan.init_seed = derive_seed(config.seed, kInitTag);
    plan.train = config.train;
    plan.train.seed = derive_seed(config.seed, kShuffleTag);

    if (!config.source_checkpoint.empty()) {
        plan.source = extract_bare(load_checkpoint(config.source_checkpoint).model, "qc");
        if (plan.source->n_qubits != config.n_qubits) {
            throw ConfigError("qc: source checkpoint has " +
                              std::to_string(plan.source->n_qubits) + " qubits, expected " +
                              std::to_string(config.n_qubits));
        }
    } else {
        // stand-in for a pre-trained extractor: a fixed random circuit
        Rng rng(derive_seed(config.seed, kExtractorTag));
        Matrix w(config.quantum_depth, config.n_qubits);
        for (double& v : w.data) v = rng.uniform(-M_PI, M_PI);
        plan.source = BareCircuitSpec(config.n_qubits, std::move(w));
    }
    plan.truncate_to = config.truncate_to < 0 ? plan.source->depth() : config.truncate_to;

    if (!config.train_features.empty()) {
        plan.train_b = load_feature_file(config.train_features);
        plan.test_b = load_feature_file(config.test_features);
        if (plan.train_b.width() != config.n_qubits || plan.test_b.width() != config.n_qubits) {
            throw ConfigError("qc: feature width must equal the qubit count");
        }
    } else {
        const TrainTestSplit split =
            gen_quantum_task(config.n_qubits, 400, 200, false, derive_seed(config.seed, kDataTag));
        plan.train_b = split.train;
        plan.test_b = split.test;
    }

    const QcReport report = run_qc(plan);

    // persist the frozen extractor as a fully-frozen bare circuit
    BareClassifier extractor;
    extractor.bare = report.extractor;
    extractor.row_frozen.assign(report.extractor.depth(), 1);
    extractor.n_classes = 2;
    save_model(Model{extractor}, config.seed, join(config.out_dir, "extractor.ckpt.json"));

    json head_rows = json::array();
    std::size_t best = 0;
    for (std::size_t i = 0; i < report.heads.size(); ++i) {
        const QcHeadReport& row = report.heads[i];
        write_metrics_csv(row.result.trace,
                          join(config.out_dir,
                               "metrics_head" + std::to_string(row.head_depth) + ".csv"));
        head_rows.push_back({{"head_depth", row.head_depth},
                             {"final_accuracy", row.result.final_accuracy},
                             {"best_accuracy", row.result.best_accuracy}});
        if (row.result.final_accuracy > report.heads[best].result.final_accuracy) {
            best = i;
        }
    }
    write_json_file(join(config.out_dir, "report.json"),
                    json{{"format_version", 1},
                         {"experiment", "qc"},
                         {"truncate_to", plan.truncate_to},
                         {"heads", head_rows},
                         {"best_head_depth", report.heads[best].head_depth}});

    const QcHeadReport& winner = report.heads[best];
    TrainOutcome outcome;
    outcome.final_accuracy = winner.result.final_accuracy;
    outcome.best_accuracy = winner.result.best_accuracy;
    outcome.metrics_path = join(config.out_dir, "metrics.csv");
    outcome.checkpoint_path = join(config.out_dir, "model.ckpt.json");
    write_metrics_csv(winner.result.trace, outcome.metrics_path);
    save_model(Model{winner.head}, config.seed, outcome.checkpoint_path);

    std::cout << "experiment=qc best_head_depth=" << winner.head_depth
              << " final_accuracy=" << format_accuracy(outcome.final_accuracy)
              << " best_accuracy=" << format_accuracy(outcome.best_accuracy) << "\n";
    return outcome;
}

TransferPlan base_qq_plan(int n_qubits, int total_depth, int frozen_depth, int n_train, int n_test,
                          long pretrain_iterations, const TrainConfig& train,
                          std::uint64_t data_seed) {
    TransferPlan plan;
    plan.scheme = TransferScheme::QQ;
    plan.n_qubits = n_qubits;
    plan.n_classes = 2;
    plan.qq_total_depth = total_depth;
    plan.truncate_to = frozen_depth;

    // task B draws fresh samples and complements task A's parity rule, so
    // the pre-trained features transfer while the readout must be relearned
    const TrainTestSplit task_a =
        gen_quantum_task(n_qubits, n_train, n_test, false, derive_seed(data_seed, kDataTag));
    const TrainTestSplit task_b =
        gen_quantum_task(n_qubits, n_train, n_test, true, derive_seed(data_seed, kDataTag + 1));
    plan.train_a = task_a.train;
    plan.test_a = task_a.test;
    plan.train_b = task_b.train;
    plan.test_b = task_b.test;

    plan.pretrain = train;
    plan.pretrain.iterations = pretrain_iterations;
    plan.pretrain.epochs = 0;
    plan.train = train;
    return plan;
}

TrainOutcome train_qq(const RunConfig& config) {
    TransferPlan plan = base_qq_plan(config.n_qubits, config.qq_total_depth,
                                     config.qq_frozen_depth, 240, 120,
                                     config.qq_pretrain_iterations, config.train, config.seed);
    plan.init_seed = derive_seed(config.seed, kInitTag);
    plan.pretrain.seed = derive_seed(config.seed, kShuffleTag);
    plan.train.seed = derive_seed(config.seed, kShuffleTag + 1);

    const QqComparison comparison = run_qq(plan);

    TrainOutcome outcome;
    outcome.final_accuracy = comparison.transfer.final_accuracy;
    outcome.best_accuracy = comparison.transfer.best_accuracy;
    outcome.metrics_path = join(config.out_dir, "metrics.csv");
    outcome.checkpoint_path = join(config.out_dir, "model.ckpt.json");
    write_metrics_csv(comparison.transfer.trace, outcome.metrics_path);
    write_metrics_csv(comparison.pretrain.trace, join(config.out_dir, "pretrain.csv"));
    save_model(Model{comparison.transfer_model}, config.seed, outcome.checkpoint_path);

    std::cout << "experiment=qq final_accuracy=" << format_accuracy(outcome.final_accuracy)
              << " best_accuracy=" << format_accuracy(outcome.best_accuracy) << "\n";
    return outcome;
}

}  // namespace

std::string format_double(double value) {
    // shortest decimal form that parses back to the same double
    char buffer[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) {
            return buffer;
        }
    }
    return buffer;
}

void write_metrics_csv(const std::vector<TraceRow>& trace, const std::string& path) {
    std::string content = "iteration,epoch,train_loss,test_accuracy\n";
    for (const TraceRow& row : trace) {
        content += std::to_string(row.iteration);
        content += ',';
        content += std::to_string(row.epoch);
        content += ',';
        if (row.train_loss.has_value()) content += format_double(*row.train_loss);
        content += ',';
        if (row.test_accuracy.has_value()) content += format_double(*row.test_accuracy);
        content += '\n';
    }
    write_text_file(path, content);
}

void RunConfig::validate() const {
    const std::vector<std::string> experiments{"spirals", "cq", "qc", "qq"};
    if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end()) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    if (model != "dressed" && model != "baseline") {
        throw ConfigError("model must be 'dressed' or 'baseline'");
    }
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [2, " + std::to_string(kMaxQubits) + "]");
    }
    if (quantum_depth < 0) {
        throw ConfigError("quantum depth must be >= 0");
    }
    if (train.learning_rate <= 0.0) {
        throw ConfigError("learning rate must be > 0");
    }
    try {
        train.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (out_dir.empty()) {
        throw ConfigError("output directory must be set");
    }
    if (experiment == "cq") {
        if (train_features.empty() || test_features.empty()) {
            throw ConfigError("cq needs --train-features and --test-features");
        }
    }
    for (const std::string& path : {train_features, test_features, source_checkpoint}) {
        if (!path.empty() && !fs::exists(path)) {
            throw ConfigError("input path does not exist: " + path);
        }
    }
    if (experiment == "qc") {
        if (head_depths.empty()) {
            throw ConfigError("qc needs at least one head depth");
        }
        for (int d : head_depths) {
            if (d < 1) throw ConfigError("head depths must be >= 1");
        }
    }
    if (experiment == "qq") {
        if (qq_total_depth < 1 || qq_frozen_depth < 0 || qq_frozen_depth > qq_total_depth) {
            throw ConfigError("qq depths: need 0 <= frozen <= total, total >= 1");
        }
        if (qq_pretrain_iterations < 0) {
            throw ConfigError("qq pre-training budget must be >= 0");
        }
    }
}

RunConfig preset(const std::string& name) {
    RunConfig config;
    if (name == "spirals") {
        config.experiment = "spirals";
        config.n_qubits = 4;
        config.quantum_depth = 5;
        config.train.iterations = 1000;
        config.train.batch_size = 10;
        config.train.learning_rate = 0.05;
        return config;
    }
    if (name == "ants-bees") {
        config.experiment = "cq";
        config.n_qubits = 4;
        config.quantum_depth = 6;
        config.train.iterations = 0;
        config.train.epochs = 30;
        config.train.batch_size = 4;
        config.train.learning_rate = 0.0004;
        config.train.decay_factor = 0.1;
        config.train.decay_period = 10;
        config.train.track_best = true;
        return config;
    }
    if (name == "dogs-cats") {
        config.experiment = "cq";
        config.n_qubits = 4;
        config.quantum_depth = 5;
        config.train.iterations = 0;
        config.train.epochs = 3;
        config.train.batch_size = 8;
        config.train.learning_rate = 0.001;
        config.train.track_best = true;
        return config;
    }
    if (name == "planes-cars") {
        config.experiment = "cq";
        config.n_qubits = 4;
        config.quantum_depth = 4;
        config.train.iterations = 0;
        config.train.epochs = 3;
        config.train.batch_size = 8;
        config.train.learning_rate = 0.0007;
        config.train.track_best = true;
        return config;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"spirals", "ants-bees", "dogs-cats", "planes-cars"};
}

TrainOutcome cmd_train(const RunConfig& config) {
    config.validate();
    ensure_dir(config.out_dir);
    if (config.experiment == "spirals") return train_spirals(config);
    if (config.experiment == "cq") return train_cq(config);
    if (config.experiment == "qc") return train_qc(config);
    return train_qq(config);
}

EvalOutcome cmd_eval(const std::string& checkpoint_path, const std::string& dataset_ref,
                     std::uint64_t seed, const std::string& out_dir) {
    if (!fs::exists(checkpoint_path)) {
        throw ConfigError("checkpoint does not exist: " + checkpoint_path);
    }
    const Checkpoint checkpoint = load_checkpoint(checkpoint_path);

    Dataset data;
    if (dataset_ref == "preset:spirals") {
        SpiralsConfig spirals;
        spirals.seed = derive_seed(seed, kDataTag);
        data = gen_spirals(spirals).test;
    } else {
        if (!fs::exists(dataset_ref)) {
            throw ConfigError("dataset does not exist: " + dataset_ref);
        }
        data = load_feature_file(dataset_ref);
    }

    const int arity = model_input_arity(checkpoint.model);
    if (data.width() != arity) {
        throw ConfigError("feature width " + std::to_string(data.width()) +
                          " does not match the model input arity " + std::to_string(arity));
    }

    EvalOutcome outcome;
    outcome.n_samples = data.size();
    for (int i = 0; i < data.size(); ++i) {
        if (predict(checkpoint.model, data.features.row(i)) == data.labels[i]) {
            ++outcome.n_correct;
        }
    }
    outcome.accuracy = static_cast<double>(outcome.n_correct) / outcome.n_samples;

    ensure_dir(out_dir);
    write_json_file(join(out_dir, "eval.json"), json{{"format_version", 1},
                                                     {"checkpoint", checkpoint_path},
                                                     {"dataset", dataset_ref},
                                                     {"n_samples", outcome.n_samples},
                                                     {"n_correct", outcome.n_correct},
                                                     {"accuracy", outcome.accuracy}});
    std::cout << "accuracy=" << format_accuracy(outcome.accuracy) << " (" << outcome.n_correct
              << "/" << outcome.n_samples << ")\n";
    return outcome;
}

void cmd_decision_region(const std::string& checkpoint_path, double grid_min, double grid_max,
                         int steps, const std::string& out_dir) {
    if (!fs::exists(checkpoint_path)) {
        throw ConfigError("checkpoint does not exist: " + checkpoint_path);
    }
    if (steps < 2 || grid_max <= grid_min) {
        throw ConfigError("decision region needs steps >= 2 and max > min");
    }
    const Checkpoint checkpoint = load_checkpoint(checkpoint_path);
    if (model_input_arity(checkpoint.model) != 2) {
        throw ConfigError("decision regions need a model with 2 inputs, this one has " +
                          std::to_string(model_input_arity(checkpoint.model)));
    }

    const double step = (grid_max - grid_min) / (steps - 1);
    std::string content = "x,y,class\n";
    for (int ix = 0; ix < steps; ++ix) {
        const double x = grid_min + ix * step;
        for (int iy = 0; iy < steps; ++iy) {
            const double y = grid_min + iy * step;
            const int cls = predict(checkpoint.model, std::vector<double>{x, y});
            content += format_double(x);
            content += ',';
            content += format_double(y);
            content += ',';
            content += std::to_string(cls);
            content += '\n';
        }
    }
    ensure_dir(out_dir);
    write_text_file(join(out_dir, "region.csv"), content);
    std::cout << "wrote " << steps * steps << " lattice predictions\n";
}

void QqCompareConfig::validate() const {
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw ConfigError("qq-compare: n_qubits must be in [2, " + std::to_string(kMaxQubits) + "]");
    }
    if (total_depth < 1 || frozen_depth < 0 || frozen_depth > total_depth) {
        throw ConfigError("qq-compare: need 0 <= frozen <= total, total >= 1");
    }
    if (pretrain_iterations < 0 || train.iterations < 1) {
        throw ConfigError("qq-compare: need a positive arm budget");
    }
    if (train.learning_rate <= 0.0) {
        throw ConfigError("qq-compare: learning rate must be > 0");
    }
    if (n_seeds < 1) {
        throw ConfigError("qq-compare: need at least one seed");
    }
    if (n_train < 1 || n_test < 1) {
        throw ConfigError("qq-compare: need positive dataset sizes");
    }
}

QqCompareOutcome cmd_qq_compare(const QqCompareConfig& config) {
    config.validate();
    ensure_dir(config.out_dir);

    const long iterations = config.train.iterations;
    const long comparison_iteration = std::max<long>(1, iterations / 4);
    std::vector<long> checkpoints;
    for (long it = comparison_iteration; it <= iterations; it += comparison_iteration) {
        checkpoints.push_back(it);
    }
    if (checkpoints.back() != iterations) checkpoints.push_back(iterations);

    QqCompareOutcome outcome;
    outcome.comparison_iteration = comparison_iteration;

    json per_seed = json::array();
    std::vector<double> transfer_losses, scratch_losses;

    for (int s = 0; s < config.n_seeds; ++s) {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(s);
        TransferPlan plan =
            base_qq_plan(config.n_qubits, config.total_depth, config.frozen_depth, config.n_train,
                         config.n_test, config.pretrain_iterations, config.train, config.seed);
        plan.init_seed = derive_seed(seed, kInitTag);
        plan.pretrain.seed = derive_seed(seed, kShuffleTag);
        plan.train.seed = derive_seed(seed, kShuffleTag + 1);
        // evaluate (and record the training-set loss) on the comparison grid
        plan.train.eval_every = static_cast<int>(comparison_iteration);

        const QqComparison comparison = run_qq(plan);

        const std::string suffix = "_s" + std::to_string(s);
        if (s == 0) {
            write_metrics_csv(comparison.transfer.trace, join(config.out_dir, "transfer.csv"));
            write_metrics_csv(comparison.scratch.trace, join(config.out_dir, "scratch.csv"));
        }
        if (config.n_seeds > 1) {
            write_metrics_csv(comparison.transfer.trace,
                              join(config.out_dir, "transfer" + suffix + ".csv"));
            write_metrics_csv(comparison.scratch.trace,
                              join(config.out_dir, "scratch" + suffix + ".csv"));
        }

        const double transfer_at =
            train_set_loss_at(comparison.transfer.trace, comparison_iteration);
        const double scratch_at = train_set_loss_at(comparison.scratch.trace, comparison_iteration);
        transfer_losses.push_back(transfer_at);
        scratch_losses.push_back(scratch_at);

        json crossover = nullptr;
        json loss_rows = json::array();
        for (long it : checkpoints) {
            const double t = train_set_loss_at(comparison.transfer.trace, it);
            const double c = train_set_loss_at(comparison.scratch.trace, it);
            if (crossover.is_null() && c <= t) crossover = it;
            loss_rows.push_back({{"iteration", it},
                                 {"transfer", t},
                                 {"scratch", c},
                                 {"transfer_batch_loss", batch_loss_at(comparison.transfer.trace, it)},
                                 {"scratch_batch_loss", batch_loss_at(comparison.scratch.trace, it)}});
        }
        per_seed.push_back({{"seed", seed},
                            {"pretrain_accuracy", comparison.pretrain.final_accuracy},
                            {"transfer_accuracy", comparison.transfer.final_accuracy},
                            {"scratch_accuracy", comparison.scratch.final_accuracy},
                            {"transfer_loss_at_comparison", transfer_at},
                            {"scratch_loss_at_comparison", scratch_at},
                            {"crossover_iteration", crossover},
                            {"loss_checkpoints", loss_rows}});
    }

    outcome.median_transfer_loss = median(transfer_losses);
    outcome.median_scratch_loss = median(scratch_losses);
    outcome.transfer_below_scratch = outcome.median_transfer_loss < outcome.median_scratch_loss;

    write_json_file(join(config.out_dir, "summary.json"),
                    json{{"format_version", 1},
                         {"n_seeds", config.n_seeds},
                         {"iterations", iterations},
                         {"total_depth", config.total_depth},
                         {"frozen_depth", config.frozen_depth},
                         {"comparison_iteration", comparison_iteration},
                         {"median_transfer_loss_at_comparison", outcome.median_transfer_loss},
                         {"median_scratch_loss_at_comparison", outcome.median_scratch_loss},
                         {"transfer_below_scratch", outcome.transfer_below_scratch},
                         {"per_seed", per_seed}});

    std::cout << "qq-compare iteration=" << comparison_iteration
              << " median_transfer_loss=" << format_double(outcome.median_transfer_loss)
              << " median_scratch_loss=" << format_double(outcome.median_scratch_loss)
              << " transfer_below_scratch=" << (outcome.transfer_below_scratch ? "yes" : "no")
              << "\n";
    return outcome;
}

void cmd_gen_features(int width, int n_train, int n_test, double separation, double sigma,
                      std::uint64_t seed, const std::string& out_dir) {
    const TrainTestSplit split = gen_feature_blobs(width, n_train, n_test, separation, sigma, seed);
    ensure_dir(out_dir);
    save_feature_file(split.train, join(out_dir, "train_features.csv"));
    save_feature_file(split.test, join(out_dir, "test_features.csv"));
    std::cout << "wrote " << n_train << "+" << n_test << " samples of width " << width << "\n";
}

void cmd_gen_spirals(const SpiralsConfig& config, const std::string& out_dir) {
    const TrainTestSplit split = gen_spirals(config);
    ensure_dir(out_dir);
    save_feature_file(split.train, join(out_dir, "spirals_train.csv"));
    save_feature_file(split.test, join(out_dir, "spirals_test.csv"));
    std::cout << "wrote " << config.n_train << "+" << config.n_test << " spiral points\n";
}

}  // namespace qtl
