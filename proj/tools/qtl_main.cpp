#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtl/experiments.hpp"

namespace {

struct TrainArgs {
    std::string preset_name;
    std::string experiment;
    std::string model;
    int qubits = 0;
    int depth = -1;
    std::string train_features, test_features, source_checkpoint;
    int truncate_to = -2;
    std::vector<int> head_depths;
    int qq_total_depth = 0, qq_frozen_depth = -1;
    long qq_pretrain_iterations = -1;
    long iterations = -1;
    int epochs = -1;
    int batch_size = 0;
    double learning_rate = 0.0;
    double decay_factor = 0.0;
    int decay_period = -1;
    int eval_every = -1;
    bool track_best = false, no_track_best = false;
    int n_train = 0, n_test = 0;
    double turns = 0.0, noise = -1.0;
};

qtl::RunConfig build_train_config(const CLI::App& cmd, const TrainArgs& args,
                                  std::uint64_t seed, const std::string& out_dir) {
    qtl::RunConfig config =
        args.preset_name.empty() ? qtl::RunConfig{} : qtl::preset(args.preset_name);
    config.seed = seed;
    config.out_dir = out_dir;

    const auto passed = [&](const std::string& name) { return cmd.count(name) > 0; };
    if (passed("--experiment")) config.experiment = args.experiment;
    if (passed("--model")) config.model = args.model;
    if (passed("--qubits")) config.n_qubits = args.qubits;
    if (passed("--depth")) config.quantum_depth = args.depth;
    if (passed("--train-features")) config.train_features = args.train_features;
    if (passed("--test-features")) config.test_features = args.test_features;
    if (passed("--source-checkpoint")) config.source_checkpoint = args.source_checkpoint;
    if (passed("--truncate-to")) config.truncate_to = args.truncate_to;
    if (passed("--head-depths")) config.head_depths = args.head_depths;
    if (passed("--qq-total-depth")) config.qq_total_depth = args.qq_total_depth;
    if (passed("--qq-frozen-depth")) config.qq_frozen_depth = args.qq_frozen_depth;
    if (passed("--qq-pretrain-iterations"))
        config.qq_pretrain_iterations = args.qq_pretrain_iterations;
    if (passed("--iterations")) {
        config.train.iterations = args.iterations;
        config.train.epochs = 0;
    }
    if (passed("--epochs")) {
        config.train.epochs = args.epochs;
        if (!passed("--iterations")) config.train.iterations = 0;
    }
    if (passed("--batch-size")) config.train.batch_size = args.batch_size;
    if (passed("--learning-rate")) config.train.learning_rate = args.learning_rate;
    if (passed("--decay-factor")) config.train.decay_factor = args.decay_factor;
    if (passed("--decay-period")) config.train.decay_period = args.decay_period;
    if (passed("--eval-every")) config.train.eval_every = args.eval_every;
    if (args.track_best) config.train.track_best = true;
    if (args.no_track_best) config.train.track_best = false;
    if (passed("--n-train")) config.spirals.n_train = args.n_train;
    if (passed("--n-test")) config.spirals.n_test = args.n_test;
    if (passed("--turns")) config.spirals.turns = args.turns;
    if (passed("--noise")) config.spirals.noise_sigma = args.noise;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational-circuit training and transfer-learning experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::string out_dir = "out";
    app.add_option("--seed", seed, "run seed; every derived stream is a function of it");
    app.add_option("--out", out_dir, "output directory");

    // train
    TrainArgs targs;
    CLI::App* train = app.add_subcommand("train", "train a model and write metrics + checkpoint");
    train->add_option("--preset", targs.preset_name, "spirals | ants-bees | dogs-cats | planes-cars");
    train->add_option("--experiment", targs.experiment, "spirals | cq | qc | qq");
    train->add_option("--model", targs.model, "spirals model: dressed | baseline");
    train->add_option("--qubits", targs.qubits, "qubit count");
    train->add_option("--depth", targs.depth, "variational circuit depth");
    train->add_option("--train-features", targs.train_features, "training feature CSV");
    train->add_option("--test-features", targs.test_features, "test feature CSV");
    train->add_option("--source-checkpoint", targs.source_checkpoint, "qc: pre-trained circuit");
    train->add_option("--truncate-to", targs.truncate_to, "qc: layers kept in the extractor");
    train->add_option("--head-depths", targs.head_depths, "qc: classical head depths to sweep");
    train->add_option("--qq-total-depth", targs.qq_total_depth, "qq: total circuit depth");
    train->add_option("--qq-frozen-depth", targs.qq_frozen_depth, "qq: frozen prefix depth");
    train->add_option("--qq-pretrain-iterations", targs.qq_pretrain_iterations,
                      "qq: task-A training budget");
    train->add_option("--iterations", targs.iterations, "total optimizer steps");
    train->add_option("--epochs", targs.epochs, "epoch budget (alternative to --iterations)");
    train->add_option("--batch-size", targs.batch_size, "mini-batch size");
    train->add_option("--learning-rate", targs.learning_rate, "Adam learning rate");
    train->add_option("--decay-factor", targs.decay_factor, "learning-rate decay multiplier");
    train->add_option("--decay-period", targs.decay_period, "epochs between decays");
    train->add_option("--eval-every", targs.eval_every, "iterations between evaluations");
    train->add_flag("--track-best", targs.track_best, "checkpoint the best-accuracy epoch");
    train->add_flag("--no-track-best", targs.no_track_best, "checkpoint the final parameters");
    train->add_option("--n-train", targs.n_train, "spirals: training points");
    train->add_option("--n-test", targs.n_test, "spirals: test points");
    train->add_option("--turns", targs.turns, "spirals: revolutions");
    train->add_option("--noise", targs.noise, "spirals: jitter sigma");

    // eval
    std::string eval_checkpoint, eval_features, eval_preset;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint on a dataset");
    eval->add_option("--checkpoint", eval_checkpoint, "checkpoint JSON")->required();
    eval->add_option("--features", eval_features, "feature CSV to evaluate on");
    eval->add_option("--preset", eval_preset, "named dataset: spirals");

    // decision-region
    std::string region_checkpoint;
    double grid_min = -1.0, grid_max = 1.0;
    int grid_steps = 50;
    CLI::App* region =
        app.add_subcommand("decision-region", "evaluate predictions over a 2D lattice");
    region->add_option("--checkpoint", region_checkpoint, "checkpoint JSON")->required();
    region->add_option("--grid-min", grid_min, "lattice lower bound");
    region->add_option("--grid-max", grid_max, "lattice upper bound");
    region->add_option("--grid-steps", grid_steps, "lattice points per axis");

    // qq-compare
    qtl::QqCompareConfig qq;
    qq.train.iterations = 200;
    qq.train.batch_size = 8;
    qq.train.learning_rate = 0.05;
    CLI::App* compare =
        app.add_subcommand("qq-compare", "transfer vs from-scratch circuit training");
    compare->add_option("--qubits", qq.n_qubits, "qubit count");
    compare->add_option("--total-depth", qq.total_depth, "total circuit depth");
    compare->add_option("--frozen-depth", qq.frozen_depth, "frozen prefix depth");
    compare->add_option("--pretrain-iterations", qq.pretrain_iterations, "task-A budget");
    compare->add_option("--iterations", qq.train.iterations, "per-arm task-B budget");
    compare->add_option("--batch-size", qq.train.batch_size, "mini-batch size");
    compare->add_option("--learning-rate", qq.train.learning_rate, "Adam learning rate");
    compare->add_option("--seeds", qq.n_seeds, "number of seeds (median reported)");
    compare->add_option("--n-train", qq.n_train, "training samples per task");
    compare->add_option("--n-test", qq.n_test, "test samples per task");

    // gen-features
    int gf_width = 512, gf_train = 245, gf_test = 153;
    double gf_separation = 6.0, gf_sigma = 1.0;
    CLI::App* gen_features =
        app.add_subcommand("gen-features", "write synthetic feature blob CSVs");
    gen_features->add_option("--width", gf_width, "feature width");
    gen_features->add_option("--n-train", gf_train, "training samples");
    gen_features->add_option("--n-test", gf_test, "test samples");
    gen_features->add_option("--separation", gf_separation, "distance between class means");
    gen_features->add_option("--sigma", gf_sigma, "per-coordinate standard deviation");

    // gen-spirals
    qtl::SpiralsConfig spirals;
    CLI::App* gen_spirals = app.add_subcommand("gen-spirals", "write spiral dataset CSVs");
    gen_spirals->add_option("--n-train", spirals.n_train, "training points");
    gen_spirals->add_option("--n-test", spirals.n_test, "test points");
    gen_spirals->add_option("--turns", spirals.turns, "revolutions");
    gen_spirals->add_option("--noise", spirals.noise_sigma, "jitter sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (train->parsed()) {
            qtl::cmd_train(build_train_config(*train, targs, seed, out_dir));
        } else if (eval->parsed()) {
            std::string ref;
            if (!eval_features.empty()) {
                ref = eval_features;
            } else if (!eval_preset.empty()) {
                ref = "preset:" + eval_preset;
            } else {
                throw qtl::ConfigError("eval needs --features or --preset");
            }
            qtl::cmd_eval(eval_checkpoint, ref, seed, out_dir);
        } else if (region->parsed()) {
            qtl::cmd_decision_region(region_checkpoint, grid_min, grid_max, grid_steps, out_dir);
        } else if (compare->parsed()) {
            qq.seed = seed;
            qq.out_dir = out_dir;
            qtl::cmd_qq_compare(qq);
        } else if (gen_features->parsed()) {
            qtl::cmd_gen_features(gf_width, gf_train, gf_test, gf_separation, gf_sigma, seed,
                                  out_dir);
        } else if (gen_spirals->parsed()) {
            spirals.seed = seed;
            qtl::cmd_gen_spirals(spirals, out_dir);
        }
    } catch (const qtl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
