#include "qtl/transfer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qtl {

namespace {

constexpr std::uint64_t kInitTagA = 0x71715f61;      // QQ pre-training init
constexpr std::uint64_t kInitTagFresh = 0x71715f62;  // fresh-layer init, both arms
constexpr std::uint64_t kInitTagHead = 0x68656164;   // classical/dressed head init

void require_scheme(const TransferPlan& plan, TransferScheme want) {
    if (plan.scheme != want) {
        throw std::invalid_argument(std::string("transfer plan: expected scheme ") +
                                    transfer_scheme_name(want) + ", got " +
                                    transfer_scheme_name(plan.scheme));
    }
}

}  // namespace

const char* transfer_scheme_name(TransferScheme scheme) {
    switch (scheme) {
        case TransferScheme::CQ: return "CQ";
        case TransferScheme::QC: return "QC";
        case TransferScheme::QQ: return "QQ";
    }
    return "?";
}

BareCircuitSpec truncate_quantum(const BareCircuitSpec& spec, int keep) {
    if (keep < 0 || keep > spec.depth()) {
        throw std::out_of_range("truncate_quantum: keep must be in [0, depth], got " +
                                std::to_string(keep));
    }
    Matrix weights(keep, spec.n_qubits);
    std::copy_n(spec.weights.data.begin(), weights.data.size(), weights.data.begin());
    return BareCircuitSpec(spec.n_qubits, std::move(weights));
}

BareClassifier compose_qq(const BareCircuitSpec& frozen, int trainable_depth, int n_classes,
                          Rng& rng) {
    if (trainable_depth < 0) {
        throw std::invalid_argument("compose_qq: trainable_depth must be >= 0");
    }
    const int total = frozen.depth() + trainable_depth;
    Matrix weights(total, frozen.n_qubits);
    std::copy(frozen.weights.data.begin(), frozen.weights.data.end(), weights.data.begin());
    const Matrix fresh = quantum_init(trainable_depth, frozen.n_qubits, rng);
    std::copy(fresh.data.begin(), fresh.data.end(),
              weights.data.begin() + frozen.weights.data.size());

    BareClassifier model;
    model.bare = BareCircuitSpec(frozen.n_qubits, std::move(weights));
    model.row_frozen.assign(total, 0);
    std::fill_n(model.row_frozen.begin(), frozen.depth(), 1);
    model.n_classes = n_classes;
    model.validate();
    return model;
}

ExperimentReport run_cq(const TransferPlan& plan) {
    require_scheme(plan, TransferScheme::CQ);
    plan.train_b.validate();
    plan.test_b.validate();
    if (plan.train_b.width() != plan.test_b.width()) {
        throw std::invalid_argument("run_cq: train/test feature widths differ (" +
                                    std::to_string(plan.train_b.width()) + " vs " +
                                    std::to_string(plan.test_b.width()) + ")");
    }

    Rng init(derive_seed(plan.init_seed, kInitTagHead));
    Model model = make_dressed(plan.train_b.width(), plan.n_qubits, plan.cq_quantum_depth,
                               plan.n_classes, init);

    ExperimentReport report;
    report.result = train(model, plan.train_b, plan.test_b, plan.train);
    report.train_accuracy = accuracy(model, plan.train_b);
    report.test_accuracy = report.result.final_accuracy;
    report.model = std::move(model);
    return report;
}

QcReport run_qc(const TransferPlan& plan) {
    require_scheme(plan, TransferScheme::QC);
    if (!plan.source.has_value()) {
        throw std::invalid_argument("run_qc: plan needs a source circuit");
    }
    plan.train_b.validate();
    plan.test_b.validate();

    QcReport report;
    report.extractor = truncate_quantum(*plan.source, plan.truncate_to);

    const auto extract = [&](const Dataset& data) {
        Dataset features;
        features.features = Matrix(data.size(), report.extractor.n_qubits);
        features.labels = data.labels;
        features.n_classes = data.n_classes;
        for (int i = 0; i < data.size(); ++i) {
            const std::vector<double> f = run_bare(report.extractor, data.features.row(i));
            std::copy(f.begin(), f.end(), features.features.row(i).begin());
        }
        return features;
    };
    report.train_features = extract(plan.train_b);
    report.test_features = extract(plan.test_b);

    for (const int depth : plan.qc_head_depths) {
        if (depth < 1) {
            throw std::invalid_argument("run_qc: head depth must be >= 1");
        }
        // L(nq -> classes) preceded by depth-1 hidden tanh layers at width nq
        std::vector<int> sizes(depth + 1, report.extractor.n_qubits);
        sizes.back() = plan.n_classes;

        Rng init(derive_seed(plan.init_seed, kInitTagHead + depth));
        Model head = make_baseline(sizes, init);

        QcHeadReport row;
        row.head_depth = depth;
        row.result = train(head, report.train_features, report.test_features, plan.train);
        row.head = std::get<ClassicalBaseline>(head);
        report.heads.push_back(std::move(row));
    }
    return report;
}

QqComparison run_qq(const TransferPlan& plan) {
    require_scheme(plan, TransferScheme::QQ);
    plan.train_a.validate();
    plan.test_a.validate();
    plan.train_b.validate();
    plan.test_b.validate();
    if (plan.truncate_to < 0 || plan.truncate_to > plan.qq_total_depth) {
        throw std::invalid_argument("run_qq: frozen depth must be in [0, total depth]");
    }
    const int pretrain_depth =
        plan.qq_pretrain_depth < 0 ? plan.qq_total_depth : plan.qq_pretrain_depth;
    if (pretrain_depth < plan.truncate_to) {
        throw std::invalid_argument("run_qq: network A must be at least as deep as A'");
    }

    QqComparison out;

    // (a) pre-train network A on task A
    Rng init_a(derive_seed(plan.init_seed, kInitTagA));
    Model pretrained = make_bare_classifier(plan.n_qubits, pretrain_depth, plan.n_classes, init_a);
    out.pretrain = train(pretrained, plan.train_a, plan.test_a, plan.pretrain);

    // (b) truncate, freeze, append fresh trainable layers, train on task B
    out.frozen_prefix =
        truncate_quantum(std::get<BareClassifier>(pretrained).bare, plan.truncate_to);
    Rng fresh_b(derive_seed(plan.init_seed, kInitTagFresh));
    Model transfer_model = compose_qq(out.frozen_prefix, plan.qq_total_depth - plan.truncate_to,
                                      plan.n_classes, fresh_b);
    out.transfer = train(transfer_model, plan.train_b, plan.test_b, plan.train);

    // (c) equal-total-depth circuit from scratch on task B; same init stream
    // protocol for its fresh layers, same shuffle seed, so both arms see
    // identical batch sequences
    Rng fresh_c(derive_seed(plan.init_seed, kInitTagFresh));
    Model scratch_model =
        make_bare_classifier(plan.n_qubits, plan.qq_total_depth, plan.n_classes, fresh_c);
    out.scratch = train(scratch_model, plan.train_b, plan.test_b, plan.train);

    out.transfer_model = std::get<BareClassifier>(std::move(transfer_model));
    out.scratch_model = std::get<BareClassifier>(std::move(scratch_model));
    return out;
}

}  // namespace qtl
