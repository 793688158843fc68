#include "qtl/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "qtl/rng.hpp"

namespace qtl {

namespace {

constexpr std::uint64_t kTrainTag = 0x7261696e;  // stream tags for data draws
constexpr std::uint64_t kTestTag = 0x74657374;

[[noreturn]] void format_error(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error("feature file " + path + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view token, const std::string& path, std::size_t line) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        format_error(path, line, "malformed value '" + std::string(token) + "'");
    }
    return value;
}

int parse_label(std::string_view token, const std::string& path, std::size_t line) {
    int value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        format_error(path, line, "label '" + std::string(token) + "' is not an integer");
    }
    if (value < 0) {
        format_error(path, line, "label must be non-negative");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

void Dataset::validate() const {
    if (static_cast<int>(labels.size()) != features.rows) {
        throw std::invalid_argument("dataset: label count must equal sample count");
    }
    if (n_classes < 1) {
        throw std::invalid_argument("dataset: n_classes must be positive");
    }
    for (int label : labels) {
        if (label < 0 || label >= n_classes) {
            throw std::invalid_argument("dataset: label out of range");
        }
    }
}

TrainTestSplit gen_spirals(const SpiralsConfig& config) {
    if (config.n_train < 1 || config.n_test < 1) {
        throw std::invalid_argument("gen_spirals: sample counts must be positive");
    }
    if (config.noise_sigma < 0.0) {
        throw std::invalid_argument("gen_spirals: noise_sigma must be non-negative");
    }

    const auto generate = [&](int count, std::uint64_t stream) {
        Rng rng(derive_seed(config.seed, stream));
        Dataset d;
        d.features = Matrix(count, 2);
        d.labels.resize(count);
        d.n_classes = 2;
        for (int i = 0; i < count; ++i) {
            const int c = i % 2;
            const double t = 0.05 + 0.95 * (1.0 - rng.uniform());  // (0.05, 1]
            const double angle = 2.0 * M_PI * config.turns * t + M_PI * c;
            d.features(i, 0) = t * std::cos(angle) + rng.normal(0.0, config.noise_sigma);
            d.features(i, 1) = t * std::sin(angle) + rng.normal(0.0, config.noise_sigma);
            d.labels[i] = c;
        }
        return d;
    };

    return {generate(config.n_train, kTrainTag), generate(config.n_test, kTestTag)};
}

TrainTestSplit gen_feature_blobs(int width, int n_train, int n_test, double separation,
                                 double sigma, std::uint64_t seed) {
    if (width < 1) throw std::invalid_argument("gen_feature_blobs: width must be >= 1");
    if (n_train < 1 || n_test < 1) {
        throw std::invalid_argument("gen_feature_blobs: sample counts must be positive");
    }
    if (separation < 0.0 || sigma < 0.0) {
        throw std::invalid_argument("gen_feature_blobs: separation and sigma must be >= 0");
    }

    // fixed random direction shared by train and test
    Rng direction_rng(derive_seed(seed, 0x646972));
    std::vector<double> u(width);
    double norm2 = 0.0;
    for (double& v : u) {
        v = direction_rng.normal();
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : u) v *= inv;

    const auto generate = [&](int count, std::uint64_t stream) {
        Rng rng(derive_seed(seed, stream));
        Dataset d;
        d.features = Matrix(count, width);
        d.labels.resize(count);
        d.n_classes = 2;
        for (int i = 0; i < count; ++i) {
            const int c = i % 2;
            const double sign = c == 0 ? -1.0 : 1.0;
            for (int j = 0; j < width; ++j) {
                d.features(i, j) = sign * 0.5 * separation * u[j] + rng.normal(0.0, sigma);
            }
            d.labels[i] = c;
        }
        return d;
    };

    return {generate(n_train, kTrainTag), generate(n_test, kTestTag)};
}

TrainTestSplit gen_quantum_task(int n_qubits, int n_train, int n_test, bool invert,
                                std::uint64_t seed) {
    if (n_qubits < 2) throw std::invalid_argument("gen_quantum_task: need at least 2 qubits");
    if (n_train < 1 || n_test < 1) {
        throw std::invalid_argument("gen_quantum_task: sample counts must be positive");
    }

    const auto generate = [&](int count, std::uint64_t stream) {
        Rng rng(derive_seed(seed, stream));
        Dataset d;
        d.features = Matrix(count, n_qubits);
        d.labels.resize(count);
        d.n_classes = 2;
        for (int i = 0; i < count; ++i) {
            double product = 1.0;
            for (int j = 0; j < n_qubits; ++j) {
                const double magnitude = rng.uniform(0.5, 1.0);
                const double value = rng.uniform() < 0.5 ? -magnitude : magnitude;
                d.features(i, j) = value;
                product *= value;
            }
            d.labels[i] = ((product > 0.0) != invert) ? 1 : 0;
        }
        return d;
    };

    return {generate(n_train, kTrainTag), generate(n_test, kTestTag)};
}

void save_feature_file(const Dataset& dataset, const std::string& path) {
    dataset.validate();
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << "label";
    for (int j = 0; j < dataset.width(); ++j) out << ",f" << j;
    out << "\n";
    char buffer[40];
    for (int i = 0; i < dataset.size(); ++i) {
        out << dataset.labels[i];
        for (int j = 0; j < dataset.width(); ++j) {
            std::snprintf(buffer, sizeof(buffer), "%.16e", dataset.features(i, j));
            out << ',' << buffer;
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

Dataset load_feature_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open feature file " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        format_error(path, 1, "empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    if (header.empty() || header[0] != "label") {
        format_error(path, 1, "header must start with 'label'");
    }
    const int width = static_cast<int>(header.size()) - 1;
    if (width < 1) {
        format_error(path, 1, "header declares no feature columns");
    }

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            format_error(path, line_no, "blank line");
        }
        const auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != width + 1) {
            format_error(path, line_no,
                         "expected " + std::to_string(width + 1) + " fields, got " +
                             std::to_string(fields.size()));
        }
        labels.push_back(parse_label(fields[0], path, line_no));
        for (int j = 1; j <= width; ++j) {
            values.push_back(parse_double(fields[j], path, line_no));
        }
    }
    if (labels.empty()) {
        format_error(path, line_no, "no data rows");
    }

    Dataset d;
    d.features.rows = static_cast<int>(labels.size());
    d.features.cols = width;
    d.features.data = std::move(values);
    d.labels = std::move(labels);
    d.n_classes = 0;
    for (int label : d.labels) d.n_classes = std::max(d.n_classes, label + 1);
    d.validate();
    return d;
}

std::vector<std::vector<int>> batches(const Dataset& dataset, int batch_size,
                                      std::uint64_t epoch_seed) {
    if (batch_size < 1) {
        throw std::invalid_argument("batches: batch_size must be >= 1");
    }
    Rng rng(epoch_seed);
    const std::vector<int> order = rng.permutation(dataset.size());
    std::vector<std::vector<int>> out;
    for (int start = 0; start < dataset.size(); start += batch_size) {
        const int end = std::min(start + batch_size, dataset.size());
        out.emplace_back(order.begin() + start, order.begin() + end);
    }
    return out;
}

}  // namespace qtl
