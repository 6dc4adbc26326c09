#include "kddg/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kddg/rng.hpp"

namespace kddg::synth {

namespace {

constexpr std::uint64_t kDomainSeedStride = 0x9e3779b97f4a7c15ULL;

std::uint64_t domain_seed(std::uint64_t base, int domain_id) {
    return base + kDomainSeedStride * static_cast<std::uint64_t>(domain_id + 1);
}

void class_mean(const BenchmarkSpec& spec, int k, double& mx, double& my) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(spec.classes);
    mx = spec.class_radius * std::cos(ang);
    my = spec.class_radius * std::sin(ang);
}

}  // namespace

void BenchmarkSpec::validate() const {
    if (num_domains < 2) throw std::invalid_argument("BenchmarkSpec: need at least 2 domains");
    if (classes < 2) throw std::invalid_argument("BenchmarkSpec: need at least 2 classes");
    if (dim < 2) throw std::invalid_argument("BenchmarkSpec: dim must be >= 2");
    if (samples_per_domain < classes)
        throw std::invalid_argument("BenchmarkSpec: fewer samples than classes");
    if (static_cast<int>(rotation_deg.size()) != num_domains)
        throw std::invalid_argument("BenchmarkSpec: one rotation angle per domain required");
    std::set<double> distinct(rotation_deg.begin(), rotation_deg.end());
    if (static_cast<int>(distinct.size()) != num_domains)
        throw std::invalid_argument("BenchmarkSpec: rotation angles must be distinct");
    if (!noise_scale.empty() && static_cast<int>(noise_scale.size()) != num_domains)
        throw std::invalid_argument("BenchmarkSpec: noise_scale must be empty or one per domain");
    if (signal_noise <= 0.0 || class_radius <= 0.0)
        throw std::invalid_argument("BenchmarkSpec: class_radius and signal_noise must be positive");
}

std::vector<DomainDataset> gen_domains(const BenchmarkSpec& spec) {
    spec.validate();
    const int n = spec.samples_per_domain;
    const int K = spec.classes;
    const int d = spec.dim;
    std::vector<DomainDataset> out;
    for (int dom = 0; dom < spec.num_domains; ++dom) {
        Rng rng(domain_seed(spec.seed, dom));
        std::vector<double> bias(d);
        for (double& b : bias) b = spec.bias_scale * rng.normal();
        const double theta = spec.rotation_deg[dom] * std::numbers::pi / 180.0;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double scale = spec.noise_scale.empty() ? 1.0 : spec.noise_scale[dom];

        DomainDataset ds;
        ds.domain_id = dom;
        ds.features = Tensor2D(n, d);
        ds.labels.resize(n);
        ds.sample_weights.assign(n, 1.0);
        // class-major, balanced: sample i belongs to class i / ceil(n/K) ... use
        // contiguous blocks of floor/ceil sizes so counts differ by at most 1
        int idx = 0;
        for (int k = 0; k < K; ++k) {
            const int count = n / K + (k < n % K ? 1 : 0);
            double mx, my;
            class_mean(spec, k, mx, my);
            for (int i = 0; i < count; ++i, ++idx) {
                double* row = ds.features.row_ptr(idx);
                const double z0 = mx + spec.signal_noise * rng.normal();
                const double z1 = my + spec.signal_noise * rng.normal();
                row[0] = ct * z0 - st * z1 + bias[0];
                row[1] = st * z0 + ct * z1 + bias[1];
                for (int j = 2; j < d; ++j) row[j] = scale * rng.normal() + bias[j];
                ds.labels[idx] = k;
            }
        }
        ds.original_labels = ds.labels;
        out.push_back(std::move(ds));
    }
    return out;
}

DomainDataset inject_label_noise(const DomainDataset& ds, double lambda, std::uint64_t seed) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("inject_label_noise: lambda must be in [0,1]");
    DomainDataset out = ds;
    const std::size_t n = ds.size();
    const auto m = static_cast<std::size_t>(std::llround(lambda * static_cast<double>(n)));
    if (m == 0) return out;
    int K = 0;
    for (int v : ds.original_labels) K = std::max(K, v + 1);
    if (K < 2) throw std::invalid_argument("inject_label_noise: need at least 2 classes");
    Rng rng(seed);
    std::vector<std::size_t> perm = rng.permutation(n);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t s = perm[i];
        const int orig = out.original_labels[s];
        int wrong = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(K - 1)));
        if (wrong >= orig) ++wrong;
        out.labels[s] = wrong;
    }
    return out;
}

namespace {

DomainDataset take_rows(const DomainDataset& ds, const std::vector<std::size_t>& rows) {
    DomainDataset out;
    out.domain_id = ds.domain_id;
    out.features = Tensor2D(rows.size(), ds.dim());
    out.labels.reserve(rows.size());
    out.original_labels.reserve(rows.size());
    out.sample_weights.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t r = rows[i];
        std::copy_n(ds.features.row_ptr(r), ds.dim(), out.features.row_ptr(i));
        out.labels.push_back(ds.labels[r]);
        out.original_labels.push_back(ds.original_labels[r]);
        out.sample_weights.push_back(ds.sample_weights.empty() ? 1.0 : ds.sample_weights[r]);
    }
    return out;
}

}  // namespace

std::pair<DomainDataset, DomainDataset> split_train_val(const DomainDataset& ds, double ratio,
                                                        std::uint64_t seed) {
    if (ratio <= 0.0 || ratio >= 1.0)
        throw std::invalid_argument("split_train_val: ratio must be in (0,1)");
    const std::size_t n = ds.size();
    const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    if (n_train == 0 || n_train == n)
        throw std::invalid_argument("split_train_val: degenerate split");
    Rng rng(seed);
    std::vector<std::size_t> perm = rng.permutation(n);
    std::vector<std::size_t> train_rows(perm.begin(), perm.begin() + n_train);
    std::vector<std::size_t> val_rows(perm.begin() + n_train, perm.end());
    return {take_rows(ds, train_rows), take_rows(ds, val_rows)};
}

std::vector<LodoSplit> lodo_splits(const std::vector<DomainDataset>& domains) {
    if (domains.size() < 2)
        throw std::invalid_argument("lodo_splits: need at least 2 domains");
    std::vector<LodoSplit> out;
    for (std::size_t t = 0; t < domains.size(); ++t) {
        LodoSplit s;
        s.target = domains[t];
        for (std::size_t j = 0; j < domains.size(); ++j)
            if (j != t) s.sources.push_back(domains[j]);
        out.push_back(std::move(s));
    }
    return out;
}

void save_dataset_csv(const DomainDataset& ds, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    const std::size_t d = ds.dim();
    for (std::size_t j = 0; j < d; ++j) os << "feature_" << j << ",";
    os << "label,original_label,domain_id\n";
    char buf[40];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double* row = ds.features.row_ptr(i);
        for (std::size_t j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            os << buf << ",";
        }
        os << ds.labels[i] << "," << ds.original_labels[i] << "," << ds.domain_id << "\n";
    }
}

DomainDataset load_dataset_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty dataset csv: " + path);
    std::size_t d = 0;
    {
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ','))
            if (col.rfind("feature_", 0) == 0) ++d;
    }
    if (d == 0) throw std::runtime_error("dataset csv has no feature columns: " + path);
    std::vector<double> feats;
    std::vector<int> labels, originals;
    int domain = 0;
    bool have_domain = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t j = 0; j < d; ++j) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row in " + path);
            feats.push_back(std::stod(cell));
        }
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row in " + path);
        labels.push_back(std::stoi(cell));
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row in " + path);
        originals.push_back(std::stoi(cell));
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row in " + path);
        const int dom = std::stoi(cell);
        if (have_domain && dom != domain)
            throw std::runtime_error("mixed domain ids in " + path);
        domain = dom;
        have_domain = true;
    }
    DomainDataset ds;
    ds.features = Tensor2D(labels.size(), d, std::move(feats));
    ds.labels = std::move(labels);
    ds.original_labels = std::move(originals);
    ds.domain_id = domain;
    ds.sample_weights.assign(ds.labels.size(), 1.0);
    return ds;
}

double nearest_centroid_base_accuracy(const BenchmarkSpec& spec, int n_eval, std::uint64_t seed) {
    spec.validate();
    if (n_eval < 1) throw std::invalid_argument("nearest_centroid_base_accuracy: n_eval >= 1");
    Rng rng(seed);
    std::size_t correct = 0;
    for (int i = 0; i < n_eval; ++i) {
        const int k = i % spec.classes;
        double mx, my;
        class_mean(spec, k, mx, my);
        const double z0 = mx + spec.signal_noise * rng.normal();
        const double z1 = my + spec.signal_noise * rng.normal();
        int best = 0;
        double best_d = 0.0;
        for (int j = 0; j < spec.classes; ++j) {
            double cx, cy;
            class_mean(spec, j, cx, cy);
            const double dist = (z0 - cx) * (z0 - cx) + (z1 - cy) * (z1 - cy);
            if (j == 0 || dist < best_d) {
                best = j;
                best_d = dist;
            }
        }
        if (best == k) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n_eval);
}

}  // namespace kddg::synth
