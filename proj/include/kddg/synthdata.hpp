#ifndef KDDG_SYNTHDATA_HPP_
#define KDDG_SYNTHDATA_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kddg/tensor.hpp"

namespace kddg::synth {

/// Labeled samples from one domain. original_labels keeps the pre-noise
/// labels so that accuracy can always be measured against clean truth.
struct DomainDataset {
    Tensor2D features;                // n x d
    std::vector<int> labels;          // training labels (possibly noisy)
    std::vector<int> original_labels; // clean labels
    int domain_id = 0;
    std::vector<double> sample_weights;  // default 1.0

    std::size_t size() const { return features.rows; }
    std::size_t dim() const { return features.cols; }
};

/// Multi-domain benchmark: one class-conditional Gaussian mixture in a 2-D
/// signal plane, embedded in `dim` dimensions. Each domain rotates the plane,
/// adds a domain bias, and carries its own distractor noise scale, so a
/// domain-invariant signal exists by construction while the distractor
/// coordinates leak domain identity.
struct BenchmarkSpec {
    int num_domains = 4;
    int classes = 4;
    int dim = 16;
    int samples_per_domain = 2000;
    std::vector<double> rotation_deg = {0.0, 25.0, 50.0, 75.0};
    double bias_scale = 1.0;             // amplitude of the per-domain bias vector
    std::vector<double> noise_scale;     // per-domain distractor scale; default 1.0 each
    double class_radius = 3.0;           // class means sit on this circle in the plane
    double signal_noise = 0.6;           // in-plane Gaussian spread per class
    std::uint64_t seed = 7;

    void validate() const;
};

std::vector<DomainDataset> gen_domains(const BenchmarkSpec& spec);

/// Relabels exactly round(lambda*n) samples (seeded choice) to a uniformly
/// drawn wrong class. Labels are fixed once; original_labels are preserved.
DomainDataset inject_label_noise(const DomainDataset& ds, double lambda, std::uint64_t seed);

std::pair<DomainDataset, DomainDataset> split_train_val(const DomainDataset& ds, double ratio,
                                                        std::uint64_t seed);

struct LodoSplit {
    std::vector<DomainDataset> sources;
    DomainDataset target;
};

/// Leave-one-domain-out: entry i holds target = domain i, sources = the rest.
std::vector<LodoSplit> lodo_splits(const std::vector<DomainDataset>& domains);

// CSV round-trip: header feature_0..feature_{d-1},label,original_label,domain_id.
void save_dataset_csv(const DomainDataset& ds, const std::string& path);
DomainDataset load_dataset_csv(const std::string& path);

/// Accuracy of a nearest-centroid rule fit on the signal plane, evaluated on
/// a fresh large sample of the base (untransformed) distribution. Used by the
/// tests as an upper-bound sanity oracle for the benchmark's separability.
double nearest_centroid_base_accuracy(const BenchmarkSpec& spec, int n_eval, std::uint64_t seed);

}  // namespace kddg::synth

#endif  // KDDG_SYNTHDATA_HPP_
