#ifndef KDDG_DISTILL_HPP_
#define KDDG_DISTILL_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "kddg/metrics.hpp"
#include "kddg/network.hpp"
#include "kddg/optimizer.hpp"
#include "kddg/synthdata.hpp"

namespace kddg {

enum class FilterKind { none, smooth, hard };

FilterKind filter_kind_from_string(const std::string& s);
std::string to_string(FilterKind k);

/// Confidence filter spec. eta is the threshold; kind=none ignores it.
struct FilterSpec {
    FilterKind kind = FilterKind::none;
    double eta = 0.999;

    void validate() const;
    static FilterSpec none() { return {FilterKind::none, 0.999}; }
    static FilterSpec smooth(double eta = 0.999) { return {FilterKind::smooth, eta}; }
    static FilterSpec hard(double eta = 0.999) { return {FilterKind::hard, eta}; }
};

struct DistillConfig {
    double tau = 2.0;
    double lambda_kd = 0.5;  // weight of the (filtered, gated) distillation term
    double lambda_ce = 0.5;  // weight of the (filtered) hard-label term
    FilterSpec filter;
    bool teacher_gate = true;

    void validate() const;
};

/// Down-weights the loss of a sample whose ground-truth-class confidence p
/// exceeds the threshold. smooth: 1 on [0,eta], ((eta+1-2p)/(1-eta))^2 on
/// (eta,(1+eta)/2], 0 above. hard: step at eta. none: 1.
double grad_filter_weight(double p, const FilterSpec& spec);

/// tau^2 * sum_i p_t^i(tau) * (-log p_s^i(tau)), both softened at tau.
double kd_loss_per_sample(const std::vector<double>& teacher_logits,
                          const std::vector<double>& student_logits, double tau);

/// Keep the distillation term only when the teacher's argmax equals the
/// ground truth. Ties break to the lowest class index.
bool teacher_gate(const std::vector<double>& teacher_probs, int y);

/// (1-alpha) one-hot plus alpha/K everywhere.
std::vector<double> label_smooth(int y, double alpha, int num_classes);

/// A minibatch view used by the batch losses.
struct Batch {
    Tensor2D x;                          // n x d
    std::vector<int> y;                  // ground-truth class per sample
    Tensor2D soft_targets;               // optional n x K CE targets (rows == 0 when unused)
    std::vector<double> sample_weights;  // optional per-sample weights (empty = all 1)
};

struct BatchLossReport {
    double total = 0.0;
    double kd_component = 0.0;  // batch mean of filtered+gated per-sample KD losses
    double ce_component = 0.0;  // batch mean of filtered per-sample CE losses
    std::vector<double> per_sample_weight;  // filter weight in [0,1]
    std::vector<char> gated_out;            // true where the gate zeroed the KD term
};

/// Batch objective: total = lambda_kd * kd_component + lambda_ce * ce_component.
/// The filter weight is the student's plain-softmax ground-truth confidence
/// run through grad_filter_weight, treated as a constant (it scales the
/// sample's gradient by exactly that factor). Teacher outputs are constants.
/// teacher may be null when lambda_kd is 0.
BatchLossReport kddg_batch_loss(const Batch& batch, const Network* teacher,
                                const Network& student, const DistillConfig& cfg);

/// Same objective; also accumulates d(total)/d(student params) into grad_out.
BatchLossReport kddg_batch_grad(const Batch& batch, const Network* teacher,
                                const Network& student, const DistillConfig& cfg,
                                ParamVector& grad_out);

/// Unfiltered, ungated student objective:
/// lambda1 * mean(hard-label CE) + lambda2 * mean(per-sample KD).
double vanilla_student_loss(const Batch& batch, const Network& teacher, const Network& student,
                            double tau, double lambda1, double lambda2);

/// Fraction of rows whose argmax logit equals the label.
double classification_accuracy(const Network& net, const Tensor2D& x, const std::vector<int>& y);

/// Plain-softmax probability of the ground-truth class, per row.
std::vector<double> ground_truth_confidences(const Network& net, const Tensor2D& x,
                                             const std::vector<int>& y);

struct TrainSettings {
    std::vector<std::size_t> hidden = {64, 32};
    int classes = 0;  // 0 = infer from the sources
    int epochs = 50;
    int batch_size = 64;
    OptimizerState opt = OptimizerState::sgd(0.05, 5e-4);
    std::uint64_t seed = 1;
    double smoothing_alpha = 0.0;  // >0 trains CE against smoothed labels
    bool record_snapshots = true;
    const Tensor2D* val_x = nullptr;  // optional per-epoch validation logging
    const std::vector<int>* val_y = nullptr;
};

/// Minibatch training of a student on the concatenated sources. teacher may
/// be null (plain filtered/unfiltered CE training); when present it must have
/// been trained beforehand and is used as a frozen soft-label source.
/// Reproducible bit-for-bit from the seed. The RNG stream is: init draws,
/// then one permutation per epoch.
std::pair<Network, MetricsLog> train_student(const std::vector<synth::DomainDataset>& sources,
                                             const Network* teacher, const DistillConfig& cfg,
                                             const TrainSettings& settings);

}  // namespace kddg

#endif  // KDDG_DISTILL_HPP_
