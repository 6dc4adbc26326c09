#ifndef KDDG_OPTIMIZER_HPP_
#define KDDG_OPTIMIZER_HPP_

#include <cstdint>
#include <string>

#include "kddg/network.hpp"

namespace kddg {

enum class OptKind { sgd, adam };
enum class LrSchedule { constant, cosine };

OptKind opt_kind_from_string(const std::string& s);
LrSchedule schedule_from_string(const std::string& s);

/// Optimizer state. Adam moments are allocated on the first step.
struct OptimizerState {
    OptKind kind = OptKind::sgd;
    double lr = 0.05;
    double weight_decay = 0.0;
    LrSchedule schedule = LrSchedule::constant;
    int total_epochs = 0;  // cosine horizon; required when schedule = cosine
    int epoch = 0;         // set by the training loop before each epoch
    std::int64_t step = 0;

    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    ParamVector m;
    ParamVector v;

    static OptimizerState sgd(double lr, double weight_decay = 0.0,
                              LrSchedule schedule = LrSchedule::constant,
                              int total_epochs = 0);
    static OptimizerState adam(double lr, double weight_decay = 0.0);

    /// Schedule-adjusted learning rate for the current epoch.
    double effective_lr() const;
};

/// One update in place. sgd: p -= lr*(g + wd*p). adam: bias-corrected moments,
/// weight decay added to the gradient. Increments the step counter.
void optimizer_step(OptimizerState& state, ParamVector& params, const ParamVector& grad);

}  // namespace kddg

#endif  // KDDG_OPTIMIZER_HPP_
