#include "kddg/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kddg {

OptKind opt_kind_from_string(const std::string& s) {
    if (s == "sgd") return OptKind::sgd;
    if (s == "adam") return OptKind::adam;
    throw std::invalid_argument("unknown optimizer kind: " + s);
}

LrSchedule schedule_from_string(const std::string& s) {
    if (s == "constant") return LrSchedule::constant;
    if (s == "cosine") return LrSchedule::cosine;
    throw std::invalid_argument("unknown lr schedule: " + s);
}

OptimizerState OptimizerState::sgd(double lr, double weight_decay, LrSchedule schedule,
                                   int total_epochs) {
    if (lr <= 0.0) throw std::invalid_argument("sgd: learning rate must be positive");
    if (weight_decay < 0.0) throw std::invalid_argument("sgd: weight decay must be nonnegative");
    if (schedule == LrSchedule::cosine && total_epochs <= 0)
        throw std::invalid_argument("sgd: cosine schedule needs total_epochs");
    OptimizerState s;
    s.kind = OptKind::sgd;
    s.lr = lr;
    s.weight_decay = weight_decay;
    s.schedule = schedule;
    s.total_epochs = total_epochs;
    return s;
}

OptimizerState OptimizerState::adam(double lr, double weight_decay) {
    if (lr <= 0.0) throw std::invalid_argument("adam: learning rate must be positive");
    if (weight_decay < 0.0) throw std::invalid_argument("adam: weight decay must be nonnegative");
    OptimizerState s;
    s.kind = OptKind::adam;
    s.lr = lr;
    s.weight_decay = weight_decay;
    return s;
}

double OptimizerState::effective_lr() const {
    if (schedule == LrSchedule::constant) return lr;
    const double t = static_cast<double>(epoch) / static_cast<double>(total_epochs);
    return lr * 0.5 * (1.0 + std::cos(std::numbers::pi * t));
}

void optimizer_step(OptimizerState& state, ParamVector& params, const ParamVector& grad) {
    const std::size_t n = params.size();
    if (grad.size() != n)
        throw std::invalid_argument("optimizer_step: parameter/gradient shape mismatch");
    const double lr = state.effective_lr();
    if (state.kind == OptKind::sgd) {
        for (std::size_t i = 0; i < n; ++i)
            params[i] -= lr * (grad[i] + state.weight_decay * params[i]);
    } else {
        if (state.m.size() == 0) {
            state.m = ParamVector(n);
            state.v = ParamVector(n);
        }
        if (state.m.size() != n)
            throw std::invalid_argument("optimizer_step: moment shape mismatch");
        state.step += 1;
        const double b1 = state.beta1, b2 = state.beta2;
        const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
        const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
        for (std::size_t i = 0; i < n; ++i) {
            const double g = grad[i] + state.weight_decay * params[i];
            state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
            state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
            const double mhat = state.m[i] / bc1;
            const double vhat = state.v[i] / bc2;
            params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
        }
        return;
    }
    state.step += 1;
}

}  // namespace kddg
