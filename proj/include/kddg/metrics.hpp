#ifndef KDDG_METRICS_HPP_
#define KDDG_METRICS_HPP_

#include <vector>

#include "kddg/network.hpp"

namespace kddg {

/// One entry per training epoch.
struct EpochRecord {
    int epoch = 0;
    double total_loss = 0.0;  // mean over the epoch's batches
    double kd_loss = 0.0;
    double ce_loss = 0.0;
    double source_val_acc = -1.0;  // -1 when no validation set was supplied
    double step_norm_accum = 0.0;  // sum of ||param step||_2 within the epoch
};

struct MetricsLog {
    std::vector<EpochRecord> epochs;
    /// w_0 (initial params) followed by one snapshot per epoch.
    std::vector<ParamVector> snapshots;
    double seconds_per_iteration = 0.0;
};

}  // namespace kddg

#endif  // KDDG_METRICS_HPP_
