#ifndef KDDG_NETWORK_HPP_
#define KDDG_NETWORK_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kddg/rng.hpp"
#include "kddg/tensor.hpp"

namespace kddg {

/// Flattened parameters (or gradient) of a Network, in layer declaration
/// order: weight rows, then bias, for each layer.
struct ParamVector {
    std::vector<double> values;

    ParamVector() = default;
    explicit ParamVector(std::size_t n) : values(n, 0.0) {}
    explicit ParamVector(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    double l2_norm() const;
    bool all_finite() const;
};

/// ||a - b||_2. Sizes must match.
double l2_distance(const ParamVector& a, const ParamVector& b);

enum class Activation { relu, identity };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

struct DenseLayer {
    Tensor2D weight;            // out_dim x in_dim
    std::vector<double> bias;   // out_dim
    Activation act = Activation::identity;

    std::size_t in_dim() const { return weight.cols; }
    std::size_t out_dim() const { return weight.rows; }
};

/// Per-layer activations kept by a forward pass, for reuse by backward.
struct ForwardTrace {
    std::vector<Tensor2D> pre;   // pre-activation per layer
    std::vector<Tensor2D> post;  // post-activation per layer; post.back() are the logits
    const Tensor2D* input = nullptr;

    const Tensor2D& logits() const { return post.back(); }
};

/// Stack of dense layers with reverse-mode gradients. Double precision,
/// value semantics, deterministic.
class Network {
public:
    Network() = default;
    explicit Network(std::vector<DenseLayer> layers);

    /// Glorot-uniform init: weights ~ U(+-sqrt(6/(fan_in+fan_out))), biases zero.
    static Network glorot(const std::vector<std::size_t>& dims,
                          const std::vector<Activation>& acts, Rng& rng);

    std::size_t layer_count() const { return layers_.size(); }
    const std::vector<DenseLayer>& layers() const { return layers_; }
    std::size_t input_dim() const { return layers_.front().in_dim(); }
    std::size_t output_dim() const { return layers_.back().out_dim(); }
    std::size_t param_count() const { return param_count_; }

    ParamVector params() const;
    void set_params(const ParamVector& p);

    Tensor2D forward(const Tensor2D& inputs) const;
    ForwardTrace forward_trace(const Tensor2D& inputs) const;

    /// d(loss)/d(params) given the trace and d(loss)/d(logits).
    /// Throws a numerical error naming the layer if a non-finite value appears.
    ParamVector backward(const ForwardTrace& trace, const Tensor2D& dlogits) const;

private:
    std::vector<DenseLayer> layers_;
    std::size_t param_count_ = 0;
};

struct LogitLoss {
    double value = 0.0;
    Tensor2D dlogits;  // same shape as the logits
};

using LossClosure = std::function<LogitLoss(const Tensor2D& logits)>;

/// Gradient of a scalar loss of the logits w.r.t. the network parameters.
/// The network is not mutated.
ParamVector grad(const Network& net, const Tensor2D& inputs, const LossClosure& loss);

/// Loss value only (shared by the finite-difference oracles in the tests).
double loss_value(const Network& net, const Tensor2D& inputs, const LossClosure& loss);

/// Temperature softmax with max-subtraction. tau must be positive.
std::vector<double> softmax_temp(const std::vector<double>& logits, double tau);
void softmax_temp_inplace(const double* logits, std::size_t n, double tau, double* out);

/// Lowest index attaining the maximum.
std::size_t argmax(const double* v, std::size_t n);
std::size_t argmax(const std::vector<double>& v);

// Checkpoint format (versioned, textual, stable):
//   kddg-checkpoint v1
//   layers <L>
//   layer <in> <out> <relu|identity>   (L lines)
//   params <count>
//   <value>                            (count lines, %.17g round-trip exact)
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);
void write_network(const Network& net, std::ostream& os);
Network read_network(std::istream& is);

}  // namespace kddg

#endif  // KDDG_NETWORK_HPP_
