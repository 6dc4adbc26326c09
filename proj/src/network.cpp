#include "kddg/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kddg {

double ParamVector::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

bool ParamVector::all_finite() const {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

double l2_distance(const ParamVector& a, const ParamVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("l2_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "identity") return Activation::identity;
    throw std::invalid_argument("unknown activation: " + s);
}

std::string to_string(Activation a) {
    return a == Activation::relu ? "relu" : "identity";
}

Network::Network(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("Network: no layers");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& L = layers_[l];
        if (L.weight.rows == 0 || L.weight.cols == 0)
            throw std::invalid_argument("Network: empty layer " + std::to_string(l));
        if (L.bias.size() != L.out_dim())
            throw std::invalid_argument("Network: bias size mismatch in layer " + std::to_string(l));
        if (l > 0 && L.in_dim() != layers_[l - 1].out_dim())
            throw std::invalid_argument("Network: dimension chain broken at layer " + std::to_string(l));
        param_count_ += L.weight.data.size() + L.bias.size();
    }
}

Network Network::glorot(const std::vector<std::size_t>& dims,
                        const std::vector<Activation>& acts, Rng& rng) {
    if (dims.size() < 2) throw std::invalid_argument("Network::glorot: need at least one layer");
    if (acts.size() != dims.size() - 1)
        throw std::invalid_argument("Network::glorot: one activation per layer required");
    std::vector<DenseLayer> layers;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        DenseLayer L;
        L.weight = Tensor2D(dims[l + 1], dims[l]);
        L.bias.assign(dims[l + 1], 0.0);
        L.act = acts[l];
        const double bound = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
        for (double& w : L.weight.data) w = rng.uniform(-bound, bound);
        layers.push_back(std::move(L));
    }
    return Network(std::move(layers));
}

ParamVector Network::params() const {
    ParamVector p;
    p.values.reserve(param_count_);
    for (const auto& L : layers_) {
        p.values.insert(p.values.end(), L.weight.data.begin(), L.weight.data.end());
        p.values.insert(p.values.end(), L.bias.begin(), L.bias.end());
    }
    return p;
}

void Network::set_params(const ParamVector& p) {
    if (p.size() != param_count_)
        throw std::invalid_argument("Network::set_params: size mismatch");
    std::size_t off = 0;
    for (auto& L : layers_) {
        std::copy_n(p.values.begin() + off, L.weight.data.size(), L.weight.data.begin());
        off += L.weight.data.size();
        std::copy_n(p.values.begin() + off, L.bias.size(), L.bias.begin());
        off += L.bias.size();
    }
}

namespace {

void apply_activation(Tensor2D& t, Activation a) {
    if (a == Activation::relu) {
        for (double& v : t.data) v = v > 0.0 ? v : 0.0;
    }
}

Tensor2D layer_affine(const DenseLayer& L, const Tensor2D& x) {
    Tensor2D z = matmul_nt(x, L.weight);  // n x out
    for (std::size_t i = 0; i < z.rows; ++i) {
        double* row = z.row_ptr(i);
        for (std::size_t j = 0; j < z.cols; ++j) row[j] += L.bias[j];
    }
    return z;
}

}  // namespace

Tensor2D Network::forward(const Tensor2D& inputs) const {
    if (inputs.cols != input_dim())
        throw std::invalid_argument("Network::forward: input dimension mismatch");
    Tensor2D a = inputs;
    for (const auto& L : layers_) {
        a = layer_affine(L, a);
        apply_activation(a, L.act);
    }
    return a;
}

ForwardTrace Network::forward_trace(const Tensor2D& inputs) const {
    if (inputs.cols != input_dim())
        throw std::invalid_argument("Network::forward_trace: input dimension mismatch");
    ForwardTrace tr;
    tr.input = &inputs;
    const Tensor2D* cur = &inputs;
    for (const auto& L : layers_) {
        tr.pre.push_back(layer_affine(L, *cur));
        Tensor2D post = tr.pre.back();
        apply_activation(post, L.act);
        tr.post.push_back(std::move(post));
        cur = &tr.post.back();
    }
    return tr;
}

ParamVector Network::backward(const ForwardTrace& trace, const Tensor2D& dlogits) const {
    const std::size_t L = layers_.size();
    if (trace.post.size() != L || trace.input == nullptr)
        throw std::invalid_argument("Network::backward: trace does not match network");
    if (!dlogits.same_shape(trace.post.back()))
        throw std::invalid_argument("Network::backward: dlogits shape mismatch");

    ParamVector g(param_count_);
    // offsets of each layer's weight block in the flat vector
    std::vector<std::size_t> offs(L);
    std::size_t off = 0;
    for (std::size_t l = 0; l < L; ++l) {
        offs[l] = off;
        off += layers_[l].weight.data.size() + layers_[l].bias.size();
    }

    Tensor2D da = dlogits;
    for (std::size_t li = L; li-- > 0;) {
        const DenseLayer& layer = layers_[li];
        Tensor2D dz = std::move(da);
        if (layer.act == Activation::relu) {
            const Tensor2D& pre = trace.pre[li];
            for (std::size_t i = 0; i < dz.data.size(); ++i)
                if (pre.data[i] <= 0.0) dz.data[i] = 0.0;
        }
        for (double v : dz.data)
            if (!std::isfinite(v))
                throw std::runtime_error("Network::backward: non-finite gradient at layer " +
                                         std::to_string(li));
        const Tensor2D& a_prev = li == 0 ? *trace.input : trace.post[li - 1];
        Tensor2D dw = matmul_tn(dz, a_prev);  // out x in
        std::copy(dw.data.begin(), dw.data.end(), g.values.begin() + offs[li]);
        double* db = g.values.data() + offs[li] + dw.data.size();
        for (std::size_t i = 0; i < dz.rows; ++i) {
            const double* row = dz.row_ptr(i);
            for (std::size_t j = 0; j < dz.cols; ++j) db[j] += row[j];
        }
        if (li > 0) da = matmul(dz, layer.weight);  // n x in
    }
    return g;
}

ParamVector grad(const Network& net, const Tensor2D& inputs, const LossClosure& loss) {
    ForwardTrace tr = net.forward_trace(inputs);
    for (std::size_t l = 0; l < tr.post.size(); ++l)
        for (double v : tr.post[l].data)
            if (!std::isfinite(v))
                throw std::runtime_error("grad: non-finite activation at layer " + std::to_string(l));
    LogitLoss ll = loss(tr.logits());
    if (!std::isfinite(ll.value))
        throw std::runtime_error("grad: non-finite loss value");
    return net.backward(tr, ll.dlogits);
}

double loss_value(const Network& net, const Tensor2D& inputs, const LossClosure& loss) {
    return loss(net.forward(inputs)).value;
}

void softmax_temp_inplace(const double* logits, std::size_t n, double tau, double* out) {
    if (tau <= 0.0) throw std::invalid_argument("softmax_temp: tau must be positive");
    if (n == 0) throw std::invalid_argument("softmax_temp: empty logits");
    double mx = logits[0];
    for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, logits[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp((logits[i] - mx) / tau);
        sum += out[i];
    }
    for (std::size_t i = 0; i < n; ++i) out[i] /= sum;
}

std::vector<double> softmax_temp(const std::vector<double>& logits, double tau) {
    std::vector<double> out(logits.size());
    softmax_temp_inplace(logits.data(), logits.size(), tau, out.data());
    return out;
}

std::size_t argmax(const double* v, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

std::size_t argmax(const std::vector<double>& v) { return argmax(v.data(), v.size()); }

void write_network(const Network& net, std::ostream& os) {
    os << "kddg-checkpoint v1\n";
    os << "layers " << net.layer_count() << "\n";
    for (const auto& L : net.layers())
        os << "layer " << L.in_dim() << " " << L.out_dim() << " " << to_string(L.act) << "\n";
    ParamVector p = net.params();
    os << "params " << p.size() << "\n";
    char buf[40];
    for (double v : p.values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf << "\n";
    }
}

Network read_network(std::istream& is) {
    std::string magic, version;
    is >> magic >> version;
    if (magic != "kddg-checkpoint" || version != "v1")
        throw std::runtime_error("checkpoint: bad magic or version");
    std::string key;
    std::size_t nlayers = 0;
    is >> key >> nlayers;
    if (key != "layers" || nlayers == 0) throw std::runtime_error("checkpoint: bad layer count");
    std::vector<DenseLayer> layers;
    for (std::size_t l = 0; l < nlayers; ++l) {
        std::size_t in = 0, out = 0;
        std::string act;
        is >> key >> in >> out >> act;
        if (key != "layer" || in == 0 || out == 0)
            throw std::runtime_error("checkpoint: bad layer header");
        DenseLayer L;
        L.weight = Tensor2D(out, in);
        L.bias.assign(out, 0.0);
        L.act = activation_from_string(act);
        layers.push_back(std::move(L));
    }
    Network net(std::move(layers));
    std::size_t count = 0;
    is >> key >> count;
    if (key != "params" || count != net.param_count())
        throw std::runtime_error("checkpoint: parameter count mismatch");
    ParamVector p(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(is >> p.values[i])) throw std::runtime_error("checkpoint: truncated parameters");
    }
    net.set_params(p);
    return net;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    write_network(net, os);
}

Network load_network(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    return read_network(is);
}

}  // namespace kddg
