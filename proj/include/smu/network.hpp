#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smu/activation.hpp"
#include "smu/errors.hpp"
#include "smu/random.hpp"
#include "smu/tensor.hpp"

namespace smu {

/// Mutable view of one trainable parameter block and its gradient.
struct ParamView {
  std::string name;
  std::span<double> value;
  std::span<double> grad;
};

/// y = x W^T + b, with W of shape (out, in).
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out)
      : weights_(out, in), bias_(out, 0.0), grad_weights_(out, in), grad_bias_(out, 0.0) {}

  std::size_t input_size() const { return weights_.cols(); }
  std::size_t output_size() const { return weights_.rows(); }

  Tensor2D& weights() { return weights_; }
  const Tensor2D& weights() const { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }
  Tensor2D& grad_weights() { return grad_weights_; }
  const Tensor2D& grad_weights() const { return grad_weights_; }
  std::vector<double>& grad_bias() { return grad_bias_; }
  const std::vector<double>& grad_bias() const { return grad_bias_; }
  const std::optional<Tensor2D>& cached_input() const { return cached_input_; }

  Tensor2D forward(const Tensor2D& x) {
    if (x.cols() != input_size())
      throw ConfigError("dense layer expects " + std::to_string(input_size()) + " inputs, got " +
                        std::to_string(x.cols()));
    Tensor2D y(x.rows(), output_size());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto xr = x.row(r);
      for (std::size_t o = 0; o < output_size(); ++o) {
        auto w = weights_.row(o);
        double acc = bias_[o];
        for (std::size_t i = 0; i < xr.size(); ++i) acc += w[i] * xr[i];
        y(r, o) = acc;
      }
    }
    cached_input_ = x;
    return y;
  }

  /// Overwrites the weight and bias gradients; returns d loss / d input.
  Tensor2D backward(const Tensor2D& dy) {
    if (!cached_input_) throw StateError("dense layer: backward called before forward");
    const Tensor2D& x = *cached_input_;
    if (dy.rows() != x.rows() || dy.cols() != output_size()) throw ConfigError("dense layer: gradient shape mismatch");
    grad_weights_.fill(0.0);
    std::fill(grad_bias_.begin(), grad_bias_.end(), 0.0);
    Tensor2D dx(x.rows(), input_size());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto xr = x.row(r);
      auto dxr = dx.row(r);
      for (std::size_t o = 0; o < output_size(); ++o) {
        const double g = dy(r, o);
        grad_bias_[o] += g;
        auto gw = grad_weights_.row(o);
        auto w = weights_.row(o);
        for (std::size_t i = 0; i < xr.size(); ++i) {
          gw[i] += g * xr[i];
          dxr[i] += g * w[i];
        }
      }
    }
    return dx;
  }

  bool parameters_finite() const {
    return weights_.all_finite() && std::all_of(bias_.begin(), bias_.end(), [](double v) { return std::isfinite(v); });
  }

 private:
  Tensor2D weights_;
  std::vector<double> bias_;
  Tensor2D grad_weights_;
  std::vector<double> grad_bias_;
  std::optional<Tensor2D> cached_input_;
};

/// Elementwise activation with one alpha and one mu shared by every unit.
class ActivationLayer {
 public:
  ActivationLayer() = default;
  explicit ActivationLayer(ActivationKind kind) : kind_(kind) {}

  const ActivationKind& kind() const { return kind_; }
  SmuParams& params() { return kind_.params; }
  const SmuParams& params() const { return kind_.params; }

  bool mu_trainable() const { return uses_mu(kind_.type) && kind_.params.mu_trainable; }
  bool alpha_trainable() const {
    return (uses_mu(kind_.type) || kind_.type == ActivationType::kPrelu) && kind_.params.alpha_trainable;
  }

  double grad_mu() const { return grad_mu_; }
  double grad_alpha() const { return grad_alpha_; }
  double& grad_mu_ref() { return grad_mu_; }
  double& grad_alpha_ref() { return grad_alpha_; }
  const std::optional<Tensor2D>& cached_preactivation() const { return cached_; }

  Tensor2D forward(const Tensor2D& z) {
    Tensor2D y(z.rows(), z.cols());
    auto in = z.data();
    auto out = y.data();
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = evaluate(kind_, in[i]);
    cached_ = z;
    return y;
  }

  /// Returns d loss / d preactivation and sets the mu / alpha gradients to
  /// sum(dy * df/dmu) and sum(dy * df/dalpha). Frozen parameters get 0.
  Tensor2D backward(const Tensor2D& dy) {
    if (!cached_) throw StateError("activation layer: backward called before forward");
    const Tensor2D& z = *cached_;
    if (dy.rows() != z.rows() || dy.cols() != z.cols()) throw ConfigError("activation layer: gradient shape mismatch");
    Tensor2D dz(z.rows(), z.cols());
    auto zin = z.data();
    auto g = dy.data();
    auto out = dz.data();
    const bool want_mu = mu_trainable();
    const bool want_alpha = alpha_trainable();
    double gm = 0.0;
    double ga = 0.0;
    for (std::size_t i = 0; i < zin.size(); ++i) {
      out[i] = g[i] * derivative(kind_, zin[i]);
      if (want_mu) gm += g[i] * derivative_mu(kind_, zin[i]);
      if (want_alpha) ga += g[i] * derivative_alpha(kind_, zin[i]);
    }
    grad_mu_ = gm;
    grad_alpha_ = ga;
    return dz;
  }

 private:
  ActivationKind kind_{};
  double grad_mu_ = 0.0;
  double grad_alpha_ = 0.0;
  std::optional<Tensor2D> cached_;
};

/// Multi-layer perceptron: dense, activation, dense, activation, ..., dense.
/// Every hidden layer gets its own copy of the activation, hence its own mu.
class Network {
 public:
  Network() = default;

  /// `sizes` = {inputs, hidden..., outputs}. Weights are He-uniform,
  /// U(-sqrt(6 / fan_in), sqrt(6 / fan_in)), drawn layer by layer in row-major
  /// order from a stream of `seed`; biases start at 0. The draw depends only
  /// on (sizes, seed), never on the activation.
  static Network mlp(std::span<const std::size_t> sizes, const ActivationKind& activation, std::uint64_t seed) {
    if (sizes.size() < 2) throw ConfigError("network needs at least an input and an output size");
    for (std::size_t s : sizes)
      if (s == 0) throw ConfigError("layer sizes must be positive");
    Network net;
    Rng rng(derive_seed(seed, kInitStream));
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      DenseLayer d(sizes[l], sizes[l + 1]);
      const double limit = std::sqrt(6.0 / static_cast<double>(sizes[l]));
      for (double& w : d.weights().data()) w = rng.uniform(-limit, limit);
      net.dense_.push_back(std::move(d));
      if (l + 2 < sizes.size()) net.activations_.emplace_back(activation);
    }
    return net;
  }

  static constexpr std::uint64_t kInitStream = 2;

  std::size_t input_size() const { return dense_.front().input_size(); }
  std::size_t output_size() const { return dense_.back().output_size(); }

  std::vector<DenseLayer>& dense_layers() { return dense_; }
  const std::vector<DenseLayer>& dense_layers() const { return dense_; }
  std::vector<ActivationLayer>& activation_layers() { return activations_; }
  const std::vector<ActivationLayer>& activation_layers() const { return activations_; }

  Tensor2D forward(const Tensor2D& batch) {
    if (dense_.empty()) throw StateError("network has no layers");
    if (batch.cols() != input_size())
      throw ConfigError("batch has " + std::to_string(batch.cols()) + " columns, network expects " +
                        std::to_string(input_size()));
    Tensor2D h = dense_[0].forward(batch);
    for (std::size_t l = 0; l < activations_.size(); ++l) {
      h = activations_[l].forward(h);
      h = dense_[l + 1].forward(h);
    }
    forward_rows_ = batch.rows();
    return h;
  }

  /// Backpropagates d loss / d logits through every layer.
  void backward(const Tensor2D& logit_grads) {
    if (!forward_rows_) throw StateError("network: backward called before forward");
    if (logit_grads.rows() != *forward_rows_ || logit_grads.cols() != output_size())
      throw ConfigError("network: logit gradient shape does not match last forward");
    Tensor2D g = dense_.back().backward(logit_grads);
    for (std::size_t l = activations_.size(); l-- > 0;) {
      g = activations_[l].backward(g);
      g = dense_[l].backward(g);
    }
  }

  /// Trainable parameters in a fixed order: for each dense layer its weight
  /// then bias, followed by that layer's activation mu and alpha when trainable.
  std::vector<ParamView> parameters() {
    std::vector<ParamView> out;
    for (std::size_t l = 0; l < dense_.size(); ++l) {
      auto& d = dense_[l];
      const std::string p = "layer" + std::to_string(l);
      out.push_back({p + ".weight", d.weights().data(), d.grad_weights().data()});
      out.push_back({p + ".bias", d.bias(), d.grad_bias()});
      if (l < activations_.size()) {
        auto& a = activations_[l];
        const std::string q = "act" + std::to_string(l);
        if (a.mu_trainable()) out.push_back({q + ".mu", {&a.params().mu, 1}, {&a.grad_mu_ref(), 1}});
        if (a.alpha_trainable()) out.push_back({q + ".alpha", {&a.params().alpha, 1}, {&a.grad_alpha_ref(), 1}});
      }
    }
    return out;
  }

  std::size_t parameter_count() {
    std::size_t n = 0;
    for (const auto& p : parameters()) n += p.value.size();
    return n;
  }

  std::vector<double> mus() const {
    std::vector<double> m;
    for (const auto& a : activations_) m.push_back(a.params().mu);
    return m;
  }

  /// Name of the first layer, in forward order, holding a non-finite
  /// parameter; empty when all are finite.
  std::string first_nonfinite_layer() const {
    for (std::size_t l = 0; l < dense_.size(); ++l) {
      if (!dense_[l].parameters_finite()) return "layer" + std::to_string(l);
      if (l < activations_.size()) {
        const auto& p = activations_[l].params();
        if (!std::isfinite(p.mu) || !std::isfinite(p.alpha)) return "act" + std::to_string(l);
      }
    }
    return {};
  }

 private:
  std::vector<DenseLayer> dense_;
  std::vector<ActivationLayer> activations_;
  std::optional<std::size_t> forward_rows_;
};

struct LossResult {
  double loss = 0.0;
  Tensor2D logit_grads;
};

/// Mean softmax cross-entropy over the batch; gradients are
/// (softmax - onehot) / batch_size. Uses max-subtracted log-sum-exp.
inline LossResult softmax_cross_entropy(const Tensor2D& logits, std::span<const std::size_t> labels) {
  if (labels.size() != logits.rows()) throw ConfigError("softmax_cross_entropy: label count != batch rows");
  if (logits.rows() == 0) throw ConfigError("softmax_cross_entropy: empty batch");
  LossResult res{0.0, Tensor2D(logits.rows(), logits.cols())};
  const double inv_n = 1.0 / static_cast<double>(logits.rows());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    if (labels[r] >= logits.cols()) throw ConfigError("softmax_cross_entropy: label out of range");
    auto z = logits.row(r);
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    const double lse = m + std::log(sum);
    res.loss += lse - z[labels[r]];
    auto g = res.logit_grads.row(r);
    for (std::size_t c = 0; c < z.size(); ++c) g[c] = std::exp(z[c] - lse) * inv_n;
    g[labels[r]] -= inv_n;
  }
  res.loss *= inv_n;
  return res;
}

/// Index of the largest logit per row; ties go to the lowest index.
inline std::vector<std::size_t> argmax_rows(const Tensor2D& logits) {
  std::vector<std::size_t> out(logits.rows());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto z = logits.row(r);
    out[r] = static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
  }
  return out;
}

}  // namespace smu
