#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "smu/dataset.hpp"
#include "smu/errors.hpp"
#include "smu/format.hpp"
#include "smu/network.hpp"
#include "smu/optimizer.hpp"
#include "smu/random.hpp"

namespace smu {

enum class Preset { kClassification, kDetection };

inline Preset parse_preset(std::string_view s) {
  if (s == "classification") return Preset::kClassification;
  if (s == "detection" || s == "segmentation") return Preset::kDetection;
  throw ConfigError("unknown preset '" + std::string(s) + "'");
}

inline std::string_view to_string(Preset p) {
  return p == Preset::kClassification ? "classification" : "detection";
}

/// Fixed alpha and initial trainable mu for a task preset.
///   classification: alpha 0.25, mu0 1.0 (SMU) or 4.352665993287951e-09 (SMU-1)
///   detection:      alpha 0.01, mu0 2.5 (SMU) or 4.332461424154261e-09 (SMU-1)
inline SmuParams preset_params(Preset preset, ActivationType type) {
  const bool sqrt_family = type == ActivationType::kSmu1;
  SmuParams p;
  p.alpha_trainable = false;
  p.mu_trainable = true;
  if (preset == Preset::kClassification) {
    p.alpha = 0.25;
    p.mu = sqrt_family ? 4.352665993287951e-09 : 1.0;
  } else {
    p.alpha = 0.01;
    p.mu = sqrt_family ? 4.332461424154261e-09 : 2.5;
  }
  return p;
}

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 64;
  double learning_rate = 0.05;
  OptimizerType optimizer = OptimizerType::kMomentum;
  std::uint64_t seed = 0;
  Preset preset = Preset::kClassification;
};

/// epochs >= 1, batch_size >= 1, finite learning_rate >= 0. A zero rate is
/// accepted so a run can be checked to leave parameters untouched.
inline void validate(const TrainConfig& c) {
  if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (c.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!std::isfinite(c.learning_rate) || c.learning_rate < 0.0) throw ConfigError("learning_rate must be >= 0");
}

struct EpochRecord {
  std::size_t epoch = 0;
  std::string split;  // "train" or "test"
  double loss = 0.0;
  double accuracy = 0.0;
  std::vector<double> mus;  // one per activation layer
};

struct TrainingLog {
  std::vector<EpochRecord> records;

  /// `epoch,split,loss,accuracy,mu_layer0,mu_layer1,...`
  std::string to_csv() const {
    std::size_t layers = records.empty() ? 0 : records.front().mus.size();
    std::string out = "epoch,split,loss,accuracy";
    for (std::size_t l = 0; l < layers; ++l) out += ",mu_layer" + std::to_string(l);
    out += '\n';
    for (const auto& r : records) {
      out += std::to_string(r.epoch) + ',' + r.split + ',' + format_double(r.loss) + ',' + format_double(r.accuracy);
      for (double m : r.mus) out += ',' + format_double(m);
      out += '\n';
    }
    return out;
  }

  const EpochRecord* last(std::string_view split) const {
    for (auto it = records.rbegin(); it != records.rend(); ++it)
      if (it->split == split) return &*it;
    return nullptr;
  }
};

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Loss and accuracy of `net` on the given rows, in one batch.
inline Evaluation evaluate(Network& net, const Dataset& ds, std::span<const std::size_t> rows) {
  if (rows.empty()) return {};
  const Tensor2D x = gather_rows(ds.features, rows);
  std::vector<std::size_t> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) y[i] = ds.labels[rows[i]];
  const Tensor2D logits = net.forward(x);
  const auto loss = softmax_cross_entropy(logits, y);
  const auto pred = argmax_rows(logits);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < y.size(); ++i) correct += pred[i] == y[i];
  return {loss.loss, static_cast<double>(correct) / static_cast<double>(y.size())};
}

inline constexpr std::uint64_t kShuffleStream = 3;

/// Minibatch training. Each epoch shuffles the training rows with a stream
/// derived from config.seed (independent of the activation), takes one
/// optimizer step per batch, then logs loss/accuracy on the train split and,
/// if present, the test split. Throws DivergenceError on a non-finite loss.
inline TrainingLog train(Network& net, const Dataset& ds, const TrainConfig& config) {
  validate(config);
  if (!ds.has_split()) throw ConfigError("train: dataset has no train/test split");
  if (ds.feature_count() != net.input_size())
    throw ConfigError("train: dataset has " + std::to_string(ds.feature_count()) + " features, network expects " +
                      std::to_string(net.input_size()));
  if (ds.class_count > net.output_size())
    throw ConfigError("train: dataset has " + std::to_string(ds.class_count) + " classes, network outputs " +
                      std::to_string(net.output_size()));

  Optimizer opt(config.optimizer, config.learning_rate);
  Rng rng(derive_seed(config.seed, kShuffleStream));
  std::vector<std::size_t> order = ds.train_indices;
  std::vector<std::size_t> batch_labels;
  TrainingLog log;

  auto diverged = [&](std::size_t epoch, const char* what) {
    std::string layer = net.first_nonfinite_layer();
    if (layer.empty()) layer = "none (parameters finite; loss overflowed)";
    return DivergenceError("epoch " + std::to_string(epoch) + ": non-finite " + what +
                           "; first offending layer: " + layer);
  };

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::span<const std::size_t> rows(order.data() + start, end - start);
      const Tensor2D x = gather_rows(ds.features, rows);
      batch_labels.resize(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) batch_labels[i] = ds.labels[rows[i]];

      const Tensor2D logits = net.forward(x);
      const auto loss = softmax_cross_entropy(logits, batch_labels);
      if (!std::isfinite(loss.loss)) throw diverged(epoch, "loss");
      net.backward(loss.logit_grads);
      auto params = net.parameters();
      opt.step(params);
    }
    if (!net.first_nonfinite_layer().empty()) throw diverged(epoch, "parameter");

    const auto mus = net.mus();
    const auto tr = evaluate(net, ds, ds.train_indices);
    if (!std::isfinite(tr.loss)) throw diverged(epoch, "loss");
    log.records.push_back({epoch, "train", tr.loss, tr.accuracy, mus});
    if (!ds.test_indices.empty()) {
      const auto te = evaluate(net, ds, ds.test_indices);
      log.records.push_back({epoch, "test", te.loss, te.accuracy, mus});
    }
  }
  return log;
}

}  // namespace smu
