#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "smu/errors.hpp"
#include "smu/network.hpp"

namespace smu {

enum class OptimizerType { kSgd, kMomentum, kAdam };

inline std::string_view to_string(OptimizerType t) {
  switch (t) {
    case OptimizerType::kSgd: return "sgd";
    case OptimizerType::kMomentum: return "sgd-momentum";
    case OptimizerType::kAdam: return "adam";
  }
  return "unknown";
}

inline OptimizerType parse_optimizer(std::string_view s) {
  if (s == "sgd") return OptimizerType::kSgd;
  if (s == "sgd-momentum" || s == "momentum") return OptimizerType::kMomentum;
  if (s == "adam") return OptimizerType::kAdam;
  throw ConfigError("unknown optimizer '" + std::string(s) + "'");
}

/// Plain SGD, SGD with momentum 0.9 (v = 0.9 v + g; p -= lr v), or Adam
/// (beta1 0.9, beta2 0.999, eps 1e-8, bias-corrected). State is keyed by
/// position in the parameter list, which must keep the same layout between
/// steps.
class Optimizer {
 public:
  static constexpr double kMomentum = 0.9;
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  Optimizer(OptimizerType type, double learning_rate) : type_(type), lr_(learning_rate) {}

  OptimizerType type() const { return type_; }
  double learning_rate() const { return lr_; }

  void step(std::vector<ParamView>& params) {
    if (first_.empty()) {
      for (const auto& p : params) {
        first_.emplace_back(p.value.size(), 0.0);
        second_.emplace_back(p.value.size(), 0.0);
      }
    }
    if (first_.size() != params.size()) throw StateError("optimizer: parameter layout changed between steps");
    ++t_;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto value = params[k].value;
      auto grad = params[k].grad;
      auto& m = first_[k];
      auto& v = second_[k];
      for (std::size_t i = 0; i < value.size(); ++i) {
        const double g = grad[i];
        switch (type_) {
          case OptimizerType::kSgd:
            value[i] -= lr_ * g;
            break;
          case OptimizerType::kMomentum:
            m[i] = kMomentum * m[i] + g;
            value[i] -= lr_ * m[i];
            break;
          case OptimizerType::kAdam:
            m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g;
            v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g * g;
            value[i] -= lr_ * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + kEpsilon);
            break;
        }
      }
    }
  }

 private:
  OptimizerType type_;
  double lr_;
  long long t_ = 0;
  std::vector<std::vector<double>> first_;
  std::vector<std::vector<double>> second_;
};

}  // namespace smu
