#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "smu/erf.hpp"
#include "smu/errors.hpp"

namespace smu {

// ---------------------------------------------------------------------------
// Smooth approximations of max(x1, x2) = ((x1 + x2) + |x1 - x2|) / 2
// ---------------------------------------------------------------------------

/// |d| replaced by d * erf(mu * d). Approaches max(x1, x2) from below as mu grows.
inline double smooth_max_erf(double x1, double x2, double mu) {
  const double d = x1 - x2;
  return ((x1 + x2) + d * smu::erf(mu * d)) / 2.0;
}

/// |d| replaced by sqrt(d^2 + mu^2). Approaches max(x1, x2) from above as mu
/// shrinks; mu == 0 is the exact max. hypot keeps d^2 from overflowing.
inline double smooth_max_sqrt(double x1, double x2, double mu) {
  const double d = x1 - x2;
  return ((x1 + x2) + std::hypot(d, mu)) / 2.0;
}

// ---------------------------------------------------------------------------
// SMU and SMU-1
// ---------------------------------------------------------------------------

/// Shape parameters shared by SMU and SMU-1.
///
/// alpha is the negative-side slope of the Leaky ReLU being approximated and
/// mu the smoothing strength. alpha == 1 collapses both functions to the
/// identity (plus mu/2 for SMU-1); it is accepted but no preset uses it.
struct SmuParams {
  double alpha = 0.25;
  double mu = 1.0;
  bool alpha_trainable = false;
  bool mu_trainable = true;

  friend bool operator==(const SmuParams&, const SmuParams&) = default;
};

/// Validates the documented parameter domain: finite alpha, finite mu >= 0.
inline void validate(const SmuParams& p) {
  if (!std::isfinite(p.alpha)) throw ConfigError("alpha must be finite");
  if (!std::isfinite(p.mu) || p.mu < 0.0) throw ConfigError("mu must be finite and >= 0");
}

/// Flags alpha == 1, where SMU is the identity map.
inline bool is_degenerate(const SmuParams& p) { return p.alpha == 1.0; }

/// SMU: smooth_max_erf(x, alpha * x, mu) in closed form,
/// ((1 + a) x + (1 - a) x erf(mu (1 - a) x)) / 2.
inline double smu(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  return ((1.0 + p.alpha) * x + s * x * smu::erf(t)) / 2.0;
}

inline double smu_dx(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  // mu (1-a)^2 x exp(-t^2) == (1-a) t exp(-t^2)
  double d = ((1.0 + p.alpha) + s * smu::erf(t) +
              detail::kTwoOverSqrtPi * s * t * gaussian_kernel(t)) /
             2.0;
#ifdef SMU_CORRUPT_DERIVATIVE_FOR_TESTING
  d *= 1.01;
#endif
  return d;
}

/// d/dalpha of smu, including the 2/sqrt(pi) factor from erf'.
inline double smu_dalpha(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  return (x - x * smu::erf(t) - detail::kTwoOverSqrtPi * x * (t * gaussian_kernel(t))) / 2.0;
}

/// d/dmu of smu = (1/sqrt(pi)) (1-a)^2 x^2 exp(-t^2). Never negative; +inf
/// only where the true value exceeds the double range.
inline double smu_dmu(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  const double sx = s * x;
  // sx * exp(-t^2) first, so a flushed kernel gives 0 rather than inf * 0.
  return detail::kTwoOverSqrtPi * sx * (sx * gaussian_kernel(t)) / 2.0;
}

/// Closed forms for the alpha and mu gradients that drop the 2/sqrt(pi)
/// factor of erf'(t). They disagree with finite differences of smu by that
/// factor on the exponential term; kept so the discrepancy stays under test.
namespace unscaled {

inline double smu_dalpha(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  return (x - x * smu::erf(t) - s * p.mu * x * (x * gaussian_kernel(t))) / 2.0;
}

inline double smu_dmu(double x, const SmuParams& p) {
  const double s = 1.0 - p.alpha;
  const double t = p.mu * s * x;
  return s * s * x * (x * gaussian_kernel(t)) / 2.0;
}

}  // namespace unscaled

/// SMU-1: smooth_max_sqrt(x, alpha * x, mu),
/// ((1 + a) x + sqrt((1 - a)^2 x^2 + mu^2)) / 2. smu1(0) == mu / 2.
///
/// Evaluated as max(x, a x) + mu^2 / (2 (sqrt(...) + |(1 - a) x|)), which
/// avoids the cancellation of the closed form for x < 0 and is exactly
/// Leaky ReLU at mu == 0.
inline double smu1(double x, const SmuParams& p) {
  const double sx = (1.0 - p.alpha) * x;
  const double denom = std::hypot(sx, p.mu) + std::fabs(sx);
  const double excess = denom == 0.0 ? 0.0 : p.mu * (p.mu / denom);
  return std::max(x, p.alpha * x) + excess / 2.0;
}

namespace detail {

// (1 - a) x / sqrt((1 - a)^2 x^2 + mu^2), defined as 0 at the mu == 0, x == 0 kink.
inline double smu1_ratio(double x, const SmuParams& p) {
  const double sx = (1.0 - p.alpha) * x;
  const double root = std::hypot(sx, p.mu);
  return root == 0.0 ? 0.0 : sx / root;
}

}  // namespace detail

/// At the mu == 0 kink (x == 0) all ratio terms are zero, giving (1 + a) / 2.
inline double smu1_dx(double x, const SmuParams& p) {
  return ((1.0 + p.alpha) + (1.0 - p.alpha) * detail::smu1_ratio(x, p)) / 2.0;
}

inline double smu1_dalpha(double x, const SmuParams& p) {
  return (x - x * detail::smu1_ratio(x, p)) / 2.0;
}

inline double smu1_dmu(double x, const SmuParams& p) {
  const double root = std::hypot((1.0 - p.alpha) * x, p.mu);
  return root == 0.0 ? 0.0 : p.mu / (2.0 * root);
}

// ---------------------------------------------------------------------------
// Baseline activations
// ---------------------------------------------------------------------------

// sqrt2 / 2 is exact, so this is 1/sqrt(2) correctly rounded: 0.7071067811865476.
inline constexpr double kGeluMu = std::numbers::sqrt2 / 2.0;

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double relu(double x) { return x > 0.0 ? x : 0.0; }
inline double relu_dx(double x) { return x > 0.0 ? 1.0 : 0.0; }

inline double leaky_relu(double x, double alpha) { return x > 0.0 ? x : alpha * x; }
inline double leaky_relu_dx(double x, double alpha) { return x > 0.0 ? 1.0 : alpha; }

inline double relu6(double x) { return std::clamp(x, 0.0, 6.0); }
inline double relu6_dx(double x) { return (x > 0.0 && x < 6.0) ? 1.0 : 0.0; }

inline double elu(double x) { return x > 0.0 ? x : std::expm1(x); }
inline double elu_dx(double x) { return x > 0.0 ? 1.0 : std::exp(x); }

inline double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x))); }
inline double softplus_dx(double x) { return sigmoid(x); }

inline double swish(double x) { return x * sigmoid(x); }
inline double swish_dx(double x) {
  const double s = sigmoid(x);
  return s + x * s * (1.0 - s);
}

/// GELU x * Phi(x), written so it equals smu(x, {alpha = 0, mu = 1/sqrt 2})
/// bit for bit.
inline double gelu(double x) { return (x + x * smu::erf(kGeluMu * x)) / 2.0; }
inline double gelu_dx(double x) {
  const double t = kGeluMu * x;
  return (1.0 + smu::erf(t) + detail::kTwoOverSqrtPi * t * gaussian_kernel(t)) / 2.0;
}

// ---------------------------------------------------------------------------
// Tagged activation choice
// ---------------------------------------------------------------------------

enum class ActivationType {
  kSmu,
  kSmu1,
  kRelu,
  kLeakyRelu,
  kPrelu,
  kRelu6,
  kElu,
  kSoftplus,
  kSwish,
  kGelu,
};

/// An activation together with its parameters. Only SMU, SMU-1 read `mu`;
/// SMU, SMU-1, Leaky ReLU and PReLU read `alpha`.
struct ActivationKind {
  ActivationType type = ActivationType::kSmu;
  SmuParams params{};

  friend bool operator==(const ActivationKind&, const ActivationKind&) = default;
};

inline constexpr double kLeakyReluSlope = 0.01;
inline constexpr double kPreluInitSlope = 0.25;

inline constexpr std::array<std::pair<ActivationType, std::string_view>, 10> kActivationNames{{
    {ActivationType::kSmu, "smu"},
    {ActivationType::kSmu1, "smu1"},
    {ActivationType::kRelu, "relu"},
    {ActivationType::kLeakyRelu, "leaky-relu"},
    {ActivationType::kPrelu, "prelu"},
    {ActivationType::kRelu6, "relu6"},
    {ActivationType::kElu, "elu"},
    {ActivationType::kSoftplus, "softplus"},
    {ActivationType::kSwish, "swish"},
    {ActivationType::kGelu, "gelu"},
}};

inline std::string_view to_string(ActivationType t) {
  for (const auto& [type, name] : kActivationNames)
    if (type == t) return name;
  return "unknown";
}

/// Parses an activation name. Case-insensitive; '-' and '_' are ignored, so
/// "SMU-1", "smu_1" and "smu1" all name SMU-1.
inline ActivationType parse_activation_type(std::string_view name) {
  auto canon = [](std::string_view s) {
    std::string out;
    for (char c : s)
      if (c != '-' && c != '_') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
  };
  const std::string key = canon(name);
  for (const auto& [type, n] : kActivationNames)
    if (canon(n) == key) return type;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

/// Default parameters for a type: Leaky ReLU at slope 0.01, PReLU with a
/// trainable slope starting at 0.25, SMU/SMU-1 as given by `smu_params`.
inline ActivationKind make_activation(ActivationType type, SmuParams smu_params = {}) {
  ActivationKind k{type, {}};
  switch (type) {
    case ActivationType::kSmu:
    case ActivationType::kSmu1:
      k.params = smu_params;
      break;
    case ActivationType::kLeakyRelu:
      k.params = {kLeakyReluSlope, 0.0, false, false};
      break;
    case ActivationType::kPrelu:
      k.params = {kPreluInitSlope, 0.0, true, false};
      break;
    default:
      k.params = {0.0, 0.0, false, false};
      break;
  }
  return k;
}

inline bool uses_alpha(ActivationType t) {
  return t == ActivationType::kSmu || t == ActivationType::kSmu1 || t == ActivationType::kLeakyRelu ||
         t == ActivationType::kPrelu;
}

inline bool uses_mu(ActivationType t) { return t == ActivationType::kSmu || t == ActivationType::kSmu1; }

/// Forward value of any activation.
inline double evaluate(const ActivationKind& k, double x) {
  switch (k.type) {
    case ActivationType::kSmu: return smu(x, k.params);
    case ActivationType::kSmu1: return smu1(x, k.params);
    case ActivationType::kRelu: return relu(x);
    case ActivationType::kLeakyRelu:
    case ActivationType::kPrelu: return leaky_relu(x, k.params.alpha);
    case ActivationType::kRelu6: return relu6(x);
    case ActivationType::kElu: return elu(x);
    case ActivationType::kSoftplus: return softplus(x);
    case ActivationType::kSwish: return swish(x);
    case ActivationType::kGelu: return gelu(x);
  }
  throw ConfigError("unknown activation type");
}

/// d/dx of any activation.
inline double derivative(const ActivationKind& k, double x) {
  switch (k.type) {
    case ActivationType::kSmu: return smu_dx(x, k.params);
    case ActivationType::kSmu1: return smu1_dx(x, k.params);
    case ActivationType::kRelu: return relu_dx(x);
    case ActivationType::kLeakyRelu:
    case ActivationType::kPrelu: return leaky_relu_dx(x, k.params.alpha);
    case ActivationType::kRelu6: return relu6_dx(x);
    case ActivationType::kElu: return elu_dx(x);
    case ActivationType::kSoftplus: return softplus_dx(x);
    case ActivationType::kSwish: return swish_dx(x);
    case ActivationType::kGelu: return gelu_dx(x);
  }
  throw ConfigError("unknown activation type");
}

/// d/dalpha; zero for activations without a slope parameter.
inline double derivative_alpha(const ActivationKind& k, double x) {
  switch (k.type) {
    case ActivationType::kSmu: return smu_dalpha(x, k.params);
    case ActivationType::kSmu1: return smu1_dalpha(x, k.params);
    case ActivationType::kLeakyRelu:
    case ActivationType::kPrelu: return x > 0.0 ? 0.0 : x;
    default: return 0.0;
  }
}

/// d/dmu; zero outside the SMU family.
inline double derivative_mu(const ActivationKind& k, double x) {
  switch (k.type) {
    case ActivationType::kSmu: return smu_dmu(x, k.params);
    case ActivationType::kSmu1: return smu1_dmu(x, k.params);
    default: return 0.0;
  }
}

/// Baseline (non-SMU) activation value. Rejects SMU and SMU-1.
inline double baseline(const ActivationKind& k, double x) {
  if (uses_mu(k.type)) throw ConfigError("baseline() called with an SMU-family activation");
  return evaluate(k, x);
}

inline double baseline_dx(const ActivationKind& k, double x) {
  if (uses_mu(k.type)) throw ConfigError("baseline_dx() called with an SMU-family activation");
  return derivative(k, x);
}

/// Names of the scalars an activation is differentiable in, sorted: a subset
/// of {"alpha", "mu", "x"}. Leaky ReLU's slope is a fixed constant.
inline std::vector<std::string> differentiable_parameters(const ActivationKind& k) {
  switch (k.type) {
    case ActivationType::kSmu:
    case ActivationType::kSmu1: return {"alpha", "mu", "x"};
    case ActivationType::kPrelu: return {"alpha", "x"};
    default: return {"x"};
  }
}

/// Points where the activation or its first derivative has a kink. Central
/// differences straddling them carry O(h) error, so gradient checks skip them.
/// ELU is differentiable at 0 but its second derivative jumps there.
inline std::vector<double> kink_points(const ActivationKind& k) {
  switch (k.type) {
    case ActivationType::kRelu:
    case ActivationType::kLeakyRelu:
    case ActivationType::kPrelu:
    case ActivationType::kElu: return {0.0};
    case ActivationType::kRelu6: return {0.0, 6.0};
    case ActivationType::kSmu1:
      if (k.params.mu == 0.0 && k.params.alpha != 1.0) return {0.0};
      return {};
    default: return {};
  }
}

}  // namespace smu
