#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smu/activation.hpp"
#include "smu/errors.hpp"

namespace smu {

/// One analytic-vs-numeric derivative comparison.
struct GradCheckReport {
  double point = 0.0;
  std::string parameter_name;  // "x", "alpha", "mu", or a network parameter label
  double analytic = 0.0;
  double numeric = 0.0;
  double relative_error = 0.0;
  bool passed = false;
};

inline constexpr double kGradCheckAbsoluteFloor = 1e-9;
inline constexpr double kDefaultStepScale = 1e-5;

/// h = scale * max(1, |x|).
inline double default_step(double x, double scale = kDefaultStepScale) {
  return scale * std::max(1.0, std::fabs(x));
}

/// (f(x + h) - f(x - h)) / (2h). A non-finite result is returned as is and
/// flagged by make_report.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw ConfigError("central_difference: step must be > 0");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// relative_error = |a - n| / max(|a|, |n|, 1e-10); passes when it is below
/// `tolerance` or when |a - n| < 1e-9.
inline GradCheckReport make_report(double point, std::string name, double analytic, double numeric,
                                   double tolerance) {
  GradCheckReport r;
  r.point = point;
  r.parameter_name = std::move(name);
  r.analytic = analytic;
  r.numeric = numeric;
  if (!std::isfinite(analytic) || !std::isfinite(numeric)) {
    r.relative_error = std::numeric_limits<double>::infinity();
    r.passed = false;
    return r;
  }
  const double diff = std::fabs(analytic - numeric);
  const double scale = std::max({std::fabs(analytic), std::fabs(numeric), 1e-10});
  r.relative_error = diff / scale;
  r.passed = r.relative_error < tolerance || diff < kGradCheckAbsoluteFloor;
  return r;
}

/// Checks every differentiable scalar of `kind` at every grid point against
/// central differences of the forward function. Reports are ordered by point
/// (ascending), then parameter name. The numeric side never calls derivative
/// code.
inline std::vector<GradCheckReport> check_activation(const ActivationKind& kind, std::span<const double> grid,
                                                     double tolerance, double step_scale = kDefaultStepScale) {
  if (grid.empty()) throw ConfigError("check_activation: grid must not be empty");
  std::vector<double> points(grid.begin(), grid.end());
  std::sort(points.begin(), points.end());

  std::vector<GradCheckReport> reports;
  for (double x : points) {
    for (const std::string& name : differentiable_parameters(kind)) {
      double analytic = 0.0;
      double numeric = 0.0;
      if (name == "x") {
        analytic = derivative(kind, x);
        numeric = central_difference([&](double v) { return evaluate(kind, v); }, x, default_step(x, step_scale));
      } else if (name == "alpha") {
        analytic = derivative_alpha(kind, x);
        numeric = central_difference(
            [&](double a) {
              ActivationKind k = kind;
              k.params.alpha = a;
              return evaluate(k, x);
            },
            kind.params.alpha, default_step(kind.params.alpha, step_scale));
      } else {
        analytic = derivative_mu(kind, x);
        numeric = central_difference(
            [&](double m) {
              ActivationKind k = kind;
              k.params.mu = m;
              return evaluate(k, x);
            },
            kind.params.mu, default_step(kind.params.mu, step_scale));
      }
      reports.push_back(make_report(x, name, analytic, numeric, tolerance));
    }
  }
  return reports;
}

/// Checks a vector of analytic gradients of a scalar `loss` against central
/// differences in each entry of `params`. `params` is perturbed in place and
/// restored before returning. Report `point` holds the parameter value.
inline std::vector<GradCheckReport> check_parameter_gradients(const std::function<double()>& loss,
                                                              std::span<double* const> params,
                                                              std::span<const double> analytic,
                                                              std::span<const std::string> names, double tolerance,
                                                              double step_scale = kDefaultStepScale) {
  if (params.size() != analytic.size() || params.size() != names.size())
    throw ConfigError("check_parameter_gradients: size mismatch");
  std::vector<GradCheckReport> reports;
  reports.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& p = *params[i];
    const double saved = p;
    const double numeric = central_difference(
        [&](double v) {
          p = v;
          return loss();
        },
        saved, default_step(saved, step_scale));
    p = saved;
    reports.push_back(make_report(saved, names[i], analytic[i], numeric, tolerance));
  }
  return reports;
}

inline bool all_passed(std::span<const GradCheckReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const GradCheckReport& r) { return r.passed; });
}

}  // namespace smu
