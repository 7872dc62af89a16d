#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "smu/activation.hpp"
#include "smu/gradcheck.hpp"
#include "smu/random.hpp"

namespace {

using smu::ActivationType;
using smu::SmuParams;

constexpr double kInvSqrt2 = 0.7071067811865476;

SmuParams params(double alpha, double mu) { return {alpha, mu, false, true}; }

double fd_x(double (*f)(double, const SmuParams&), double x, const SmuParams& p) {
  return smu::central_difference([&](double v) { return f(v, p); }, x, smu::default_step(x));
}

double fd_alpha(double (*f)(double, const SmuParams&), double x, const SmuParams& p) {
  return smu::central_difference(
      [&](double a) {
        SmuParams q = p;
        q.alpha = a;
        return f(x, q);
      },
      p.alpha, smu::default_step(p.alpha));
}

double fd_mu(double (*f)(double, const SmuParams&), double x, const SmuParams& p) {
  return smu::central_difference(
      [&](double m) {
        SmuParams q = p;
        q.mu = m;
        return f(x, q);
      },
      p.mu, smu::default_step(p.mu));
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-10}); }

// ---------------------------------------------------------------------------
// Smooth maxima
// ---------------------------------------------------------------------------

TEST(SmoothMaxErf, Examples) {
  for (double c : {-7.5, 0.0, 2.25, 1e6})
    for (double mu : {0.0, 0.3, 10.0}) EXPECT_EQ(smu::smooth_max_erf(c, c, mu), c);
  EXPECT_NEAR(smu::smooth_max_erf(1.0, 0.0, kInvSqrt2), 0.841344746068543, 1e-15);
  EXPECT_NEAR(smu::smooth_max_erf(3.0, 1.0, 1000.0), 3.0, 1e-15);
}

TEST(SmoothMaxErf, FrozenPhiMatchesOracle) { EXPECT_NEAR(smu::oracle::normal_cdf(1.0), 0.841344746068543, 1e-15); }

TEST(SmoothMaxSqrt, Examples) {
  EXPECT_EQ(smu::smooth_max_sqrt(3.0, 1.0, 0.0), 3.0);
  for (double c : {-4.0, 0.0, 1.5})
    for (double mu : {0.5, 2.0}) EXPECT_DOUBLE_EQ(smu::smooth_max_sqrt(c, c, mu), c + mu / 2.0);
  EXPECT_EQ(smu::smooth_max_sqrt(0.0, 0.0, 2.0), 1.0);
}

TEST(SmoothMax, SymmetricInArguments) {
  smu::Rng rng(1);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-100, 100), b = rng.uniform(-100, 100), mu = rng.uniform(0, 10);
    ASSERT_EQ(smu::smooth_max_erf(a, b, mu), smu::smooth_max_erf(b, a, mu));
    ASSERT_EQ(smu::smooth_max_sqrt(a, b, mu), smu::smooth_max_sqrt(b, a, mu));
  }
}

TEST(SmoothMax, SandwichBounds) {
  const double gap = smu::oracle::sup_t_erfc() / 2.0;
  smu::Rng rng(2);
  for (int i = 0; i < 20000; ++i) {
    const double a = rng.uniform(-100, 100), b = rng.uniform(-100, 100), mu = rng.uniform(0, 10);
    const double m = std::max(a, b);
    const double f1 = smu::smooth_max_erf(a, b, mu);
    const double f2 = smu::smooth_max_sqrt(a, b, mu);
    ASSERT_LE(f1, m + 1e-12);
    ASSERT_GE(f2, m - 1e-12);
    ASSERT_LE(f2, m + mu / 2.0 + 1e-12);
    if (mu > 0) {
      ASSERT_GE(f1, m - gap / mu - 1e-12);
    }
  }
}

TEST(SmoothMax, TranslationEquivariance) {
  smu::Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), mu = rng.uniform(0, 10);
    const double c = rng.uniform(-100, 100);
    ASSERT_NEAR(smu::smooth_max_erf(a + c, b + c, mu), smu::smooth_max_erf(a, b, mu) + c, 1e-12);
    ASSERT_NEAR(smu::smooth_max_sqrt(a + c, b + c, mu), smu::smooth_max_sqrt(a, b, mu) + c, 1e-12);
  }
}

TEST(SmoothMax, ErfScalingLaw) {
  smu::Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), mu = rng.uniform(0, 10);
    const double lambda = std::exp(rng.uniform(-3, 3));
    const double lhs = smu::smooth_max_erf(lambda * a, lambda * b, mu);
    const double rhs = lambda * smu::smooth_max_erf(a, b, lambda * mu);
    ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(lhs)));
  }
}

TEST(SmoothMax, GeneralizesMaxoutOfTwoLines) {
  // max(a x, b x) smoothed: ((a + b) x + (a - b) x erf(mu (a - b) x)) / 2.
  for (double a : {1.0, 0.5, -0.3})
    for (double b : {0.25, -1.0})
      for (double x : {-3.0, -0.4, 0.0, 0.7, 2.5}) {
        const double mu = 1.7;
        const double closed = ((a + b) * x + (a - b) * x * smu::erf(mu * (a - b) * x)) / 2.0;
        EXPECT_NEAR(smu::smooth_max_erf(a * x, b * x, mu), closed, 1e-14);
      }
}

// ---------------------------------------------------------------------------
// SMU
// ---------------------------------------------------------------------------

TEST(Smu, Examples) {
  for (double a : {0.0, 0.25, 0.9})
    for (double mu : {0.0, 1.0, 50.0}) EXPECT_EQ(smu::smu(0.0, params(a, mu)), 0.0);
  EXPECT_NEAR(smu::smu(-10.0, params(0.25, 25.0)), -2.5, 1e-12);
  for (double x : {-3.0, 0.5, 8.0})
    for (double mu : {0.0, 1.0, 7.0}) EXPECT_EQ(smu::smu(x, params(1.0, mu)), x);
}

TEST(Smu, IsSmoothMaxOfXAndAlphaX) {
  smu::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-20, 20), a = rng.uniform(0, 1), mu = rng.uniform(0, 5);
    ASSERT_NEAR(smu::smu(x, params(a, mu)), smu::smooth_max_erf(x, a * x, mu), 1e-13);
  }
}

TEST(Smu, DxExamples) {
  EXPECT_EQ(smu::smu_dx(0.0, params(0.25, 1.0)), 0.625);
  EXPECT_EQ(smu::smu_dx(0.0, params(0.0, kInvSqrt2)), 0.5);
  const auto p = params(0.25, 1.0);
  EXPECT_LT(rel_err(smu::smu_dx(2.0, p), fd_x(smu::smu, 2.0, p)), 1e-7);
}

TEST(Smu, DalphaExamples) {
  for (double a : {0.0, 0.25})
    for (double mu : {0.0, 1.0, 3.0}) EXPECT_EQ(smu::smu_dalpha(0.0, params(a, mu)), 0.0);
  EXPECT_EQ(smu::smu_dalpha(1.0, params(0.25, 0.0)), 0.5);
  const auto p = params(0.25, 1.0);
  EXPECT_LT(rel_err(smu::smu_dalpha(1.5, p), fd_alpha(smu::smu, 1.5, p)), 1e-7);
}

TEST(Smu, DmuExamples) {
  for (double a : {0.0, 0.25})
    for (double mu : {0.0, 1.0, 3.0}) EXPECT_EQ(smu::smu_dmu(0.0, params(a, mu)), 0.0);
  EXPECT_EQ(smu::smu_dmu(1.0, params(1.0, 1.0)), 0.0);
  const auto p = params(0.25, 1.0);
  EXPECT_LT(rel_err(smu::smu_dmu(1.0, p), fd_mu(smu::smu, 1.0, p)), 1e-7);
}

TEST(Smu, DmuIsNeverNegative) {
  smu::Rng rng(6);
  for (int i = 0; i < 5000; ++i) {
    const double x = rng.uniform(-50, 50), a = rng.uniform(0, 1), mu = rng.uniform(0, 20);
    ASSERT_GE(smu::smu_dmu(x, params(a, mu)), 0.0);
  }
}

TEST(Smu, UnscaledGradientFormsFailFiniteDifferences) {
  const auto p = params(0.25, 1.0);
  const double x = 1.5;
  const double numeric_alpha = fd_alpha(smu::smu, x, p);
  const double numeric_mu = fd_mu(smu::smu, x, p);
  EXPECT_GT(rel_err(smu::unscaled::smu_dalpha(x, p), numeric_alpha), 1e-3);
  EXPECT_GT(rel_err(smu::unscaled::smu_dmu(x, p), numeric_mu), 1e-3);
  EXPECT_LT(rel_err(smu::smu_dalpha(x, p), numeric_alpha), 1e-7);
  EXPECT_LT(rel_err(smu::smu_dmu(x, p), numeric_mu), 1e-7);
}

TEST(Smu, UnscaledFormsDifferByTwoOverSqrtPi) {
  const double k = 2.0 / std::sqrt(std::numbers::pi);
  for (double x : {-2.0, -0.5, 0.8, 1.5}) {
    const auto p = params(0.25, 1.3);
    EXPECT_NEAR(smu::smu_dmu(x, p) / smu::unscaled::smu_dmu(x, p), k, 1e-14);
    // Only the exponential term carries the factor.
    const double common = x - x * smu::erf(p.mu * (1 - p.alpha) * x);
    EXPECT_NEAR((common - 2 * smu::smu_dalpha(x, p)) / (common - 2 * smu::unscaled::smu_dalpha(x, p)), k, 1e-12);
  }
}

TEST(Smu, NotMonotoneAtAlphaZero) {
  EXPECT_LT(smu::smu_dx(-1.1, params(0.0, 2.0)), 0.0);
  double lowest = 1.0;
  for (int i = -500; i <= 500; ++i) lowest = std::min(lowest, smu::smu_dx(i * 0.01, params(0.0, 2.0)));
  EXPECT_LT(lowest, 0.0);
}

TEST(Smu, ConvergesToLeakyReluAtRateOneOverMu) {
  const double bound = 0.13;
  EXPECT_LT(smu::oracle::sup_t_erfc() / 2.0, bound);
  for (double alpha : {0.0, 0.01, 0.25}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
      double sup = 0.0;
      for (int i = -5000; i <= 5000; ++i) {
        const double x = i * 0.001;
        sup = std::max(sup, std::fabs(smu::smu(x, params(alpha, mu)) - smu::leaky_relu(x, alpha)));
      }
      EXPECT_LE(sup, bound / mu) << "alpha=" << alpha << " mu=" << mu;
      EXPECT_LE(sup, previous);
      previous = sup;
    }
  }
}

TEST(Smu, RecoversGeluExactly) {
  for (int i = -1000; i <= 1000; ++i) {
    const double x = i * 0.01;
    ASSERT_EQ(smu::smu(x, params(0.0, smu::kGeluMu)), smu::gelu(x)) << x;
    ASSERT_EQ(smu::smu_dx(x, params(0.0, smu::kGeluMu)), smu::gelu_dx(x)) << x;
  }
  EXPECT_EQ(smu::kGeluMu, kInvSqrt2);
}

// ---------------------------------------------------------------------------
// SMU-1
// ---------------------------------------------------------------------------

TEST(Smu1, Examples) {
  EXPECT_EQ(smu::smu1(0.0, params(0.25, 1.0)), 0.5);
  for (double a : {0.0, 0.01, 0.25})
    for (double x : {-3.0, -0.1, 0.0, 0.1, 4.0}) EXPECT_DOUBLE_EQ(smu::smu1(x, params(a, 0.0)), std::max(x, a * x));
  using smu::oracle::Real;
  const double expected = static_cast<double>((Real("1.25") * -4 + sqrt(Real(18))) / 2);
  EXPECT_NEAR(expected, -0.378679656440357, 1e-15);
  EXPECT_NEAR(smu::smu1(-4.0, params(0.25, 3.0)), expected, 1e-15);
}

TEST(Smu1, IsSmoothMaxOfXAndAlphaX) {
  smu::Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-20, 20), a = rng.uniform(0, 1), mu = rng.uniform(0, 5);
    ASSERT_NEAR(smu::smu1(x, params(a, mu)), smu::smooth_max_sqrt(x, a * x, mu), 1e-13);
  }
}

TEST(Smu1, DerivativeExamples) {
  EXPECT_EQ(smu::smu1_dx(0.0, params(0.25, 1.0)), 0.625);
  for (double a : {0.0, 0.25}) EXPECT_EQ(smu::smu1_dmu(0.0, params(a, 2.0)), 0.5);
  const auto p = params(0.25, 0.5);
  EXPECT_LT(rel_err(smu::smu1_dx(5.0, p), fd_x(smu::smu1, 5.0, p)), 1e-7);
}

TEST(Smu1, KinkConventionAtMuZero) {
  const auto p = params(0.25, 0.0);
  EXPECT_EQ(smu::smu1_dx(0.0, p), 0.625);
  EXPECT_EQ(smu::smu1_dalpha(0.0, p), 0.0);
  EXPECT_EQ(smu::smu1_dmu(0.0, p), 0.0);
  EXPECT_EQ(smu::smu1_dx(2.0, p), 1.0);
  EXPECT_EQ(smu::smu1_dx(-2.0, p), 0.25);
}

TEST(Smu1, MonotoneForPositiveAlpha) {
  for (double alpha : {0.01, 0.25, 0.6})
    for (double mu : {0.0, 4.352665993287951e-09, 0.1, 1.0, 10.0}) {
      double lowest = std::numeric_limits<double>::infinity();
      for (int i = -5000; i <= 5000; ++i) lowest = std::min(lowest, smu::smu1_dx(i * 0.01, params(alpha, mu)));
      EXPECT_GE(lowest, alpha - 1e-12);
      EXPECT_GE(lowest, alpha / 2.0);
    }
}

TEST(Smu1, ConvergesToLeakyReluWithinHalfMu) {
  for (double alpha : {0.01, 0.25}) {
    double previous = 0.0;
    for (double mu : {4.352665993287951e-09, 0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
      double sup = 0.0;
      for (int i = -5000; i <= 5000; ++i) {
        const double x = i * 0.001;
        sup = std::max(sup, std::fabs(smu::smu1(x, params(alpha, mu)) - smu::leaky_relu(x, alpha)));
      }
      EXPECT_LE(sup, mu / 2.0);
      EXPECT_EQ(sup, mu / 2.0);  // attained at x = 0
      EXPECT_GE(sup, previous);
      previous = sup;
    }
  }
}

TEST(Smu1, InitializationConstantSquaresInDouble) {
  const double mu = 4.352665993287951e-09;
  EXPECT_GT(mu * mu, 0.0);
  EXPECT_EQ(smu::smu1(0.0, params(0.25, mu)), mu / 2.0);
}

// ---------------------------------------------------------------------------
// Gradient grid
// ---------------------------------------------------------------------------

TEST(Gradients, StandardGridMatchesCentralDifferences) {
  for (double alpha : {0.0, 0.01, 0.25})
    for (double mu : {0.25, 1.0, 2.5, 10.0})
      for (int i = -8; i <= 8; ++i) {
        const double x = i;
        const auto p = params(alpha, mu);
        auto check = [&](double analytic, double numeric, const char* what) {
          const auto r = smu::make_report(x, what, analytic, numeric, 1e-6);
          EXPECT_TRUE(r.passed) << what << " alpha=" << alpha << " mu=" << mu << " x=" << x << " analytic=" << analytic
                                << " numeric=" << numeric;
        };
        check(smu::smu_dx(x, p), fd_x(smu::smu, x, p), "smu_dx");
        check(smu::smu_dalpha(x, p), fd_alpha(smu::smu, x, p), "smu_dalpha");
        check(smu::smu_dmu(x, p), fd_mu(smu::smu, x, p), "smu_dmu");
        check(smu::smu1_dx(x, p), fd_x(smu::smu1, x, p), "smu1_dx");
        check(smu::smu1_dalpha(x, p), fd_alpha(smu::smu1, x, p), "smu1_dalpha");
        check(smu::smu1_dmu(x, p), fd_mu(smu::smu1, x, p), "smu1_dmu");
      }
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

TEST(Baselines, Values) {
  EXPECT_EQ(smu::relu(-3.0), 0.0);
  EXPECT_EQ(smu::relu(2.5), 2.5);
  EXPECT_EQ(smu::leaky_relu(-3.0, 0.01), -0.03);
  EXPECT_NEAR(smu::gelu(1.0), 0.841344746068543, 1e-15);
  EXPECT_EQ(smu::relu6(7.0), 6.0);
  EXPECT_EQ(smu::relu6(3.0), 3.0);
  EXPECT_EQ(smu::relu6(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(smu::elu(-1.0), std::exp(-1.0) - 1.0);
  EXPECT_DOUBLE_EQ(smu::softplus(0.0), std::log(2.0));
  EXPECT_EQ(smu::softplus(800.0), 800.0);
  EXPECT_EQ(smu::swish(0.0), 0.0);
  EXPECT_DOUBLE_EQ(smu::swish(1.0), 1.0 / (1.0 + std::exp(-1.0)));
  EXPECT_DOUBLE_EQ(smu::sigmoid(-800.0) + smu::sigmoid(800.0), 1.0);
}

TEST(Baselines, GeluMatchesPhiOracle) {
  for (double x : {-4.0, -1.3, -0.2, 0.0, 0.6, 1.0, 2.7})
    EXPECT_NEAR(smu::gelu(x), x * smu::oracle::normal_cdf(x), 1e-15) << x;
}

TEST(Baselines, RejectSmuFamily) {
  const auto s = smu::make_activation(ActivationType::kSmu);
  EXPECT_THROW(smu::baseline(s, 1.0), smu::ConfigError);
  EXPECT_THROW(smu::baseline_dx(smu::make_activation(ActivationType::kSmu1), 1.0), smu::ConfigError);
  EXPECT_EQ(smu::baseline(smu::make_activation(ActivationType::kRelu), -2.0), 0.0);
  EXPECT_EQ(smu::baseline_dx(smu::make_activation(ActivationType::kRelu), 3.0), 1.0);
}

// ---------------------------------------------------------------------------
// Robustness
// ---------------------------------------------------------------------------

TEST(Robustness, FiniteInputsGiveFiniteOutputs) {
  smu::Rng rng(9);
  for (int i = 0; i < 20000; ++i) {
    const double mag = std::pow(10.0, rng.uniform(-300, 300));
    const double x = rng.uniform() < 0.5 ? -mag : mag;
    const double mu = rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, rng.uniform(-9, 6));
    const auto p = params(rng.uniform(0, 1), mu);
    ASSERT_TRUE(std::isfinite(smu::smu(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu_dx(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu_dalpha(x, p))) << x << " " << mu;
    // d/dmu may exceed the double range; it must never be NaN.
    ASSERT_FALSE(std::isnan(smu::smu_dmu(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu1(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu1_dx(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu1_dalpha(x, p))) << x << " " << mu;
    ASSERT_TRUE(std::isfinite(smu::smu1_dmu(x, p))) << x << " " << mu;
    for (const auto& [type, name] : smu::kActivationNames) {
      const auto k = smu::make_activation(type, p);
      ASSERT_TRUE(std::isfinite(smu::evaluate(k, x))) << name << " " << x;
      ASSERT_TRUE(std::isfinite(smu::derivative(k, x))) << name << " " << x;
    }
  }
}

TEST(Robustness, LargeArgumentsStayExact) {
  const auto p = params(0.25, 1e6);
  EXPECT_EQ(smu::smu_dmu(1e300, p), 0.0);
  EXPECT_EQ(smu::smu_dalpha(1e300, p), 0.0);
  EXPECT_EQ(smu::smu(1e300, p), 1e300);
  EXPECT_EQ(smu::smu_dx(-1e300, p), 0.25);
}

// ---------------------------------------------------------------------------
// Tagged activation
// ---------------------------------------------------------------------------

TEST(ActivationKind, NamesRoundTrip) {
  for (const auto& [type, name] : smu::kActivationNames) EXPECT_EQ(smu::parse_activation_type(name), type);
  EXPECT_EQ(smu::parse_activation_type("SMU-1"), ActivationType::kSmu1);
  EXPECT_EQ(smu::parse_activation_type("Leaky_ReLU"), ActivationType::kLeakyRelu);
  EXPECT_EQ(smu::parse_activation_type("GELU"), ActivationType::kGelu);
  EXPECT_THROW(smu::parse_activation_type("bogus"), smu::ConfigError);
  EXPECT_THROW(smu::parse_activation_type(""), smu::ConfigError);
}

TEST(ActivationKind, Defaults) {
  const auto leaky = smu::make_activation(ActivationType::kLeakyRelu);
  EXPECT_EQ(leaky.params.alpha, 0.01);
  EXPECT_EQ(smu::evaluate(leaky, -3.0), -0.03);
  const auto prelu = smu::make_activation(ActivationType::kPrelu);
  EXPECT_EQ(prelu.params.alpha, 0.25);
  EXPECT_TRUE(prelu.params.alpha_trainable);
  const auto s = smu::make_activation(ActivationType::kSmu, params(0.01, 2.5));
  EXPECT_EQ(s.params, params(0.01, 2.5));
}

TEST(ActivationKind, DifferentiableParametersAndKinks) {
  using V = std::vector<std::string>;
  EXPECT_EQ(smu::differentiable_parameters(smu::make_activation(ActivationType::kSmu)), (V{"alpha", "mu", "x"}));
  EXPECT_EQ(smu::differentiable_parameters(smu::make_activation(ActivationType::kPrelu)), (V{"alpha", "x"}));
  EXPECT_EQ(smu::differentiable_parameters(smu::make_activation(ActivationType::kGelu)), (V{"x"}));
  EXPECT_EQ(smu::kink_points(smu::make_activation(ActivationType::kRelu6)), (std::vector<double>{0.0, 6.0}));
  EXPECT_TRUE(smu::kink_points(smu::make_activation(ActivationType::kSmu1, params(0.25, 1.0))).empty());
  EXPECT_EQ(smu::kink_points(smu::make_activation(ActivationType::kSmu1, params(0.25, 0.0))),
            (std::vector<double>{0.0}));
  EXPECT_TRUE(smu::kink_points(smu::make_activation(ActivationType::kSmu)).empty());
}

TEST(ActivationKind, ParameterDerivativesOutsideFamilyAreZero) {
  const auto g = smu::make_activation(ActivationType::kGelu);
  EXPECT_EQ(smu::derivative_mu(g, 1.0), 0.0);
  EXPECT_EQ(smu::derivative_alpha(g, -1.0), 0.0);
  const auto pr = smu::make_activation(ActivationType::kPrelu);
  EXPECT_EQ(smu::derivative_alpha(pr, -2.0), -2.0);
  EXPECT_EQ(smu::derivative_alpha(pr, 2.0), 0.0);
}

TEST(SmuParams, Validation) {
  EXPECT_NO_THROW(smu::validate(params(0.25, 0.0)));
  EXPECT_THROW(smu::validate(params(0.25, -1.0)), smu::ConfigError);
  EXPECT_THROW(smu::validate(params(0.25, std::nan(""))), smu::ConfigError);
  EXPECT_THROW(smu::validate(params(std::numeric_limits<double>::infinity(), 1.0)), smu::ConfigError);
  EXPECT_TRUE(smu::is_degenerate(params(1.0, 1.0)));
  EXPECT_FALSE(smu::is_degenerate(params(0.25, 1.0)));
}

}  // namespace
