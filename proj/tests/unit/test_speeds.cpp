#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "soliton/errors.hpp"
#include "soliton/speeds.hpp"
#include "soliton/symmetric.hpp"

using namespace soliton;

namespace {

// Brute force over bitmasks.
double subset_sum(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) p *= x[i];
    total += p;
  }
  return total;
}

double harmonic_oracle(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s += 1.0 / (x[i] + x[j]);
  return 1.0 / s;
}

Eigen::VectorXd fd_gradient(const SpeedSpec& spec, const CurvatureVector& l, double h) {
  Eigen::VectorXd g(l.n());
  for (int a = 0; a < l.n(); ++a) {
    auto p = l.vector(), m = l.vector();
    p[a] += h;
    m[a] -= h;
    g[a] = (eval_speed(spec, CurvatureVector(p)) - eval_speed(spec, CurvatureVector(m))) / (2 * h);
  }
  return g;
}

// γ(eig(diag(λ) + tT)) differentiated twice in t.
double matrix_second_derivative(const SpeedSpec& spec, const CurvatureVector& l, const Eigen::MatrixXd& T, double h) {
  auto f = [&](double t) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(l.n(), l.n());
    for (int i = 0; i < l.n(); ++i) A(i, i) = l[i];
    A += t * T;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    const Eigen::VectorXd ev = es.eigenvalues();
    return eval_speed(spec, CurvatureVector(std::vector<double>(ev.data(), ev.data() + ev.size())));
  };
  return (f(h) - 2 * f(0) + f(-h)) / (h * h);
}

}  // namespace

TEST(SigmaK, MatchesSubsetEnumeration) {
  EXPECT_DOUBLE_EQ(eval_sigma_k({1, 1, 1}, 2), 3.0);
  EXPECT_DOUBLE_EQ(eval_sigma_k({1, 2, 3}, 2), subset_sum({1, 2, 3}, 2));
  EXPECT_DOUBLE_EQ(eval_sigma_k({1, 2, 3}, 2), 11.0);
  EXPECT_DOUBLE_EQ(eval_sigma_k({1, 2, 3}, 1), 6.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(6);
    for (auto& v : x) v = nd(rng);
    for (int k = 1; k <= 6; ++k) EXPECT_NEAR(eval_sigma_k(CurvatureVector(x), k), subset_sum(x, k), 1e-12);
  }
}

TEST(SigmaK, RejectsOrderOutOfRange) {
  EXPECT_THROW(eval_sigma_k({1, 2, 3}, 0), ParameterError);
  EXPECT_THROW(eval_sigma_k({1, 2, 3}, 4), ParameterError);
}

TEST(Symmetric, SkipVariantAgreesWithRemoval) {
  const std::vector<double> x{0.3, -1.2, 2.5, 0.7};
  EXPECT_NEAR(elementary_symmetric_without(x, 2, 1), subset_sum({0.3, 2.5, 0.7}, 2), 1e-14);
  EXPECT_NEAR(elementary_symmetric_without(x, 1, 0, 3), -1.2 + 2.5, 1e-14);
  EXPECT_DOUBLE_EQ(binomial(5, 2), 10.0);
  EXPECT_DOUBLE_EQ(binomial(3, 4), 0.0);
}

TEST(Speed, Values) {
  EXPECT_DOUBLE_EQ(eval_speed(SpeedSpec::sigma_k(2, 2), {1, 1}), 1.0);
  EXPECT_NEAR(eval_speed(SpeedSpec::harmonic(3), {1, 1, 1}), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(eval_speed(SpeedSpec::sigma_k(3, 2), {1, 2, 3}), std::sqrt(11.0), 1e-14);
  const std::vector<double> x{0.4, 1.1, 2.0, 0.9};
  EXPECT_NEAR(eval_speed(SpeedSpec::harmonic(4), CurvatureVector(x)), harmonic_oracle(x), 1e-14);
  EXPECT_NEAR(eval_speed(SpeedSpec::quotient(4, 3, 1), CurvatureVector(x)),
              std::sqrt(subset_sum(x, 3) / subset_sum(x, 1)), 1e-14);
}

TEST(Speed, OutsideConeNamesCondition) {
  try {
    eval_speed(SpeedSpec::harmonic(2), {0, -1});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("pair sum"), std::string::npos) << e.what();
  }
  EXPECT_THROW(eval_speed(SpeedSpec::sigma_k(3, 2), {1, 1, -0.5}), DomainError);
}

TEST(Speed, ProductWeightsMustSumToOne) {
  EXPECT_THROW(SpeedSpec::product({SpeedSpec::sigma_k(3, 1), SpeedSpec::sigma_k(3, 2)}, {0.5, 0.4}), ParameterError);
  const auto p = SpeedSpec::product({SpeedSpec::sigma_k(3, 1), SpeedSpec::sigma_k(3, 3)}, {0.25, 0.75});
  const CurvatureVector l{1, 2, 3};
  EXPECT_NEAR(eval_speed(p, l), std::pow(6.0, 0.25) * std::pow(6.0, 0.75 / 3.0), 1e-13);
}

TEST(Speed, InvalidSpecs) {
  EXPECT_THROW(SpeedSpec::sigma_k(3, 4), ParameterError);
  EXPECT_THROW(SpeedSpec::harmonic(1), ParameterError);
  EXPECT_THROW(SpeedSpec::quotient(3, 2, 2), ParameterError);
}

TEST(Derivatives, SigmaTwoGradient) {
  const auto d = eval_derivatives(SpeedSpec::sigma_k(3, 2), {1, 1, 1});
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(d.gradient[a], 1.0 / std::sqrt(3.0), 1e-14);
}

TEST(Derivatives, MeanCurvatureIsLinear) {
  const auto d = eval_derivatives(SpeedSpec::sigma_k(4, 1), {0.3, 2.0, -0.1, 1.0});
  for (int a = 0; a < 4; ++a) EXPECT_DOUBLE_EQ(d.gradient[a], 1.0);
  EXPECT_EQ(d.hessian.norm(), 0.0);
}

TEST(Derivatives, HarmonicEuler) {
  const CurvatureVector l{1, 1, 1};
  const auto d = eval_derivatives(SpeedSpec::harmonic(3), l);
  double euler = 0.0;
  for (int a = 0; a < 3; ++a) euler += l[a] * d.gradient[a];
  EXPECT_NEAR(euler, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR((fd_gradient(SpeedSpec::harmonic(3), l, 1e-6) - d.gradient).norm(), 0.0, 1e-8);
}

TEST(Derivatives, AgreeWithFiniteDifferencesForEveryKind) {
  const CurvatureVector l{0.7, 1.3, 2.1, 0.9};
  const std::vector<SpeedSpec> specs{
      SpeedSpec::sigma_k(4, 2), SpeedSpec::sigma_k(4, 4), SpeedSpec::harmonic(4), SpeedSpec::quotient(4, 3, 1),
      SpeedSpec::product({SpeedSpec::sigma_k(4, 2), SpeedSpec::harmonic(4)}, {0.5, 0.5})};
  for (const auto& s : specs) {
    const auto d = eval_derivatives(s, l);
    EXPECT_NEAR(d.value, eval_speed(s, l), 1e-14) << s.name();
    const Eigen::VectorXd g = fd_gradient(s, l, 1e-6);
    EXPECT_LT((g - d.gradient).norm(), 1e-6 * d.gradient.norm()) << s.name();
    // Hessian by differencing the analytic gradient.
    Eigen::MatrixXd H(4, 4);
    for (int b = 0; b < 4; ++b) {
      auto p = l.vector(), m = l.vector();
      p[b] += 1e-6;
      m[b] -= 1e-6;
      H.col(b) = (eval_derivatives(s, CurvatureVector(p)).gradient - eval_derivatives(s, CurvatureVector(m)).gradient) / 2e-6;
    }
    EXPECT_LT((H - d.hessian).norm(), 1e-6 * std::max(1.0, d.hessian.norm())) << s.name();
    EXPECT_LT((d.hessian * Eigen::Map<const Eigen::VectorXd>(l.values().data(), 4)).cwiseAbs().maxCoeff(), 1e-12)
        << s.name();
  }
}

TEST(MatrixHessian, LinearSpeedVanishes) {
  Eigen::MatrixXd T(3, 3);
  T << 1, 2, 3, 2, -1, 0.5, 3, 0.5, 4;
  EXPECT_NEAR(hessian_quadratic_form(SpeedSpec::sigma_k(3, 1), {0.5, 1.0, 2.0}, T), 0.0, 1e-15);
}

TEST(MatrixHessian, OffDiagonalDirection) {
  Eigen::MatrixXd T(2, 2);
  T << 0, 1, 1, 0;
  const auto s = SpeedSpec::sigma_k(2, 2);
  EXPECT_NEAR(hessian_quadratic_form(s, {1, 2}, T), -1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(matrix_second_derivative(s, {1, 2}, T, 1e-4), -1.0 / std::sqrt(2.0), 1e-6);
}

TEST(MatrixHessian, DiagonalDirectionIsLambdaHessian) {
  const auto s = SpeedSpec::sigma_k(2, 2);
  const Eigen::MatrixXd T = Eigen::MatrixXd::Identity(2, 2);
  const auto d = eval_derivatives(s, {1, 2});
  const double expected = Eigen::VectorXd::Ones(2).dot(d.hessian * Eigen::VectorXd::Ones(2));
  EXPECT_NEAR(hessian_quadratic_form(s, {1, 2}, T), expected, 1e-10);
  EXPECT_NEAR(hessian_quadratic_form(s, {1, 2}, T), matrix_second_derivative(s, {1, 2}, T, 1e-4), 1e-6);
}

TEST(MatrixHessian, GeneralDirectionMatchesEigenvalueOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  const auto s = SpeedSpec::harmonic(4);
  const CurvatureVector l{0.6, 1.1, 1.7, 2.4};
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd T(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) T(i, j) = T(j, i) = nd(rng);
    EXPECT_NEAR(hessian_quadratic_form(s, l, T), matrix_second_derivative(s, l, T, 1e-4), 2e-5);
  }
}

TEST(MatrixHessian, DegenerateEigenvalues) {
  EXPECT_THROW(hessian_quadratic_form(SpeedSpec::sigma_k(2, 2), {1, 1}, Eigen::MatrixXd::Identity(2, 2)),
               DegenerateEigenvalueError);
}

TEST(Invariants, PermutationAndHomogeneity) {
  std::vector<double> x{0.4, 1.1, 2.0, 0.9};
  const auto s = SpeedSpec::harmonic(4);
  const double base = eval_speed(s, CurvatureVector(x));
  std::sort(x.begin(), x.end());
  do {
    EXPECT_EQ(eval_speed(s, CurvatureVector(x)), base);
  } while (std::next_permutation(x.begin(), x.end()));
  for (double c : {0.5, 2.0, 10.0})
    EXPECT_NEAR(eval_speed(s, CurvatureVector(x).scaled(c)), c * base, 1e-12 * c * base);
}

TEST(Properties, SigmaTwoAndHarmonicHaveNoFailures) {
  EXPECT_EQ(check_properties(SpeedSpec::sigma_k(3, 2), 1000, 1).total_failures(), 0);
  EXPECT_EQ(check_properties(SpeedSpec::harmonic(4), 1000, 1).total_failures(), 0);
}

TEST(Properties, DeterministicUnderSeed) {
  const auto a = check_properties(SpeedSpec::harmonic(3), 200, 9);
  const auto b = check_properties(SpeedSpec::harmonic(3), 200, 9);
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) EXPECT_EQ(a.outcomes[i].worst, b.outcomes[i].worst);
}

TEST(Properties, QuotientStructuralProperties) {
  const auto r = check_properties(SpeedSpec::quotient(3, 3, 1), 1000, 1);
  for (const auto& o : r.outcomes)
    if (o.property != Property::boundary_vanishing) EXPECT_EQ(o.failures, 0) << to_string(o.property);
}

TEST(Properties, RejectsZeroSamples) {
  EXPECT_THROW(check_properties(SpeedSpec::harmonic(3), 0, 1), ParameterError);
}
