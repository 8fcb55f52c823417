#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qkds/qkds.hpp"

using namespace qkds;

TEST(FindRoot, Quadratic) {
  RootProblem rp;
  rp.objective = [](double x) { return x * x - 4; };
  rp.derivative = [](double x) { return 2 * x; };
  rp.bracket_lo = 0;
  rp.bracket_hi = 5;
  rp.x0 = 1;
  const double x = find_root(rp);
  EXPECT_NEAR(x, 2.0, 1e-12);
  EXPECT_LT(std::abs(x * x - 4), rp.tol);
}

TEST(FindRoot, BisectionOnly) {
  RootProblem rp;
  rp.objective = [](double x) { return std::cos(x) - x; };
  rp.bracket_lo = 0;
  rp.bracket_hi = 1;
  rp.tol = 1e-10;
  EXPECT_NEAR(find_root(rp), 0.7390851332151607, 1e-9);
}

TEST(FindRoot, NewtonLeavingBracketFallsBack) {
  // Newton from x0 = 9 on atan overshoots wildly.
  RootProblem rp;
  rp.objective = [](double x) { return std::atan(x - 0.3); };
  rp.derivative = [](double x) { return 1.0 / (1.0 + (x - 0.3) * (x - 0.3)); };
  rp.bracket_lo = -10;
  rp.bracket_hi = 10;
  rp.x0 = 9;
  EXPECT_NEAR(find_root(rp), 0.3, 1e-12);
}

TEST(FindRoot, DecreasingObjective) {
  RootProblem rp;
  rp.objective = [](double x) { return 1 - x * x * x; };
  rp.derivative = [](double x) { return -3 * x * x; };
  rp.bracket_lo = 0;
  rp.bracket_hi = 3;
  rp.x0 = 2.5;
  EXPECT_NEAR(find_root(rp), 1.0, 1e-12);
}

TEST(FindRoot, NoSignChange) {
  RootProblem rp;
  rp.objective = [](double x) { return x - x; };
  rp.bracket_lo = 0;
  rp.bracket_hi = 1;
  try {
    find_root(rp);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.failure(), SolverFailure::NoSignChange);
  }
  rp.objective = [](double x) { return x * x + 1; };
  EXPECT_THROW(find_root(rp), SolverError);
}

TEST(FindRoot, MaxIterations) {
  RootProblem rp;
  rp.objective = [](double x) { return x - 0.123456789; };
  rp.bracket_lo = 0;
  rp.bracket_hi = 1;
  rp.max_iter = 5;
  try {
    find_root(rp);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.failure(), SolverFailure::MaxIterationsExceeded);
  }
}

TEST(FindRoot, RejectsBadTolerance) {
  RootProblem rp;
  rp.objective = [](double x) { return x - 0.5; };
  rp.tol = 0;
  EXPECT_THROW(find_root(rp), InputError);
}

TEST(CalibrateCbsf, SingleSplitterIsSqrtEta) {
  for (double eta : {0.25, 0.01, 0.7}) {
    EXPECT_NEAR(calibrate_cbsf(PulseChannel(0.1, eta), 1).t(), std::sqrt(eta), 1e-10);
  }
}

TEST(CalibrateCbsf, ResidualAndOracle) {
  const PulseChannel pc(0.1, 0.1);
  for (int n : {2, 5, 10}) {
    const auto fs = calibrate_cbsf(pc, n);
    EXPECT_LT(std::abs(cbsf_vacuum_prob(0.1, fs) - std::exp(-0.01)), 1e-12);
    EXPECT_NEAR(fs.t(), static_cast<double>(oracle::chain_t_for(0.1L, 0.1L, n)), 1e-9);
  }
  EXPECT_NEAR(calibrate_cbsf(pc, 2).t(), 0.5415227, 1e-7);
  EXPECT_NEAR(calibrate_cbsf(pc, 10).t(), 0.8722985, 1e-7);
}

TEST(CalibrateCbsf, TransmissionTowardsCoupling) {
  // t^{2N} approaches the continuous gamma^2 as N grows: 11.7% off at N=10, 6% at N=20.
  const PulseChannel pc(0.1, 0.1);
  const double g = cbs_gamma_sq(pc).gamma_sq;
  double prev = 1.0;
  for (int n : {2, 5, 10, 20, 100}) {
    const double gap = std::pow(calibrate_cbsf(pc, n).t(), 2.0 * n) / g - 1.0;
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_NEAR(std::pow(calibrate_cbsf(pc, 10).t(), 20.0) / g - 1.0, 0.1167, 1e-3);
}

TEST(CalibrateCbsf, AlwaysFeasibleBelowOne) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 300; ++i) {
    const double mu = 0.001 + 9.999 * u(gen);
    const double eta = std::pow(10.0, -3.0 * u(gen));
    if (eta >= 1.0) continue;
    const int n = 1 + static_cast<int>(u(gen) * 30);
    const auto fs = calibrate_cbsf(PulseChannel(mu, eta), n);
    EXPECT_LT(std::abs(cbsf_vacuum_prob(mu, fs) - std::exp(-mu * eta)), 1e-12) << mu << " " << eta << " " << n;
  }
}

TEST(CalibrateCbsf, LosslessIsInfeasible) {
  try {
    calibrate_cbsf(PulseChannel(0.1, 1.0), 3);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.failure(), SolverFailure::Infeasible);
  }
  EXPECT_THROW(calibrate_cbsf(PulseChannel(0.1, 0.5), 0), InputError);
}
