#include "assouad/parallel.hpp"
#include "assouad/process.hpp"
#include "assouad/rng.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace assouad;

namespace {

std::vector<double> increments(const SamplePath& p, std::size_t coordinate = 0) {
  std::vector<double> out(p.n_steps());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = p.value(k + 1, coordinate) - p.value(k, coordinate);
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Types

TEST(ProcessSpec, ParametersMustMatchFamily) {
  ProcessSpec s = ProcessSpec::wiener();
  s.beta = 1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_THROW(ProcessSpec::stable(0.0), std::invalid_argument);
  EXPECT_THROW(ProcessSpec::stable(2.5), std::invalid_argument);
  EXPECT_NO_THROW(ProcessSpec::stable(2.0));
  EXPECT_THROW(ProcessSpec::fbm(1.0), std::invalid_argument);
  EXPECT_THROW(ProcessSpec::bm_d(0), std::invalid_argument);
}

TEST(ProcessSpec, FamilyNamesRoundTrip) {
  for (Family f : {Family::wiener, Family::bm_d, Family::stable, Family::fbm, Family::ito_integral}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(family_from_string("levy"), std::invalid_argument);
}

TEST(Integrand, DerivativeIsExact) {
  const Integrand f({1.0, 0.0, 3.0, 2.0}); // 1 + 3x^2 + 2x^3
  const Integrand df = f.derivative();
  EXPECT_EQ(df.coeffs(), (std::vector<double>{0.0, 6.0, 6.0}));
  EXPECT_DOUBLE_EQ(f(0.5), 1.0 + 0.75 + 0.25);
  EXPECT_EQ(Integrand({4.0}).derivative().coeffs(), std::vector<double>{0.0});
}

TEST(Integrand, MinimumOnUnitInterval) {
  EXPECT_DOUBLE_EQ(Integrand({1.0, 0.0, 1.0}).min_on_unit(), 1.0);
  EXPECT_NEAR(Integrand({0.25, -1.0, 1.0}).min_on_unit(), 0.0, 1e-8); // (x - 1/2)^2
}

TEST(SamplePath, RejectsNonzeroOriginAndNonFinite) {
  EXPECT_THROW(SamplePath(ProcessSpec::wiener(), 0.5, 1, {1.0, 0.0, 0.0}, 0), std::invalid_argument);
  EXPECT_THROW(SamplePath(ProcessSpec::wiener(), 0.5, 1, {0.0, NAN, 0.0}, 0), std::invalid_argument);
  EXPECT_THROW(SamplePath(ProcessSpec::wiener(), 0.0, 1, {0.0, 1.0}, 0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Wiener

TEST(GenWiener, StartsAtZero) {
  EXPECT_EQ(gen_wiener(4, 99).value(0), 0.0);
  EXPECT_EQ(gen_wiener(4, 99).points(), 5u);
}

TEST(GenWiener, ZeroStepsRejected) { EXPECT_THROW(gen_wiener(0, 1), std::invalid_argument); }

TEST(GenWiener, UnitIncrementIsStandardNormal) {
  std::vector<double> x(10000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = gen_wiener(1, derive_seed(1, i, 0)).value(1);
  }
  EXPECT_LT(oracle::ks_statistic(x, [](double v) { return oracle::normal_cdf(v); }), oracle::ks_critical(x.size()));
}

TEST(GenWiener, QuadraticVariationNearOne) {
  const SamplePath w = gen_wiener(1 << 20, 3);
  double qv = 0.0;
  for (double d : increments(w)) qv += d * d;
  EXPECT_GE(qv, 0.9);
  EXPECT_LE(qv, 1.1);
}

TEST(GenWiener, BitIdenticalAcrossThreadCounts) {
  std::vector<std::vector<double>> a(16);
  std::vector<std::vector<double>> b(16);
  set_worker_threads(1);
  parallel_for(16, [&](std::int64_t i) {
    const auto p = gen_wiener(1000, derive_seed(8, i, 0));
    a[i].assign(p.values().begin(), p.values().end());
  });
  set_worker_threads(8);
  parallel_for(16, [&](std::int64_t i) {
    const auto p = gen_wiener(1000, derive_seed(8, i, 0));
    b[i].assign(p.values().begin(), p.values().end());
  });
  set_worker_threads(0);
  EXPECT_EQ(a, b);
}

// ---------------------------------------------------------------------------
// Multidimensional

TEST(GenBmD, OneDimensionIsWienerWithDerivedSeed) {
  const SamplePath p = gen_bm_d(64, 1, 5);
  const SamplePath w = gen_wiener(64, derive_seed(5, 0, 0));
  ASSERT_EQ(p.points(), w.points());
  for (std::size_t k = 0; k < p.points(); ++k) {
    EXPECT_EQ(p.value(k), w.value(k));
  }
}

TEST(GenBmD, CoordinatesIndependentOfD) {
  const SamplePath two = gen_bm_d(32, 2, 9);
  const SamplePath three = gen_bm_d(32, 3, 9);
  for (std::size_t k = 0; k <= 32; ++k) {
    EXPECT_EQ(two.value(k, 1), three.value(k, 1));
  }
}

TEST(GenBmD, ShapeAndOrigin) {
  const SamplePath p = gen_bm_d(8, 3, 1);
  EXPECT_EQ(p.points(), 9u);
  EXPECT_EQ(p.dim(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(p.value(0, j), 0.0);
}

TEST(GenBmD, CoordinatesUncorrelated) {
  std::vector<double> x(10000);
  std::vector<double> y(10000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const SamplePath p = gen_bm_d(1, 2, derive_seed(2, i, 0));
    x[i] = p.value(1, 0);
    y[i] = p.value(1, 1);
  }
  const double mx = oracle::mean(x);
  const double my = oracle::mean(y);
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my);
  const double corr = sxy / static_cast<double>(x.size() - 1) / std::sqrt(oracle::variance(x) * oracle::variance(y));
  EXPECT_GE(corr, -0.05);
  EXPECT_LE(corr, 0.05);
}

TEST(GenBmD, ZeroDimensionRejected) { EXPECT_THROW(gen_bm_d(4, 0, 1), std::invalid_argument); }

// ---------------------------------------------------------------------------
// Stable

TEST(GenStable, BetaTwoIsGaussianWithVarianceTwoDelta) {
  const std::size_t n = 64;
  std::vector<double> inc;
  for (std::size_t i = 0; inc.size() < 10000; ++i) {
    const auto d = increments(gen_stable(n, 2.0, derive_seed(4, i, 0)));
    inc.push_back(d[0]);
  }
  const double var = 2.0 / static_cast<double>(n);
  EXPECT_LT(oracle::ks_statistic(inc, [&](double v) { return oracle::normal_cdf(v, var); }),
            oracle::ks_critical(inc.size()));
}

TEST(GenStable, BetaOneUnitIncrementIsCauchy) {
  std::vector<double> x(10000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = gen_stable(1, 1.0, derive_seed(6, i, 0)).value(1);
  }
  EXPECT_LT(oracle::ks_statistic(x, oracle::cauchy_cdf), oracle::ks_critical(x.size()));
}

TEST(GenStable, ScalingLawBetaOnePointFive) {
  // a^(-1/beta) X(a t) against X(t) with t = 1/4, a = 4.
  const double beta = 1.5;
  const double a = 4.0;
  std::vector<double> scaled(10000);
  std::vector<double> plain(10000);
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const SamplePath p = gen_stable(4, beta, derive_seed(10, i, 0));
    scaled[i] = std::pow(a, -1.0 / beta) * p.value(4);
    plain[i] = gen_stable(4, beta, derive_seed(11, i, 0)).value(1);
  }
  EXPECT_LT(oracle::ks_two_sample(scaled, plain), oracle::ks_two_sample_critical(scaled.size(), plain.size()));
}

TEST(GenStable, BetaOutOfRangeRejected) {
  EXPECT_THROW(gen_stable(4, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(gen_stable(4, 2.01, 1), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Fractional Brownian motion

TEST(GenFbm, AutocovarianceAtHalfIsWhiteNoise) {
  EXPECT_DOUBLE_EQ(fgn_autocovariance(0.5, 0), 1.0);
  EXPECT_NEAR(fgn_autocovariance(0.5, 1), 0.0, 1e-15);
  EXPECT_NEAR(fgn_autocovariance(0.7, 1), 0.5 * (std::pow(2.0, 1.4) - 2.0), 1e-15);
}

TEST(GenFbm, CirculantEigenvaluesNonnegative) {
  for (double h : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto lambda = circulant_eigenvalues(1024, h);
    EXPECT_EQ(lambda.size(), 2048u);
    EXPECT_GE(*std::min_element(lambda.begin(), lambda.end()), 0.0) << "h = " << h;
  }
}

TEST(GenFbm, HalfIsBrownian) {
  std::vector<double> end(1000);
  std::vector<double> first(1000);
  std::vector<double> second(1000);
  for (std::size_t i = 0; i < end.size(); ++i) {
    const SamplePath p = gen_fbm(64, 0.5, derive_seed(12, i, 0));
    end[i] = p.value(64);
    first[i] = p.value(32);
    second[i] = p.value(64) - p.value(32);
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < end.size(); ++i) cov += first[i] * second[i];
  cov /= static_cast<double>(end.size());
  EXPECT_GE(cov, -0.05);
  EXPECT_LE(cov, 0.05);
  EXPECT_GE(oracle::variance(end), 0.9);
  EXPECT_LE(oracle::variance(end), 1.1);
}

TEST(GenFbm, IncrementVarianceScalesAsPower) {
  const double h = 0.3;
  std::vector<double> inc(10000);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    const SamplePath p = gen_fbm(16, h, derive_seed(13, i, 0));
    inc[i] = p.value(9) - p.value(8); // u = 2^-4
  }
  const double target = std::pow(1.0 / 16.0, 2.0 * h);
  EXPECT_NEAR(oracle::variance(inc), target, 0.1 * target);
}

TEST(GenFbm, CirculantMatchesExactFactorization) {
  const double h = 0.7;
  const std::size_t n = 1 << 10;
  std::vector<double> circ_end(1000), exact_end(1000), circ_mid(1000), exact_mid(1000);
  for (std::size_t i = 0; i < circ_end.size(); ++i) {
    const SamplePath c = gen_fbm(n, h, derive_seed(14, i, 0), FbmMethod::circulant);
    const SamplePath e = gen_fbm(n, h, derive_seed(15, i, 0), FbmMethod::exact);
    circ_end[i] = c.value(n);
    exact_end[i] = e.value(n);
    circ_mid[i] = c.value(n / 2);
    exact_mid[i] = e.value(n / 2);
  }
  const double m = static_cast<double>(circ_end.size());
  // Means: sd of a mean of 1000 unit-variance draws is 1/sqrt(1000).
  EXPECT_LT(std::abs(oracle::mean(circ_end) - oracle::mean(exact_end)), 3.0 * std::sqrt(2.0 / m));
  // Sample variances: sd of a Gaussian sample variance is var * sqrt(2 / (m - 1)).
  const double sd_var = std::sqrt(2.0 / (m - 1.0));
  EXPECT_LT(std::abs(oracle::variance(circ_end) - oracle::variance(exact_end)), 3.0 * std::sqrt(2.0) * sd_var);
  const double mid_var = std::pow(0.5, 2.0 * h);
  EXPECT_LT(std::abs(oracle::variance(circ_mid) - oracle::variance(exact_mid)),
            3.0 * std::sqrt(2.0) * mid_var * sd_var);
}

TEST(GenFbm, ExactMethodSizeLimit) {
  EXPECT_THROW(gen_fbm(kExactFbmLimit + 1, 0.6, 1, FbmMethod::exact), std::invalid_argument);
}

TEST(GenFbm, HalfAgreesWithWienerInDistribution) {
  std::vector<double> f(10000);
  std::vector<double> w(10000);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = gen_fbm(4, 0.5, derive_seed(16, i, 0)).value(1);
    w[i] = gen_wiener(4, derive_seed(17, i, 0)).value(1);
  }
  EXPECT_LT(oracle::ks_two_sample(f, w), oracle::ks_two_sample_critical(f.size(), w.size()));
}

TEST(GenFbm, HurstOutOfRangeRejected) {
  EXPECT_THROW(gen_fbm(8, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(gen_fbm(8, 1.0, 1), std::invalid_argument);
}

TEST(Simulate, EveryFamilyStartsAtZeroAndIsReproducible) {
  for (const ProcessSpec& spec : {ProcessSpec::wiener(), ProcessSpec::bm_d(3), ProcessSpec::stable(1.2),
                                  ProcessSpec::fbm(0.3), ProcessSpec::ito(Integrand({1.0, 1.0}))}) {
    const SamplePath a = simulate(spec, 128, 21);
    const SamplePath b = simulate(spec, 128, 21);
    for (std::size_t j = 0; j < a.dim(); ++j) EXPECT_EQ(a.value(0, j), 0.0);
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    EXPECT_EQ(a.spec(), spec);
  }
  EXPECT_THROW(simulate(ProcessSpec::deterministic(), 8, 1), std::invalid_argument);
}

TEST(Simulate, GridIsUniform) {
  const SamplePath p = gen_wiener(1000, 1);
  for (std::size_t k = 1; k < p.points(); ++k) {
    const double step = p.time(k) - p.time(k - 1);
    EXPECT_NEAR(step, p.delta(), 1e-12 * p.delta());
  }
}
