#include "assouad/parallel.hpp"
#include "assouad/rng.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace assouad;

// Known-answer vectors of the Random123 distribution (kat_vectors, philox4x32_10).
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, SameSeedSameStream) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(RandomStream, UniformIsOpenInterval) {
  RandomStream rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, NormalPassesKs) {
  RandomStream rng(11);
  std::vector<double> z(10000);
  for (double& v : z) v = rng.normal();
  EXPECT_LT(oracle::ks_statistic(z, [](double x) { return oracle::normal_cdf(x); }), oracle::ks_critical(z.size()));
}

TEST(RandomStream, ExponentialPassesKs) {
  RandomStream rng(12);
  std::vector<double> e(10000);
  for (double& v : e) v = rng.exponential();
  EXPECT_LT(oracle::ks_statistic(e, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }),
            oracle::ks_critical(e.size()));
}

TEST(DeriveSeed, DistinctAcrossReplicasAndCoordinates) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 100; ++r) {
    for (std::uint64_t c = 0; c < 10; ++c) {
      seen.insert(derive_seed(7, r, c));
    }
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(7, 0, 1), derive_seed(7, 1, 0));
}

TEST(DeriveSeed, IndependentOfThreadCount) {
  std::vector<std::uint64_t> serial(256);
  std::vector<std::uint64_t> threaded(256);
  set_worker_threads(1);
  parallel_for(256, [&](std::int64_t i) { serial[i] = RandomStream(derive_seed(5, i, 0)).next_u64(); });
  set_worker_threads(8);
  parallel_for(256, [&](std::int64_t i) { threaded[i] = RandomStream(derive_seed(5, i, 0)).next_u64(); });
  set_worker_threads(0);
  EXPECT_EQ(serial, threaded);
}

TEST(ParallelFor, PropagatesExceptions) {
  set_worker_threads(4);
  EXPECT_THROW(parallel_for(100, [](std::int64_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  set_worker_threads(0);
}
