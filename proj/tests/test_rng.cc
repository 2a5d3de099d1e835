#include "skg/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace skg {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors published with Random123 (kat_vectors, philox4x32_10).
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(Philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, PositionIndependent) {
  CounterStream a(42, 7);
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 9; ++i) first.push_back(a.NextU64());
  CounterStream b(42, 7);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(b.NextU64(), first[i]);
  EXPECT_EQ(a.position(), 9u);
}

TEST(CounterStream, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> heads;
  for (std::uint64_t seed : {0, 1, 2})
    for (std::uint64_t stream : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{2}, ~std::uint64_t{0}}) heads.insert(CounterStream(seed, stream).NextU64());
  EXPECT_EQ(heads.size(), 12u);
}

TEST(CounterStream, OpenUnitInterval) {
  CounterStream s(3, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.NextOpenUnit();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of U(0,1) within 5 standard errors.
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(HashCombine, OrderMatters) {
  EXPECT_NE(HashCombine(1, 2), HashCombine(2, 1));
  EXPECT_EQ(HashCombine(1, 2), HashCombine(1, 2));
  EXPECT_NE(Mix64(0), 0u);
}

}  // namespace
}  // namespace skg
