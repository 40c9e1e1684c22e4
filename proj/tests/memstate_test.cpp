#include <gtest/gtest.h>

#include <random>

#include "whilep/memstate.hpp"

using namespace whilep;

namespace {

// Least u whose cells 1..n are all absent, by direct search.
std::int64_t fresh_oracle(const AddrSet& d, std::int64_t n) {
  for (std::int64_t u = 1;; ++u) {
    bool free = true;
    for (std::int64_t i = 1; i <= n; ++i) free = free && !d.count(Address{n, u, i});
    if (free) return u;
  }
}

AddrSet random_addresses(std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<std::int64_t> len(1, 3), inst(1, 5);
  AddrSet out;
  for (int j = 0; j < count; ++j) {
    auto n = len(rng);
    out.insert(Address{n, inst(rng), std::uniform_int_distribution<std::int64_t>(1, n)(rng)});
  }
  return out;
}

std::vector<Value> sample_values() {
  return {std::int64_t{-3}, std::int64_t{0}, std::int64_t{7}, Nil{}, Address{1, 1, 1}, Address{2, 1, 2},
          Address{2, 3, 1}, Address{3, 1, 1}};
}

}  // namespace

TEST(FreshInstance, Examples) {
  EXPECT_EQ(fresh_instance(AddrSet{}, 2), 1);
  EXPECT_EQ(fresh_instance(AddrSet{Address{2, 1, 1}}, 2), 2);
  EXPECT_EQ(fresh_instance(AddrSet{Address{2, 1, 1}}, 3), 1);
}

TEST(FreshInstance, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    AddrSet d = random_addresses(rng, t % 12);
    for (std::int64_t n = 1; n <= 3; ++n) {
      ASSERT_EQ(fresh_instance(d, n), fresh_oracle(d, n));
      Heap h;
      for (const auto& a : d) h[a] = std::int64_t{0};
      ASSERT_EQ(fresh_instance(h, n), fresh_oracle(d, n));
    }
  }
}

TEST(FreshInstance, MonotoneInTheAllocatedSet) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 1000; ++t) {
    AddrSet d = random_addresses(rng, 6);
    AddrSet bigger = d;
    AddrSet extra = random_addresses(rng, 4);
    bigger.insert(extra.begin(), extra.end());
    for (std::int64_t n = 1; n <= 3; ++n) EXPECT_LE(fresh_instance(d, n), fresh_instance(bigger, n));
  }
}

TEST(AddrShift, Examples) {
  EXPECT_EQ(addr_shift(Address{3, 1, 1}, 2), (Address{3, 1, 3}));
  EXPECT_EQ(addr_shift(Address{3, 1, 1}, 0), (Address{3, 1, 1}));
  EXPECT_EQ(addr_shift(Address{3, 1, 2}, 5), std::nullopt);
  EXPECT_EQ(addr_shift(Address{3, 1, 2}, -2), std::nullopt);
  EXPECT_EQ(addr_shift(Address{3, 1, 2}, INT64_MIN), std::nullopt);
  EXPECT_EQ(addr_shift(Address{3, 1, 2}, INT64_MAX), std::nullopt);
}

TEST(AddrShift, InverseWhenDefined) {
  for (std::int64_t n = 1; n <= 4; ++n) {
    for (std::int64_t i = 1; i <= n; ++i) {
      for (std::int64_t k = -5; k <= 5; ++k) {
        Address a{n, 2, i};
        if (auto b = addr_shift(a, k)) EXPECT_EQ(addr_shift(*b, -k), a);
      }
    }
  }
}

TEST(ValueOrder, Examples) {
  EXPECT_TRUE(value_lt(std::int64_t{1}, std::int64_t{2}));
  EXPECT_FALSE(value_lt(Nil{}, Nil{}));
  EXPECT_TRUE(value_lt(Nil{}, Address{2, 1, 1}));
  EXPECT_TRUE(value_lt(std::int64_t{100}, Nil{}));
}

TEST(ValueOrder, StrictTotalOrder) {
  auto vs = sample_values();
  for (const auto& a : vs) {
    EXPECT_FALSE(value_lt(a, a));
    for (const auto& b : vs) {
      int holds = value_lt(a, b) + value_lt(b, a) + (a == b);
      EXPECT_EQ(holds, 1);
      for (const auto& c : vs) {
        if (value_lt(a, b) && value_lt(b, c)) EXPECT_TRUE(value_lt(a, c));
      }
    }
  }
}

TEST(IntOp, Wraps) {
  EXPECT_EQ(int_op(ArithOp::Add, INT64_MAX, 1), INT64_MIN);
  EXPECT_EQ(int_op(ArithOp::Sub, INT64_MIN, 1), INT64_MAX);
  EXPECT_EQ(int_op(ArithOp::Mul, 6, -7), -42);
}

TEST(AddressText, RoundTrip) {
  Address a{3, 12, 2};
  EXPECT_EQ(to_string(a), "addr(3,12,2)");
  EXPECT_EQ(parse_address("addr(3,12,2)"), a);
  EXPECT_EQ(parse_address("addr(3,1,4)"), std::nullopt);
  EXPECT_EQ(parse_address("addr(0,1,1)"), std::nullopt);
  EXPECT_EQ(parse_address("x"), std::nullopt);
  EXPECT_EQ(to_string(Value{Nil{}}), "nil");
  EXPECT_EQ(to_string(Value{std::int64_t{-4}}), "-4");
}

TEST(Abstract, CollapsesAboveTheCap) {
  EXPECT_EQ(abstract(Address{2, 5, 1}, 3), (Address{2, 3, 1}));
  EXPECT_EQ(abstract(Address{2, 3, 1}, 3), (Address{2, 3, 1}));
  EXPECT_EQ(abstract(Address{2, 2, 1}, 3), (Address{2, 2, 1}));
}
