#include "doctest.h"

#include <algorithm>
#include <vector>

#include "pinlab/rng.hpp"

using namespace pinlab;

TEST_CASE("identical seeds replay identical streams") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(99);
  Rng d(100);
  bool diverged = false;
  for (int i = 0; i < 16 && !diverged; ++i) diverged = c.next_u64() != d.next_u64();
  CHECK(diverged);
}

TEST_CASE("uniform01 stays in [0, 1) with a sane mean") {
  Rng rng(5);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("uniform_int covers the inclusive range evenly") {
  Rng rng(6);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    ++counts[static_cast<std::size_t>(v + 3)];
  }
  for (const int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK(rng.uniform_int(4, 4) == 4);
}

TEST_CASE("normal moments") {
  Rng rng(7);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal(2.0, 3.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(var == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("poisson mean tracks the parameter on both code paths") {
  Rng rng(8);
  for (const double lambda : {0.3, 4.0, 80.0}) {
    double sum = 0.0;
    const int n = 30000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.poisson(lambda));
    CHECK(sum / n == doctest::Approx(lambda).epsilon(0.05));
  }
  CHECK(rng.poisson(0.0) == 0);
  CHECK(rng.poisson(-1.0) == 0);
}

TEST_CASE("shuffle is a seeded permutation") {
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
  auto w = v;
  Rng a(13);
  Rng b(13);
  a.shuffle(v);
  b.shuffle(w);
  CHECK(v == w);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("mix_seed separates salts") {
  CHECK(mix_seed(42, 1) != mix_seed(42, 2));
  CHECK(mix_seed(42, 1) != mix_seed(43, 1));
  CHECK(mix_seed(42, 1) == mix_seed(42, 1));
}
