#include <cstdint>
#include <vector>

#include <doctest.h>

#include "yinyang/rng.hpp"

using namespace yinyang;

TEST_CASE("same seed reproduces the same stream") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
  }
}

TEST_CASE("different seeds diverge within the first draws") {
  Rng a(42);
  Rng b(41);
  bool differ = false;
  for (int i = 0; i < 10 && !differ; ++i) {
    differ = a.uniform() != b.uniform();
  }
  CHECK(differ);
}

TEST_CASE("uniform draws stay in [0,1)") {
  Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("splitmix64 matches the reference sequence") {
  // First outputs of the public domain splitmix64 for state 0 and 42,
  // cross-checked against the reference implementation.
  std::uint64_t s = 0;
  CHECK(splitmix64_next(s) == UINT64_C(16294208416658607535));
  CHECK(splitmix64_next(s) == UINT64_C(7960286522194355700));
  CHECK(splitmix64_next(s) == UINT64_C(487617019471545679));
  s = 42;
  CHECK(splitmix64_next(s) == UINT64_C(13679457532755275413));
  CHECK(splitmix64_next(s) == UINT64_C(2949826092126892291));
}

TEST_CASE("xoshiro256** golden stream for seed 42") {
  // Frozen golden master: the first raw outputs after splitmix64 seeding,
  // cross-checked against independent implementations of the two reference
  // algorithms. Any conforming implementation reproduces these exactly.
  Rng rng(42);
  const std::vector<std::uint64_t> expected = {
      UINT64_C(1546998764402558742),  UINT64_C(6990951692964543102),
      UINT64_C(12544586762248559009), UINT64_C(17057574109182124193),
      UINT64_C(18295552978065317476),
  };
  std::vector<std::uint64_t> got;
  for (std::size_t i = 0; i < expected.size(); ++i) got.push_back(rng.next_u64());
  CHECK(got == expected);

  Rng again(42);
  CHECK(again.uniform() == doctest::Approx(0.083862971059882163).epsilon(1e-16));
  CHECK(again.uniform() == doctest::Approx(0.37898025066266861).epsilon(1e-16));
}

TEST_CASE("bounded draws cover [0, bound)") {
  Rng rng(99);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const std::uint64_t v = rng.below(7);
    REQUIRE(v < 7);
    seen[static_cast<int>(v)]++;
  }
  for (int count : seen) CHECK(count > 8000);  // roughly uniform
}
