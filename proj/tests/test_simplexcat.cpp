#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kern/simplex.hpp"

using namespace kern;

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("composition and identity") {
  auto f = MonotoneMap::of(2, 3, {1, 3});
  auto g = MonotoneMap::of(3, 2, {1, 1, 2});
  auto gf = compose(g, f);
  CHECK(gf == MonotoneMap::of(2, 2, {1, 2}));
  CHECK(compose(MonotoneMap::identity(3), f) == f);
  CHECK(compose(f, MonotoneMap::identity(2)) == f);

  auto e = MonotoneMap::empty_to(1);
  CHECK(compose(f, MonotoneMap::empty_to(2)) == MonotoneMap::empty_to(3));
  CHECK(compose(MonotoneMap::of(1, 2, {2}), e) == MonotoneMap::empty_to(2));

  CHECK_THROWS_AS(compose(g, g), SimplexError);
  CHECK_THROWS_AS(MonotoneMap::of(2, 2, {2, 1}), SimplexError);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_maps(1, 4).size() == 4);
  CHECK(enumerate_maps(2, 3).size() == 6);
  CHECK(enumerate_maps(0, 3).size() == 1);
  CHECK(enumerate_maps(3, 0).empty());
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n)
      CHECK(static_cast<long>(enumerate_maps(m, n).size()) == binomial(n + m - 1, m));
}

TEST_CASE("composition is associative on small maps") {
  for (const auto& f : enumerate_maps(2, 2))
    for (const auto& g : enumerate_maps(2, 3))
      for (const auto& h : enumerate_maps(3, 2))
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
}

TEST_CASE("exact Cartesian detection") {
  SUBCASE("reduced augmentation square") {
    SimplexSquare sq{MonotoneMap::empty_to(1), MonotoneMap::empty_to(1),
                     MonotoneMap::of(1, 2, {1}), MonotoneMap::of(1, 2, {2})};
    CHECK(is_exact_cartesian(sq));
  }
  SUBCASE("identity square") {
    auto id = MonotoneMap::identity(1);
    CHECK(is_exact_cartesian(SimplexSquare{id, id, id, id}));
  }
  SUBCASE("constant collapse fails injectivity on both pairs") {
    auto c = MonotoneMap::of(2, 1, {1, 1});
    auto id2 = MonotoneMap::identity(2);
    // [1,2] -> [1] twice against identities; neither parallel pair injective
    SimplexSquare sq{c, c, MonotoneMap::identity(1), MonotoneMap::identity(1)};
    CHECK_FALSE(is_exact_cartesian(sq));
    (void)id2;
  }
  SUBCASE("non-commuting square is rejected") {
    SimplexSquare sq{MonotoneMap::of(1, 2, {1}), MonotoneMap::of(1, 2, {2}),
                     MonotoneMap::identity(2), MonotoneMap::identity(2)};
    CHECK_THROWS_AS(is_exact_cartesian(sq), SimplexError);
  }
  SUBCASE("coverage failure") {
    // D = [1,2,3] but images only reach {1,2}
    SimplexSquare sq{MonotoneMap::of(1, 1, {1}), MonotoneMap::of(1, 1, {1}),
                     MonotoneMap::of(1, 3, {2}), MonotoneMap::of(1, 3, {2})};
    CHECK_FALSE(is_exact_cartesian(sq));
  }
}

TEST_CASE("enumerated exact Cartesian squares include the triple-level ones") {
  auto squares = enumerate_exact_cartesian_squares(3);
  CHECK(!squares.empty());
  // the square P_1^* P_{2*} -> P_{23*} P_{12}^* lives over
  auto i1 = MonotoneMap::of(1, 2, {1});
  auto i2 = MonotoneMap::of(1, 2, {2});
  auto f12 = MonotoneMap::of(2, 3, {1, 2});
  auto f23 = MonotoneMap::of(2, 3, {2, 3});
  bool found = false;
  for (const auto& sq : squares)
    if (sq.f == i2 && sq.g == i1 && sq.gp == f12 && sq.fp == f23) found = true;
  CHECK(found);
}
