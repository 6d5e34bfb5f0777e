#include <doctest.h>

#include <limits>
#include <random>
#include <set>

#include "tms/error.hpp"
#include "tms/lattice.hpp"
#include "tms/models.hpp"
#include "tms/relations.hpp"

using namespace tms;

namespace {

// Lattice points reachable from 0 by ±generator steps without leaving [-R, R]^2.
std::set<std::pair<long, long>> flood(const std::vector<IntVec>& gens, long R) {
  std::set<std::pair<long, long>> seen{{0, 0}};
  std::vector<std::pair<long, long>> todo{{0, 0}};
  while (!todo.empty()) {
    const auto [x, y] = todo.back();
    todo.pop_back();
    for (const auto& g : gens)
      for (int sg : {1, -1}) {
        const long nx = x + sg * g[0], ny = y + sg * g[1];
        if (std::abs(nx) > R || std::abs(ny) > R) continue;
        if (seen.insert({nx, ny}).second) todo.push_back({nx, ny});
      }
  }
  return seen;
}

Pattern word(std::vector<Symbol> v) {
  const int n = static_cast<int>(v.size());
  return Pattern(SiteSet::box(1, 0, n - 1), std::move(v));
}

}  // namespace

TEST_CASE("lattice membership agrees with a flood-fill oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-4, 4), n(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<IntVec> gens;
    for (int i = n(rng); i > 0; --i) gens.push_back({c(rng), c(rng)});
    const IntegerLattice L = IntegerLattice::span(2, gens);
    const auto pts = flood(gens, 60);
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y) {
        CAPTURE(trial);
        CHECK(L.contains({x, y}) == (pts.count({x, y}) > 0));
      }
  }
}

TEST_CASE("Hermite normal form shape") {
  const IntegerLattice L = IntegerLattice::span(3, {{2, 4, 6}, {0, 3, 3}, {4, 2, 0}});
  int last_pivot = -1;
  for (const auto& r : L.basis()) {
    int p = 0;
    while (r[p] == 0) ++p;
    CHECK(p > last_pivot);
    CHECK(r[p] > 0);
    last_pivot = p;
  }
  // Re-spanning the basis is idempotent, and generator order does not matter.
  CHECK(IntegerLattice::span(3, L.basis()) == L);
  CHECK(IntegerLattice::span(3, {{4, 2, 0}, {0, 3, 3}, {2, 4, 6}}) == L);
}

TEST_CASE("lattice inclusions and sum-zero") {
  const IntegerLattice Z = IntegerLattice::sum_zero(3);
  CHECK(Z.rank() == 2);
  CHECK(Z.contains({1, -1, 0}));
  CHECK_FALSE(Z.contains({1, 0, 0}));
  CHECK(Z.scaled(2).is_subset_of(Z));
  CHECK_FALSE(Z.is_subset_of(Z.scaled(2)));
  CHECK(Z.is_subset_of(IntegerLattice::full(3)));
  IntegerLattice M(3);
  CHECK(M.is_trivial());
  CHECK(M.add({1, -1, 0}));
  CHECK_FALSE(M.add({-2, 2, 0}));
  // Pushforward along the total map s -> 1 kills the sum-zero lattice.
  CHECK(pushforward({{1, 1, 1}}, Z).is_trivial());
  CHECK(pushforward({{1, 0, -1}}, Z) == IntegerLattice::full(1));
}

TEST_CASE("checked arithmetic throws on overflow") {
  const auto big = std::numeric_limits<std::int64_t>::max();
  CHECK(checked_add(big - 1, 1) == big);
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), OverflowError);
  CHECK_THROWS_AS(IntegerLattice::span(2, {{big, 1}, {big, 2}, {1, big}}).scaled(big), OverflowError);
}

TEST_CASE("sharp cocycle counts symbol differences") {
  const auto G = IntSiteFunction::sharp(3);
  const Pattern a = word({0, 1, 2, 2}), b = word({0, 2, 1, 1});
  CHECK(cocycle_value(G, a, b) == IntVec{0, 1, -1});
  CHECK(cocycle_value(G, b, a) == IntVec{0, -1, 1});
  CHECK(cocycle_value(std::vector<double>{0.0, 0.5, 2.0}, a, b) == doctest::Approx(-1.5));
  const auto h = IntSiteFunction::scalar({-1, 0, 1});
  CHECK(cocycle_value(h, a, b) == IntVec{-1});
}

TEST_CASE("exchangeability: the kernel test and the rearrangement test agree") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> sym(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Symbol> x(6), y(6);
    for (auto& s : x) s = sym(rng);
    for (auto& s : y) s = sym(rng);
    y.front() = x.front();
    if (trial % 2) y.back() = x.back();
    const auto v = exchangeable_verdicts(word(x), word(y), 3);
    CHECK(v.boundary_match == (y.back() == x.back()));
    CHECK(v.permutation == v.kernel);
    auto sx = x, sy = y;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    CHECK(v.permutation == (v.boundary_match && sx == sy));
  }
}

TEST_CASE("cylinder swaps") {
  const ShiftSpace X = golden_mean_space(1);
  const Pattern a = word({0, 1, 0, 0}), b = word({0, 0, 1, 0});
  const CylinderSwap sw = CylinderSwap::make(X, a, b);
  const Pattern x(SiteSet::box(1, -1, 4), {0, 0, 1, 0, 0, 1});
  const Pattern y = apply_swap(sw, x);
  CHECK(y.values() == std::vector<Symbol>{0, 0, 0, 1, 0, 1});
  CHECK(apply_swap(sw.reversed(), y) == x);
  CHECK(sw.shifted(make_site({2})).support() == SiteSet::box(1, -2, 1));
  // Boundary mismatch is refused.
  CHECK_THROWS(CylinderSwap::make(X, word({1, 0, 0}), word({0, 0, 1})));
}
