#include <doctest.h>

#include <cmath>
#include <random>

#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/geometry.hpp"
#include "tms/models.hpp"

using namespace tms;

namespace {

// Brute force over every assignment; adjacency read straight off the axis-pair table.
std::size_t brute_count(const ShiftSpace& X, const SiteSet& F) {
  const int q = X.alphabet_size();
  std::vector<Symbol> v(F.size(), 0);
  std::size_t n = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < F.size() && ok; ++i)
      for (int ax = 0; ax < F.dim() && ok; ++ax) {
        const long j = F.index_of(F[i] + unit_vector(ax));
        if (j >= 0 && !X.allowed(ax, v[i], v[j])) ok = false;
      }
    n += ok;
    std::size_t k = 0;
    while (k < v.size() && ++v[k] == q) v[k++] = 0;
    if (k == v.size()) return n;
  }
}

SiteSet random_region(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> c(-2, 2), keep(0, 3);
  std::vector<Site> s;
  for (const Site& x : SiteSet::box(dim, -1, 1))
    if (keep(rng)) s.push_back(x);
  s.push_back(make_site({c(rng), 0}));
  return SiteSet(dim, s);
}

}  // namespace

TEST_CASE("balls and frontiers") {
  const SiteSet B = SiteSet::l1_ball(2, Site{}, 6);
  CHECK(B.size() == 85);
  const Frontier fr = frontier(B);
  CHECK(fr.interior.size() == 41);
  CHECK(fr.boundary.size() == 44);
  CHECK(fr.interior.united(fr.boundary) == B);

  CHECK(SiteSet::ball(3, Site{}, 1).size() == 27);
  CHECK(unit_shell(2).size() == 8);
  CHECK(unit_shell(3).size() == 26);
  CHECK(frontier(SiteSet::box(2, 0, 2)).interior.size() == 1);
  CHECK(frontier(SiteSet::box(1, 0, 5)).interior.size() == 4);
}

TEST_CASE("site set algebra") {
  const SiteSet a = SiteSet::box(2, 0, 2), b = a.translated(make_site({4, 0}));
  CHECK(a.separation(b) == 2);
  CHECK_FALSE(a.intersects(b));
  CHECK(a.dilated(1) == SiteSet::box(2, -1, 3));
  CHECK(a.minus(SiteSet::box(2, 0, 1)).size() == 5);
  CHECK(a.united(b).bounding_box().size() == 21);
  CHECK(a.index_of(make_site({0, 0})) == 0);
  CHECK(a.index_of(make_site({7, 7})) == -1);
  CHECK(sup_norm(make_site({-3, 2})) == 3);
  CHECK(l1_norm(make_site({-3, 2})) == 5);
}

TEST_CASE("golden mean counts match the grid independent-set numbers") {
  const ShiftSpace X = golden_mean_space(2);
  CHECK(count_patterns(X, SiteSet::box(2, 0, 1)) == 7);
  CHECK(count_patterns(X, SiteSet::box(2, 0, 2)) == 63);
  CHECK(count_patterns(X, SiteSet::box(2, 0, 3)) == 1234);
  // One dimension: Fibonacci.
  CHECK(count_patterns(golden_mean_space(1), SiteSet::box(1, 0, 19)) == 17711);
}

TEST_CASE("enumeration agrees with brute force on random regions") {
  std::mt19937_64 rng(11);
  const std::vector<ShiftSpace> spaces{golden_mean_space(2), checkerboard_space(2), iceberg_space(1, 2),
                                       beach_space(1, 1, 2, 2)};
  for (int trial = 0; trial < 40; ++trial) {
    const ShiftSpace& X = spaces[trial % spaces.size()];
    const SiteSet F = random_region(rng, 2);
    if (std::pow(X.alphabet_size(), F.size()) > 2e6) continue;
    CAPTURE(trial);
    CHECK(count_patterns(X, F) == brute_count(X, F));
  }
}

TEST_CASE("enumerated patterns are admissible, distinct and ordered") {
  const ShiftSpace X = iceberg_space(1, 2);
  const auto ps = enumerate_patterns(X, SiteSet::box(2, 0, 1));
  REQUIRE(ps.size() == count_patterns(X, SiteSet::box(2, 0, 1)));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(is_locally_admissible(X, ps[i]));
    if (i) CHECK(ps[i - 1].values() < ps[i].values());
  }
}

TEST_CASE("fixed boundary and margin extension") {
  const ShiftSpace X = golden_mean_space(2);
  const SiteSet F = SiteSet::box(2, 0, 2);
  const Pattern corner(SiteSet(2, {make_site({1, 1})}), {1});
  CHECK(count_patterns(X, F, corner) == 16);  // the center's 4 neighbors are forced to 0
  // Every locally admissible golden mean pattern extends (0 is safe).
  CHECK(count_patterns(X, F, std::nullopt, {2, kDefaultEnumerationCap}) == 63);
  CHECK(is_margin_extendable(X, corner, 3));
}

TEST_CASE("enumeration cap reports the partial count") {
  const ShiftSpace X = full_shift_space(2, 2);
  try {
    count_patterns(X, SiteSet::box(2, 0, 3), std::nullopt, {0, 100});
    FAIL("expected a cap error");
  } catch (const EnumerationCapExceeded& e) {
    CHECK(e.cap() == 100);
    CHECK(e.partial_count() >= 100);
  }
}

TEST_CASE("random admissible patterns respect the fixed part") {
  const ShiftSpace X = checkerboard_space(2);
  const SiteSet R = SiteSet::box(2, 0, 3);
  const Pattern seed_site(SiteSet(2, {make_site({0, 0})}), {1});
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const auto p = random_admissible(X, R, &seed_site, s);
    REQUIRE(p.has_value());
    CHECK(is_locally_admissible(X, *p));
    CHECK(p->at(make_site({0, 0})) == 1);
    CHECK(p->at(make_site({1, 1})) == 1);
  }
}

TEST_CASE("pattern sampler is deterministic and admissible") {
  const ShiftSpace X = iceberg_space(1, 2);
  const SiteSet F = SiteSet::box(2, 0, 2);
  const auto a = sample_patterns(X, F, 20, 5), b = sample_patterns(X, F, 20, 5);
  CHECK(a == b);
  for (const auto& p : a) CHECK(is_margin_extendable(X, p, 1));
}
