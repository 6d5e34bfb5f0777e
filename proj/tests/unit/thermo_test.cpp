#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "tms/enumerate.hpp"
#include "tms/models.hpp"
#include "tms/thermo.hpp"

using namespace tms;

namespace {

// Independent brute-force Gibbs table for the three-spin model on Λ with a collar:
// every window {j, j+e1, j+e2} inside Λ ∪ collar that touches Λ contributes β v v v.
std::map<std::vector<Symbol>, double> three_spin_oracle(const SiteSet& L, const Pattern& collar, double beta) {
  const SiteSet R = L.united(collar.support());
  const Site e1 = unit_vector(0), e2 = unit_vector(1);
  std::vector<Symbol> v(L.size(), 0);
  std::map<std::vector<Symbol>, double> w;
  double Z = 0;
  for (std::size_t code = 0; code < (std::size_t{1} << L.size()); ++code) {
    for (std::size_t i = 0; i < L.size(); ++i) v[i] = (code >> i) & 1;
    auto spin = [&](const Site& s) {
      const long i = L.index_of(s);
      return (i >= 0 ? v[i] : collar.at(s)) ? 1 : -1;
    };
    double E = 0;
    for (const Site& j : R.dilated(1)) {
      const Site fp[3] = {j, j + e1, j + e2};
      bool inside = true, touches = false;
      for (const Site& s : fp) {
        inside = inside && R.contains(s);
        touches = touches || L.contains(s);
      }
      if (inside && touches) E += beta * spin(j) * spin(j + e1) * spin(j + e2);
    }
    w[v] = std::exp(E);
    Z += w[v];
  }
  for (auto& [k, x] : w) x /= Z;
  return w;
}

}  // namespace

TEST_CASE("collars") {
  const SiteSet L = SiteSet::box(2, 0, 2);
  CHECK(collar_sites(L).size() == 16);
  const Pattern c = constant_collar(L, 1);
  CHECK(c.support() == collar_sites(L));
  for (Symbol s : c.values()) CHECK(s == 1);
  CHECK(centered_box(2, 4) == SiteSet::box(2, -2, 1));
  CHECK(centered_box(2, 3) == SiteSet::box(2, -1, 1));
}

TEST_CASE("three-spin exact table matches the brute-force oracle") {
  const Model m = make_model("three_spin_ising");
  std::mt19937_64 rng(4);
  for (double beta : {0.0, 0.4, -0.9}) {
    for (int shape = 0; shape < 3; ++shape) {
      const SiteSet L = shape == 0 ? SiteSet::box(2, 0, 1)
                        : shape == 1 ? SiteSet::box(2, make_site({0, 0}), make_site({3, 1}))
                                     : SiteSet::box(2, 0, 2);
      // Random collar.
      const SiteSet C = collar_sites(L);
      std::vector<Symbol> cv(C.size());
      for (auto& s : cv) s = rng() & 1;
      const Pattern collar(C, cv);
      const auto fv = FiniteVolumeGibbs::exact(m.space, LocalPotential::three_spin(beta, m.values), L, collar);
      const auto oracle = three_spin_oracle(L, collar, beta);
      REQUIRE(fv.size() == oracle.size());
      for (std::size_t i = 0; i < fv.size(); ++i)
        CHECK(fv.probability(i) == doctest::Approx(oracle.at(fv.configuration(i))).epsilon(1e-12));
      CHECK(conformality_check_fv(fv).max_deviation < 1e-10);
    }
  }
}

TEST_CASE("site potential on the golden mean: table support and weights") {
  const ShiftSpace X = golden_mean_space(2);
  const SiteSet L = SiteSet::box(2, 0, 2);
  const auto G = LocalPotential::site(2, {0.0, 0.8});
  const auto fv = FiniteVolumeGibbs::exact(X, G, L, constant_collar(L, 0));
  CHECK(fv.size() == 63);
  double Z = 0;
  for (const auto& p : enumerate_patterns(X, L)) {
    int ones = 0;
    for (Symbol s : p.values()) ones += s;
    Z += std::exp(0.8 * ones);
  }
  const std::vector<Symbol> empty(9, 0);
  const auto i = fv.find(empty);
  REQUIRE(i.has_value());
  CHECK(fv.probability(*i) == doctest::Approx(1 / Z).epsilon(1e-12));
  // A 1 in the collar forbids 1 next to it.
  Pattern c = constant_collar(L, 0);
  std::vector<Symbol> cv = c.values();
  cv[c.support().index_of(make_site({-1, 1}))] = 1;
  const auto fv2 = FiniteVolumeGibbs::exact(X, G, L, Pattern(c.support(), cv));
  CHECK(fv2.cylinder_probability(Pattern(SiteSet(2, {make_site({0, 1})}), {1})) == 0.0);
  CHECK(fv2.size() < 63);
}

TEST_CASE("heat-bath marginals converge to the exact table") {
  const ShiftSpace X = iceberg_space(1, 2);
  const SiteSet L = SiteSet::box(2, 0, 1);
  const auto G = LocalPotential::site(2, {0.0, 0.0, 0.0});
  const Pattern collar = constant_collar(L, 2);
  const auto fv = FiniteVolumeGibbs::exact(X, G, L, collar);
  std::vector<std::vector<Symbol>> samples;
  glauber_sample(X, G, L, collar, 17, 40'000, 1, 500, {-1, 0, 1},
                 [&](const std::vector<Symbol>& s) { samples.push_back(s); });
  REQUIRE(samples.size() == 40'000);
  CHECK(marginal_tv_distance(fv, samples) < 0.02);
  // Every sampled state is in the support of the table.
  for (std::size_t k = 0; k < samples.size(); k += 97) CHECK(fv.find(samples[k]).has_value());
}

TEST_CASE("heat bath refuses spaces without a safe symbol unless overridden") {
  const ShiftSpace X = checkerboard_space(2);
  const SiteSet L = SiteSet::box(2, 0, 1);
  const auto G = LocalPotential::zero(2);
  Pattern collar = constant_collar(L, 0);
  CHECK_THROWS(GlauberSampler(X, G, L, collar, 1));
}

TEST_CASE("integrated autocorrelation of AR(1)") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (double rho : {0.0, 0.5, 0.8}) {
    std::vector<double> x(200'000);
    double v = 0;
    for (auto& xi : x) xi = v = rho * v + g(rng);
    const double expected = (1 + rho) / (1 - rho);
    CHECK(integrated_autocorrelation(x) == doctest::Approx(expected).epsilon(0.1));
  }
}

TEST_CASE("box entropy scan of the full shift is exact") {
  const auto scan = box_entropy_scan(full_shift_space(2, 2), 2, 0);
  // 2^25 patterns on B(0, 2) exceed the default cap, so the scan stops after n = 1.
  REQUIRE(scan.rows.size() == 1);
  CHECK(scan.truncated);
  CHECK(scan.rows[0].count == 512);
  CHECK(scan.rows[0].value == doctest::Approx(std::log(2.0)));
  const auto line = box_entropy_scan(full_shift_space(3, 1), 6, 1);
  for (const auto& r : line.rows) CHECK(r.value == doctest::Approx(std::log(3.0)));
}

TEST_CASE("empirical pressure of i.i.d. fields") {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.3);
  const SiteSet B = SiteSet::box(2, 0, 59);
  std::vector<Pattern> samples;
  for (int k = 0; k < 4; ++k) {
    std::vector<Symbol> v(B.size());
    for (auto& s : v) s = coin(rng);
    samples.emplace_back(B, v);
  }
  const double h = -(0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  const auto G = LocalPotential::site(2, {0.0, 1.0});
  const auto est = empirical_pressure(samples, G, 2);
  CHECK(est.entropy == doctest::Approx(h).epsilon(0.02));
  CHECK(est.pressure == doctest::Approx(h + 0.3).epsilon(0.02));
}
