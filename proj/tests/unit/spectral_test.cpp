#include <doctest.h>

#include <cmath>
#include <numeric>

#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/models.hpp"
#include "tms/spectral.hpp"

using namespace tms;

namespace {

double plus_fraction(const std::vector<int>& x) {
  return std::count(x.begin(), x.end(), 1) / static_cast<double>(x.size());
}

// Empirical Cov(η_0, η_k) pooled over many samples.
std::vector<double> sample_covariance(const DriverMeasure& nu, int K, int reps, std::size_t len) {
  std::vector<double> acc(K + 1, 0.0);
  double mean = 0;
  std::size_t n = 0;
  std::vector<std::vector<int>> xs;
  for (int r = 0; r < reps; ++r) {
    xs.push_back(driver_sample(nu, len, 1000 + r));
    for (int v : xs.back()) mean += v;
    n += len;
  }
  mean /= static_cast<double>(n);
  for (int k = 0; k <= K; ++k) {
    double s = 0;
    std::size_t m = 0;
    for (const auto& x : xs)
      for (std::size_t i = 0; i + k < x.size(); ++i, ++m) s += x[i] * x[i + k];
    acc[k] = s / static_cast<double>(m) - mean * mean;
  }
  return acc;
}

}  // namespace

TEST_CASE("driver parsing") {
  CHECK(DriverMeasure::parse("point_mass:-").sign == -1);
  CHECK(DriverMeasure::parse("periodic:++-").word == std::vector<int>{1, 1, -1});
  CHECK(DriverMeasure::parse("sturmian:0.25").alpha == doctest::Approx(0.25));
  CHECK(DriverMeasure::parse("chacon").kind == DriverMeasure::Kind::Chacon);
  CHECK(DriverMeasure::parse("bernoulli:0.3").q == doctest::Approx(0.3));
  CHECK_THROWS_AS(DriverMeasure::parse("sturmian:1.5"), SchemaError);
  CHECK_THROWS_AS(DriverMeasure::parse("periodic:+x"), SchemaError);
  CHECK_THROWS_AS(DriverMeasure::parse("rotation"), SchemaError);
  CHECK(DriverMeasure::parse("bernoulli:0.5").literature_class() == SpectralClass::StronglyMixing);
  CHECK(DriverMeasure::parse("chacon").literature_class() == SpectralClass::WeaklyMixingNotStronglyMixing);
  CHECK(DriverMeasure::parse("periodic:+-").literature_class() == SpectralClass::NotTotallyErgodic);
}

TEST_CASE("sturmian sequences have minus frequency alpha and balanced blocks") {
  const double alpha = (std::sqrt(5.0) - 1) / 2 * 0.5;
  const auto nu = DriverMeasure::sturmian(alpha);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t L = 50'000;
    const auto x = driver_sample(nu, L, seed);
    CHECK(std::abs((1 - plus_fraction(x)) - alpha) < 2 / std::sqrt(double(L)));
    // Balance: minus counts in windows of equal length differ by at most one.
    for (int w : {5, 13, 40}) {
      int lo = w, hi = 0;
      for (std::size_t i = 0; i + w <= 2000; ++i) {
        const int c = std::count(x.begin() + i, x.begin() + i + w, -1);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      CHECK(hi - lo <= 1);
    }
  }
}

TEST_CASE("chacon word structure") {
  const auto& w = chacon_word(1000);
  REQUIRE(w.size() >= 1000);
  // B_{n+1} = B_n B_n (-) B_n with B_0 = (+).
  std::vector<int> B{1};
  while (B.size() < 200) {
    std::vector<int> next = B;
    next.insert(next.end(), B.begin(), B.end());
    next.push_back(-1);
    next.insert(next.end(), B.begin(), B.end());
    B = next;
  }
  CHECK(std::equal(B.begin(), B.end(), w.begin()));
  CHECK(DriverMeasure::chacon().plus_frequency() == doctest::Approx(2.0 / 3));
  CHECK(std::abs(plus_fraction(driver_sample(DriverMeasure::chacon(), 100'000, 3)) - 2.0 / 3) < 0.01);
}

TEST_CASE("driver covariance closed forms agree with sampled covariance") {
  for (const char* d : {"bernoulli:0.3", "periodic:++-", "sturmian:0.3819660113", "chacon"}) {
    CAPTURE(d);
    const auto nu = DriverMeasure::parse(d);
    const auto exact = driver_covariance(nu, 12);
    const auto emp = sample_covariance(nu, 12, 40, 20'000);
    CHECK(exact[0] == doctest::Approx(1 - std::pow(2 * nu.plus_frequency() - 1, 2)).epsilon(1e-3));
    for (int k = 0; k <= 12; ++k) CHECK(std::abs(exact[k] - emp[k]) < 0.01);
  }
  const auto pm = driver_covariance(DriverMeasure::point_mass(1), 5);
  for (double c : pm) CHECK(c == 0.0);
  const auto per = driver_covariance(DriverMeasure::periodic({1, -1}), 3);
  CHECK(per[1] == doctest::Approx(-1.0));
  CHECK(per[2] == doctest::Approx(1.0));
}

TEST_CASE("free product allows every vertical pair") {
  const FreeProduct fp(golden_mean_space(1));
  const ShiftSpace& X = fp.space();
  CHECK(X.dim() == 2);
  CHECK(X.allowed(1, 1, 1));
  CHECK_FALSE(X.allowed(0, 1, 1));
  CHECK(FreeProduct::lift(make_site({3}), 5, 1) == make_site({3, 5}));
  // Count = (golden count on a row)^(rows).
  CHECK(count_patterns(X, SiteSet::box(2, make_site({0, 0}), make_site({3, 2}))) == 8 * 8 * 8);
  const Pattern p(SiteSet::box(2, make_site({0, 0}), make_site({1, 1})), {0, 1, 1, 0});
  CHECK(fp.layer(p, 1).values() == std::vector<Symbol>{1, 0});
  CHECK(fp.layer_range(p.support()) == std::pair<int, int>{0, 1});
}

TEST_CASE("product field samples: layers follow the driver") {
  const FreeProduct fp(golden_mean_space(1));
  const auto plus = constant_layer_sampler(1, 1), minus = constant_layer_sampler(1, 0);
  const std::vector<int> eta{1, -1, -1, 1};
  const SiteSet W = SiteSet::box(2, make_site({0, 0}), make_site({2, 3}));
  const Pattern p = product_field_sample(fp, plus, minus, eta, W, 1);
  for (int n = 0; n < 4; ++n) {
    const Pattern layer = fp.layer(p, n);
    for (Symbol s : layer.values()) CHECK(s == (eta[n] == 1 ? 1 : 0));
  }
  CHECK_THROWS(product_field_sample(fp, plus, minus, eta, W.translated(make_site({0, 2})), 1));
}

TEST_CASE("product field cylinder probabilities sum to one") {
  const FreeProduct fp(full_shift_space(2, 1));
  const TransitionMatrix A = TransitionMatrix::from_space(full_shift_space(2, 1));
  const auto mp = gibbs_markov(A, {0.0, 1.0}), mm = gibbs_markov(A, {1.0, 0.0});
  for (const char* d : {"bernoulli:0.4", "periodic:+--", "point_mass:-"}) {
    const ProductFieldMeasure P(fp, mp, mm, DriverMeasure::parse(d));
    const SiteSet W = SiteSet::box(2, make_site({0, 0}), make_site({1, 1}));
    double total = 0;
    for (const auto& pat : enumerate_patterns(fp.space(), W)) total += P.probability(pat);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("correlations of a periodic driver and the periodogram peak") {
  const FreeProduct fp(full_shift_space(2, 1));
  const auto sampler = product_field_sampler(fp, constant_layer_sampler(1, 1), constant_layer_sampler(1, 0),
                                             DriverMeasure::periodic({1, 1, -1}));
  const auto f = site_value(2, Site{}, {0.0, 1.0});
  CorrelationOptions o;
  o.max_lag = 48;
  o.positions = 48;
  o.replicas = 16;
  const auto s = correlation_series(sampler, f, unit_vector(1), o);
  REQUIRE(s.C.size() == 49);
  CHECK(s.mean == doctest::Approx(2.0 / 3).epsilon(0.05));
  // Exact: C(k) = 2/9 if 3 | k else -1/9.
  for (int k = 0; k <= 48; ++k) CHECK(std::abs(s.C[k] - (k % 3 ? -1.0 / 9 : 2.0 / 9)) < 0.03);
  const auto peaks = periodogram_peaks(s);
  REQUIRE_FALSE(peaks.empty());
  CHECK(peaks[0].frequency == doctest::Approx(1.0 / 3).epsilon(0.02));
  CHECK(classify_empirical(s, DriverMeasure::periodic({1, 1, -1})).verdict ==
        SpectralReport::Verdict::EigenvalueDetected);
  // Same seed, same series; threading does not change it.
  o.jobs = 3;
  CHECK(correlation_series(sampler, f, unit_vector(1), o).C == s.C);
}

TEST_CASE("mixture limit") {
  CHECK(mixture_limit(0.5, 0.7, 0.3) == doctest::Approx(0.04));
  CHECK(mixture_limit(1.0, 0.7, 0.3) == 0.0);
}
