#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tms/onedim.hpp"
#include "tms/relations.hpp"
#include "tms/shift_space.hpp"

namespace tms {

// Independent copies of a base space stacked along a new last axis. Layer n is
// the slice {(k, n)}; there is no constraint between layers.
class FreeProduct {
 public:
  explicit FreeProduct(const ShiftSpace& base);
  const ShiftSpace& base() const { return base_; }
  const ShiftSpace& space() const { return space_; }
  int layer_axis() const { return base_.dim(); }
  static Site lift(const Site& k, int layer, int base_dim);
  // The base pattern read off layer n of a product pattern (possibly empty).
  Pattern layer(const Pattern& p, int n) const;
  std::pair<int, int> layer_range(const SiteSet& window) const;

 private:
  ShiftSpace base_;
  ShiftSpace space_;
};

enum class SpectralClass {
  NotTotallyErgodic,
  TotallyErgodicNotWeaklyMixing,
  WeaklyMixingNotStronglyMixing,
  StronglyMixing,
};
std::string to_string(SpectralClass c);

// A stationary ±1 sequence. +1 selects P_+ for a layer, -1 selects P_-.
struct DriverMeasure {
  enum class Kind { PointMass, Periodic, Sturmian, Chacon, Bernoulli };
  Kind kind = Kind::PointMass;
  int sign = 1;
  std::vector<int> word;  // periodic
  double alpha = 0.0;     // sturmian: - iff frac(n alpha + theta) in [0, alpha)
  double q = 0.5;         // bernoulli: P(+)

  static DriverMeasure point_mass(int sign);
  static DriverMeasure periodic(std::vector<int> word);
  static DriverMeasure sturmian(double alpha);
  static DriverMeasure chacon();
  static DriverMeasure bernoulli(double q);
  // "point_mass:+", "periodic:+-", "sturmian:0.618", "chacon", "bernoulli:0.5"
  static DriverMeasure parse(const std::string& text);

  std::string describe() const;
  // Imported from the literature, not computed here.
  SpectralClass literature_class() const;
  std::string literature_note() const;
  // ν(η_0 = +).
  double plus_frequency() const;
};

std::vector<int> driver_sample(const DriverMeasure& nu, std::size_t length, std::uint64_t seed);

// The Chacon word from 0 -> 0010, 1 -> 1, iterated until it has at least `length` letters,
// as ±1 with 0 -> +1.
const std::vector<int>& chacon_word(std::size_t length);

// Exact Cov_ν(η_0, η_k) for k = 0..K: closed forms for point masses, Bernoulli and
// periodic words, and long-word averages for sturmian (N = 2^22 terms) and chacon.
std::vector<double> driver_covariance(const DriverMeasure& nu, int K);

// Samples a base pattern on a window.
using LayerSampler = std::function<Pattern(const SiteSet& base_window, std::mt19937_64& rng)>;
LayerSampler markov_layer_sampler(const MarkovMeasure& mu);
// Every site carries the given symbol.
LayerSampler constant_layer_sampler(int dim, Symbol s);

// Layers drawn independently given η: layer n from P_{η_n}. Throws when the window
// reaches a layer outside [0, η.size()).
Pattern product_field_sample(const FreeProduct& fp, const LayerSampler& plus, const LayerSampler& minus,
                             const std::vector<int>& eta, const SiteSet& window, std::uint64_t seed);

// P_ν for d = 1 Markov layers, exact for point-mass, Bernoulli and periodic drivers.
class ProductFieldMeasure : public CylinderMeasure {
 public:
  ProductFieldMeasure(const FreeProduct& fp, MarkovMeasure plus, MarkovMeasure minus, DriverMeasure nu);
  int dim() const override { return 2; }
  int alphabet_size() const override { return plus_.alphabet_size(); }
  double probability(const Pattern& p) const override;

 private:
  const FreeProduct* fp_;
  MarkovCylinders plus_, minus_;
  DriverMeasure nu_;
};

// f evaluated on window + offset.
struct Observable {
  std::string name;
  SiteSet window;
  std::function<double(std::span<const Symbol>)> f;
};
// Mean of symbol_values over the base window on layer 0.
Observable layer_magnetization(const FreeProduct& fp, const SiteSet& base_window, std::vector<double> symbol_values);
// symbol value at one site
Observable site_value(int dim, const Site& s, std::vector<double> symbol_values);

using FieldSampler = std::function<Pattern(const SiteSet& window, std::uint64_t seed)>;
FieldSampler product_field_sampler(const FreeProduct& fp, LayerSampler plus, LayerSampler minus,
                                   DriverMeasure nu);

struct CorrelationSeries {
  std::string observable;
  Site axis{};
  std::vector<int> lags;
  std::vector<double> C;
  std::vector<double> stderr;
  double mean = 0.0;
  std::size_t replicas = 0;
};

struct CorrelationOptions {
  int max_lag = 256;
  int positions = 256;  // base positions averaged inside each replica
  std::size_t replicas = 64;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

// C(k) = E[f · f∘T_{k axis}] - E[f]^2, k = 0..K. Each replica samples one window
// covering f at offsets 0..K+positions-1 along the axis; replicas are the batches.
CorrelationSeries correlation_series(const FieldSampler& sampler, const Observable& f, const Site& axis,
                                     const CorrelationOptions& opts);

struct Peak {
  double frequency = 0.0;  // in [0, 1/2]
  double power_fraction = 0.0;
  double magnitude = 0.0;
};
// Cosine transform of the symmetrized C on the grid j / (2K), squared and normalized;
// peaks sorted by power. Requires at least 32 lags.
std::vector<Peak> periodogram_peaks(const CorrelationSeries& s, std::size_t top = 5);

struct SpectralReport {
  enum class Verdict { EigenvalueDetected, CesaroDecay, PlainDecay, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  double frequency = 0.0;
  double power_fraction = 0.0;
  double cesaro_mean = 0.0;   // (1/K) Σ_{k=1..K} |C(k)|
  double mean_stderr = 0.0;   // over k = 1..K
  double max_abs = 0.0;       // max_{k >= 1} |C(k)|
  bool plain_decay = false;   // all |C(k)| < 3 stderr(k) for k >= k0
  SpectralClass literature = SpectralClass::StronglyMixing;
  std::string note;
};
std::string to_string(SpectralReport::Verdict v);

SpectralReport classify_empirical(const CorrelationSeries& s, const DriverMeasure& nu, int k0 = 1);

// lim_k C(k) along a layer axis for f = 1[x_0 = s]: ν(+)(1 - ν(+)) (P_+[s] - P_-[s])^2.
double mixture_limit(double plus_frequency, double p_plus, double p_minus);

}  // namespace tms
