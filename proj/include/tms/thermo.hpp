#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tms/models.hpp"
#include "tms/potential.hpp"
#include "tms/region.hpp"

namespace tms {

// dilate(Λ, 1) \ Λ
SiteSet collar_sites(const SiteSet& lambda);
Pattern constant_collar(const SiteSet& lambda, Symbol s);

// Exact Gibbs distribution on X_Λ^ω: weight(a) ∝ exp(Σ_j G((a ∨ ω) on j + footprint))
// over windows inside Λ ∪ collar that meet Λ.
class FiniteVolumeGibbs {
 public:
  static FiniteVolumeGibbs exact(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda,
                                 const Pattern& collar, std::size_t cap = 1'000'000);

  const SiteSet& volume() const { return lambda_; }
  const Pattern& collar() const { return collar_; }
  const LocalPotential& potential() const { return G_; }
  std::size_t size() const { return configs_.size(); }
  const std::vector<Symbol>& configuration(std::size_t i) const { return configs_[i]; }
  double probability(std::size_t i) const { return prob_[i]; }
  double log_probability(std::size_t i) const { return logp_[i]; }
  std::optional<std::size_t> find(const std::vector<Symbol>& config) const;
  // Sum over configurations agreeing with p (support ⊆ Λ).
  double cylinder_probability(const Pattern& p) const;
  double energy(const std::vector<Symbol>& config) const;

 private:
  FiniteVolumeGibbs(const LocalPotential& G) : G_(G) {}
  LocalPotential G_;
  SiteSet lambda_;
  Pattern collar_;
  SiteSet region_;
  std::vector<std::vector<int>> windows_;  // region indices in footprint order
  std::vector<int> lambda_in_region_;
  std::vector<std::vector<Symbol>> configs_;
  std::vector<double> prob_, logp_;
  std::map<std::vector<Symbol>, std::size_t> index_;
};

struct ConformalityReport {
  double max_deviation = 0.0;
  std::size_t pairs = 0;
  bool all_pairs = false;
};

// max |log(μ(b)/μ(a)) - Ψ_G(a, b | collar)| with Ψ from markov_cocycle_value, over
// all pairs when the table has at most `all_pairs_limit` entries, otherwise over
// every configuration against three references plus every single-site change.
ConformalityReport conformality_check_fv(const FiniteVolumeGibbs& mu, std::size_t all_pairs_limit = 2000);

struct GlauberDiagnostics {
  std::size_t sweeps = 0;
  std::size_t updates = 0;
  std::size_t changes = 0;
  bool safe_symbol_override = false;
  double acceptance() const { return updates ? static_cast<double>(changes) / updates : 0.0; }
};

// Single-site heat-bath dynamics on Λ with a fixed collar, systematic scan.
class GlauberSampler {
 public:
  GlauberSampler(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda, const Pattern& collar,
                 std::uint64_t seed, bool allow_without_safe_symbol = false);

  void sweep();
  // Λ values in canonical order.
  std::vector<Symbol> state() const;
  Symbol at(std::size_t lambda_index) const { return values_[lambda_in_region_[lambda_index]]; }
  const GlauberDiagnostics& diagnostics() const { return diag_; }
  const SiteSet& volume() const { return lambda_; }

 private:
  const ShiftSpace* X_;
  LocalPotential G_;
  SiteSet lambda_;
  RegionConstraints rc_;
  std::vector<Symbol> values_;
  std::vector<int> lambda_in_region_;
  std::vector<std::vector<int>> windows_;
  std::vector<std::vector<int>> windows_at_;  // per region index
  std::mt19937_64 rng_;
  GlauberDiagnostics diag_;
};

// Integrated autocorrelation time with Sokal's automatic window (c = 5).
double integrated_autocorrelation(const std::vector<double>& series);

struct GlauberRun {
  GlauberDiagnostics diagnostics;
  std::size_t samples = 0;
  double tau_int = 0.0;  // for the mean of the symbol values over Λ
  std::vector<double> observable;
};

// Runs burn_in sweeps, then `sweeps` sweeps keeping every `thin`-th state.
GlauberRun glauber_sample(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda,
                          const Pattern& collar, std::uint64_t seed, std::size_t sweeps, std::size_t thin,
                          std::size_t burn_in, const std::vector<int>& symbol_values,
                          const std::function<void(const std::vector<Symbol>&)>& on_sample = {},
                          bool allow_without_safe_symbol = false);

// Largest total-variation distance between empirical and exact marginals over
// single sites and axis-adjacent site pairs of Λ.
double marginal_tv_distance(const FiniteVolumeGibbs& exact, const std::vector<std::vector<Symbol>>& samples);
double marginal_tv_distance(const FiniteVolumeGibbs& exact,
                            const std::function<void(const std::function<void(const std::vector<Symbol>&)>&)>& stream);

struct EntropyRow {
  int n = 0;
  double count = 0;
  double log_count = 0;
  double value = 0;  // log|X_{B(0,n)}| / |B(0,n)|
};
struct EntropyScan {
  int margin = 0;
  std::vector<EntropyRow> rows;
  bool truncated = false;
};
EntropyScan box_entropy_scan(const ShiftSpace& X, int n_max, int margin, std::size_t cap = 10'000'000);

struct PressureEstimate {
  double entropy = 0.0;
  double pressure = 0.0;
  double stderr_entropy = 0.0;
  double stderr_pressure = 0.0;
  double singleton_fraction = 0.0;
  bool undersampled = false;
};

// Conditional block entropy H(block) - H(block minus its last site) from b x ... x b
// blocks at every position of each sample, plus the mean of G. Standard errors from
// `batches` contiguous batches of block observations. Biased low for small samples.
PressureEstimate empirical_pressure(const std::vector<Pattern>& samples, const LocalPotential& G, int b,
                                    int batches = 10);

struct CollarRule {
  std::string name;
  Symbol fill = 0;
};

struct ScanOptions {
  std::size_t exact_cap = 200'000;
  std::size_t sweeps = 20'000;
  std::size_t burn_in = 2'000;
  std::uint64_t seed = 1;
  double tolerance = 1e-3;
  bool allow_without_safe_symbol = false;
};

struct ScanCell {
  double value = 0.0;
  double stderr = 0.0;
  bool exact = true;
};

struct ThermoScan {
  std::vector<CollarRule> rules;
  std::vector<std::size_t> volume_sizes;
  // cells[rule][volume][cylinder]
  std::vector<std::vector<std::vector<ScanCell>>> cells;
  // max over cylinders of |value(v+1) - value(v)|, per rule and transition
  std::vector<std::vector<double>> diffs;
  bool stabilized = false;
  bool boundary_dependence = false;
};

ThermoScan thermo_limit_scan(const ShiftSpace& X, const LocalPotential& G, const std::vector<SiteSet>& volumes,
                             const std::vector<CollarRule>& rules, const std::vector<Pattern>& cylinders,
                             const ScanOptions& opts = {});

struct PhaseProbeOptions {
  std::vector<double> betas{0.0, 1.2};
  std::vector<int> sizes{12};
  std::vector<std::uint64_t> seeds{1};
  std::size_t sweeps = 50'000;
  std::size_t burn_in = 5'000;
  std::size_t batches = 50;
};

struct PhaseRow {
  double beta = 0;
  int size = 0;
  double mean_first = 0, mean_second = 0;
  double stderr_first = 0, stderr_second = 0;
  double gap = 0, stderr_gap = 0;
};

struct PhaseProbe {
  std::string model;
  std::string collar_first, collar_second, observable;
  std::vector<PhaseRow> rows;
  bool monotone_in_beta = true;
};

// Model name in {three_spin_ising, iceberg(M), beach(A0,A1,B)}; see the README for
// the potentials, collars and observables used.
PhaseProbe phase_probe(const std::string& model, const PhaseProbeOptions& opts);

// [-n, n-1]^d for even sizes, [-n, n]^d for odd ones, so the origin sits at the center.
SiteSet centered_box(int dim, int size);

}  // namespace tms
