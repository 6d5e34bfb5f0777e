#include "tms/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "tms/aperiodicity.hpp"
#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/random.hpp"
#include "tms/relations.hpp"

namespace tms {

SiteSet collar_sites(const SiteSet& lambda) { return lambda.dilated(1).minus(lambda); }

Pattern constant_collar(const SiteSet& lambda, Symbol s) {
  const SiteSet c = collar_sites(lambda);
  return Pattern(c, std::vector<Symbol>(c.size(), s));
}

namespace {

// Windows j + footprint inside the region that meet Λ, as region indices.
std::vector<std::vector<int>> windows_of(const LocalPotential& G, const SiteSet& region, const SiteSet& lambda) {
  std::vector<Site> anchors;
  for (const Site& s : lambda)
    for (const Site& f : G.footprint()) anchors.push_back(s - f);
  const SiteSet js(lambda.dim(), anchors);
  std::vector<std::vector<int>> out;
  for (const Site& j : js) {
    std::vector<int> w;
    for (const Site& f : G.footprint()) {
      const long i = region.index_of(j + f);
      if (i < 0) break;
      w.push_back(static_cast<int>(i));
    }
    if (w.size() == G.footprint().size()) out.push_back(std::move(w));
  }
  return out;
}

void check_collar(const SiteSet& lambda, const Pattern& collar) {
  if (collar.support().intersects(lambda)) throw Error("collar overlaps the volume");
  if (!collar_sites(lambda).is_subset_of(collar.support())) {
    throw Error("collar must cover every site within distance 1 of the volume");
  }
}

double window_energy(const LocalPotential& G, const std::vector<std::vector<int>>& windows,
                     const std::vector<Symbol>& region_values) {
  double e = 0.0;
  Symbol buf[16];
  for (const auto& w : windows) {
    for (std::size_t k = 0; k < w.size(); ++k) buf[k] = region_values[w[k]];
    e += G(std::span<const Symbol>(buf, w.size()));
  }
  return e;
}

}  // namespace

FiniteVolumeGibbs FiniteVolumeGibbs::exact(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda,
                                           const Pattern& collar, std::size_t cap) {
  if (lambda.empty()) throw Error("empty site set");
  if (G.dim() != X.dim() || lambda.dim() != X.dim()) throw SchemaError("dimension mismatch");
  check_collar(lambda, collar);
  FiniteVolumeGibbs mu(G);
  mu.lambda_ = lambda;
  mu.collar_ = collar;
  mu.region_ = lambda.united(collar.support());
  mu.windows_ = windows_of(G, mu.region_, lambda);
  for (const Site& s : lambda) mu.lambda_in_region_.push_back(static_cast<int>(mu.region_.index_of(s)));

  std::vector<double> logw;
  try {
    for_each_pattern(X, mu.region_, &collar, EnumerationOptions{0, cap}, [&](std::span<const Symbol> v) {
      std::vector<Symbol> rv(v.begin(), v.end());
      std::vector<Symbol> cfg(lambda.size());
      for (std::size_t k = 0; k < cfg.size(); ++k) cfg[k] = rv[mu.lambda_in_region_[k]];
      logw.push_back(window_energy(G, mu.windows_, rv));
      mu.configs_.push_back(std::move(cfg));
      return true;
    });
  } catch (const EnumerationCapExceeded& e) {
    throw Error(std::string("finite-volume table too large (") + e.what() + "); use glauber_sample instead");
  }
  if (mu.configs_.empty()) throw Error("no admissible configuration agrees with the collar");
  const double top = *std::max_element(logw.begin(), logw.end());
  double z = 0.0;
  for (double w : logw) z += std::exp(w - top);
  const double log_z = top + std::log(z);
  for (std::size_t i = 0; i < logw.size(); ++i) {
    mu.logp_.push_back(logw[i] - log_z);
    mu.prob_.push_back(std::exp(logw[i] - log_z));
    mu.index_.emplace(mu.configs_[i], i);
  }
  return mu;
}

std::optional<std::size_t> FiniteVolumeGibbs::find(const std::vector<Symbol>& config) const {
  auto it = index_.find(config);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double FiniteVolumeGibbs::cylinder_probability(const Pattern& p) const {
  std::vector<long> idx;
  for (const Site& s : p.support()) {
    const long i = lambda_.index_of(s);
    if (i < 0) throw Error("cylinder leaves the volume");
    idx.push_back(i);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < configs_.size(); ++c) {
    bool match = true;
    for (std::size_t k = 0; k < idx.size() && match; ++k) match = configs_[c][idx[k]] == p.values()[k];
    if (match) total += prob_[c];
  }
  return total;
}

double FiniteVolumeGibbs::energy(const std::vector<Symbol>& config) const {
  std::vector<Symbol> rv(region_.size());
  for (std::size_t k = 0; k < collar_.size(); ++k) rv[region_.index_of(collar_.support()[k])] = collar_.values()[k];
  for (std::size_t k = 0; k < config.size(); ++k) rv[lambda_in_region_[k]] = config[k];
  return window_energy(G_, windows_, rv);
}

ConformalityReport conformality_check_fv(const FiniteVolumeGibbs& mu, std::size_t all_pairs_limit) {
  ConformalityReport r;
  const std::size_t n = mu.size();
  auto check = [&](std::size_t i, std::size_t j) {
    const Pattern a(mu.volume(), mu.configuration(i));
    const Pattern b(mu.volume(), mu.configuration(j));
    const double psi = markov_cocycle_value(mu.potential(), a, b, mu.collar());
    const double lr = mu.log_probability(j) - mu.log_probability(i);
    r.max_deviation = std::max(r.max_deviation, std::abs(lr - psi));
    ++r.pairs;
  };
  if (n <= all_pairs_limit) {
    r.all_pairs = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) check(i, j);
    return r;
  }
  for (std::size_t ref : {std::size_t{0}, n / 2, n - 1})
    for (std::size_t j = 0; j < n; ++j)
      if (j != ref) check(ref, j);
  Symbol q = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (Symbol v : mu.configuration(i)) q = std::max(q, v + 1);
  std::vector<Symbol> c;
  for (std::size_t i = 0; i < n; ++i) {
    c = mu.configuration(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Symbol old = c[k];
      for (Symbol s = old + 1; s < q; ++s) {
        c[k] = s;
        if (auto j = mu.find(c)) check(i, *j);
      }
      c[k] = old;
    }
  }
  return r;
}

GlauberSampler::GlauberSampler(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda,
                               const Pattern& collar, std::uint64_t seed, bool allow_without_safe_symbol)
    : X_(&X), G_(G), lambda_(lambda), rc_(X, lambda.united(collar.support())), rng_(seed) {
  if (lambda.empty()) throw Error("empty site set");
  check_collar(lambda, collar);
  if (!check_maltese(X).satisfied) {
    if (!allow_without_safe_symbol) {
      throw Error("model has no safe symbol set, so single-site dynamics may be disconnected; "
                  "pass the override flag to sample anyway");
    }
    diag_.safe_symbol_override = true;
  }
  const SiteSet& region = rc_.region();
  auto start = random_admissible(X, region, &collar, derive_seed(seed, 0));
  if (!start) throw Error("no admissible configuration agrees with the collar");
  values_ = start->values();
  for (const Site& s : lambda) lambda_in_region_.push_back(static_cast<int>(region.index_of(s)));
  windows_ = windows_of(G, region, lambda);
  windows_at_.resize(region.size());
  for (std::size_t w = 0; w < windows_.size(); ++w)
    for (int i : windows_[w]) windows_at_[i].push_back(static_cast<int>(w));
}

void GlauberSampler::sweep() {
  Symbol cand[kMaxAlphabet];
  double weight[kMaxAlphabet];
  Symbol buf[16];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int r : lambda_in_region_) {
    const std::uint64_t mask = rc_.compatible_mask(r, values_);
    if (mask == 0) {
      throw Error("frozen site " + to_string(rc_.region()[r], lambda_.dim()) +
                  ": no symbol fits its neighbors; the collar is inconsistent");
    }
    int n = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) cand[n++] = static_cast<Symbol>(__builtin_ctzll(m));
    const Symbol old = values_[r];
    double top = -INFINITY;
    for (int k = 0; k < n; ++k) {
      values_[r] = cand[k];
      double e = 0.0;
      for (int w : windows_at_[r]) {
        const auto& win = windows_[w];
        for (std::size_t q = 0; q < win.size(); ++q) buf[q] = values_[win[q]];
        e += G_(std::span<const Symbol>(buf, win.size()));
      }
      weight[k] = e;
      top = std::max(top, e);
    }
    double total = 0.0;
    for (int k = 0; k < n; ++k) total += (weight[k] = std::exp(weight[k] - top));
    double u = unif(rng_) * total;
    int pick = n - 1;
    for (int k = 0; k < n; ++k) {
      u -= weight[k];
      if (u < 0) {
        pick = k;
        break;
      }
    }
    values_[r] = cand[pick];
    ++diag_.updates;
    if (cand[pick] != old) ++diag_.changes;
  }
  ++diag_.sweeps;
}

std::vector<Symbol> GlauberSampler::state() const {
  std::vector<Symbol> out(lambda_in_region_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[lambda_in_region_[k]];
  return out;
}

double integrated_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 4) return 1.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t t = 1; t < n / 2; ++t) {
    double c = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) c += (x[i] - mean) * (x[i + t] - mean);
    c /= static_cast<double>(n) * c0;
    tau += 2.0 * c;
    if (static_cast<double>(t) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

GlauberRun glauber_sample(const ShiftSpace& X, const LocalPotential& G, const SiteSet& lambda,
                          const Pattern& collar, std::uint64_t seed, std::size_t sweeps, std::size_t thin,
                          std::size_t burn_in, const std::vector<int>& symbol_values,
                          const std::function<void(const std::vector<Symbol>&)>& on_sample,
                          bool allow_without_safe_symbol) {
  if (thin == 0) throw Error("thin must be positive");
  GlauberSampler g(X, G, lambda, collar, seed, allow_without_safe_symbol);
  for (std::size_t s = 0; s < burn_in; ++s) g.sweep();
  GlauberRun run;
  for (std::size_t s = 1; s <= sweeps; ++s) {
    g.sweep();
    if (s % thin) continue;
    const std::vector<Symbol> st = g.state();
    double m = 0.0;
    for (Symbol v : st) m += symbol_values.at(v);
    run.observable.push_back(m / static_cast<double>(st.size()));
    ++run.samples;
    if (on_sample) on_sample(st);
  }
  run.diagnostics = g.diagnostics();
  run.tau_int = integrated_autocorrelation(run.observable);
  return run;
}

double marginal_tv_distance(const FiniteVolumeGibbs& exact,
                            const std::function<void(const std::function<void(const std::vector<Symbol>&)>&)>& stream) {
  const SiteSet& L = exact.volume();
  const int q = [&] {
    Symbol top = 0;
    for (std::size_t i = 0; i < exact.size(); ++i)
      for (Symbol s : exact.configuration(i)) top = std::max(top, s);
    return top + 1;
  }();
  // Families: single sites, then (site, site + e_axis) pairs.
  std::vector<std::pair<int, int>> fam;
  for (std::size_t i = 0; i < L.size(); ++i) fam.emplace_back(static_cast<int>(i), -1);
  for (std::size_t i = 0; i < L.size(); ++i)
    for (int axis = 0; axis < L.dim(); ++axis) {
      const long j = L.index_of(L[i] + unit_vector(axis));
      if (j >= 0) fam.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  auto cell = [&](const std::pair<int, int>& f, const std::vector<Symbol>& c) {
    return f.second < 0 ? c[f.first] : c[f.first] * q + c[f.second];
  };
  std::vector<std::vector<double>> want(fam.size(), std::vector<double>(q * q, 0.0));
  std::vector<std::vector<double>> got = want;
  for (std::size_t i = 0; i < exact.size(); ++i)
    for (std::size_t f = 0; f < fam.size(); ++f) want[f][cell(fam[f], exact.configuration(i))] += exact.probability(i);
  std::size_t n = 0;
  stream([&](const std::vector<Symbol>& c) {
    for (std::size_t f = 0; f < fam.size(); ++f) got[f][cell(fam[f], c)] += 1.0;
    ++n;
  });
  if (n == 0) throw Error("no samples");
  double worst = 0.0;
  for (std::size_t f = 0; f < fam.size(); ++f) {
    double tv = 0.0;
    for (int k = 0; k < q * q; ++k) tv += std::abs(got[f][k] / static_cast<double>(n) - want[f][k]);
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

double marginal_tv_distance(const FiniteVolumeGibbs& exact, const std::vector<std::vector<Symbol>>& samples) {
  return marginal_tv_distance(exact, [&](const std::function<void(const std::vector<Symbol>&)>& emit) {
    for (const auto& s : samples) emit(s);
  });
}

EntropyScan box_entropy_scan(const ShiftSpace& X, int n_max, int margin, std::size_t cap) {
  EntropyScan scan;
  scan.margin = margin;
  for (int n = 1; n <= n_max; ++n) {
    const SiteSet F = SiteSet::ball(X.dim(), Site{}, n);
    std::size_t count = 0;
    try {
      count = count_patterns(X, F, std::nullopt, EnumerationOptions{margin, cap});
    } catch (const EnumerationCapExceeded&) {
      scan.truncated = true;
      break;
    }
    EntropyRow row;
    row.n = n;
    row.count = static_cast<double>(count);
    row.log_count = count ? std::log(static_cast<double>(count)) : -INFINITY;
    row.value = row.log_count / static_cast<double>(F.size());
    scan.rows.push_back(row);
  }
  return scan;
}

namespace {

double plug_in_entropy(const std::unordered_map<std::uint64_t, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [k, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

PressureEstimate empirical_pressure(const std::vector<Pattern>& samples, const LocalPotential& G, int b, int batches) {
  if (samples.empty()) throw Error("no samples");
  if (b < 1) throw Error("block size must be positive");
  const int dim = samples.front().dim();
  const SiteSet block = SiteSet::box(dim, 0, b - 1);
  int q = 1;
  for (const auto& s : samples)
    for (Symbol v : s.values()) q = std::max(q, v + 1);
  if (static_cast<double>(block.size()) * std::log2(static_cast<double>(q) + 1) > 62) {
    throw Error("block too large to encode");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> obs;  // (block, block minus last site)
  std::vector<double> gvals;
  for (const auto& smp : samples) {
    const SiteSet& sup = smp.support();
    const Site lo = sup.lower_corner(), hi = sup.upper_corner();
    Site top = hi;
    for (int i = 0; i < dim; ++i) top[i] = hi[i] - (b - 1);
    bool any = true;
    for (int i = 0; i < dim; ++i) any = any && top[i] >= lo[i];
    if (any) {
      for (const Site& p : SiteSet::box(dim, lo, top)) {
        std::uint64_t key = 0, prefix = 0;
        bool complete = true;
        for (std::size_t k = 0; k < block.size(); ++k) {
          const long i = sup.index_of(p + block[k]);
          if (i < 0) {
            complete = false;
            break;
          }
          if (k + 1 == block.size()) prefix = key;
          key = key * static_cast<std::uint64_t>(q + 1) + static_cast<std::uint64_t>(smp.values()[i] + 1);
        }
        if (complete) obs.emplace_back(key, prefix);
      }
    }
    std::vector<Symbol> wbuf(G.footprint().size());
    for (const Site& j : sup) {
      bool inside = true;
      for (std::size_t k = 0; k < wbuf.size() && inside; ++k) {
        const long i = sup.index_of(j + G.footprint()[k]);
        if (i < 0) inside = false;
        else wbuf[k] = smp.values()[i];
      }
      if (inside) gvals.push_back(G(wbuf));
    }
  }
  if (obs.empty()) throw Error("samples are smaller than the block");

  auto estimate = [&](std::size_t from, std::size_t to, double* singleton) {
    std::unordered_map<std::uint64_t, std::size_t> full, pre;
    for (std::size_t i = from; i < to; ++i) {
      ++full[obs[i].first];
      ++pre[obs[i].second];
    }
    if (singleton) {
      std::size_t ones = 0;
      for (const auto& [k, c] : full) ones += c == 1;
      *singleton = static_cast<double>(ones) / static_cast<double>(full.size());
    }
    return plug_in_entropy(full, to - from) - plug_in_entropy(pre, to - from);
  };

  PressureEstimate out;
  out.entropy = estimate(0, obs.size(), &out.singleton_fraction);
  out.undersampled = out.singleton_fraction > 0.5;
  const double gmean = mean_of(gvals);
  out.pressure = out.entropy + gmean;
  const std::size_t B = static_cast<std::size_t>(std::max(2, batches));
  std::vector<double> hb, pb;
  for (std::size_t k = 0; k < B; ++k) {
    const std::size_t a = obs.size() * k / B, z = obs.size() * (k + 1) / B;
    const std::size_t ga = gvals.size() * k / B, gz = gvals.size() * (k + 1) / B;
    if (z <= a) continue;
    const double h = estimate(a, z, nullptr);
    double gm = 0.0;
    for (std::size_t i = ga; i < gz; ++i) gm += gvals[i];
    gm = gz > ga ? gm / static_cast<double>(gz - ga) : 0.0;
    hb.push_back(h);
    pb.push_back(h + gm);
  }
  out.stderr_entropy = stderr_of(hb);
  out.stderr_pressure = stderr_of(pb);
  return out;
}

namespace {

std::vector<double> batch_means(const std::vector<double>& x, std::size_t batches) {
  std::vector<double> out;
  const std::size_t B = std::max<std::size_t>(2, std::min(batches, x.size()));
  for (std::size_t k = 0; k < B; ++k) {
    const std::size_t a = x.size() * k / B, z = x.size() * (k + 1) / B;
    if (z <= a) continue;
    out.push_back(std::accumulate(x.begin() + static_cast<long>(a), x.begin() + static_cast<long>(z), 0.0) /
                  static_cast<double>(z - a));
  }
  return out;
}

}  // namespace

ThermoScan thermo_limit_scan(const ShiftSpace& X, const LocalPotential& G, const std::vector<SiteSet>& volumes,
                             const std::vector<CollarRule>& rules, const std::vector<Pattern>& cylinders,
                             const ScanOptions& opts) {
  if (volumes.empty() || rules.empty()) throw Error("need at least one volume and one collar rule");
  for (std::size_t v = 1; v < volumes.size(); ++v) {
    if (!volumes[v - 1].is_subset_of(volumes[v]) || volumes[v - 1].size() == volumes[v].size()) {
      throw Error("volumes must increase");
    }
  }
  for (const auto& c : cylinders) {
    if (!c.support().is_subset_of(volumes.front())) throw Error("target cylinders must lie in the first volume");
  }
  ThermoScan scan;
  scan.rules = rules;
  for (const auto& v : volumes) scan.volume_sizes.push_back(v.size());
  for (std::size_t r = 0; r < rules.size(); ++r) {
    std::vector<std::vector<ScanCell>> per_volume;
    for (std::size_t v = 0; v < volumes.size(); ++v) {
      const Pattern collar = constant_collar(volumes[v], rules[r].fill);
      std::vector<ScanCell> cells(cylinders.size());
      bool done = false;
      try {
        const auto mu = FiniteVolumeGibbs::exact(X, G, volumes[v], collar, opts.exact_cap);
        for (std::size_t c = 0; c < cylinders.size(); ++c) cells[c] = {mu.cylinder_probability(cylinders[c]), 0.0, true};
        done = true;
      } catch (const Error& e) {
        if (std::string(e.what()).find("too large") == std::string::npos) throw;
      }
      if (!done) {
        std::vector<std::vector<long>> idx(cylinders.size());
        for (std::size_t c = 0; c < cylinders.size(); ++c)
          for (const Site& s : cylinders[c].support()) idx[c].push_back(volumes[v].index_of(s));
        std::vector<std::vector<double>> series(cylinders.size());
        glauber_sample(
            X, G, volumes[v], collar, derive_seed(opts.seed, r * 1000 + v), opts.sweeps, 1, opts.burn_in,
            std::vector<int>(X.alphabet_size(), 0),
            [&](const std::vector<Symbol>& st) {
              for (std::size_t c = 0; c < cylinders.size(); ++c) {
                bool hit = true;
                for (std::size_t k = 0; k < idx[c].size() && hit; ++k) hit = st[idx[c][k]] == cylinders[c].values()[k];
                series[c].push_back(hit ? 1.0 : 0.0);
              }
            },
            opts.allow_without_safe_symbol);
        for (std::size_t c = 0; c < cylinders.size(); ++c) {
          const auto bm = batch_means(series[c], 20);
          cells[c] = {mean_of(bm), stderr_of(bm), false};
        }
      }
      per_volume.push_back(std::move(cells));
    }
    std::vector<double> diffs;
    for (std::size_t v = 1; v < volumes.size(); ++v) {
      double d = 0.0;
      for (std::size_t c = 0; c < cylinders.size(); ++c)
        d = std::max(d, std::abs(per_volume[v][c].value - per_volume[v - 1][c].value));
      diffs.push_back(d);
    }
    scan.diffs.push_back(diffs);
    scan.cells.push_back(std::move(per_volume));
  }
  scan.stabilized = true;
  for (const auto& d : scan.diffs) scan.stabilized = scan.stabilized && (d.empty() || d.back() < opts.tolerance);
  const std::size_t last = volumes.size() - 1;
  for (std::size_t r1 = 0; r1 < rules.size(); ++r1)
    for (std::size_t r2 = r1 + 1; r2 < rules.size(); ++r2)
      for (std::size_t c = 0; c < cylinders.size(); ++c) {
        const ScanCell& x = scan.cells[r1][last][c];
        const ScanCell& y = scan.cells[r2][last][c];
        const double se = std::sqrt(x.stderr * x.stderr + y.stderr * y.stderr);
        if (std::abs(x.value - y.value) > std::max(3.0 * se, opts.tolerance)) scan.boundary_dependence = true;
      }
  return scan;
}

SiteSet centered_box(int dim, int size) {
  if (size < 1) throw Error("box size must be positive");
  const int n = size / 2;
  return size % 2 ? SiteSet::box(dim, -n, n) : SiteSet::box(dim, -n, n - 1);
}

PhaseProbe phase_probe(const std::string& model, const PhaseProbeOptions& opts) {
  const Model m = make_model(model);
  const ShiftSpace& X = m.space;
  PhaseProbe out;
  out.model = model;
  Symbol first = 0, second = 0;
  std::vector<double> obs(X.alphabet_size(), 0.0);
  std::function<LocalPotential(double)> potential;
  const std::string base = model.substr(0, model.find('('));
  if (base == "three_spin_ising") {
    first = X.symbol_index("+");
    second = X.symbol_index("-");
    obs = {-1.0, 1.0};
    potential = [&](double beta) { return LocalPotential::three_spin(beta, m.values); };
    out.collar_first = "all +";
    out.collar_second = "all -";
    out.observable = "spin at the origin";
  } else if (base == "iceberg") {
    first = X.alphabet_size() - 1;
    second = 0;
    for (int s = 0; s < X.alphabet_size(); ++s) obs[s] = m.values[s] > 0 ? 1.0 : (m.values[s] < 0 ? -1.0 : 0.0);
    potential = [&](double beta) {
      std::vector<double> phi(X.alphabet_size());
      for (int s = 0; s < X.alphabet_size(); ++s) phi[s] = m.values[s] != 0 ? beta : 0.0;
      return LocalPotential::site(X.dim(), phi);
    };
    out.collar_first = "all +M";
    out.collar_second = "all -M";
    out.observable = "sign of the origin symbol";
  } else if (base == "beach") {
    const auto& names = X.alphabet();
    auto idx = [&](const std::string& n) {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end()) throw Error("beach probe needs |A1| >= 1 and |B| >= 2");
      return static_cast<Symbol>(it - names.begin());
    };
    first = idx("w0:0");
    second = idx("w0:1");
    for (int s = 0; s < X.alphabet_size(); ++s) obs[s] = names[s].ends_with(":0") ? 1.0 : (names[s].ends_with(":1") ? -1.0 : 0.0);
    potential = [&](double beta) {
      std::vector<double> phi(X.alphabet_size());
      for (int s = 0; s < X.alphabet_size(); ++s) phi[s] = names[s][0] == 'w' ? beta : 0.0;
      return LocalPotential::site(X.dim(), phi);
    };
    out.collar_first = "all w0:0";
    out.collar_second = "all w0:1";
    out.observable = "+1 if the origin's B letter is 0, -1 if it is 1, else 0";
  } else {
    throw SchemaError("phase probe supports three_spin_ising, iceberg(M) and beach(A0,A1,B)");
  }

  for (int size : opts.sizes) {
    const SiteSet lambda = centered_box(X.dim(), size);
    const long origin = lambda.index_of(Site{});
    for (double beta : opts.betas) {
      const LocalPotential G = potential(beta);
      PhaseRow row;
      row.beta = beta;
      row.size = size;
      std::vector<double> bm[2];
      for (int side = 0; side < 2; ++side) {
        const Pattern collar = constant_collar(lambda, side == 0 ? first : second);
        for (std::size_t k = 0; k < opts.seeds.size(); ++k) {
          GlauberSampler g(X, G, lambda, collar, derive_seed(opts.seeds[k], side), true);
          for (std::size_t s = 0; s < opts.burn_in; ++s) g.sweep();
          std::vector<double> series;
          series.reserve(opts.sweeps);
          for (std::size_t s = 0; s < opts.sweeps; ++s) {
            g.sweep();
            series.push_back(obs[g.at(static_cast<std::size_t>(origin))]);
          }
          const auto b = batch_means(series, opts.batches);
          bm[side].insert(bm[side].end(), b.begin(), b.end());
        }
      }
      row.mean_first = mean_of(bm[0]);
      row.mean_second = mean_of(bm[1]);
      row.stderr_first = stderr_of(bm[0]);
      row.stderr_second = stderr_of(bm[1]);
      row.gap = row.mean_first - row.mean_second;
      row.stderr_gap = std::sqrt(row.stderr_first * row.stderr_first + row.stderr_second * row.stderr_second);
      out.rows.push_back(row);
    }
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const auto& a = out.rows[i - 1];
    const auto& b = out.rows[i];
    if (a.size != b.size || b.beta < a.beta) continue;
    if (b.gap < a.gap - 3.0 * std::hypot(a.stderr_gap, b.stderr_gap)) out.monotone_in_beta = false;
  }
  return out;
}

}  // namespace tms
