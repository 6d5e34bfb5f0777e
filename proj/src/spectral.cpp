#include "tms/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <cstdio>
#include <mutex>
#include <thread>

#include "tms/error.hpp"
#include "tms/random.hpp"

namespace tms {

namespace {

ShiftSpace stacked(const ShiftSpace& base) {
  const int d = base.dim();
  if (d + 1 > kMaxDim) throw Error("free product would exceed the maximum dimension");
  if (!base.has_axis_pairs()) throw Error("free product needs an axis-pair base");
  AxisPairs ap = base.axis_pairs();
  const int q = base.alphabet_size();
  ap.allowed.push_back(std::vector<std::vector<std::uint8_t>>(q, std::vector<std::uint8_t>(q, 1)));
  return ShiftSpace(d + 1, base.alphabet(), ap);
}

}  // namespace

FreeProduct::FreeProduct(const ShiftSpace& base) : base_(base), space_(stacked(base)) {}

Site FreeProduct::lift(const Site& k, int layer, int base_dim) {
  Site s = k;
  s[base_dim] = layer;
  return s;
}

Pattern FreeProduct::layer(const Pattern& p, int n) const {
  const int d = base_.dim();
  std::vector<Site> sites;
  std::vector<std::pair<Site, Symbol>> cells;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Site& s = p.support()[i];
    if (s[d] != n) continue;
    Site k = s;
    k[d] = 0;
    cells.emplace_back(k, p.values()[i]);
  }
  // Sites keep their relative order after dropping the last coordinate.
  std::vector<Symbol> values;
  for (auto& [k, v] : cells) {
    sites.push_back(k);
    values.push_back(v);
  }
  return Pattern(SiteSet(d, sites), values);
}

std::pair<int, int> FreeProduct::layer_range(const SiteSet& window) const {
  if (window.empty()) throw Error("empty site set");
  return {window.lower_corner()[base_.dim()], window.upper_corner()[base_.dim()]};
}

std::string to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::NotTotallyErgodic: return "not_totally_ergodic";
    case SpectralClass::TotallyErgodicNotWeaklyMixing: return "totally_ergodic_not_weakly_mixing";
    case SpectralClass::WeaklyMixingNotStronglyMixing: return "weakly_mixing_not_strongly_mixing";
    case SpectralClass::StronglyMixing: return "strongly_mixing";
  }
  return "?";
}

DriverMeasure DriverMeasure::point_mass(int sign) {
  if (sign != 1 && sign != -1) throw Error("sign must be +1 or -1");
  DriverMeasure d;
  d.kind = Kind::PointMass;
  d.sign = sign;
  return d;
}

DriverMeasure DriverMeasure::periodic(std::vector<int> word) {
  if (word.empty()) throw Error("periodic driver needs a nonempty word");
  for (int v : word)
    if (v != 1 && v != -1) throw Error("periodic word letters must be + or -");
  DriverMeasure d;
  d.kind = Kind::Periodic;
  d.word = std::move(word);
  return d;
}

DriverMeasure DriverMeasure::sturmian(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw SchemaError("sturmian alpha must lie in (0, 1)");
  DriverMeasure d;
  d.kind = Kind::Sturmian;
  d.alpha = alpha;
  return d;
}

DriverMeasure DriverMeasure::chacon() {
  DriverMeasure d;
  d.kind = Kind::Chacon;
  return d;
}

DriverMeasure DriverMeasure::bernoulli(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw SchemaError("bernoulli q must lie in [0, 1]");
  DriverMeasure d;
  d.kind = Kind::Bernoulli;
  d.q = q;
  return d;
}

DriverMeasure DriverMeasure::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&]() {
    try {
      std::size_t used = 0;
      const double x = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return x;
    } catch (const std::exception&) {
      throw SchemaError("driver " + kind + " needs a numeric argument, got '" + arg + "'");
    }
  };
  auto sign_of = [&](char c) {
    if (c == '+') return 1;
    if (c == '-') return -1;
    throw SchemaError(std::string("driver letters must be + or -, got '") + c + "'");
  };
  if (kind == "point_mass") {
    if (arg.size() != 1) throw SchemaError("point_mass needs a sign, as in point_mass:+");
    return point_mass(sign_of(arg[0]));
  }
  if (kind == "periodic") {
    std::vector<int> w;
    for (char c : arg) w.push_back(sign_of(c));
    if (w.empty()) throw SchemaError("periodic needs a word, as in periodic:+-");
    return periodic(w);
  }
  if (kind == "sturmian") return sturmian(number());
  if (kind == "bernoulli") return bernoulli(arg.empty() ? 0.5 : number());
  if (kind == "chacon") return chacon();
  throw SchemaError("unknown driver '" + text + "'; expected point_mass, periodic, sturmian, chacon or bernoulli");
}

std::string DriverMeasure::describe() const {
  switch (kind) {
    case Kind::PointMass: return std::string("point_mass:") + (sign > 0 ? "+" : "-");
    case Kind::Periodic: {
      std::string s = "periodic:";
      for (int v : word) s += v > 0 ? '+' : '-';
      return s;
    }
    case Kind::Sturmian: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "sturmian:%.10g", alpha);
      return buf;
    }
    case Kind::Chacon: return "chacon";
    case Kind::Bernoulli: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "bernoulli:%.10g", q);
      return buf;
    }
  }
  return "?";
}

SpectralClass DriverMeasure::literature_class() const {
  switch (kind) {
    case Kind::PointMass:
    case Kind::Bernoulli: return SpectralClass::StronglyMixing;
    case Kind::Periodic:
      return word.size() == 1 || std::all_of(word.begin(), word.end(), [&](int v) { return v == word[0]; })
                 ? SpectralClass::StronglyMixing
                 : SpectralClass::NotTotallyErgodic;
    case Kind::Sturmian: return SpectralClass::TotallyErgodicNotWeaklyMixing;
    case Kind::Chacon: return SpectralClass::WeaklyMixingNotStronglyMixing;
  }
  return SpectralClass::StronglyMixing;
}

std::string DriverMeasure::literature_note() const {
  switch (kind) {
    case Kind::PointMass: return "a point mass driver gives a plain product of one layer measure";
    case Kind::Bernoulli: return "Bernoulli shifts are mixing of all orders";
    case Kind::Periodic: return "a periodic orbit has the eigenvalues exp(2 pi i j / p)";
    case Kind::Sturmian: return "an irrational rotation coding has discrete spectrum generated by exp(2 pi i alpha)";
    case Kind::Chacon: return "Chacon's transformation is weakly mixing but not mixing";
  }
  return "";
}

double DriverMeasure::plus_frequency() const {
  switch (kind) {
    case Kind::PointMass: return sign > 0 ? 1.0 : 0.0;
    case Kind::Periodic:
      return static_cast<double>(std::count(word.begin(), word.end(), 1)) / static_cast<double>(word.size());
    case Kind::Sturmian: return 1.0 - alpha;
    case Kind::Chacon: return 2.0 / 3.0;
    case Kind::Bernoulli: return q;
  }
  return 0.0;
}

const std::vector<int>& chacon_word(std::size_t length) {
  static std::vector<int> word{1};  // "0" as +1
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  while (word.size() < length) {
    std::vector<int> next;
    next.reserve(3 * word.size() + 1);
    next.insert(next.end(), word.begin(), word.end());
    next.insert(next.end(), word.begin(), word.end());
    next.push_back(-1);
    next.insert(next.end(), word.begin(), word.end());
    word = std::move(next);
  }
  return word;
}

std::vector<int> driver_sample(const DriverMeasure& nu, std::size_t length, std::uint64_t seed) {
  if (length == 0) throw Error("driver length must be positive");
  std::mt19937_64 rng(seed);
  std::vector<int> eta(length);
  switch (nu.kind) {
    case DriverMeasure::Kind::PointMass: std::fill(eta.begin(), eta.end(), nu.sign); break;
    case DriverMeasure::Kind::Periodic: {
      const std::size_t p = nu.word.size();
      const std::size_t r = std::uniform_int_distribution<std::size_t>(0, p - 1)(rng);
      for (std::size_t n = 0; n < length; ++n) eta[n] = nu.word[(n + r) % p];
      break;
    }
    case DriverMeasure::Kind::Sturmian: {
      const double theta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      for (std::size_t n = 0; n < length; ++n) {
        // n alpha mod 1 via fmod on the product keeps the error at O(n * ulp(n)).
        double x = std::fmod(static_cast<double>(n) * nu.alpha + theta, 1.0);
        eta[n] = x < nu.alpha ? -1 : 1;
      }
      break;
    }
    case DriverMeasure::Kind::Chacon: {
      const std::size_t need = std::max<std::size_t>(length * 64, 1u << 20);
      const std::vector<int>& w = chacon_word(need);
      const std::size_t start = std::uniform_int_distribution<std::size_t>(0, w.size() - length)(rng);
      std::copy(w.begin() + static_cast<long>(start), w.begin() + static_cast<long>(start + length), eta.begin());
      break;
    }
    case DriverMeasure::Kind::Bernoulli: {
      std::bernoulli_distribution coin(nu.q);
      for (auto& e : eta) e = coin(rng) ? 1 : -1;
      break;
    }
  }
  return eta;
}

std::vector<double> driver_covariance(const DriverMeasure& nu, int K) {
  if (K < 0) throw Error("max lag must be nonnegative");
  std::vector<double> c(K + 1, 0.0);
  const double m = 2.0 * nu.plus_frequency() - 1.0;
  switch (nu.kind) {
    case DriverMeasure::Kind::PointMass: break;
    case DriverMeasure::Kind::Bernoulli: c[0] = 1.0 - m * m; break;
    case DriverMeasure::Kind::Periodic: {
      const std::size_t p = nu.word.size();
      for (int k = 0; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i) s += nu.word[i] * nu.word[(i + k) % p];
        c[k] = s / static_cast<double>(p) - m * m;
      }
      break;
    }
    case DriverMeasure::Kind::Sturmian: {
      // Arcs [0, α) and [0, α) - t overlap in max(0, α - t) + max(0, α - (1 - t)).
      const double a = nu.alpha;
      for (int k = 0; k <= K; ++k) {
        const double t = std::fmod(static_cast<double>(k) * a, 1.0);
        const double overlap = std::max(0.0, a - t) + std::max(0.0, a - (1.0 - t));
        const double differ = 2.0 * (a - overlap);
        c[k] = 1.0 - 2.0 * differ - m * m;
      }
      break;
    }
    case DriverMeasure::Kind::Chacon: {
      const std::size_t N = 1u << 21;
      const std::vector<int>& w = chacon_word(N + static_cast<std::size_t>(K));
      double mean = 0.0;
      for (std::size_t i = 0; i < N; ++i) mean += w[i];
      mean /= static_cast<double>(N);
      for (int k = 0; k <= K; ++k) {
        long s = 0;
        for (std::size_t i = 0; i < N; ++i) s += w[i] * w[i + k];
        c[k] = static_cast<double>(s) / static_cast<double>(N) - mean * mean;
      }
      break;
    }
  }
  return c;
}

LayerSampler markov_layer_sampler(const MarkovMeasure& mu) {
  return [mu](const SiteSet& window, std::mt19937_64& rng) {
    if (window.dim() != 1) throw Error("Markov layers are one-dimensional");
    if (window.empty()) return Pattern(window, {});
    const int lo = window.lower_corner()[0], hi = window.upper_corner()[0];
    const std::vector<Symbol> path = sample_chain(mu, static_cast<std::size_t>(hi - lo + 1), rng);
    std::vector<Symbol> v;
    v.reserve(window.size());
    for (const Site& s : window) v.push_back(path[s[0] - lo]);
    return Pattern(window, v);
  };
}

LayerSampler constant_layer_sampler(int dim, Symbol s) {
  return [dim, s](const SiteSet& window, std::mt19937_64&) {
    if (window.dim() != dim) throw SchemaError("dimension mismatch");
    return Pattern(window, std::vector<Symbol>(window.size(), s));
  };
}

Pattern product_field_sample(const FreeProduct& fp, const LayerSampler& plus, const LayerSampler& minus,
                             const std::vector<int>& eta, const SiteSet& window, std::uint64_t seed) {
  const int d = fp.base().dim();
  if (window.dim() != d + 1) throw SchemaError("window dimension must be the base dimension plus one");
  if (window.empty()) return Pattern(window, {});
  const auto [lo, hi] = fp.layer_range(window);
  if (lo < 0 || hi >= static_cast<int>(eta.size())) {
    throw Error("window reaches layers " + std::to_string(lo) + ".." + std::to_string(hi) +
                " but the driver path covers 0.." + std::to_string(static_cast<long>(eta.size()) - 1));
  }
  std::vector<Symbol> values(window.size());
  for (int n = lo; n <= hi; ++n) {
    std::vector<Site> base_sites;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < window.size(); ++i) {
      if (window[i][d] != n) continue;
      Site k = window[i];
      k[d] = 0;
      base_sites.push_back(k);
      where.push_back(i);
    }
    if (base_sites.empty()) continue;
    // Sorted order is preserved when the layer coordinate is fixed.
    const SiteSet bw(d, base_sites);
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    const Pattern layer = (eta[n] > 0 ? plus : minus)(bw, rng);
    for (std::size_t j = 0; j < where.size(); ++j) values[where[j]] = layer.values()[j];
  }
  return Pattern(window, values);
}

ProductFieldMeasure::ProductFieldMeasure(const FreeProduct& fp, MarkovMeasure plus, MarkovMeasure minus,
                                         DriverMeasure nu)
    : fp_(&fp), plus_(std::move(plus)), minus_(std::move(minus)), nu_(std::move(nu)) {
  if (fp.base().dim() != 1) throw Error("product field measure needs a one-dimensional base");
  if (nu_.kind == DriverMeasure::Kind::Sturmian || nu_.kind == DriverMeasure::Kind::Chacon) {
    throw Error("exact product probabilities need a point-mass, Bernoulli or periodic driver");
  }
}

double ProductFieldMeasure::probability(const Pattern& p) const {
  if (p.size() == 0) return 1.0;
  const auto [lo, hi] = fp_->layer_range(p.support());
  std::vector<double> pp, pm;
  for (int n = lo; n <= hi; ++n) {
    const Pattern l = fp_->layer(p, n);
    pp.push_back(l.size() ? plus_.probability(l) : 1.0);
    pm.push_back(l.size() ? minus_.probability(l) : 1.0);
  }
  auto given = [&](const std::function<int(int)>& eta) {
    double prod = 1.0;
    for (std::size_t i = 0; i < pp.size(); ++i) prod *= eta(static_cast<int>(i)) > 0 ? pp[i] : pm[i];
    return prod;
  };
  switch (nu_.kind) {
    case DriverMeasure::Kind::PointMass: return given([&](int) { return nu_.sign; });
    case DriverMeasure::Kind::Bernoulli: {
      double prod = 1.0;
      for (std::size_t i = 0; i < pp.size(); ++i) prod *= nu_.q * pp[i] + (1.0 - nu_.q) * pm[i];
      return prod;
    }
    case DriverMeasure::Kind::Periodic: {
      const int per = static_cast<int>(nu_.word.size());
      double total = 0.0;
      for (int r = 0; r < per; ++r) total += given([&](int i) { return nu_.word[(i + r) % per]; });
      return total / per;
    }
    default: break;
  }
  throw Error("unsupported driver");
}

Observable layer_magnetization(const FreeProduct& fp, const SiteSet& base_window, std::vector<double> symbol_values) {
  const int d = fp.base().dim();
  if (base_window.dim() != d) throw SchemaError("base window dimension mismatch");
  std::vector<Site> sites;
  for (const Site& k : base_window) sites.push_back(FreeProduct::lift(k, 0, d));
  Observable o;
  o.name = "layer magnetization over " + std::to_string(base_window.size()) + " sites";
  o.window = SiteSet(d + 1, sites);
  o.f = [vals = std::move(symbol_values)](std::span<const Symbol> x) {
    double s = 0.0;
    for (Symbol v : x) s += vals.at(v);
    return s / static_cast<double>(x.size());
  };
  return o;
}

Observable site_value(int dim, const Site& s, std::vector<double> symbol_values) {
  Observable o;
  o.name = "value at " + to_string(s, dim);
  o.window = SiteSet(dim, {s});
  o.f = [vals = std::move(symbol_values)](std::span<const Symbol> x) { return vals.at(x[0]); };
  return o;
}

FieldSampler product_field_sampler(const FreeProduct& fp, LayerSampler plus, LayerSampler minus, DriverMeasure nu) {
  return [&fp, plus = std::move(plus), minus = std::move(minus), nu = std::move(nu)](const SiteSet& window,
                                                                                       std::uint64_t seed) {
    const auto [lo, hi] = fp.layer_range(window);
    if (lo < 0) throw Error("product field windows must start at layer 0 or above");
    const std::vector<int> eta = driver_sample(nu, static_cast<std::size_t>(hi) + 1, derive_seed(seed, 0));
    return product_field_sample(fp, plus, minus, eta, window, derive_seed(seed, 1));
  };
}

CorrelationSeries correlation_series(const FieldSampler& sampler, const Observable& f, const Site& axis,
                                     const CorrelationOptions& opts) {
  if (opts.max_lag < 0 || opts.positions < 1) throw Error("need max_lag >= 0 and positions >= 1");
  if (opts.replicas < 2) throw Error("need at least two replicas for error bars");
  const int dim = f.window.dim();
  const int span = opts.max_lag + opts.positions;
  std::vector<Site> sites;
  for (int n = 0; n < span; ++n)
    for (const Site& s : f.window) sites.push_back(s + scaled(axis, n));
  const SiteSet W(dim, sites);
  std::vector<std::vector<long>> idx(span);
  for (int n = 0; n < span; ++n)
    for (const Site& s : f.window) idx[n].push_back(W.index_of(s + scaled(axis, n)));

  const std::size_t R = opts.replicas;
  const int K = opts.max_lag;
  std::vector<std::vector<double>> prod(R, std::vector<double>(K + 1, 0.0));
  std::vector<double> means(R, 0.0);
  auto run = [&](std::size_t r) {
    const Pattern x = sampler(W, derive_seed(opts.seed, r));
    std::vector<double> g(span);
    std::vector<Symbol> buf(f.window.size());
    for (int n = 0; n < span; ++n) {
      for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = x.values()[idx[n][j]];
      g[n] = f.f(buf);
    }
    double m = 0.0;
    for (int n = 0; n < opts.positions; ++n) m += g[n];
    means[r] = m / opts.positions;
    for (int k = 0; k <= K; ++k) {
      double s = 0.0;
      for (int n = 0; n < opts.positions; ++n) s += g[n] * g[n + k];
      prod[r][k] = s / opts.positions;
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(R)));
  if (jobs == 1) {
    for (std::size_t r = 0; r < R; ++r) run(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < R; r += jobs) run(r);
      });
    for (auto& th : pool) th.join();
  }

  CorrelationSeries out;
  out.observable = f.name;
  out.axis = axis;
  out.replicas = R;
  out.mean = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(R);
  for (int k = 0; k <= K; ++k) {
    // Per-replica values centered with the pooled mean; replicas are independent batches.
    double s = 0.0, s2 = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = prod[r][k] - out.mean * out.mean;
      s += v;
      s2 += v * v;
    }
    const double mean = s / static_cast<double>(R);
    const double var = std::max(0.0, (s2 - s * mean) / static_cast<double>(R - 1));
    out.lags.push_back(k);
    out.C.push_back(mean);
    out.stderr.push_back(std::sqrt(var / static_cast<double>(R)));
  }
  return out;
}

namespace {

std::vector<double> cosine_transform(const std::vector<double>& C) {
  const int K = static_cast<int>(C.size()) - 1;
  std::vector<double> S(K + 1);
  for (int j = 0; j <= K; ++j) {
    const double f = static_cast<double>(j) / (2.0 * K);
    double s = C[0];
    for (int k = 1; k < K; ++k) s += 2.0 * C[k] * std::cos(2.0 * std::numbers::pi * f * k);
    s += C[K] * std::cos(2.0 * std::numbers::pi * f * K);
    S[j] = s;
  }
  return S;
}

}  // namespace

std::vector<Peak> periodogram_peaks(const CorrelationSeries& s, std::size_t top) {
  if (s.C.size() < 32) throw Error("periodogram needs at least 32 lags");
  const std::vector<double> S = cosine_transform(s.C);
  const int K = static_cast<int>(S.size()) - 1;
  double total = 0.0;
  for (double v : S) total += v * v;
  std::vector<Peak> peaks;
  for (int j = 0; j <= K; ++j) {
    // local maxima of |S|
    const double m = std::abs(S[j]);
    if ((j > 0 && std::abs(S[j - 1]) > m) || (j < K && std::abs(S[j + 1]) > m)) continue;
    peaks.push_back({static_cast<double>(j) / (2.0 * K), total > 0 ? S[j] * S[j] / total : 0.0, m});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.power_fraction > b.power_fraction; });
  if (peaks.size() > top) peaks.resize(top);
  return peaks;
}

std::string to_string(SpectralReport::Verdict v) {
  switch (v) {
    case SpectralReport::Verdict::EigenvalueDetected: return "eigenvalue_detected";
    case SpectralReport::Verdict::CesaroDecay: return "cesaro_decay";
    case SpectralReport::Verdict::PlainDecay: return "plain_decay";
    case SpectralReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SpectralReport classify_empirical(const CorrelationSeries& s, const DriverMeasure& nu, int k0) {
  SpectralReport r;
  r.literature = nu.literature_class();
  r.note = "literature label: " + to_string(r.literature) + " (" + nu.literature_note() +
           "); mild versus strong mixing is not decidable from finite correlation data";
  const int K = static_cast<int>(s.C.size()) - 1;
  if (K < 1) throw Error("series needs at least one positive lag");
  k0 = std::max(k0, 1);
  for (int k = 1; k <= K; ++k) {
    r.cesaro_mean += std::abs(s.C[k]);
    r.mean_stderr += s.stderr[k];
    r.max_abs = std::max(r.max_abs, std::abs(s.C[k]));
  }
  r.cesaro_mean /= K;
  r.mean_stderr /= K;
  r.plain_decay = true;
  for (int k = k0; k <= K; ++k) r.plain_decay = r.plain_decay && std::abs(s.C[k]) < 3.0 * s.stderr[k];
  bool some_large = false;
  for (int k = 1; k <= K; ++k) some_large = some_large || std::abs(s.C[k]) >= 3.0 * s.stderr[k];

  if (K + 1 >= 32) {
    const auto peaks = periodogram_peaks(s, 1);
    // Noise in S(f) from independent lag errors: sqrt(Σ (2 stderr_k)^2).
    double noise = s.stderr[0] * s.stderr[0];
    for (int k = 1; k <= K; ++k) noise += 4.0 * s.stderr[k] * s.stderr[k];
    noise = std::sqrt(noise);
    if (!peaks.empty() && peaks[0].power_fraction >= 0.5 && peaks[0].frequency > 0.0 &&
        peaks[0].magnitude > 3.0 * noise) {
      r.verdict = SpectralReport::Verdict::EigenvalueDetected;
      r.frequency = peaks[0].frequency;
      r.power_fraction = peaks[0].power_fraction;
      return r;
    }
    if (!peaks.empty()) {
      r.frequency = peaks[0].frequency;
      r.power_fraction = peaks[0].power_fraction;
    }
  }
  if (r.plain_decay) r.verdict = SpectralReport::Verdict::PlainDecay;
  else if (r.cesaro_mean < 3.0 * r.mean_stderr && some_large) r.verdict = SpectralReport::Verdict::CesaroDecay;
  return r;
}

double mixture_limit(double plus_frequency, double p_plus, double p_minus) {
  const double d = p_plus - p_minus;
  return plus_frequency * (1.0 - plus_frequency) * d * d;
}

}  // namespace tms
