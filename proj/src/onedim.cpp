#include "tms/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "tms/error.hpp"

namespace tms {

TransitionMatrix::TransitionMatrix(std::vector<std::vector<std::uint8_t>> a) : a_(std::move(a)) {
  const std::size_t n = a_.size();
  if (n == 0 || n > static_cast<std::size_t>(kMaxAlphabet) * 256) throw SchemaError("bad transition matrix size");
  for (const auto& row : a_) {
    if (row.size() != n) throw SchemaError("transition matrix must be square");
    for (auto x : row)
      if (x > 1) throw SchemaError("transition matrix must be 0/1");
  }
}

TransitionMatrix TransitionMatrix::from_space(const ShiftSpace& X) {
  if (X.dim() != 1 || !X.has_axis_pairs()) throw SchemaError("need a one-dimensional axis-pairs shift space");
  return TransitionMatrix(X.axis_pairs().allowed[0]);
}

Eigen::MatrixXd TransitionMatrix::dense() const {
  const int n = size();
  Eigen::MatrixXd m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m(s, t) = a_[s][t];
  return m;
}

namespace {

std::vector<std::vector<bool>> reachability(const TransitionMatrix& A) {
  const int n = A.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int t = 0; t < n; ++t) {
        if (A(x, t) && !r[s][t]) {
          r[s][t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  return r;
}

}  // namespace

std::vector<std::vector<Symbol>> TransitionMatrix::communicating_classes() const {
  const int n = size();
  const auto r = reachability(*this);
  std::vector<int> owner(n, -1);
  std::vector<std::vector<Symbol>> classes;
  for (int s = 0; s < n; ++s) {
    if (owner[s] >= 0) continue;
    std::vector<Symbol> cls{s};
    owner[s] = static_cast<int>(classes.size());
    for (int t = s + 1; t < n; ++t) {
      if (owner[t] < 0 && r[s][t] && r[t][s]) {
        owner[t] = owner[s];
        cls.push_back(t);
      }
    }
    classes.push_back(cls);
  }
  return classes;
}

bool TransitionMatrix::irreducible() const {
  const auto r = reachability(*this);
  for (const auto& row : r)
    for (bool x : row)
      if (!x) return false;
  return true;
}

std::optional<int> TransitionMatrix::primitivity_exponent() const {
  if (!irreducible()) return std::nullopt;
  const int n = size();
  const int bound = (n - 1) * (n - 1) + 1;
  std::vector<std::vector<std::uint8_t>> power = a_;
  for (int k = 1; k <= bound; ++k) {
    bool all = true;
    for (const auto& row : power)
      for (auto x : row) all = all && x;
    if (all) return k;
    std::vector<std::vector<std::uint8_t>> next(n, std::vector<std::uint8_t>(n, 0));
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        if (power[s][m])
          for (int t = 0; t < n; ++t)
            if (a_[m][t]) next[s][t] = 1;
    power = std::move(next);
  }
  return std::nullopt;
}

PeriodicDecomposition periodic_decomposition(const TransitionMatrix& A) {
  if (!A.irreducible()) {
    std::string msg = "transition matrix is reducible; communicating classes:";
    for (const auto& c : A.communicating_classes()) {
      msg += " {";
      for (std::size_t i = 0; i < c.size(); ++i) msg += (i ? "," : "") + std::to_string(c[i]);
      msg += "}";
    }
    throw Error(msg);
  }
  const int n = A.size();
  std::vector<int> level(n, -1);
  level[0] = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int s = q.front();
    q.pop();
    for (int t = 0; t < n; ++t) {
      if (A(s, t) && level[t] < 0) {
        level[t] = level[s] + 1;
        q.push(t);
      }
    }
  }
  int g = 0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (A(s, t)) g = std::gcd(g, std::abs(level[s] + 1 - level[t]));
  PeriodicDecomposition d;
  d.period = g;
  d.classes.resize(g);
  for (int s = 0; s < n; ++s) d.classes[level[s] % g].push_back(s);
  return d;
}

namespace {

// Perron root and vector of a nonnegative matrix by power iteration from the
// uniform vector.
double perron(const Eigen::MatrixXd& M, Eigen::VectorXd& vec) {
  const int n = static_cast<int>(M.rows());
  vec = Eigen::VectorXd::Constant(n, 1.0 / n);
  double lambda = 0.0;
  for (int it = 0; it < 2'000'000; ++it) {
    Eigen::VectorXd next = M * vec;
    lambda = next.sum() / vec.sum();
    const double residual = (next - lambda * vec).lpNorm<Eigen::Infinity>() / (lambda * vec.lpNorm<Eigen::Infinity>());
    vec = next / next.sum();
    // A few extra rounds push the residual from 1e-13 down to rounding level.
    if (residual < 1e-13) {
      for (int extra = 0; extra < 100; ++extra) {
        next = M * vec;
        lambda = next.sum() / vec.sum();
        vec = next / next.sum();
      }
      return lambda;
    }
  }
  throw Error("power iteration did not converge");
}

}  // namespace

MarkovMeasure gibbs_markov(const TransitionMatrix& A, const std::vector<double>& phi) {
  const int n = A.size();
  if (static_cast<int>(phi.size()) != n) throw Error("potential needs one value per symbol");
  if (!A.primitive()) {
    throw Error("transition matrix is not primitive; use periodic_decomposition and recode by blocks");
  }
  Eigen::MatrixXd M = A.dense();
  for (int t = 0; t < n; ++t) M.col(t) *= std::exp(phi[t]);
  MarkovMeasure mu{A, {}, {}, 0.0, {}, {}, phi};
  mu.lambda = perron(M, mu.v);
  Eigen::VectorXd u;
  perron(M.transpose(), u);
  mu.u = u;
  mu.P = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (A(s, t)) mu.P(s, t) = M(s, t) * mu.v(t) / (mu.lambda * mu.v(s));
  for (int s = 0; s < n; ++s) mu.P.row(s) /= mu.P.row(s).sum();
  mu.p = mu.u.cwiseProduct(mu.v) / mu.u.dot(mu.v);
  return mu;
}

MarkovMeasure parry_measure(const TransitionMatrix& A) {
  MarkovMeasure mu = gibbs_markov(A, std::vector<double>(A.size(), 0.0));
  mu.phi.clear();
  return mu;
}

MarkovMeasure markov_from_kernel(const TransitionMatrix& A, const Eigen::MatrixXd& P) {
  const int n = A.size();
  if (P.rows() != n || P.cols() != n) throw Error("kernel shape does not match");
  for (int s = 0; s < n; ++s) {
    if (std::abs(P.row(s).sum() - 1.0) > 1e-12) throw Error("kernel rows must sum to 1");
    for (int t = 0; t < n; ++t)
      if (P(s, t) < 0 || (P(s, t) > 0 && !A(s, t))) throw Error("kernel must be supported on A");
  }
  // Solve p (P - I) = 0 with Σ p = 1.
  Eigen::MatrixXd sys(n + 1, n);
  sys.topRows(n) = (P - Eigen::MatrixXd::Identity(n, n)).transpose();
  sys.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  MarkovMeasure mu{A, {}, P, 1.0, {}, {}, {}};
  mu.p = sys.colPivHouseholderQr().solve(rhs);
  return mu;
}

double MarkovMeasure::word_prob(std::span<const Symbol> word) const {
  if (word.empty()) return 1.0;
  double prob = p(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) prob *= P(word[i - 1], word[i]);
  return prob;
}

double MarkovMeasure::entropy() const {
  double h = 0.0;
  for (int s = 0; s < P.rows(); ++s)
    for (int t = 0; t < P.cols(); ++t)
      if (P(s, t) > 0) h -= p(s) * P(s, t) * std::log(P(s, t));
  return h;
}

const Eigen::MatrixXd& MarkovCylinders::power(int k) const {
  auto it = powers_.find(k);
  if (it != powers_.end()) return it->second;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(mu_.P.rows(), mu_.P.cols());
  for (int i = 0; i < k; ++i) m = m * mu_.P;
  return powers_.emplace(k, std::move(m)).first->second;
}

double MarkovCylinders::probability(const Pattern& pat) const {
  if (pat.size() == 0) return 1.0;
  if (pat.dim() != 1) throw Error("Markov cylinders are one-dimensional");
  const auto& sites = pat.support().sites();
  const auto& vals = pat.values();
  double prob = mu_.p(vals[0]);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const int gap = sites[i][0] - sites[i - 1][0];
    prob *= gap == 1 ? mu_.P(vals[i - 1], vals[i]) : power(gap)(vals[i - 1], vals[i]);
  }
  return prob;
}

void for_each_word(const TransitionMatrix& A, int length,
                   const std::function<void(const std::vector<Symbol>&)>& visit) {
  if (length <= 0) {
    visit({});
    return;
  }
  std::vector<Symbol> w(length);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == length) {
      visit(w);
      return;
    }
    for (Symbol s = 0; s < A.size(); ++s) {
      if (pos > 0 && !A(w[pos - 1], s)) continue;
      w[pos] = s;
      rec(pos + 1);
    }
  };
  rec(0);
}

namespace {

// Spread max - min of a quantity within each (first, last) group of words.
template <class Quantity>
double endpoint_spread(const TransitionMatrix& A, int L, Quantity q, bool ratio) {
  double worst = 0.0;
  const int n = A.size();
  for (int len = 2; len <= L; ++len) {
    std::vector<double> lo(n * n, INFINITY), hi(n * n, -INFINITY);
    for_each_word(A, len, [&](const std::vector<Symbol>& w) {
      const double v = q(w);
      const int key = w.front() * n + w.back();
      lo[key] = std::min(lo[key], v);
      hi[key] = std::max(hi[key], v);
    });
    for (int k = 0; k < n * n; ++k) {
      if (hi[k] < lo[k]) continue;
      worst = std::max(worst, ratio ? hi[k] / lo[k] - 1.0 : hi[k] - lo[k]);
    }
  }
  return worst;
}

}  // namespace

double uniform_specification_check(const MarkovMeasure& mu, int L) {
  return endpoint_spread(mu.support, L, [&](const std::vector<Symbol>& w) { return mu.word_prob(w); }, true);
}

double conformality_check_1d(const MarkovMeasure& mu, const std::vector<double>& phi, int L) {
  if (static_cast<int>(phi.size()) != mu.support.size()) throw Error("potential needs one value per symbol");
  return endpoint_spread(
      mu.support, L,
      [&](const std::vector<Symbol>& w) {
        double s = std::log(mu.word_prob(w));
        for (Symbol x : w) s -= phi[x];
        return s;
      },
      false);
}

EntropyPressure entropy_pressure(const MarkovMeasure& mu, const std::vector<double>& phi) {
  EntropyPressure out;
  out.entropy = mu.entropy();
  out.pressure = out.entropy;
  for (int s = 0; s < mu.p.size(); ++s) out.pressure += mu.p(s) * phi.at(s);
  return out;
}

Eigen::MatrixXd random_kernel(const TransitionMatrix& A, std::mt19937_64& rng) {
  const int n = A.size();
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t)
      if (A(s, t)) P(s, t) = unif(rng);
    P.row(s) /= P.row(s).sum();
  }
  return P;
}

std::vector<Symbol> sample_chain(const MarkovMeasure& mu, std::size_t length, std::mt19937_64& rng) {
  std::vector<Symbol> out;
  out.reserve(length);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw = [&](auto weight, int n) {
    double r = unif(rng);
    for (int t = 0; t < n; ++t) {
      r -= weight(t);
      if (r < 0) return t;
    }
    for (int t = n - 1; t >= 0; --t)
      if (weight(t) > 0) return t;
    return n - 1;
  };
  const int n = static_cast<int>(mu.p.size());
  if (length == 0) return out;
  out.push_back(draw([&](int t) { return mu.p(t); }, n));
  while (out.size() < length) {
    const Symbol s = out.back();
    out.push_back(draw([&](int t) { return mu.P(s, t); }, n));
  }
  return out;
}

BlockRecoding block_recoding(const TransitionMatrix& A, int class_index, std::size_t cap) {
  const PeriodicDecomposition d = periodic_decomposition(A);
  if (class_index < 0 || class_index >= d.period) throw Error("class index out of range");
  BlockRecoding rec;
  rec.period = d.period;
  rec.class_index = class_index;
  std::vector<bool> in_class(A.size(), false);
  for (Symbol s : d.classes[class_index]) in_class[s] = true;
  for_each_word(A, d.period, [&](const std::vector<Symbol>& w) {
    if (!in_class[w[0]]) return;
    if (rec.blocks.size() >= cap) throw EnumerationCapExceeded(cap, rec.blocks.size());
    rec.blocks.push_back(w);
  });
  const std::size_t m = rec.blocks.size();
  std::vector<std::vector<std::uint8_t>> a(m, std::vector<std::uint8_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = A(rec.blocks[i].back(), rec.blocks[j].front()) ? 1 : 0;
  rec.matrix = TransitionMatrix(std::move(a));
  return rec;
}

std::vector<double> block_potential(const BlockRecoding& rec, const IntSiteFunction& G,
                                    const std::vector<double>& H) {
  if (static_cast<int>(H.size()) != G.rank()) throw Error("H must have one coefficient per coordinate of G");
  std::vector<double> phi;
  for (const auto& b : rec.blocks) {
    double x = 0.0;
    for (Symbol s : b)
      for (int i = 0; i < G.rank(); ++i) x += H[i] * static_cast<double>(G(s)[i]);
    phi.push_back(x);
  }
  return phi;
}

BlockGibbsCheck block_gibbs_check(const TransitionMatrix& A, int class_index, const IntSiteFunction& G,
                                  const std::vector<double>& H, int L) {
  const BlockRecoding rec = block_recoding(A, class_index);
  const std::vector<double> phi = block_potential(rec, G, H);
  const MarkovMeasure mu = gibbs_markov(rec.matrix, phi);
  BlockGibbsCheck out;
  out.conformality = conformality_check_1d(mu, phi, L);
  for (int len = 2; len <= L; ++len) {
    std::map<std::pair<std::pair<Symbol, Symbol>, IntVec>, std::pair<double, double>> groups;
    std::map<std::pair<std::pair<Symbol, Symbol>, IntVec>, std::size_t> sizes;
    for_each_word(rec.matrix, len, [&](const std::vector<Symbol>& w) {
      IntVec total(G.rank(), 0);
      for (Symbol b : w)
        for (Symbol s : rec.blocks[b])
          for (int i = 0; i < G.rank(); ++i) total[i] = checked_add(total[i], G(s)[i]);
      const auto key = std::make_pair(std::make_pair(w.front(), w.back()), total);
      const double pr = mu.word_prob(w);
      auto [it, fresh] = groups.emplace(key, std::make_pair(pr, pr));
      if (!fresh) {
        it->second.first = std::min(it->second.first, pr);
        it->second.second = std::max(it->second.second, pr);
      }
      ++sizes[key];
    });
    for (const auto& [key, mm] : groups) {
      const std::size_t c = sizes[key];
      out.preserving_pairs += c * (c - 1) / 2;
      out.invariance = std::max(out.invariance, mm.second / mm.first - 1.0);
    }
  }
  return out;
}

}  // namespace tms
