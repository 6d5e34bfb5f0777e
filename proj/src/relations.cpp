#include "tms/relations.hpp"

#include <algorithm>
#include <cmath>

#include "tms/enumerate.hpp"
#include "tms/error.hpp"

namespace tms {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in cocycle arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in cocycle arithmetic");
  return r;
}

IntSiteFunction::IntSiteFunction(int rank, std::vector<IntVec> values)
    : rank_(rank), values_(std::move(values)) {
  if (rank_ < 0) throw Error("negative rank");
  if (values_.empty()) throw Error("site function needs at least one symbol");
  for (const auto& v : values_) {
    if (static_cast<int>(v.size()) != rank_) throw Error("site function value has the wrong rank");
  }
}

IntSiteFunction IntSiteFunction::sharp(int alphabet_size) {
  std::vector<IntVec> v(alphabet_size, IntVec(alphabet_size, 0));
  for (int s = 0; s < alphabet_size; ++s) v[s][s] = 1;
  return IntSiteFunction(alphabet_size, std::move(v));
}

IntSiteFunction IntSiteFunction::scalar(const std::vector<std::int64_t>& values) {
  std::vector<IntVec> v;
  for (auto x : values) v.push_back({x});
  return IntSiteFunction(1, std::move(v));
}

std::vector<IntVec> IntSiteFunction::matrix() const {
  std::vector<IntVec> m(rank_, IntVec(values_.size()));
  for (std::size_t s = 0; s < values_.size(); ++s)
    for (int i = 0; i < rank_; ++i) m[i][s] = values_[s][i];
  return m;
}

namespace {

void require_same_support(const Pattern& a, const Pattern& b) {
  if (!(a.support() == b.support())) throw Error("patterns have different supports");
}

}  // namespace

IntVec cocycle_value(const IntSiteFunction& G, const Pattern& a, const Pattern& b) {
  require_same_support(a, b);
  IntVec out(G.rank(), 0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Symbol x = a.values()[j], y = b.values()[j];
    if (x == y) continue;
    const IntVec& gy = G(y);
    const IntVec& gx = G(x);
    for (int i = 0; i < G.rank(); ++i) {
      out[i] = checked_add(out[i], checked_add(gy[i], checked_mul(-1, gx[i])));
    }
  }
  return out;
}

double cocycle_value(const std::vector<double>& phi, const Pattern& a, const Pattern& b) {
  require_same_support(a, b);
  double out = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Symbol x = a.values()[j], y = b.values()[j];
    if (x != y) out += phi.at(y) - phi.at(x);
  }
  return out;
}

double markov_cocycle_value(const LocalPotential& G, const Pattern& a, const Pattern& b,
                            const Pattern& collar) {
  require_same_support(a, b);
  std::vector<Site> changed;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.values()[j] != b.values()[j]) changed.push_back(a.support()[j]);
  }
  if (changed.empty()) return 0.0;
  std::vector<Site> anchors;
  for (const Site& s : changed)
    for (const Site& o : G.footprint()) anchors.push_back(s - o);
  const SiteSet windows(a.dim(), anchors);

  std::vector<Site> missing;
  std::vector<Symbol> wa(G.footprint().size()), wb(G.footprint().size());
  double total = 0.0;
  for (const Site& j : windows) {
    bool complete = true;
    for (std::size_t k = 0; k < G.footprint().size(); ++k) {
      const Site s = j + G.footprint()[k];
      const long i = a.support().index_of(s);
      if (i >= 0) {
        wa[k] = a.values()[i];
        wb[k] = b.values()[i];
      } else if (auto v = collar.find(s)) {
        wa[k] = wb[k] = *v;
      } else {
        missing.push_back(s);
        complete = false;
      }
    }
    if (complete) total += G(wb) - G(wa);
  }
  if (!missing.empty()) {
    const SiteSet m(a.dim(), missing);
    std::string msg = "collar incomplete; missing sites:";
    for (const Site& s : m) msg += " " + to_string(s, a.dim());
    throw Error(msg);
  }
  return total;
}

ExchangeVerdict exchangeable_verdicts(const Pattern& a, const Pattern& b, int alphabet_size) {
  require_same_support(a, b);
  ExchangeVerdict v;
  const Frontier fr = frontier(a.support());
  v.boundary_match = a.restricted(fr.boundary) == b.restricted(fr.boundary);
  if (!v.boundary_match) return v;
  std::vector<Symbol> sa = a.values(), sb = b.values();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  v.permutation = sa == sb;
  const IntVec psi = cocycle_value(IntSiteFunction::sharp(alphabet_size), a, b);
  v.kernel = std::all_of(psi.begin(), psi.end(), [](std::int64_t x) { return x == 0; });
  return v;
}

bool exchangeable_equivalent(const Pattern& a, const Pattern& b, int alphabet_size) {
  return exchangeable_verdicts(a, b, alphabet_size).kernel;
}

CylinderSwap CylinderSwap::make(const ShiftSpace& X, Pattern a, Pattern b) {
  require_same_support(a, b);
  if (!is_locally_admissible(X, a) || !is_locally_admissible(X, b)) {
    throw Error("swap patterns must be locally admissible");
  }
  const Frontier fr = frontier(a.support());
  if (!(a.restricted(fr.boundary) == b.restricted(fr.boundary))) {
    throw Error("swap patterns must agree on the boundary of their support");
  }
  return {std::move(a), std::move(b)};
}

CylinderSwap CylinderSwap::shifted(const Site& n) const {
  return {shift_pattern(source, n), shift_pattern(target, n)};
}

Pattern apply_swap(const CylinderSwap& sw, const Pattern& x) {
  if (!sw.support().is_subset_of(x.support()) || !(x.restricted(sw.support()) == sw.source)) {
    throw Error("holonomy domain: pattern does not restrict to the swap source");
  }
  std::vector<Symbol> v = x.values();
  for (std::size_t k = 0; k < sw.target.size(); ++k) {
    v[x.support().index_of(sw.support()[k])] = sw.target.values()[k];
  }
  return Pattern(x.support(), std::move(v));
}

namespace {

// All k with ||k|| = r, lexicographic.
std::vector<Site> sphere(int dim, int r) {
  std::vector<Site> out;
  for (const Site& s : SiteSet::ball(dim, Site{}, r)) {
    if (sup_norm(s) == r) out.push_back(s);
  }
  return out;
}

}  // namespace

TailEmbedding embed_tail_pair(const ShiftSpace& X, const Pattern& a, const CylinderSwap& sw,
                              const EmbedBudget& budget) {
  if (a.dim() != X.dim() || sw.source.dim() != X.dim()) throw SchemaError("dimension mismatch");
  for (int r = 0; r <= budget.max_shift_norm; ++r) {
    for (const Site& k : sphere(X.dim(), r)) {
      const SiteSet moved = sw.support().translated(k);
      if (moved.intersects(a.support()) || moved.separation(a.support()) < 2) continue;
      const Pattern u(moved, sw.source.values());
      const Pattern b = a.merged(u);
      const SiteSet region = b.support().bounding_box().dilated(budget.margin);
      if (!is_extendable_to(X, b, region)) continue;
      const Pattern v(moved, sw.target.values());
      TailEmbedding out;
      out.k = k;
      out.lambda = b.support();
      out.b = b;
      out.c = a.merged(v);
      return out;
    }
  }
  throw Error("no embedding found within budget");
}

double shifted_holonomy_defect(const CylinderMeasure& mu, const CylinderSwap& sw, const Pattern& c,
                               const Site& n) {
  const CylinderSwap moved = sw.shifted(n);
  const SiteSet& Fn = moved.support();
  const SiteSet& W = c.support();
  const SiteSet U = W.united(Fn);
  const SiteSet free = W.minus(Fn);
  const int q = mu.alphabet_size();
  if (static_cast<double>(free.size()) * std::log2(static_cast<double>(q)) > 24.0) {
    throw Error("observable window too large for exact evaluation");
  }
  std::vector<long> f_idx, free_idx, w_idx;
  for (const Site& s : Fn) f_idx.push_back(U.index_of(s));
  for (const Site& s : free) free_idx.push_back(U.index_of(s));
  for (const Site& s : W) w_idx.push_back(U.index_of(s));

  auto indicator = [&](const std::vector<Symbol>& v) {
    for (std::size_t k = 0; k < w_idx.size(); ++k)
      if (v[w_idx[k]] != c.values()[k]) return false;
    return true;
  };

  double total = 0.0;
  std::vector<Symbol> v(U.size(), 0), swapped;
  for (int side = 0; side < 2; ++side) {
    const Pattern& from = side == 0 ? moved.source : moved.target;
    const Pattern& to = side == 0 ? moved.target : moved.source;
    std::vector<Symbol> digits(free_idx.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < f_idx.size(); ++k) v[f_idx[k]] = from.values()[k];
      for (std::size_t k = 0; k < free_idx.size(); ++k) v[free_idx[k]] = digits[k];
      swapped = v;
      for (std::size_t k = 0; k < f_idx.size(); ++k) swapped[f_idx[k]] = to.values()[k];
      if (indicator(v) != indicator(swapped)) total += mu.probability(Pattern(U, v));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
  return total;
}

}  // namespace tms
