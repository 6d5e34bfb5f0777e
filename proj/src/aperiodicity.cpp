#include "tms/aperiodicity.hpp"

#include <map>
#include <random>

#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/region.hpp"

namespace tms {

namespace {

// Patterns on F agreeing with a given one on ∂F.
class Fiber {
 public:
  Fiber(const ShiftSpace& X, const SiteSet& F) : X_(&X), F_(F), rc_(X, F), fr_(frontier(F)) {
    for (const Site& s : fr_.interior) interior_.push_back(static_cast<int>(F_.index_of(s)));
  }

  bool has_interior() const { return !interior_.empty(); }

  // Visitors return false to stop; each function returns false if stopped.
  template <class Visit>
  bool single_site(const std::vector<Symbol>& a, Visit&& visit) const {
    std::vector<Symbol> b = a;
    for (int i : interior_) {
      const Symbol old = b[i];
      for (std::uint64_t m = rc_.compatible_mask(i, b); m; m &= m - 1) {
        const Symbol s = static_cast<Symbol>(__builtin_ctzll(m));
        if (s == old) continue;
        b[i] = s;
        if (!visit(b)) return false;
      }
      b[i] = old;
    }
    return true;
  }

  template <class Visit>
  bool walk(const std::vector<Symbol>& a, std::mt19937_64& rng, std::size_t sweeps, Visit&& visit) const {
    std::vector<Symbol> b = a;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      for (int i : interior_) {
        const std::uint64_t mask = rc_.compatible_mask(i, b);
        const int n = __builtin_popcountll(mask);
        if (n <= 1) continue;
        int pick = std::uniform_int_distribution<int>(0, n - 1)(rng);
        std::uint64_t m = mask;
        while (pick--) m &= m - 1;
        b[i] = static_cast<Symbol>(__builtin_ctzll(m));
      }
      if (!visit(b)) return false;
    }
    return true;
  }

  // nullopt when the fiber is larger than cap.
  template <class Visit>
  std::optional<bool> exhaustive(const std::vector<Symbol>& a, std::size_t cap, Visit&& visit) const {
    const Pattern bdy = Pattern(F_, a).restricted(fr_.boundary);
    bool finished = true;
    try {
      for_each_pattern(*X_, F_, &bdy, EnumerationOptions{0, cap}, [&](std::span<const Symbol> v) {
        std::vector<Symbol> b(v.begin(), v.end());
        if (!visit(b)) {
          finished = false;
          return false;
        }
        return true;
      });
    } catch (const EnumerationCapExceeded&) {
      return std::nullopt;
    }
    return finished;
  }

 private:
  const ShiftSpace* X_;
  SiteSet F_;
  RegionConstraints rc_;
  Frontier fr_;
  std::vector<int> interior_;
};

IntVec psi(const IntSiteFunction& G, const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  IntVec out(G.rank(), 0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == b[j]) continue;
    const IntVec& gb = G(b[j]);
    const IntVec& ga = G(a[j]);
    for (int i = 0; i < G.rank(); ++i) out[i] = checked_add(out[i], checked_add(gb[i], -ga[i]));
  }
  return out;
}

struct Configurations {
  std::vector<Pattern> patterns;
  bool exhaustive = false;
};

Configurations configurations(const ShiftSpace& X, const SiteSet& F, std::size_t limit,
                              std::size_t samples, int margin, std::uint64_t seed) {
  Configurations c;
  try {
    c.patterns = enumerate_patterns(X, F, std::nullopt, EnumerationOptions{margin, limit});
    c.exhaustive = true;
  } catch (const EnumerationCapExceeded&) {
    PatternSampleOptions so;
    so.margin = margin;
    c.patterns = sample_patterns(X, F, samples, seed, so);
  }
  return c;
}

}  // namespace

HEstimate estimate_H(const ShiftSpace& X, const IntSiteFunction& G, const std::vector<int>& windows,
                     const HEstimateOptions& opts) {
  if (G.alphabet_size() != X.alphabet_size()) throw Error("site function does not match the alphabet");
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i] <= windows[i - 1]) throw Error("windows must increase");
  }
  HEstimate out;
  out.lattice = IntegerLattice(G.rank());
  std::mt19937_64 rng(opts.seed);
  bool any_configuration = false;
  IntegerLattice previous(G.rank());
  for (int n : windows) {
    previous = out.lattice;
    const SiteSet F = SiteSet::box(X.dim(), -n, n);
    const Frontier fr = frontier(F);
    const Configurations cs = configurations(X, F, opts.exhaustive_limit, opts.samples, opts.margin, rng());
    any_configuration = any_configuration || !cs.patterns.empty();
    if (cs.exhaustive) {
      std::map<std::vector<Symbol>, std::vector<Symbol>> reference;
      for (const Pattern& p : cs.patterns) {
        const auto key = p.restricted(fr.boundary).values();
        auto [it, fresh] = reference.emplace(key, p.values());
        if (!fresh) out.lattice.add(psi(G, it->second, p.values()));
      }
    } else {
      const Fiber fiber(X, F);
      for (const Pattern& p : cs.patterns) {
        auto add = [&](const std::vector<Symbol>& b) {
          out.lattice.add(psi(G, p.values(), b));
          return true;
        };
        fiber.single_site(p.values(), add);
        fiber.walk(p.values(), rng, opts.walk_sweeps, add);
      }
    }
    out.windows.push_back(n);
    out.ranks.push_back(out.lattice.rank());
    out.exhaustive.push_back(cs.exhaustive);
  }
  if (!any_configuration) throw Error("budget exhausted before any pair was found");
  out.stabilized = out.windows.size() >= 2 && previous == out.lattice;
  return out;
}

std::string to_string(MhoReport::Verdict v) {
  switch (v) {
    case MhoReport::Verdict::HoldsOnSample:
      return "holds_on_sample";
    case MhoReport::Verdict::Counterexample:
      return "counterexample";
    case MhoReport::Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

MhoReport check_mho(const ShiftSpace& X, const SiteSet& F, const IntegerLattice& H_ref,
                    const MhoOptions& opts) {
  if (H_ref.ambient_rank() != X.alphabet_size()) throw Error("reference lattice must live in Z^S");
  const Fiber fiber(X, F);
  if (!fiber.has_interior()) throw Error("condition vacuous: boundary pins everything");
  const IntSiteFunction sharp = IntSiteFunction::sharp(X.alphabet_size());

  MhoReport r;
  r.window = F;
  r.reference = H_ref;
  const Configurations cs = configurations(X, F, opts.exhaustive_limit, opts.samples, opts.margin, opts.seed);
  r.exhaustive = cs.exhaustive;
  r.configurations = cs.patterns.size();
  std::mt19937_64 rng(opts.seed ^ 0x5851f42d4c957f2dULL);

  for (const Pattern& a : cs.patterns) {
    IntegerLattice L(X.alphabet_size());
    auto add = [&](const std::vector<Symbol>& b) {
      const IntVec v = psi(sharp, a.values(), b);
      if (L.add(v) && !H_ref.contains(v)) {
        throw Error("reference lattice misses a cocycle value; estimate H on larger windows");
      }
      return !(L == H_ref);
    };
    if (L == H_ref || !fiber.single_site(a.values(), add)) {
      ++r.settled_single;
    } else if (!fiber.walk(a.values(), rng, opts.walk_sweeps, add)) {
      ++r.settled_walk;
    } else {
      const auto done = fiber.exhaustive(a.values(), opts.fiber_cap, add);
      if (done && !*done) {
        ++r.settled_exhaustive;
      } else if (done) {
        r.ranks.push_back(L.rank());
        r.verdict = MhoReport::Verdict::Counterexample;
        r.witness = a;
        return r;
      } else {
        r.ranks.push_back(L.rank());
        if (r.verdict == MhoReport::Verdict::HoldsOnSample) {
          r.verdict = MhoReport::Verdict::Inconclusive;
          r.witness = a;
        }
        continue;
      }
    }
    r.ranks.push_back(L.rank());
  }
  return r;
}

nlohmann::json to_json(const MhoReport& r, const ShiftSpace& X) {
  nlohmann::json j;
  std::vector<std::vector<int>> sites;
  for (const Site& s : r.window) sites.emplace_back(s.begin(), s.begin() + r.window.dim());
  j["window"] = sites;
  j["window_size"] = r.window.size();
  j["configurations"] = r.configurations;
  j["exhaustive"] = r.exhaustive;
  j["ranks"] = r.ranks;
  j["settled"] = {{"single_site", r.settled_single},
                  {"walk", r.settled_walk},
                  {"exhaustive_fiber", r.settled_exhaustive}};
  j["verdict"] = to_string(r.verdict);
  j["reference_basis"] = r.reference.basis();
  j["reference_rank"] = r.reference.rank();
  if (r.witness) {
    std::vector<std::string> names;
    for (Symbol s : r.witness->values()) names.push_back(X.alphabet()[s]);
    j["witness"] = names;
  }
  return j;
}

namespace {

bool table_maltese(const ShiftSpace& X, const std::vector<Symbol>& Z) {
  const auto& entries = X.table().entries;
  const std::size_t shell = X.shell_size();
  // (i): setting any single position of an admissible tuple to z stays admissible.
  std::vector<Symbol> t;
  for (const auto& e : entries) {
    for (std::size_t pos = 0; pos <= shell; ++pos) {
      for (Symbol z : Z) {
        t = e;
        t[pos] = z;
        if (!X.table_contains(t)) return false;
      }
    }
  }
  // (ii): Z on the whole shell admits every center.
  std::vector<std::size_t> digit(shell, 0);
  double combos = 1;
  for (std::size_t i = 0; i < shell; ++i) combos *= static_cast<double>(Z.size());
  if (combos > 2e7) throw Error("safe-symbol search too large for this table");
  while (true) {
    t.assign(shell + 1, 0);
    for (std::size_t i = 0; i < shell; ++i) t[i + 1] = Z[digit[i]];
    for (Symbol s = 0; s < X.alphabet_size(); ++s) {
      t[0] = s;
      if (!X.table_contains(t)) return false;
    }
    std::size_t pos = 0;
    while (pos < shell && ++digit[pos] == Z.size()) digit[pos++] = 0;
    if (pos == shell) break;
  }
  return true;
}

bool pairs_maltese(const ShiftSpace& X, const std::vector<Symbol>& Z) {
  for (int axis = 0; axis < X.dim(); ++axis) {
    for (Symbol z : Z) {
      for (Symbol s = 0; s < X.alphabet_size(); ++s) {
        if (!X.allowed(axis, s, z) || !X.allowed(axis, z, s)) return false;
      }
    }
  }
  return true;
}

}  // namespace

MalteseVerdict check_maltese(const ShiftSpace& X) {
  const int n = X.alphabet_size();
  if (n > 20) throw Error("safe-symbol search supports at most 20 symbols");
  // Subsets by decreasing size, then lexicographically.
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t m = 1; m < (1U << n); ++m) subsets.push_back(m);
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa > pb;
    return __builtin_ctz(a) < __builtin_ctz(b) || (__builtin_ctz(a) == __builtin_ctz(b) && a < b);
  });
  for (std::uint32_t m : subsets) {
    std::vector<Symbol> Z;
    for (int s = 0; s < n; ++s)
      if ((m >> s) & 1U) Z.push_back(s);
    const bool ok = X.has_axis_pairs() ? pairs_maltese(X, Z) : table_maltese(X, Z);
    if (ok) return {true, Z};
  }
  return {};
}

AperiodicityWitness strong_aperiodicity_witness(const ShiftSpace& X, const IntSiteFunction& G,
                                                const IntegerLattice& K, const IntegerLattice& H,
                                                const WitnessOptions& opts) {
  if (K.ambient_rank() != G.rank() || H.ambient_rank() != G.rank()) throw Error("lattice ranks differ");
  if (H.is_subset_of(K)) throw Error("no proper subgroup given");
  std::mt19937_64 rng(opts.seed);
  for (int n = 1; n <= opts.max_window; ++n) {
    const SiteSet F = SiteSet::box(X.dim(), -n, n);
    const Fiber fiber(X, F);
    if (!fiber.has_interior()) continue;
    const Configurations cs = configurations(X, F, opts.samples, opts.samples, opts.margin, rng());
    AperiodicityWitness w;
    w.window = F;
    bool all = true;
    for (const Pattern& a : cs.patterns) {
      std::optional<std::vector<Symbol>> found;
      auto look = [&](const std::vector<Symbol>& b) {
        if (!K.contains(psi(G, b, a.values()))) {
          found = b;
          return false;
        }
        return true;
      };
      if (fiber.single_site(a.values(), look) && fiber.walk(a.values(), rng, opts.walk_sweeps, look)) {
        fiber.exhaustive(a.values(), opts.fiber_cap, look);
      }
      if (!found) {
        all = false;
        break;
      }
      w.pairs.emplace_back(a, Pattern(F, *found));
    }
    if (all && !cs.patterns.empty()) {
      w.found = true;
      return w;
    }
  }
  return {};
}

}  // namespace tms
