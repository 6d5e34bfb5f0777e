#include "tms/enumerate.hpp"

#include <random>

#include "tms/error.hpp"
#include "tms/region.hpp"

namespace tms {

namespace {

// Pins `fixed` into a search over `region`. Returns false on contradiction.
bool pin(RegionSearch& search, const SiteSet& region, const Pattern* fixed) {
  if (!fixed) return true;
  for (std::size_t k = 0; k < fixed->size(); ++k) {
    long i = region.index_of(fixed->support()[k]);
    if (i < 0) throw Error("fixed pattern not inside the enumeration window");
    if (!search.assign(static_cast<int>(i), fixed->values()[k])) return false;
  }
  return true;
}

}  // namespace

void for_each_pattern(const ShiftSpace& X, const SiteSet& F, const Pattern* fixed,
                      const EnumerationOptions& opts,
                      const std::function<bool(std::span<const Symbol>)>& visit) {
  if (F.dim() != X.dim()) throw SchemaError("window dimension differs from shift space");
  if (opts.margin < 0) throw Error("margin must be nonnegative");
  const SiteSet region = F.dilated(opts.margin);
  RegionConstraints rc(X, region);
  RegionSearch search(rc);
  if (!pin(search, region, fixed)) return;

  std::vector<int> order, existential, f_index;
  order.reserve(F.size());
  for (const Site& s : F) order.push_back(static_cast<int>(region.index_of(s)));
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!F.contains(region[i])) existential.push_back(static_cast<int>(i));
  }
  std::vector<Symbol> out(F.size());
  std::size_t count = 0;
  search.enumerate(order, existential, [&](std::span<const Symbol> values) {
    if (count >= opts.cap) throw EnumerationCapExceeded(opts.cap, count);
    ++count;
    for (std::size_t k = 0; k < order.size(); ++k) out[k] = values[order[k]];
    return visit(out);
  });
}

std::vector<Pattern> enumerate_patterns(const ShiftSpace& X, const SiteSet& F,
                                        const std::optional<Pattern>& fixed,
                                        const EnumerationOptions& opts) {
  std::vector<Pattern> out;
  for_each_pattern(X, F, fixed ? &*fixed : nullptr, opts, [&](std::span<const Symbol> v) {
    out.emplace_back(F, std::vector<Symbol>(v.begin(), v.end()));
    return true;
  });
  return out;
}

std::size_t count_patterns(const ShiftSpace& X, const SiteSet& F,
                           const std::optional<Pattern>& fixed, const EnumerationOptions& opts) {
  std::size_t n = 0;
  for_each_pattern(X, F, fixed ? &*fixed : nullptr, opts, [&](std::span<const Symbol>) {
    ++n;
    return true;
  });
  return n;
}

bool is_extendable_to(const ShiftSpace& X, const Pattern& p, const SiteSet& region) {
  if (!p.support().is_subset_of(region)) throw Error("pattern support not inside region");
  RegionConstraints rc(X, region);
  RegionSearch search(rc);
  if (!pin(search, region, &p)) return false;
  std::vector<int> all(region.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  // The pinned sites are checked pairwise by forward checking; table constraints
  // among pinned sites need an explicit pass.
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!rc.consistent_at(static_cast<int>(region.index_of(p.support()[k])), search.values())) {
      return false;
    }
  }
  return search.complete(all);
}

bool is_margin_extendable(const ShiftSpace& X, const Pattern& p, int margin) {
  if (margin < 0) throw Error("margin must be nonnegative");
  if (margin == 0) return is_locally_admissible(X, p);
  return is_extendable_to(X, p, p.support().dilated(margin));
}

std::optional<Pattern> random_admissible(const ShiftSpace& X, const SiteSet& region,
                                         const Pattern* fixed, std::uint64_t seed,
                                         std::size_t node_budget) {
  RegionConstraints rc(X, region);
  RegionSearch search(rc);
  if (!pin(search, region, fixed)) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::vector<int> all(region.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (!search.complete(all, &rng, node_budget)) return std::nullopt;
  return Pattern(region, search.values());
}

std::vector<Pattern> sample_patterns(const ShiftSpace& X, const SiteSet& F, std::size_t count,
                                     std::uint64_t seed, const PatternSampleOptions& opts) {
  if (F.empty()) throw Error("empty site set");
  const SiteSet region = F.dilated(opts.margin).bounding_box();
  auto start = random_admissible(X, region, nullptr, seed);
  if (!start) throw Error("no admissible pattern found on the sampling region");
  RegionConstraints rc(X, region);
  std::vector<Symbol> state = start->values();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> f_index;
  for (const Site& s : F) f_index.push_back(static_cast<int>(region.index_of(s)));

  auto sweep = [&]() {
    for (std::size_t i = 0; i < state.size(); ++i) {
      const std::uint64_t mask = rc.compatible_mask(static_cast<int>(i), state);
      const int n = __builtin_popcountll(mask);
      if (n <= 1) continue;
      int pick = std::uniform_int_distribution<int>(0, n - 1)(rng);
      std::uint64_t m = mask;
      while (pick--) m &= m - 1;
      state[i] = static_cast<Symbol>(__builtin_ctzll(m));
    }
  };
  for (std::size_t s = 0; s < opts.burn_in_sweeps; ++s) sweep();
  std::vector<Pattern> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t s = 0; s < opts.sweeps_between; ++s) sweep();
    std::vector<Symbol> v(F.size());
    for (std::size_t k = 0; k < f_index.size(); ++k) v[k] = state[f_index[k]];
    out.emplace_back(F, std::move(v));
  }
  return out;
}

}  // namespace tms
