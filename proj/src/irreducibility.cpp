#include "tms/irreducibility.hpp"

#include "tms/enumerate.hpp"
#include "tms/error.hpp"

namespace tms {

namespace {

// Offsets used to place the second window: along each axis and the main diagonal.
std::vector<Site> directions(int dim) {
  std::vector<Site> out;
  for (int i = 0; i < dim; ++i) out.push_back(unit_vector(i));
  if (dim > 1) {
    Site diag{};
    for (int i = 0; i < dim; ++i) diag[i] = 1;
    out.push_back(diag);
  }
  return out;
}

}  // namespace

IrreducibilityVerdict check_irreducibility(const ShiftSpace& X, IrreducibilityMode mode,
                                           const IrreducibilityBudget& budget) {
  if (mode.kind == IrreducibilityMode::StronglyIrreducible && mode.r < 1) {
    throw Error("strong irreducibility needs r >= 1");
  }
  if (X.dim() < 1) throw Error("irreducibility needs dimension >= 1");
  if (budget.max_window < 1) throw Error("max_window must be positive");

  IrreducibilityVerdict v;
  const bool strong = mode.kind == IrreducibilityMode::StronglyIrreducible;
  v.min_gap = strong ? mode.r : 1;
  v.max_gap = strong ? mode.r + budget.extra_gap : X.alphabet_size() + budget.extra_gap;
  const EnumerationOptions eo{budget.margin, kDefaultEnumerationCap};

  for (int side = 1; side <= budget.max_window; ++side) {
    const SiteSet F = SiteSet::box(X.dim(), 0, side - 1);
    const std::vector<Pattern> local = enumerate_patterns(X, F, std::nullopt, eo);
    const auto dirs = strong ? directions(X.dim()) : std::vector<Site>{unit_vector(0)};
    for (const Pattern& a : local) {
      for (const Pattern& b0 : local) {
        if (v.pairs_tested >= budget.max_pairs) {
          v.truncated = true;
          v.verified = true;
          return v;
        }
        ++v.pairs_tested;
        bool some_ok = false;
        for (const Site& dir : dirs) {
          for (int gap = v.min_gap; gap <= v.max_gap; ++gap) {
            const Site k = scaled(dir, side - 1 + gap);
            const Pattern b(b0.support().translated(k), b0.values());
            const Pattern joint = a.merged(b);
            const SiteSet region = joint.support().bounding_box().dilated(budget.margin);
            const bool ok = is_extendable_to(X, joint, region);
            if (strong && !ok) {
              v.counterexample = std::make_pair(a, b);
              v.max_window = side;
              return v;
            }
            if (!strong && ok) {
              some_ok = true;
              break;
            }
          }
          if (some_ok) break;
        }
        if (!strong && !some_ok) {
          v.counterexample = std::make_pair(a, Pattern(b0.support().translated(scaled(unit_vector(0), side)), b0.values()));
          v.max_window = side;
          return v;
        }
      }
    }
    v.max_window = side;
  }
  v.verified = true;
  return v;
}

}  // namespace tms
