#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tms/shift_space.hpp"

namespace tms {

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

struct EnumerationOptions {
  // Patterns must extend to a locally admissible pattern on F + B(0, margin).
  int margin = 0;
  std::size_t cap = kDefaultEnumerationCap;
};

// Visits every pattern on F (values in F's canonical order) agreeing with `fixed`,
// locally admissible and margin-extendable, in lexicographic order. The visitor
// returns false to stop. Throws EnumerationCapExceeded after `cap` visits.
void for_each_pattern(const ShiftSpace& X, const SiteSet& F, const Pattern* fixed,
                      const EnumerationOptions& opts,
                      const std::function<bool(std::span<const Symbol>)>& visit);

std::vector<Pattern> enumerate_patterns(const ShiftSpace& X, const SiteSet& F,
                                        const std::optional<Pattern>& fixed = std::nullopt,
                                        const EnumerationOptions& opts = {});

std::size_t count_patterns(const ShiftSpace& X, const SiteSet& F,
                           const std::optional<Pattern>& fixed = std::nullopt,
                           const EnumerationOptions& opts = {});

// Whether p extends to a locally admissible pattern on support + B(0, margin).
bool is_margin_extendable(const ShiftSpace& X, const Pattern& p, int margin);

// Whether p extends to a locally admissible pattern on the given region ⊇ support.
bool is_extendable_to(const ShiftSpace& X, const Pattern& p, const SiteSet& region);

// Random locally admissible pattern on `region` agreeing with `fixed`, found by
// randomized search. Not uniform. nullopt if none exists (or the node budget ran out).
std::optional<Pattern> random_admissible(const ShiftSpace& X, const SiteSet& region,
                                         const Pattern* fixed, std::uint64_t seed,
                                         std::size_t node_budget = 1'000'000);

struct PatternSampleOptions {
  int margin = 1;
  std::size_t burn_in_sweeps = 200;
  std::size_t sweeps_between = 10;
};

// Draws `count` patterns on F with a uniform-target heat-bath chain running on the
// bounding box of F + B(0, margin). Deterministic given the seed.
std::vector<Pattern> sample_patterns(const ShiftSpace& X, const SiteSet& F, std::size_t count,
                                     std::uint64_t seed, const PatternSampleOptions& opts = {});

}  // namespace tms
