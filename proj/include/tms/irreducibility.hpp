#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "tms/shift_space.hpp"

namespace tms {

struct IrreducibilityBudget {
  int max_window = 4;           // box side lengths 1..max_window
  int extra_gap = 1;            // separations r..r+extra_gap (strong) or shifts up to this (transitive)
  std::size_t max_pairs = 200'000;
  int margin = 1;
};

struct IrreducibilityMode {
  enum Kind { Transitive, StronglyIrreducible } kind = Transitive;
  int r = 1;
};

struct IrreducibilityVerdict {
  bool verified = false;
  // Ranges actually tested.
  int max_window = 0;
  int min_gap = 0;
  int max_gap = 0;
  std::size_t pairs_tested = 0;
  bool truncated = false;
  std::optional<std::pair<Pattern, Pattern>> counterexample;
};

// Falsifier for irreducibility: for box windows F and translates G at the tested
// separations, checks that every pair (a, b) in X_F x X_G extends jointly. A
// verified verdict only records the tested ranges.
IrreducibilityVerdict check_irreducibility(const ShiftSpace& X, IrreducibilityMode mode,
                                           const IrreducibilityBudget& budget = {});

}  // namespace tms
