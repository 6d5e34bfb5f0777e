#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "tms/geometry.hpp"

namespace tms {

using Symbol = int;
inline constexpr int kMaxAlphabet = 64;

// A finite-support configuration: one symbol per site of the support.
class Pattern {
 public:
  Pattern() = default;
  Pattern(SiteSet support, std::vector<Symbol> values);

  const SiteSet& support() const { return support_; }
  const std::vector<Symbol>& values() const { return values_; }
  int dim() const { return support_.dim(); }
  std::size_t size() const { return values_.size(); }

  Symbol at(const Site& s) const;
  std::optional<Symbol> find(const Site& s) const;

  // Restriction to sub ⊆ support.
  Pattern restricted(const SiteSet& sub) const;
  // Union with a pattern that agrees on the common sites.
  Pattern merged(const Pattern& other) const;

  bool operator==(const Pattern& other) const = default;

 private:
  SiteSet support_;
  std::vector<Symbol> values_;
};

// Reads the old values at n + k: the result lives on support - k.
Pattern shift_pattern(const Pattern& p, const Site& k);

// For each axis i, allowed[i][s][t] says whether (x_n, x_{n+e_i}) = (s, t) may occur.
struct AxisPairs {
  std::vector<std::vector<std::vector<std::uint8_t>>> allowed;
};

// Admissible (center, neighbors) tuples; neighbors follow unit_shell(dim) order.
struct NeighborhoodTable {
  std::vector<std::vector<Symbol>> entries;
};

class ShiftSpace {
 public:
  ShiftSpace(int dim, std::vector<std::string> alphabet, AxisPairs constraint);
  ShiftSpace(int dim, std::vector<std::string> alphabet, NeighborhoodTable constraint);

  int dim() const { return dim_; }
  int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Symbol symbol_index(const std::string& name) const;
  std::uint64_t full_mask() const;

  bool has_axis_pairs() const { return std::holds_alternative<AxisPairs>(constraint_); }
  const AxisPairs& axis_pairs() const { return std::get<AxisPairs>(constraint_); }
  const NeighborhoodTable& table() const { return std::get<NeighborhoodTable>(constraint_); }

  bool allowed(int axis, Symbol s, Symbol t) const;
  // Symbols t with allowed(axis, s, t); with forward == false, symbols t with allowed(axis, t, s).
  std::uint64_t successor_mask(int axis, Symbol s, bool forward) const {
    return forward ? succ_[axis][s] : pred_[axis][s];
  }

  bool table_contains(std::span<const Symbol> center_then_shell) const;
  std::size_t shell_size() const { return shell_size_; }

 private:
  void validate_and_index();

  int dim_;
  std::vector<std::string> alphabet_;
  std::variant<AxisPairs, NeighborhoodTable> constraint_;
  std::vector<std::vector<std::uint64_t>> succ_, pred_;
  std::unordered_set<std::uint64_t> table_keys_;
  std::size_t shell_size_ = 0;
};

// True iff every constraint whose sites all lie in the support is satisfied.
bool is_locally_admissible(const ShiftSpace& X, const Pattern& p);

}  // namespace tms
