#include "tms/shift_space.hpp"

#include <algorithm>

#include "tms/error.hpp"

namespace tms {

Pattern::Pattern(SiteSet support, std::vector<Symbol> values)
    : support_(std::move(support)), values_(std::move(values)) {
  if (support_.size() != values_.size()) {
    throw SchemaError("pattern has " + std::to_string(values_.size()) + " values for " +
                      std::to_string(support_.size()) + " sites");
  }
}

Symbol Pattern::at(const Site& s) const {
  long i = support_.index_of(s);
  if (i < 0) throw Error("site " + to_string(s, dim()) + " outside pattern support");
  return values_[static_cast<std::size_t>(i)];
}

std::optional<Symbol> Pattern::find(const Site& s) const {
  long i = support_.index_of(s);
  if (i < 0) return std::nullopt;
  return values_[static_cast<std::size_t>(i)];
}

Pattern Pattern::restricted(const SiteSet& sub) const {
  std::vector<Symbol> out;
  out.reserve(sub.size());
  for (const Site& s : sub) out.push_back(at(s));
  return Pattern(sub, std::move(out));
}

Pattern Pattern::merged(const Pattern& other) const {
  SiteSet all = support_.united(other.support_);
  std::vector<Symbol> out;
  out.reserve(all.size());
  for (const Site& s : all) {
    auto a = find(s);
    auto b = other.find(s);
    if (a && b && *a != *b) throw Error("patterns disagree at " + to_string(s, dim()));
    out.push_back(a ? *a : *b);
  }
  return Pattern(std::move(all), std::move(out));
}

Pattern shift_pattern(const Pattern& p, const Site& k) {
  return Pattern(p.support().translated(-k), p.values());
}

namespace {

std::uint64_t encode(std::span<const Symbol> v, int base) {
  std::uint64_t key = 0;
  for (Symbol s : v) key = key * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(s);
  return key;
}

}  // namespace

ShiftSpace::ShiftSpace(int dim, std::vector<std::string> alphabet, AxisPairs constraint)
    : dim_(dim), alphabet_(std::move(alphabet)), constraint_(std::move(constraint)) {
  validate_and_index();
}

ShiftSpace::ShiftSpace(int dim, std::vector<std::string> alphabet, NeighborhoodTable constraint)
    : dim_(dim), alphabet_(std::move(alphabet)), constraint_(std::move(constraint)) {
  validate_and_index();
}

void ShiftSpace::validate_and_index() {
  if (dim_ < 0 || dim_ > 3) throw SchemaError("dimension must lie in [0, 3]");
  const int n = alphabet_size();
  if (n < 1 || n > kMaxAlphabet) throw SchemaError("alphabet size must lie in [1, 64]");
  {
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw SchemaError("duplicate symbol in alphabet");
    }
  }
  shell_size_ = unit_shell(dim_).size();

  if (has_axis_pairs()) {
    const auto& allowed = std::get<AxisPairs>(constraint_).allowed;
    if (static_cast<int>(allowed.size()) != dim_) {
      throw SchemaError("axis_pairs needs one matrix per axis");
    }
    succ_.assign(dim_, std::vector<std::uint64_t>(n, 0));
    pred_.assign(dim_, std::vector<std::uint64_t>(n, 0));
    for (int axis = 0; axis < dim_; ++axis) {
      if (static_cast<int>(allowed[axis].size()) != n) {
        throw SchemaError("axis matrix " + std::to_string(axis) + " is not |S| x |S|");
      }
      for (int s = 0; s < n; ++s) {
        if (static_cast<int>(allowed[axis][s].size()) != n) {
          throw SchemaError("axis matrix " + std::to_string(axis) + " is not |S| x |S|");
        }
        for (int t = 0; t < n; ++t) {
          if (allowed[axis][s][t] > 1) throw SchemaError("axis matrices must be 0/1");
          if (allowed[axis][s][t]) {
            succ_[axis][s] |= std::uint64_t{1} << t;
            pred_[axis][t] |= std::uint64_t{1} << s;
          }
        }
      }
      for (int s = 0; s < n; ++s) {
        if (succ_[axis][s] == 0 && pred_[axis][s] == 0) {
          throw SchemaError("symbol '" + alphabet_[s] + "' has no allowed pair on axis " +
                            std::to_string(axis));
        }
      }
    }
  } else {
    if (dim_ > 2 || n > 8) throw SchemaError("neighborhood tables need d <= 2 and |S| <= 8");
    const auto& entries = std::get<NeighborhoodTable>(constraint_).entries;
    std::vector<bool> seen(n, false);
    for (const auto& e : entries) {
      if (e.size() != shell_size_ + 1) throw SchemaError("table entry has wrong length");
      for (Symbol s : e) {
        if (s < 0 || s >= n) throw SchemaError("table entry symbol out of range");
      }
      seen[e[0]] = true;
      table_keys_.insert(encode(e, n));
    }
    for (int s = 0; s < n; ++s) {
      if (!seen[s]) throw SchemaError("symbol '" + alphabet_[s] + "' never occurs as a center");
    }
  }
}

Symbol ShiftSpace::symbol_index(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) throw SchemaError("symbol '" + name + "' not in alphabet");
  return static_cast<Symbol>(it - alphabet_.begin());
}

std::uint64_t ShiftSpace::full_mask() const {
  const int n = alphabet_size();
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

bool ShiftSpace::allowed(int axis, Symbol s, Symbol t) const {
  return (succ_[axis][s] >> t) & 1U;
}

bool ShiftSpace::table_contains(std::span<const Symbol> center_then_shell) const {
  return table_keys_.count(encode(center_then_shell, alphabet_size())) != 0;
}

bool is_locally_admissible(const ShiftSpace& X, const Pattern& p) {
  if (p.dim() != X.dim()) throw SchemaError("pattern dimension differs from shift space");
  for (Symbol v : p.values()) {
    if (v < 0 || v >= X.alphabet_size()) {
      throw SchemaError("symbol index " + std::to_string(v) + " not in alphabet");
    }
  }
  const SiteSet& F = p.support();
  if (X.has_axis_pairs()) {
    for (std::size_t i = 0; i < F.size(); ++i) {
      for (int axis = 0; axis < X.dim(); ++axis) {
        long j = F.index_of(F[i] + unit_vector(axis));
        if (j >= 0 && !X.allowed(axis, p.values()[i], p.values()[static_cast<std::size_t>(j)])) {
          return false;
        }
      }
    }
    return true;
  }
  const std::vector<Site> shell = unit_shell(X.dim());
  std::vector<Symbol> tuple(shell.size() + 1);
  for (std::size_t i = 0; i < F.size(); ++i) {
    tuple[0] = p.values()[i];
    bool complete = true;
    for (std::size_t k = 0; k < shell.size() && complete; ++k) {
      long j = F.index_of(F[i] + shell[k]);
      if (j < 0) {
        complete = false;
      } else {
        tuple[k + 1] = p.values()[static_cast<std::size_t>(j)];
      }
    }
    if (complete && !X.table_contains(tuple)) return false;
  }
  return true;
}

}  // namespace tms
