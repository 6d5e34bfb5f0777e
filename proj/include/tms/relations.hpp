#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tms/potential.hpp"
#include "tms/shift_space.hpp"

namespace tms {

using IntVec = std::vector<std::int64_t>;

// G : S -> Z^k.
class IntSiteFunction {
 public:
  IntSiteFunction(int rank, std::vector<IntVec> values);
  // s -> e_s in Z^S.
  static IntSiteFunction sharp(int alphabet_size);
  static IntSiteFunction scalar(const std::vector<std::int64_t>& values);

  int rank() const { return rank_; }
  int alphabet_size() const { return static_cast<int>(values_.size()); }
  const IntVec& operator()(Symbol s) const { return values_.at(static_cast<std::size_t>(s)); }
  // k x |S| matrix whose column s is G(s).
  std::vector<IntVec> matrix() const;

 private:
  int rank_;
  std::vector<IntVec> values_;
};

// Checked int64 arithmetic; throws OverflowError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// Σ_{j∈F} G(b_j) - G(a_j).
IntVec cocycle_value(const IntSiteFunction& G, const Pattern& a, const Pattern& b);
double cocycle_value(const std::vector<double>& phi, const Pattern& a, const Pattern& b);

// Σ over windows j whose footprint meets the sites where a and b differ of
// G(b ∨ collar at j) - G(a ∨ collar at j). Throws if some window is not covered by
// support ∪ collar, listing the missing sites.
double markov_cocycle_value(const LocalPotential& G, const Pattern& a, const Pattern& b,
                            const Pattern& collar);

struct ExchangeVerdict {
  bool boundary_match = false;
  bool permutation = false;  // boundary match and b is a rearrangement of a
  bool kernel = false;       // boundary match and Ψ_♯(a, b) = 0
};
ExchangeVerdict exchangeable_verdicts(const Pattern& a, const Pattern& b, int alphabet_size);
// Decided through the Ψ_♯ kernel.
bool exchangeable_equivalent(const Pattern& a, const Pattern& b, int alphabet_size);

// Boundary-matching holonomy [a]_F -> [b]_F.
struct CylinderSwap {
  Pattern source;
  Pattern target;

  static CylinderSwap make(const ShiftSpace& X, Pattern a, Pattern b);
  const SiteSet& support() const { return source.support(); }
  CylinderSwap reversed() const { return {target, source}; }
  // The swap conjugated by the shift: acts on support - n.
  CylinderSwap shifted(const Site& n) const;
};

// x on E ⊇ F with x|F = source; returns x with target written on F.
Pattern apply_swap(const CylinderSwap& sw, const Pattern& x);

struct EmbedBudget {
  int max_shift_norm = 12;
  int margin = 1;
};

struct TailEmbedding {
  Site k{};
  SiteSet lambda;
  Pattern b;
  Pattern c;
};

// Places the swap at B + k, at sup distance >= 2 from F, with a jointly
// extendable pattern that equals a on F and u on B + k.
TailEmbedding embed_tail_pair(const ShiftSpace& X, const Pattern& a, const CylinderSwap& sw,
                              const EmbedBudget& budget = {});

class CylinderMeasure {
 public:
  virtual ~CylinderMeasure() = default;
  virtual int dim() const = 0;
  virtual int alphabet_size() const = 0;
  // μ([p]) for a pattern of any finite support.
  virtual double probability(const Pattern& p) const = 0;
};

// ‖f ∘ π_n − f‖_1 for the indicator f of [c] and the swap conjugated to support − n,
// the swap acting in both directions. Computed from cylinder probabilities.
double shifted_holonomy_defect(const CylinderMeasure& mu, const CylinderSwap& sw,
                               const Pattern& c, const Site& n);

}  // namespace tms
