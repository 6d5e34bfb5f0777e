#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tms/shift_space.hpp"

namespace tms {

// Constraint structure of a shift space restricted to a finite region, with
// sites addressed by their index in the region's canonical order. Values use
// -1 for "unassigned".
class RegionConstraints {
 public:
  struct Edge {
    int other;
    int axis;
    bool forward;  // other == site + e_axis
  };

  RegionConstraints(const ShiftSpace& X, SiteSet region);

  const ShiftSpace& space() const { return *space_; }
  const SiteSet& region() const { return region_; }
  std::size_t size() const { return region_.size(); }
  const std::vector<Edge>& edges(int i) const { return edges_[i]; }

  // Symbols allowed at i given every assigned site that shares a constraint with i.
  std::uint64_t compatible_mask(int i, std::span<const Symbol> values) const;

  // Every constraint that touches i and whose sites are all assigned holds.
  bool consistent_at(int i, std::span<const Symbol> values) const;

 private:
  bool neighborhood_ok(int center, std::span<const Symbol> values, int override_site,
                       Symbol override_value, bool& complete) const;

  const ShiftSpace* space_;
  SiteSet region_;
  std::vector<std::vector<Edge>> edges_;
  // Table constraints: cube neighborhoods fully inside the region.
  std::vector<std::vector<int>> hood_sites_;      // per center: center then shell
  std::vector<std::vector<int>> hoods_touching_;  // per site: centers whose hood contains it
};

// Depth-first search with forward checking on axis-pair constraints.
class RegionSearch {
 public:
  explicit RegionSearch(const RegionConstraints& rc);

  // Pins a site; returns false on immediate contradiction.
  bool assign(int i, Symbol v);
  void reset();

  // Enumerates assignments of `order` (in order, symbols ascending), each
  // extended by some assignment of `existential` sites. visit returns false to stop.
  // Returns false if stopped early.
  template <class Visit>
  bool enumerate(std::span<const int> order, std::span<const int> existential, Visit&& visit);

  // Finds one completion of the listed sites; randomized symbol order if rng given.
  bool complete(std::span<const int> sites, std::mt19937_64* rng = nullptr,
                std::size_t node_budget = 0);

  const std::vector<Symbol>& values() const { return values_; }

 private:
  bool place(int i, Symbol v);
  void undo_to(std::size_t mark);
  bool complete_rec(std::vector<int>& pending, std::mt19937_64* rng, std::size_t& nodes,
                    std::size_t budget);
  template <class Visit>
  bool enum_rec(std::span<const int> order, std::size_t pos, std::span<const int> existential,
                Visit& visit, bool& stopped);

  const RegionConstraints* rc_;
  std::vector<Symbol> values_;
  std::vector<std::uint64_t> domains_;
  struct TrailEntry {
    int site;
    std::uint64_t old_domain;
    Symbol old_value;
  };
  std::vector<TrailEntry> trail_;
};

template <class Visit>
bool RegionSearch::enumerate(std::span<const int> order, std::span<const int> existential,
                             Visit&& visit) {
  bool stopped = false;
  enum_rec(order, 0, existential, visit, stopped);
  return !stopped;
}

template <class Visit>
bool RegionSearch::enum_rec(std::span<const int> order, std::size_t pos,
                            std::span<const int> existential, Visit& visit, bool& stopped) {
  if (pos == order.size()) {
    if (!existential.empty()) {
      const std::size_t mark = trail_.size();
      const bool ok = complete(existential);
      undo_to(mark);
      if (!ok) return true;
    }
    if (!visit(std::span<const Symbol>(values_))) stopped = true;
    return true;
  }
  const int i = order[pos];
  if (values_[i] >= 0) return enum_rec(order, pos + 1, existential, visit, stopped);
  std::uint64_t dom = domains_[i];
  while (dom && !stopped) {
    const Symbol v = static_cast<Symbol>(__builtin_ctzll(dom));
    dom &= dom - 1;
    const std::size_t mark = trail_.size();
    if (place(i, v)) enum_rec(order, pos + 1, existential, visit, stopped);
    undo_to(mark);
  }
  return true;
}

}  // namespace tms
