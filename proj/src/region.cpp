#include "tms/region.hpp"

#include <algorithm>

#include "tms/error.hpp"

namespace tms {

RegionConstraints::RegionConstraints(const ShiftSpace& X, SiteSet region)
    : space_(&X), region_(std::move(region)) {
  if (region_.dim() != X.dim()) throw SchemaError("region dimension differs from shift space");
  const std::size_t n = region_.size();
  edges_.resize(n);
  hoods_touching_.resize(n);
  if (X.has_axis_pairs()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (int axis = 0; axis < X.dim(); ++axis) {
        long j = region_.index_of(region_[i] + unit_vector(axis));
        if (j >= 0) {
          edges_[i].push_back({static_cast<int>(j), axis, true});
          edges_[static_cast<std::size_t>(j)].push_back({static_cast<int>(i), axis, false});
        }
      }
    }
    return;
  }
  const std::vector<Site> shell = unit_shell(X.dim());
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<int> hood{static_cast<int>(c)};
    for (const Site& o : shell) {
      long j = region_.index_of(region_[c] + o);
      if (j < 0) break;
      hood.push_back(static_cast<int>(j));
    }
    if (hood.size() != shell.size() + 1) continue;
    const int id = static_cast<int>(hood_sites_.size());
    for (int s : hood) hoods_touching_[s].push_back(id);
    hood_sites_.push_back(std::move(hood));
  }
}

bool RegionConstraints::neighborhood_ok(int hood, std::span<const Symbol> values,
                                        int override_site, Symbol override_value,
                                        bool& complete) const {
  const auto& sites = hood_sites_[hood];
  Symbol tuple[32];
  complete = true;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const Symbol v = sites[k] == override_site ? override_value : values[sites[k]];
    if (v < 0) {
      complete = false;
      return true;
    }
    tuple[k] = v;
  }
  return space_->table_contains(std::span<const Symbol>(tuple, sites.size()));
}

std::uint64_t RegionConstraints::compatible_mask(int i, std::span<const Symbol> values) const {
  std::uint64_t mask = space_->full_mask();
  if (space_->has_axis_pairs()) {
    for (const Edge& e : edges_[i]) {
      const Symbol v = values[e.other];
      if (v >= 0) mask &= space_->successor_mask(e.axis, v, !e.forward);
    }
    return mask;
  }
  std::uint64_t out = 0;
  for (Symbol s = 0; s < space_->alphabet_size(); ++s) {
    bool ok = true;
    for (int h : hoods_touching_[i]) {
      bool complete = false;
      if (!neighborhood_ok(h, values, i, s, complete)) {
        ok = false;
        break;
      }
    }
    if (ok) out |= std::uint64_t{1} << s;
  }
  return out;
}

bool RegionConstraints::consistent_at(int i, std::span<const Symbol> values) const {
  if (space_->has_axis_pairs()) {
    const Symbol v = values[i];
    for (const Edge& e : edges_[i]) {
      const Symbol w = values[e.other];
      if (w < 0) continue;
      const bool ok = e.forward ? space_->allowed(e.axis, v, w) : space_->allowed(e.axis, w, v);
      if (!ok) return false;
    }
    return true;
  }
  for (int h : hoods_touching_[i]) {
    bool complete = false;
    if (!neighborhood_ok(h, values, -1, 0, complete)) return false;
  }
  return true;
}

RegionSearch::RegionSearch(const RegionConstraints& rc) : rc_(&rc) { reset(); }

void RegionSearch::reset() {
  values_.assign(rc_->size(), -1);
  domains_.assign(rc_->size(), rc_->space().full_mask());
  trail_.clear();
}

bool RegionSearch::assign(int i, Symbol v) { return place(i, v); }

bool RegionSearch::place(int i, Symbol v) {
  if (v < 0 || v >= rc_->space().alphabet_size()) {
    throw SchemaError("symbol index " + std::to_string(v) + " not in alphabet");
  }
  trail_.push_back({i, domains_[i], values_[i]});
  if (!((domains_[i] >> v) & 1U)) {
    values_[i] = v;
    return false;
  }
  values_[i] = v;
  domains_[i] = std::uint64_t{1} << v;
  if (rc_->space().has_axis_pairs()) {
    for (const auto& e : rc_->edges(i)) {
      if (values_[e.other] >= 0) continue;
      const std::uint64_t next = domains_[e.other] & rc_->space().successor_mask(e.axis, v, e.forward);
      if (next != domains_[e.other]) {
        trail_.push_back({e.other, domains_[e.other], values_[e.other]});
        domains_[e.other] = next;
        if (next == 0) return false;
      }
    }
    return true;
  }
  return rc_->consistent_at(i, values_);
}

void RegionSearch::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    const TrailEntry& t = trail_.back();
    domains_[t.site] = t.old_domain;
    values_[t.site] = t.old_value;
    trail_.pop_back();
  }
}

bool RegionSearch::complete(std::span<const int> sites, std::mt19937_64* rng,
                            std::size_t node_budget) {
  std::vector<int> pending;
  for (int s : sites) {
    if (values_[s] < 0) pending.push_back(s);
  }
  std::size_t nodes = 0;
  return complete_rec(pending, rng, nodes, node_budget);
}

bool RegionSearch::complete_rec(std::vector<int>& pending, std::mt19937_64* rng,
                                std::size_t& nodes, std::size_t budget) {
  if (budget && ++nodes > budget) return false;
  // Minimum remaining values among unassigned pending sites.
  int best = -1;
  int best_count = 65;
  for (int s : pending) {
    if (values_[s] >= 0) continue;
    const int c = __builtin_popcountll(domains_[s]);
    if (c < best_count) {
      best = s;
      best_count = c;
      if (c <= 1) break;
    }
  }
  if (best < 0) return true;
  if (best_count == 0) return false;
  Symbol options[kMaxAlphabet];
  int n = 0;
  for (std::uint64_t dom = domains_[best]; dom; dom &= dom - 1) {
    options[n++] = static_cast<Symbol>(__builtin_ctzll(dom));
  }
  if (rng) std::shuffle(options, options + n, *rng);
  for (int k = 0; k < n; ++k) {
    const std::size_t mark = trail_.size();
    if (place(best, options[k]) && complete_rec(pending, rng, nodes, budget)) return true;
    undo_to(mark);
    if (budget && nodes > budget) return false;
  }
  return false;
}

}  // namespace tms
