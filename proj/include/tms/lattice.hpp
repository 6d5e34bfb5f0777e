#pragma once

#include <vector>

#include "tms/relations.hpp"

namespace tms {

// A subgroup of Z^k kept in row Hermite normal form: rows have strictly
// increasing pivot columns, positive pivots, and entries above each pivot
// reduced into [0, pivot).
class IntegerLattice {
 public:
  explicit IntegerLattice(int ambient_rank = 0);
  static IntegerLattice span(int ambient_rank, const std::vector<IntVec>& generators);
  static IntegerLattice full(int ambient_rank);
  // {v : Σ v_i = 0}
  static IntegerLattice sum_zero(int ambient_rank);

  int ambient_rank() const { return k_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<IntVec>& basis() const { return rows_; }
  bool is_trivial() const { return rows_.empty(); }

  bool contains(const IntVec& v) const;
  // Returns true if the lattice grew.
  bool add(const IntVec& v);
  bool is_subset_of(const IntegerLattice& other) const;
  IntegerLattice scaled(std::int64_t m) const;

  bool operator==(const IntegerLattice& other) const = default;

 private:
  void insert(IntVec v);
  void reduce();

  int k_;
  std::vector<IntVec> rows_;
};

// Image of L under the k x n integer matrix (rows of length n = L.ambient_rank()).
IntegerLattice pushforward(const std::vector<IntVec>& matrix, const IntegerLattice& L);

}  // namespace tms
