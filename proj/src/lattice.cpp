#include "tms/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "tms/error.hpp"

namespace tms {

namespace {

int pivot_of(const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

// a - q * b, checked.
void sub_multiple(IntVec& a, const IntVec& b, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_add(a[i], checked_mul(-q, b[i]));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// s*a + t*b = g = gcd(a, b) > 0.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

}  // namespace

IntegerLattice::IntegerLattice(int ambient_rank) : k_(ambient_rank) {
  if (k_ < 0) throw Error("negative lattice rank");
}

IntegerLattice IntegerLattice::span(int ambient_rank, const std::vector<IntVec>& generators) {
  IntegerLattice L(ambient_rank);
  for (const auto& g : generators) L.add(g);
  return L;
}

IntegerLattice IntegerLattice::full(int ambient_rank) {
  IntegerLattice L(ambient_rank);
  for (int i = 0; i < ambient_rank; ++i) {
    IntVec e(ambient_rank, 0);
    e[i] = 1;
    L.rows_.push_back(e);
  }
  return L;
}

IntegerLattice IntegerLattice::sum_zero(int ambient_rank) {
  std::vector<IntVec> gens;
  for (int i = 1; i < ambient_rank; ++i) {
    IntVec v(ambient_rank, 0);
    v[0] = 1;
    v[i] = -1;
    gens.push_back(v);
  }
  return span(ambient_rank, gens);
}

bool IntegerLattice::contains(const IntVec& v0) const {
  if (static_cast<int>(v0.size()) != k_) throw Error("vector rank differs from lattice rank");
  IntVec v = v0;
  for (const IntVec& row : rows_) {
    const int p = pivot_of(row);
    const int q = pivot_of(v);
    if (q < 0) return true;
    if (q < p) return false;
    if (q > p) continue;
    if (v[p] % row[p] != 0) return false;
    sub_multiple(v, row, v[p] / row[p]);
  }
  return pivot_of(v) < 0;
}

bool IntegerLattice::add(const IntVec& v) {
  if (static_cast<int>(v.size()) != k_) throw Error("vector rank differs from lattice rank");
  if (contains(v)) return false;
  insert(v);
  reduce();
  return true;
}

void IntegerLattice::insert(IntVec v) {
  std::size_t i = 0;
  while (true) {
    const int q = pivot_of(v);
    if (q < 0) return;
    while (i < rows_.size() && pivot_of(rows_[i]) < q) ++i;
    if (i == rows_.size() || pivot_of(rows_[i]) > q) {
      if (v[q] < 0)
        for (auto& x : v) x = -x;
      rows_.insert(rows_.begin() + static_cast<long>(i), std::move(v));
      return;
    }
    IntVec& row = rows_[i];
    const std::int64_t a = row[q], b = v[q];
    std::int64_t g, s, t;
    ext_gcd(a, b, g, s, t);
    IntVec combined(k_), rest(k_);
    for (int c = 0; c < k_; ++c) {
      combined[c] = checked_add(checked_mul(s, row[c]), checked_mul(t, v[c]));
      rest[c] = checked_add(checked_mul(a / g, v[c]), checked_mul(-(b / g), row[c]));
    }
    row = std::move(combined);
    v = std::move(rest);
  }
}

void IntegerLattice::reduce() {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int p = pivot_of(rows_[i]);
    if (rows_[i][p] < 0)
      for (auto& x : rows_[i]) x = -x;
    for (std::size_t j = 0; j < i; ++j) {
      sub_multiple(rows_[j], rows_[i], floor_div(rows_[j][p], rows_[i][p]));
    }
  }
}

bool IntegerLattice::is_subset_of(const IntegerLattice& other) const {
  if (other.k_ != k_) throw Error("lattice ranks differ");
  return std::all_of(rows_.begin(), rows_.end(), [&](const IntVec& r) { return other.contains(r); });
}

IntegerLattice IntegerLattice::scaled(std::int64_t m) const {
  std::vector<IntVec> gens = rows_;
  for (auto& g : gens)
    for (auto& x : g) x = checked_mul(x, m);
  return span(k_, gens);
}

IntegerLattice pushforward(const std::vector<IntVec>& matrix, const IntegerLattice& L) {
  const int k = static_cast<int>(matrix.size());
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != L.ambient_rank()) throw Error("matrix shape does not match lattice");
  }
  std::vector<IntVec> images;
  for (const IntVec& b : L.basis()) {
    IntVec img(k, 0);
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < L.ambient_rank(); ++c) img[i] = checked_add(img[i], checked_mul(matrix[i][c], b[c]));
    images.push_back(img);
  }
  return IntegerLattice::span(k, images);
}

}  // namespace tms
