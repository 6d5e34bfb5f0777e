#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tms {

inline constexpr int kMaxDim = 4;

// A point of Z^d. Coordinates beyond the owning SiteSet's dimension are zero,
// so lexicographic comparison of the whole array is the lattice order.
using Site = std::array<int, kMaxDim>;

Site make_site(std::initializer_list<int> coords);
Site unit_vector(int axis);
Site operator+(const Site& a, const Site& b);
Site operator-(const Site& a, const Site& b);
Site operator-(const Site& a);
Site scaled(const Site& a, int factor);

// max_i |n_i|, the norm used for B(n, r).
int sup_norm(const Site& a);
int l1_norm(const Site& a);
std::string to_string(const Site& s, int dim);

// A finite subset of Z^d, stored sorted and deduplicated.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(int dim);
  SiteSet(int dim, std::vector<Site> sites);

  // [lo, hi]^d
  static SiteSet box(int dim, int lo, int hi);
  static SiteSet box(int dim, const Site& lo, const Site& hi);
  // B(center, r) in the sup norm.
  static SiteSet ball(int dim, const Site& center, int r);
  // B_1(center, r), the L1 ball.
  static SiteSet l1_ball(int dim, const Site& center, int r);

  int dim() const { return dim_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& operator[](std::size_t i) const { return sites_[i]; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }

  bool contains(const Site& s) const;
  // Position of s in the canonical order, or -1.
  long index_of(const Site& s) const;

  SiteSet translated(const Site& k) const;
  // F + B(0, m).
  SiteSet dilated(int m) const;
  SiteSet united(const SiteSet& other) const;
  SiteSet minus(const SiteSet& other) const;
  SiteSet intersected(const SiteSet& other) const;
  bool intersects(const SiteSet& other) const;
  bool is_subset_of(const SiteSet& other) const;

  // Smallest box containing the set. Requires a nonempty set.
  Site lower_corner() const;
  Site upper_corner() const;
  SiteSet bounding_box() const;

  // min over pairs of ||j - k||, sup norm. Both sets nonempty.
  int separation(const SiteSet& other) const;

  bool operator==(const SiteSet& other) const = default;

 private:
  int dim_ = 1;
  std::vector<Site> sites_;
};

struct Frontier {
  SiteSet interior;  // F° = {x in F : B(x,1) ⊂ F}
  SiteSet boundary;  // ∂F = F \ F°
};

Frontier frontier(const SiteSet& F);

// The offsets of ∂B(0,1) in lexicographic order (3^d - 1 of them).
std::vector<Site> unit_shell(int dim);

}  // namespace tms
