#include "tms/geometry.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

#include "tms/error.hpp"

namespace tms {

Site make_site(std::initializer_list<int> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim)) {
    throw SchemaError("site has more than " + std::to_string(kMaxDim) + " coordinates");
  }
  Site s{};
  std::copy(coords.begin(), coords.end(), s.begin());
  return s;
}

Site unit_vector(int axis) {
  Site s{};
  s.at(static_cast<std::size_t>(axis)) = 1;
  return s;
}

Site operator+(const Site& a, const Site& b) {
  Site r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

Site operator-(const Site& a, const Site& b) {
  Site r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] - b[i];
  return r;
}

Site operator-(const Site& a) { return Site{} - a; }

Site scaled(const Site& a, int factor) {
  Site r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] * factor;
  return r;
}

int sup_norm(const Site& a) {
  int m = 0;
  for (int c : a) m = std::max(m, std::abs(c));
  return m;
}

int l1_norm(const Site& a) {
  int m = 0;
  for (int c : a) m += std::abs(c);
  return m;
}

std::string to_string(const Site& s, int dim) {
  std::string out = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

namespace {

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw SchemaError("dimension must lie in [0, " + std::to_string(kMaxDim) + "], got " +
                      std::to_string(dim));
  }
}

// Calls f on every site of the box [lo, hi] in lexicographic order.
template <class F>
void for_each_in_box(int dim, const Site& lo, const Site& hi, F&& f) {
  for (int i = 0; i < dim; ++i) {
    if (lo[i] > hi[i]) return;
  }
  Site cur = lo;
  for (int i = dim; i < kMaxDim; ++i) cur[i] = 0;
  while (true) {
    f(cur);
    int axis = dim - 1;
    while (axis >= 0) {
      if (cur[axis] < hi[axis]) {
        ++cur[axis];
        break;
      }
      cur[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

SiteSet::SiteSet(int dim) : dim_(dim) { check_dim(dim); }

SiteSet::SiteSet(int dim, std::vector<Site> sites) : dim_(dim), sites_(std::move(sites)) {
  check_dim(dim);
  for (const Site& s : sites_) {
    for (int i = dim; i < kMaxDim; ++i) {
      if (s[i] != 0) throw SchemaError("site has nonzero coordinate beyond dimension");
    }
  }
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

SiteSet SiteSet::box(int dim, int lo, int hi) {
  Site l{}, h{};
  for (int i = 0; i < dim; ++i) {
    l[i] = lo;
    h[i] = hi;
  }
  return box(dim, l, h);
}

SiteSet SiteSet::box(int dim, const Site& lo, const Site& hi) {
  check_dim(dim);
  std::vector<Site> out;
  for_each_in_box(dim, lo, hi, [&](const Site& s) { out.push_back(s); });
  SiteSet result(dim);
  result.sites_ = std::move(out);  // already lexicographic
  return result;
}

SiteSet SiteSet::ball(int dim, const Site& center, int r) {
  Site lo{}, hi{};
  for (int i = 0; i < dim; ++i) {
    lo[i] = center[i] - r;
    hi[i] = center[i] + r;
  }
  return box(dim, lo, hi);
}

SiteSet SiteSet::l1_ball(int dim, const Site& center, int r) {
  SiteSet cube = ball(dim, center, r);
  std::vector<Site> out;
  for (const Site& s : cube) {
    if (l1_norm(s - center) <= r) out.push_back(s);
  }
  SiteSet result(dim);
  result.sites_ = std::move(out);
  return result;
}

bool SiteSet::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

long SiteSet::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return -1;
  return static_cast<long>(it - sites_.begin());
}

SiteSet SiteSet::translated(const Site& k) const {
  SiteSet out(dim_);
  out.sites_.reserve(sites_.size());
  for (const Site& s : sites_) out.sites_.push_back(s + k);  // order preserved
  return out;
}

SiteSet SiteSet::dilated(int m) const {
  if (m <= 0) return *this;
  std::vector<Site> out;
  SiteSet shell = ball(dim_, Site{}, m);
  out.reserve(sites_.size() * shell.size());
  for (const Site& s : sites_) {
    for (const Site& o : shell) out.push_back(s + o);
  }
  return SiteSet(dim_, std::move(out));
}

SiteSet SiteSet::united(const SiteSet& other) const {
  std::vector<Site> out;
  out.reserve(sites_.size() + other.sites_.size());
  std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                 std::back_inserter(out));
  SiteSet r(dim_);
  r.sites_ = std::move(out);
  return r;
}

SiteSet SiteSet::minus(const SiteSet& other) const {
  std::vector<Site> out;
  std::set_difference(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                      std::back_inserter(out));
  SiteSet r(dim_);
  r.sites_ = std::move(out);
  return r;
}

SiteSet SiteSet::intersected(const SiteSet& other) const {
  std::vector<Site> out;
  std::set_intersection(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                        std::back_inserter(out));
  SiteSet r(dim_);
  r.sites_ = std::move(out);
  return r;
}

bool SiteSet::intersects(const SiteSet& other) const {
  auto a = sites_.begin();
  auto b = other.sites_.begin();
  while (a != sites_.end() && b != other.sites_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

bool SiteSet::is_subset_of(const SiteSet& other) const {
  return std::includes(other.sites_.begin(), other.sites_.end(), sites_.begin(), sites_.end());
}

Site SiteSet::lower_corner() const {
  if (sites_.empty()) throw Error("empty site set");
  Site lo = sites_.front();
  for (const Site& s : sites_) {
    for (int i = 0; i < dim_; ++i) lo[i] = std::min(lo[i], s[i]);
  }
  return lo;
}

Site SiteSet::upper_corner() const {
  if (sites_.empty()) throw Error("empty site set");
  Site hi = sites_.front();
  for (const Site& s : sites_) {
    for (int i = 0; i < dim_; ++i) hi[i] = std::max(hi[i], s[i]);
  }
  return hi;
}

SiteSet SiteSet::bounding_box() const { return box(dim_, lower_corner(), upper_corner()); }

int SiteSet::separation(const SiteSet& other) const {
  if (sites_.empty() || other.sites_.empty()) throw Error("empty site set");
  int best = INT_MAX;
  for (const Site& a : sites_) {
    for (const Site& b : other.sites_) best = std::min(best, sup_norm(a - b));
  }
  return best;
}

Frontier frontier(const SiteSet& F) {
  if (F.empty()) throw Error("empty site set");
  const std::vector<Site> shell = unit_shell(F.dim());
  std::vector<Site> interior, boundary;
  for (const Site& s : F) {
    bool inside = true;
    for (const Site& o : shell) {
      if (!F.contains(s + o)) {
        inside = false;
        break;
      }
    }
    (inside ? interior : boundary).push_back(s);
  }
  return {SiteSet(F.dim(), std::move(interior)), SiteSet(F.dim(), std::move(boundary))};
}

std::vector<Site> unit_shell(int dim) {
  std::vector<Site> out;
  for (const Site& s : SiteSet::ball(dim, Site{}, 1)) {
    if (s != Site{}) out.push_back(s);
  }
  return out;
}

}  // namespace tms
