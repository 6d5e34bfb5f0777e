#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tms/shift_space.hpp"

namespace tms {

// A potential of radius 0 or 1: G at site j reads x on j + footprint, where the
// footprint is a set of offsets inside B(0, r).
class LocalPotential {
 public:
  enum class Kind { Zero, Site, ThreeSpin, Generic };
  using Evaluator = std::function<double(std::span<const Symbol>)>;

  static LocalPotential zero(int dim);
  // G(x) = phi(x_0).
  static LocalPotential site(int dim, std::vector<double> phi);
  // G(x) = beta * v(x_0) v(x_{e1}) v(x_{e2}) with v the symbol values.
  static LocalPotential three_spin(double beta, std::vector<int> values);
  static LocalPotential generic(int dim, std::vector<Site> footprint, Evaluator f);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int radius() const { return radius_; }
  const std::vector<Site>& footprint() const { return footprint_; }
  // Values listed in footprint order.
  double operator()(std::span<const Symbol> window) const;
  const std::vector<double>& site_table() const { return phi_; }
  double beta() const { return beta_; }

 private:
  Kind kind_ = Kind::Zero;
  int dim_ = 1;
  int radius_ = 0;
  std::vector<Site> footprint_;
  std::vector<double> phi_;
  std::vector<int> spin_;
  double beta_ = 0.0;
  Evaluator f_;
};

}  // namespace tms
