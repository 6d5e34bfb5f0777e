#include "tms/potential.hpp"

#include "tms/error.hpp"

namespace tms {

LocalPotential LocalPotential::zero(int dim) {
  LocalPotential g;
  g.dim_ = dim;
  g.footprint_ = {Site{}};
  return g;
}

LocalPotential LocalPotential::site(int dim, std::vector<double> phi) {
  LocalPotential g = zero(dim);
  g.kind_ = Kind::Site;
  g.phi_ = std::move(phi);
  return g;
}

LocalPotential LocalPotential::three_spin(double beta, std::vector<int> values) {
  LocalPotential g;
  g.kind_ = Kind::ThreeSpin;
  g.dim_ = 2;
  g.radius_ = 1;
  g.footprint_ = {Site{}, unit_vector(0), unit_vector(1)};
  g.spin_ = std::move(values);
  g.beta_ = beta;
  return g;
}

LocalPotential LocalPotential::generic(int dim, std::vector<Site> footprint, Evaluator f) {
  if (footprint.empty()) throw Error("potential footprint is empty");
  LocalPotential g;
  g.kind_ = Kind::Generic;
  g.dim_ = dim;
  for (const Site& s : footprint) {
    const int n = sup_norm(s);
    if (n > 1) throw Error("potential footprint leaves B(0,1)");
    g.radius_ = std::max(g.radius_, n);
  }
  g.footprint_ = std::move(footprint);
  g.f_ = std::move(f);
  return g;
}

double LocalPotential::operator()(std::span<const Symbol> w) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Site:
      return phi_.at(static_cast<std::size_t>(w[0]));
    case Kind::ThreeSpin:
      return beta_ * spin_.at(w[0]) * spin_.at(w[1]) * spin_.at(w[2]);
    case Kind::Generic:
      return f_(w);
  }
  return 0.0;
}

}  // namespace tms
