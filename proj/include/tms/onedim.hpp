#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tms/relations.hpp"
#include "tms/shift_space.hpp"

namespace tms {

// A_{st} = 1 iff the word st is allowed.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::vector<std::vector<std::uint8_t>> a);
  static TransitionMatrix from_space(const ShiftSpace& X);

  int size() const { return static_cast<int>(a_.size()); }
  bool operator()(Symbol s, Symbol t) const { return a_[s][t] != 0; }
  const std::vector<std::vector<std::uint8_t>>& rows() const { return a_; }
  Eigen::MatrixXd dense() const;

  std::vector<std::vector<Symbol>> communicating_classes() const;
  bool irreducible() const;
  // Smallest k with A^k > 0, or nullopt if A is not primitive.
  std::optional<int> primitivity_exponent() const;
  bool primitive() const { return primitivity_exponent().has_value(); }

 private:
  std::vector<std::vector<std::uint8_t>> a_;
};

struct PeriodicDecomposition {
  int period = 1;
  // classes[k] -> classes[k+1 mod period]
  std::vector<std::vector<Symbol>> classes;
};

// Throws for reducible matrices, listing the communicating classes.
PeriodicDecomposition periodic_decomposition(const TransitionMatrix& A);

struct MarkovMeasure {
  TransitionMatrix support;
  Eigen::VectorXd p;  // stationary distribution
  Eigen::MatrixXd P;  // transition kernel
  double lambda = 1.0;
  Eigen::VectorXd u, v;  // left and right Perron vectors of the twisted matrix
  std::vector<double> phi;  // empty for the Parry measure

  // μ([w]) for a contiguous word; 0 for inadmissible words, 1 for the empty word.
  double word_prob(std::span<const Symbol> word) const;
  double entropy() const;
};

MarkovMeasure gibbs_markov(const TransitionMatrix& A, const std::vector<double>& phi);
MarkovMeasure parry_measure(const TransitionMatrix& A);
// Stationary chain with the given kernel (rows stochastic, supported on A).
MarkovMeasure markov_from_kernel(const TransitionMatrix& A, const Eigen::MatrixXd& P);

// Cylinder probabilities for patterns with gaps, caching powers of P.
class MarkovCylinders : public CylinderMeasure {
 public:
  explicit MarkovCylinders(MarkovMeasure mu) : mu_(std::move(mu)) {}
  int dim() const override { return 1; }
  int alphabet_size() const override { return mu_.support.size(); }
  double probability(const Pattern& p) const override;
  const MarkovMeasure& measure() const { return mu_; }

 private:
  const Eigen::MatrixXd& power(int k) const;
  MarkovMeasure mu_;
  mutable std::map<int, Eigen::MatrixXd> powers_;
};

// Calls visit(word) for every admissible word of the given length, lexicographically.
void for_each_word(const TransitionMatrix& A, int length,
                   const std::function<void(const std::vector<Symbol>&)>& visit);

// max |μ[a]/μ[b] - 1| over admissible words a, b of equal length ≤ L with equal
// first and last symbols.
double uniform_specification_check(const MarkovMeasure& mu, int L);
// max |log(μ[b]/μ[a]) - Σ_j φ(b_j) - φ(a_j)| over the same pairs.
double conformality_check_1d(const MarkovMeasure& mu, const std::vector<double>& phi, int L);

struct EntropyPressure {
  double entropy = 0.0;
  double pressure = 0.0;
};
EntropyPressure entropy_pressure(const MarkovMeasure& mu, const std::vector<double>& phi);

// A random stochastic kernel supported on A with positive entries on every allowed pair.
Eigen::MatrixXd random_kernel(const TransitionMatrix& A, std::mt19937_64& rng);

// Stationary chain path of the given length.
std::vector<Symbol> sample_chain(const MarkovMeasure& mu, std::size_t length, std::mt19937_64& rng);

// N-block recoding of one class of the periodic decomposition: the alphabet is
// the admissible N-words starting in the class, and b -> b' is allowed when
// last(b) -> first(b') is.
struct BlockRecoding {
  int period = 1;
  int class_index = 0;
  std::vector<std::vector<Symbol>> blocks;
  TransitionMatrix matrix{{{1}}};
};
BlockRecoding block_recoding(const TransitionMatrix& A, int class_index, std::size_t cap = 10'000);

// Block potential H(G_N(b)) with G_N(b) = Σ_i G(b_i) and H a linear functional.
std::vector<double> block_potential(const BlockRecoding& rec, const IntSiteFunction& G,
                                    const std::vector<double>& H);

struct BlockGibbsCheck {
  double conformality = 0.0;        // max deviation over same-endpoint block-word pairs
  double invariance = 0.0;          // max |μ[b]/μ[a] - 1| over pairs with Ψ_G(a, b) = 0
  std::size_t preserving_pairs = 0;  // pairs entering the second number
};

// Builds the T^N Gibbs-Markov measure on a basic class with potential H∘G_N and
// checks it on block words of length ≤ L.
BlockGibbsCheck block_gibbs_check(const TransitionMatrix& A, int class_index, const IntSiteFunction& G,
                                  const std::vector<double>& H, int L);

}  // namespace tms
