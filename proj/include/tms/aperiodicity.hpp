#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tms/lattice.hpp"
#include "tms/relations.hpp"

namespace tms {

struct HEstimateOptions {
  std::size_t exhaustive_limit = 100'000;  // |X_F| up to this is enumerated
  std::size_t samples = 200;
  std::size_t walk_sweeps = 50;
  int margin = 1;
  std::uint64_t seed = 1;
};

struct HEstimate {
  IntegerLattice lattice;
  bool stabilized = false;
  std::vector<int> windows;
  std::vector<int> ranks;          // cumulative rank after each window
  std::vector<bool> exhaustive;    // per window
};

// Lattice generated by Ψ_G(a, b) over boundary-matching pairs in X_F for the boxes
// F = [-n, n]^d, accumulated over the windows.
HEstimate estimate_H(const ShiftSpace& X, const IntSiteFunction& G, const std::vector<int>& windows,
                     const HEstimateOptions& opts = {});

struct MhoOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 7;
  std::size_t exhaustive_limit = 100'000;  // enumerate X_F when it is at most this large
  std::size_t fiber_cap = 200'000;         // exhaustive fiber search up to this many patterns
  std::size_t walk_sweeps = 200;
  int margin = 1;
};

struct MhoReport {
  enum class Verdict { HoldsOnSample, Counterexample, Inconclusive };
  SiteSet window;
  std::size_t configurations = 0;
  bool exhaustive = false;
  std::vector<int> ranks;
  // How many configurations were settled by single-site changes, the fiber walk,
  // and the exhaustive fiber search.
  std::size_t settled_single = 0, settled_walk = 0, settled_exhaustive = 0;
  Verdict verdict = Verdict::HoldsOnSample;
  std::optional<Pattern> witness;  // the counterexample or an inconclusive configuration
  IntegerLattice reference;
};

std::string to_string(MhoReport::Verdict v);
nlohmann::json to_json(const MhoReport& r, const ShiftSpace& X);

// For each configuration a on F, compares <{Ψ_♯(a, b) : b ∈ X_F, a_∂F = b_∂F}> with H_ref.
MhoReport check_mho(const ShiftSpace& X, const SiteSet& F, const IntegerLattice& H_ref,
                    const MhoOptions& opts = {});

struct MalteseVerdict {
  bool satisfied = false;
  std::vector<Symbol> safe;
};

// Largest symbol set Z such that any site may be set to any z ∈ Z, and a
// Z-filled unit neighborhood admits every center.
MalteseVerdict check_maltese(const ShiftSpace& X);

struct WitnessOptions {
  int max_window = 3;
  std::size_t samples = 100;
  std::size_t walk_sweeps = 100;
  std::size_t fiber_cap = 200'000;
  int margin = 1;
  std::uint64_t seed = 1;
};

struct AperiodicityWitness {
  bool found = false;
  SiteSet window;
  std::vector<std::pair<Pattern, Pattern>> pairs;  // (a, b_a)
};

// Searches boxes [-n, n]^d for which every sampled a has a boundary-matching b
// with Ψ_G(b, a) outside K. H is the reference lattice; K ⊉ H is required.
AperiodicityWitness strong_aperiodicity_witness(const ShiftSpace& X, const IntSiteFunction& G,
                                                const IntegerLattice& K, const IntegerLattice& H,
                                                const WitnessOptions& opts = {});

}  // namespace tms
