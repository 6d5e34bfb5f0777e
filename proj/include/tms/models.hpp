#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tms/shift_space.hpp"

namespace tms {

// A shift space with an integer value per symbol (spins, heights) and a note
// saying where the model comes from.
struct Model {
  std::string name;
  ShiftSpace space;
  std::vector<int> values;
  std::string anchor;
};

ShiftSpace full_shift_space(int symbols, int dim);
// Forbids 11 on every axis.
ShiftSpace golden_mean_space(int dim);
// Only unequal axis neighbors.
ShiftSpace checkerboard_space(int dim);
// Symbols -M..M, x_n x_{n+e_i} >= 0.
ShiftSpace iceberg_space(int M, int dim);
// S = A x B with A = A0 ⊎ A1; neighbors must both have A0 letters or share the B letter.
// Symbol index = alpha * |B| + beta, the first a0 alphas forming A0.
ShiftSpace beach_space(int a0, int a1, int b, int dim);
// Directed n-cycle in one dimension: period n.
ShiftSpace cycle_space(int n);
// 0->{0,1}, 1->{1,2}, 2->{2,0}: a primitive three-symbol chain.
ShiftSpace three_symbol_space();

// Accepts "full", "full(3)", "golden_mean", "checkerboard", "iceberg(1)",
// "beach(1,1,2)", "three_spin_ising", "three_symbol", "cycle(3)". dim = 0 keeps
// the model's default dimension.
Model make_model(const std::string& ref, int dim = 0);

struct CatalogEntry {
  std::string name;
  int default_dim;
  std::string description;
};
std::vector<CatalogEntry> list_models();

// Model files: {"dimension", "alphabet", "constraint": {"type": "axis_pairs",
// "allowed": [...]} | {"type": "table", "entries": [[center, shell...], ...]}},
// optional "values". Errors are SchemaError with a JSON-pointer style path.
Model model_from_json(const nlohmann::json& j, const std::string& name = "custom");
nlohmann::json model_to_json(const Model& m);

// Built-in name, or a path to a model file.
Model load_model(const std::string& ref, int dim = 0);

}  // namespace tms
