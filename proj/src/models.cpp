#include "tms/models.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "tms/error.hpp"

namespace tms {

namespace {

using Matrix = std::vector<std::vector<std::uint8_t>>;

template <class Rule>
Matrix pair_matrix(int n, Rule rule) {
  Matrix m(n, std::vector<std::uint8_t>(n, 0));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m[s][t] = rule(s, t) ? 1 : 0;
  return m;
}

AxisPairs isotropic(int dim, const Matrix& m) { return AxisPairs{std::vector<Matrix>(dim, m)}; }

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<int> iota_values(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<int> parse_args(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw SchemaError("model argument '" + item + "' is not an integer");
    }
  }
  return out;
}

}  // namespace

ShiftSpace full_shift_space(int symbols, int dim) {
  return ShiftSpace(dim, numbered(symbols),
                    isotropic(dim, pair_matrix(symbols, [](int, int) { return true; })));
}

ShiftSpace golden_mean_space(int dim) {
  return ShiftSpace(dim, numbered(2),
                    isotropic(dim, pair_matrix(2, [](int s, int t) { return !(s == 1 && t == 1); })));
}

ShiftSpace checkerboard_space(int dim) {
  return ShiftSpace(dim, numbered(2), isotropic(dim, pair_matrix(2, [](int s, int t) { return s != t; })));
}

ShiftSpace iceberg_space(int M, int dim) {
  if (M < 1 || 2 * M + 1 > kMaxAlphabet) throw SchemaError("iceberg needs 1 <= M <= 31");
  std::vector<std::string> names;
  for (int v = -M; v <= M; ++v) names.push_back(v > 0 ? "+" + std::to_string(v) : std::to_string(v));
  return ShiftSpace(dim, names, isotropic(dim, pair_matrix(2 * M + 1, [M](int s, int t) {
                      return (s - M) * (t - M) >= 0;
                    })));
}

ShiftSpace beach_space(int a0, int a1, int b, int dim) {
  if (a0 < 1 || a1 < 0 || b < 1) throw SchemaError("beach needs |A0| >= 1, |A1| >= 0, |B| >= 1");
  const int n = (a0 + a1) * b;
  if (n > kMaxAlphabet) throw SchemaError("beach alphabet too large");
  std::vector<std::string> names;
  for (int alpha = 0; alpha < a0 + a1; ++alpha) {
    for (int beta = 0; beta < b; ++beta) {
      names.push_back((alpha < a0 ? "s" + std::to_string(alpha) : "w" + std::to_string(alpha - a0)) +
                      ":" + std::to_string(beta));
    }
  }
  auto rule = [a0, b](int s, int t) {
    const bool both_a0 = s / b < a0 && t / b < a0;
    return both_a0 || s % b == t % b;
  };
  return ShiftSpace(dim, names, isotropic(dim, pair_matrix(n, rule)));
}

ShiftSpace cycle_space(int n) {
  if (n < 1) throw SchemaError("cycle length must be positive");
  return ShiftSpace(1, numbered(n), isotropic(1, pair_matrix(n, [n](int s, int t) {
                      return t == (s + 1) % n;
                    })));
}

ShiftSpace three_symbol_space() {
  return ShiftSpace(1, numbered(3), isotropic(1, pair_matrix(3, [](int s, int t) {
                      return t == s || t == (s + 1) % 3;
                    })));
}

Model make_model(const std::string& ref, int dim) {
  static const std::regex pattern(R"(\s*([a-z_0-9]+)\s*(?:\(([^)]*)\))?\s*)");
  std::smatch m;
  if (!std::regex_match(ref, m, pattern)) throw SchemaError("cannot parse model reference '" + ref + "'");
  const std::string name = m[1];
  const std::vector<int> args = m[2].matched ? parse_args(m[2]) : std::vector<int>{};
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw SchemaError("wrong number of arguments for model '" + name + "'");
    }
  };
  auto d_or = [&](int fallback) { return dim > 0 ? dim : fallback; };

  if (name == "full") {
    want(0, 1);
    const int k = args.empty() ? 2 : args[0];
    return {ref, full_shift_space(k, d_or(1)), iota_values(k), "full shift, no constraints"};
  }
  if (name == "golden_mean") {
    want(0, 0);
    return {ref, golden_mean_space(d_or(1)), {0, 1}, "hard-core lattice gas: no two adjacent 1s"};
  }
  if (name == "checkerboard") {
    want(0, 0);
    return {ref, checkerboard_space(d_or(2)), {0, 1}, "only unequal axis neighbors; two points"};
  }
  if (name == "iceberg") {
    want(0, 1);
    const int M = args.empty() ? 1 : args[0];
    std::vector<int> values;
    for (int v = -M; v <= M; ++v) values.push_back(v);
    return {ref, iceberg_space(M, d_or(2)), values,
            "Z^2 iceberg model: signs of neighbors never disagree; safe symbol 0"};
  }
  if (name == "beach") {
    want(0, 3);
    const int a0 = args.size() > 0 ? args[0] : 1;
    const int a1 = args.size() > 1 ? args[1] : 1;
    const int b = args.size() > 2 ? args[2] : 2;
    const int n = (a0 + a1) * b;
    return {ref, beach_space(a0, a1, b, d_or(2)), iota_values(n),
            "generalized Z^d beach model: S = A x B"};
  }
  if (name == "three_spin_ising") {
    want(0, 0);
    const int d = d_or(2);
    if (d != 2) throw SchemaError("three_spin_ising lives in dimension 2");
    ShiftSpace X(d, {"-", "+"}, isotropic(d, pair_matrix(2, [](int, int) { return true; })));
    return {ref, X, {-1, 1},
            "three-spin Ising model: full {-1,1} shift with potential b x_n x_{n+e1} x_{n+e2}"};
  }
  if (name == "three_symbol") {
    want(0, 0);
    if (dim > 1) throw SchemaError("three_symbol is one-dimensional");
    return {ref, three_symbol_space(), iota_values(3), "primitive chain 0->01, 1->12, 2->20"};
  }
  if (name == "cycle") {
    want(0, 1);
    if (dim > 1) throw SchemaError("cycle is one-dimensional");
    const int n = args.empty() ? 3 : args[0];
    return {ref, cycle_space(n), iota_values(n), "directed cycle; periodic decomposition example"};
  }
  throw SchemaError("unknown model '" + name + "'");
}

std::vector<CatalogEntry> list_models() {
  return {
      {"full(k)", 1, "full shift on k symbols (default 2), no constraints"},
      {"golden_mean", 1, "no two adjacent 1s on any axis"},
      {"checkerboard", 2, "only unequal axis neighbors; not strongly irreducible"},
      {"iceberg(M)", 2, "Z^2 iceberg model: x_n x_{n+e_i} >= 0, safe symbol 0"},
      {"beach(A0,A1,B)", 2, "generalized Z^d beach model: S = A x B"},
      {"three_spin_ising", 2, "three-spin Ising model: b x_n x_{n+e1} x_{n+e2}"},
      {"three_symbol", 1, "primitive chain 0->01, 1->12, 2->20"},
      {"cycle(n)", 1, "directed n-cycle, period n"},
  };
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

int symbol_of(const nlohmann::json& v, const std::vector<std::string>& alphabet, const std::string& path) {
  if (v.is_number_integer()) {
    const int s = v.get<int>();
    if (s < 0 || s >= static_cast<int>(alphabet.size())) schema_fail(path, "symbol index out of range");
    return s;
  }
  if (v.is_string()) {
    auto it = std::find(alphabet.begin(), alphabet.end(), v.get<std::string>());
    if (it == alphabet.end()) schema_fail(path, "unknown symbol '" + v.get<std::string>() + "'");
    return static_cast<int>(it - alphabet.begin());
  }
  schema_fail(path, "symbol must be a name or an index");
}

}  // namespace

Model model_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object()) schema_fail("", "model must be an object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    schema_fail("/dimension", "required integer");
  }
  const int dim = j["dimension"].get<int>();
  if (dim < 0 || dim > 3) schema_fail("/dimension", "must lie in [0, 3]");
  if (!j.contains("alphabet") || !j["alphabet"].is_array() || j["alphabet"].empty()) {
    schema_fail("/alphabet", "required nonempty array");
  }
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < j["alphabet"].size(); ++i) {
    const auto& a = j["alphabet"][i];
    if (a.is_string()) alphabet.push_back(a.get<std::string>());
    else if (a.is_number_integer()) alphabet.push_back(std::to_string(a.get<long>()));
    else schema_fail("/alphabet/" + std::to_string(i), "symbol must be a string or integer");
  }
  const int n = static_cast<int>(alphabet.size());
  if (!j.contains("constraint") || !j["constraint"].is_object()) {
    schema_fail("/constraint", "required object");
  }
  const auto& c = j["constraint"];
  const std::string type = c.value("type", "");
  std::vector<int> values;
  if (j.contains("values")) {
    const auto& v = j["values"];
    if (!v.is_array() || static_cast<int>(v.size()) != n) schema_fail("/values", "needs one integer per symbol");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) schema_fail("/values/" + std::to_string(i), "must be an integer");
      values.push_back(v[i].get<int>());
    }
  } else {
    values = iota_values(n);
  }

  try {
    if (type == "axis_pairs") {
      if (!c.contains("allowed") || !c["allowed"].is_array()) {
        schema_fail("/constraint/allowed", "required array of matrices");
      }
      AxisPairs ap;
      const auto& al = c["allowed"];
      // A single matrix is shared by all axes.
      const bool shared = al.size() == static_cast<std::size_t>(n) && !al.empty() && al[0].is_array() &&
                          !al[0].empty() && al[0][0].is_number();
      for (int axis = 0; axis < dim; ++axis) {
        const auto& mat = shared ? al : al.at(axis);
        const std::string p = "/constraint/allowed" + (shared ? std::string() : "/" + std::to_string(axis));
        if (!mat.is_array() || static_cast<int>(mat.size()) != n) schema_fail(p, "must be an |S| x |S| matrix");
        Matrix m(n, std::vector<std::uint8_t>(n));
        for (int s = 0; s < n; ++s) {
          if (!mat[s].is_array() || static_cast<int>(mat[s].size()) != n) {
            schema_fail(p + "/" + std::to_string(s), "row must have |S| entries");
          }
          for (int t = 0; t < n; ++t) {
            const auto& e = mat[s][t];
            if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1)) {
              schema_fail(p + "/" + std::to_string(s) + "/" + std::to_string(t), "entries must be 0 or 1");
            }
            m[s][t] = static_cast<std::uint8_t>(e.get<int>());
          }
        }
        ap.allowed.push_back(std::move(m));
      }
      return {name, ShiftSpace(dim, alphabet, std::move(ap)), values, "model file"};
    }
    if (type == "table") {
      if (!c.contains("entries") || !c["entries"].is_array()) {
        schema_fail("/constraint/entries", "required array of tuples");
      }
      NeighborhoodTable t;
      for (std::size_t i = 0; i < c["entries"].size(); ++i) {
        const auto& e = c["entries"][i];
        const std::string p = "/constraint/entries/" + std::to_string(i);
        if (!e.is_array()) schema_fail(p, "must be an array");
        std::vector<Symbol> row;
        for (std::size_t k = 0; k < e.size(); ++k) row.push_back(symbol_of(e[k], alphabet, p + "/" + std::to_string(k)));
        t.entries.push_back(std::move(row));
      }
      return {name, ShiftSpace(dim, alphabet, std::move(t)), values, "model file"};
    }
  } catch (const nlohmann::json::exception& e) {
    schema_fail("/constraint", e.what());
  }
  schema_fail("/constraint/type", "must be \"axis_pairs\" or \"table\"");
}

nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["dimension"] = m.space.dim();
  j["alphabet"] = m.space.alphabet();
  j["values"] = m.values;
  if (m.space.has_axis_pairs()) {
    j["constraint"] = {{"type", "axis_pairs"}, {"allowed", m.space.axis_pairs().allowed}};
  } else {
    j["constraint"] = {{"type", "table"}, {"entries", m.space.table().entries}};
  }
  return j;
}

Model load_model(const std::string& ref, int dim) {
  const bool looks_like_file = ref.find('/') != std::string::npos || ref.ends_with(".json");
  if (!looks_like_file) return make_model(ref, dim);
  std::ifstream in(ref);
  if (!in) throw SchemaError("cannot open model file '" + ref + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("model file '" + ref + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j, std::filesystem::path(ref).stem().string());
}

}  // namespace tms
