#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tms/aperiodicity.hpp"
#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/models.hpp"
#include "tms/onedim.hpp"
#include "tms/spectral.hpp"
#include "tms/thermo.hpp"

namespace py = pybind11;

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::vector<double>> to_std(const Eigen::MatrixXd& M) {
  std::vector<std::vector<double>> out(M.rows(), std::vector<double>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
  return out;
}

py::dict markov_dict(const tms::MarkovMeasure& mu) {
  py::dict d;
  d["lambda"] = mu.lambda;
  d["entropy"] = mu.entropy();
  d["p"] = to_std(mu.p);
  d["P"] = to_std(mu.P);
  return d;
}

tms::SiteSet window(int dim, int box, int l1) {
  return l1 >= 0 ? tms::SiteSet::l1_ball(dim, tms::Site{}, l1) : tms::SiteSet::box(dim, -box, box);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Topological Markov shift laboratory";

  // Translators run newest first, so the base class goes in before SchemaError.
  py::register_exception<tms::Error>(m, "TmsError", PyExc_RuntimeError);
  py::register_exception<tms::SchemaError>(m, "SchemaError", PyExc_ValueError);

  m.def("list_models", [] {
    std::vector<std::tuple<std::string, int, std::string>> out;
    for (const auto& e : tms::list_models()) out.emplace_back(e.name, e.default_dim, e.description);
    return out;
  });

  m.def("model_json", [](const std::string& ref, int dim) { return tms::model_to_json(tms::load_model(ref, dim)).dump(); },
        py::arg("model"), py::arg("dim") = 0);

  m.def(
      "count_patterns",
      [](const std::string& ref, int dim, int box, int l1, int margin) {
        const tms::Model md = tms::load_model(ref, dim);
        return tms::count_patterns(md.space, window(md.space.dim(), box, l1), std::nullopt,
                                   tms::EnumerationOptions{margin, tms::kDefaultEnumerationCap});
      },
      py::arg("model"), py::arg("dim") = 0, py::arg("window") = 1, py::arg("l1") = -1, py::arg("margin") = 0);

  m.def(
      "frontier_sizes",
      [](int dim, int box, int l1) {
        const auto fr = tms::frontier(window(dim, box, l1));
        return std::make_pair(fr.interior.size(), fr.boundary.size());
      },
      py::arg("dim"), py::arg("window") = 1, py::arg("l1") = -1);

  m.def(
      "parry",
      [](const std::string& ref) {
        return markov_dict(tms::parry_measure(tms::TransitionMatrix::from_space(tms::load_model(ref, 1).space)));
      },
      py::arg("model") = "golden_mean");

  m.def(
      "gibbs_markov",
      [](const std::string& ref, const std::vector<double>& phi) {
        return markov_dict(tms::gibbs_markov(tms::TransitionMatrix::from_space(tms::load_model(ref, 1).space), phi));
      },
      py::arg("model"), py::arg("phi"));

  m.def(
      "uniform_specification_check",
      [](const std::string& ref, int L) {
        return tms::uniform_specification_check(
            tms::parry_measure(tms::TransitionMatrix::from_space(tms::load_model(ref, 1).space)), L);
      },
      py::arg("model"), py::arg("L") = 10);

  m.def(
      "conformality_check_1d",
      [](const std::string& ref, const std::vector<double>& phi, int L) {
        const auto mu = tms::gibbs_markov(tms::TransitionMatrix::from_space(tms::load_model(ref, 1).space), phi);
        return tms::conformality_check_1d(mu, phi, L);
      },
      py::arg("model"), py::arg("phi"), py::arg("L") = 8);

  m.def(
      "check_maltese",
      [](const std::string& ref, int dim) {
        const tms::Model md = tms::load_model(ref, dim);
        const auto v = tms::check_maltese(md.space);
        std::vector<std::string> safe;
        for (tms::Symbol s : v.safe) safe.push_back(md.space.alphabet()[s]);
        return std::make_pair(v.satisfied, safe);
      },
      py::arg("model"), py::arg("dim") = 0);

  m.def(
      "check_mho",
      [](const std::string& ref, int dim, int box, int l1, std::size_t samples, std::uint64_t seed) {
        const tms::Model md = tms::load_model(ref, dim);
        tms::MhoOptions o;
        o.samples = samples;
        o.seed = seed;
        const auto rep = tms::check_mho(md.space, window(md.space.dim(), box, l1),
                                        tms::IntegerLattice::sum_zero(md.space.alphabet_size()), o);
        return tms::to_json(rep, md.space).dump();
      },
      py::arg("model"), py::arg("dim") = 0, py::arg("window") = 2, py::arg("l1") = -1, py::arg("samples") = 100,
      py::arg("seed") = 7);

  m.def(
      "entropy_scan",
      [](const std::string& ref, int dim, int n_max, int margin) {
        const auto s = tms::box_entropy_scan(tms::load_model(ref, dim).space, n_max, margin);
        std::vector<std::pair<int, double>> rows;
        for (const auto& r : s.rows) rows.emplace_back(r.n, r.value);
        return rows;
      },
      py::arg("model"), py::arg("dim") = 0, py::arg("n_max") = 8, py::arg("margin") = 0);

  m.def(
      "driver_sample",
      [](const std::string& driver, std::size_t length, std::uint64_t seed) {
        return tms::driver_sample(tms::DriverMeasure::parse(driver), length, seed);
      },
      py::arg("driver"), py::arg("length"), py::arg("seed"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"tms"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = tms::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI subcommand in-process; returns (exit status, stdout, stderr).");
}
