#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "tms/aperiodicity.hpp"
#include "tms/enumerate.hpp"
#include "tms/error.hpp"
#include "tms/irreducibility.hpp"
#include "tms/models.hpp"
#include "tms/onedim.hpp"
#include "tms/random.hpp"
#include "tms/spectral.hpp"
#include "tms/thermo.hpp"

namespace tms::cli {

using nlohmann::json;

namespace {

json site_json(const Site& s, int dim) { return json(std::vector<int>(s.begin(), s.begin() + dim)); }

json sites_json(const SiteSet& F) {
  json a = json::array();
  for (const Site& s : F) a.push_back(site_json(s, F.dim()));
  return a;
}

json pattern_json(const Pattern& p, const ShiftSpace& X) {
  json v = json::array();
  for (Symbol s : p.values()) v.push_back(X.alphabet()[s]);
  return {{"sites", sites_json(p.support())}, {"values", v}};
}

json matrix_json(const Eigen::MatrixXd& M) {
  json a = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    a.push_back(row);
  }
  return a;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Options as typed, with defaults filled in: enough to replay the run.
json echo_config(const CLI::App& sub) {
  json cfg = {{"command", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name();
    if (name == "--help" || name == "-h") continue;
    while (!name.empty() && name[0] == '-') name.erase(0, 1);
    if (opt->count() > 0) {
      const auto& r = opt->results();
      cfg[name] = r.size() == 1 ? json(r[0]) : json(r);
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
    f << text;
    f.flush();
    if (!f) throw Error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

SiteSet window_from(int dim, int box, int l1) {
  if (l1 >= 0) return SiteSet::l1_ball(dim, Site{}, l1);
  if (box < 0) throw SchemaError("--window must be nonnegative");
  return SiteSet::box(dim, -box, box);
}

Symbol collar_symbol(const Model& m, const std::string& rule) {
  if (rule == "plus" || rule == "minus") {
    const auto it = rule == "plus" ? std::max_element(m.values.begin(), m.values.end())
                                   : std::min_element(m.values.begin(), m.values.end());
    return static_cast<Symbol>(it - m.values.begin());
  }
  return m.space.symbol_index(rule);
}

LocalPotential potential_for(const Model& m, double beta, const std::vector<double>& phi) {
  if (!phi.empty()) {
    if (static_cast<int>(phi.size()) != m.space.alphabet_size()) {
      throw SchemaError("--phi needs one value per symbol (" + std::to_string(m.space.alphabet_size()) + ")");
    }
    return LocalPotential::site(m.space.dim(), phi);
  }
  if (m.name == "three_spin_ising") return LocalPotential::three_spin(beta, m.values);
  if (beta != 0.0) throw SchemaError("--beta only applies to three_spin_ising; use --phi for a site potential");
  return LocalPotential::zero(m.space.dim());
}

std::vector<double> vector_of(const std::vector<double>& v, int size, const std::string& flag) {
  if (static_cast<int>(v.size()) != size) {
    throw SchemaError(flag + " needs " + std::to_string(size) + " values, got " + std::to_string(v.size()));
  }
  return v;
}

struct Batch {
  double mean = 0, stderr = 0;
};
Batch batch_stats(const std::vector<double>& x, std::size_t batches = 20) {
  Batch b;
  if (x.empty()) return b;
  const std::size_t B = std::max<std::size_t>(1, std::min(batches, x.size()));
  std::vector<double> means;
  for (std::size_t k = 0; k < B; ++k) {
    const std::size_t lo = x.size() * k / B, hi = x.size() * (k + 1) / B;
    if (hi > lo) means.push_back(std::accumulate(x.begin() + lo, x.begin() + hi, 0.0) / (hi - lo));
  }
  b.mean = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  if (means.size() > 1) {
    double s = 0;
    for (double m : means) s += (m - b.mean) * (m - b.mean);
    b.stderr = std::sqrt(s / (means.size() - 1) / means.size());
  }
  return b;
}

struct Opts {
  std::string model = "golden_mean", out_path, format = "json";
  int dim = 0, box = 1, l1 = -1, margin = 0, nmax = 12, maxlen = 10, r = 1, max_window = 3, extra_gap = 1;
  int M = -1, size = 12, lags = 256, positions = 256, width = 16, chains = 1, block = 0;
  std::size_t cap = kDefaultEnumerationCap, limit = 100, samples = 500, max_pairs = 200'000;
  std::size_t sweeps = 20'000, thin = 10, burn_in = 2'000, replicas = 64, batches = 50;
  std::size_t fiber_cap = 200'000, exhaustive_limit = 100'000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double beta = 0.0, tolerance = 1e-3;
  bool allow_unsafe = false, periodogram = false;
  std::string mode = "transitive", H = "sum_zero", collar = "plus", driver, axis = "0,1";
  std::vector<double> phi, phi_plus{0.0, 1.0}, phi_minus{0.0, -1.0}, betas{0.0, 1.2};
  std::vector<int> sizes;
  std::vector<std::string> collars{"plus", "minus"};
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Desk-scale laboratory for multidimensional topological Markov shifts"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::map<const CLI::App*, std::unique_ptr<Opts>> opts;
  auto fresh = [&](CLI::App* s) -> Opts& { return *(opts[s] = std::make_unique<Opts>()); };
  auto common = [&](CLI::App* s, Opts& o, bool with_dim = true) {
    s->add_option("--model", o.model, "built-in model name or model JSON file");
    if (with_dim) s->add_option("--dim", o.dim, "dimension (0 keeps the model default)");
    s->add_option("--out", o.out_path, "output file (written atomically); stdout if omitted");
  };
  auto seeded = [&](CLI::App* s, Opts& o) { s->add_option("--seed", o.seed, "random seed")->required(); };

  auto* enumerate = app.add_subcommand("enumerate", "list the locally admissible patterns on a window");
  {
    Opts& o = fresh(enumerate);
    common(enumerate, o);
    enumerate->add_option("--window", o.box, "F = [-n, n]^d");
    enumerate->add_option("--l1", o.l1, "F = B_1(0, r) instead of a box");
    enumerate->add_option("--margin", o.margin, "patterns must extend to F + B(0, margin)");
    enumerate->add_option("--cap", o.cap, "enumeration cap");
    enumerate->add_option("--limit", o.limit, "patterns listed in the output");
  }

  auto* frontier_cmd = app.add_subcommand("frontier", "interior and boundary of a window");
  {
    Opts& o = fresh(frontier_cmd);
    o.dim = 2;
    frontier_cmd->add_option("--dim", o.dim, "dimension");
    frontier_cmd->add_option("--window", o.box, "F = [-n, n]^d");
    frontier_cmd->add_option("--l1", o.l1, "F = B_1(0, r) instead of a box");
    frontier_cmd->add_option("--out", o.out_path, "output file");
  }

  auto* irreducible = app.add_subcommand("check-irreducible", "search for irreducibility counterexamples");
  {
    Opts& o = fresh(irreducible);
    o.margin = 1;
    common(irreducible, o);
    irreducible->add_option("--mode", o.mode, "transitive or strong")->check(CLI::IsMember({"transitive", "strong"}));
    irreducible->add_option("--r", o.r, "separation for strong irreducibility");
    irreducible->add_option("--max-window", o.max_window, "box sides 1..n");
    irreducible->add_option("--extra-gap", o.extra_gap, "extra separations tested");
    irreducible->add_option("--max-pairs", o.max_pairs, "pair budget");
    irreducible->add_option("--margin", o.margin, "joint extension margin");
  }

  auto* mho = app.add_subcommand("check-mho", "check the boundary-fiber lattice condition on sampled configurations");
  {
    Opts& o = fresh(mho);
    o.box = 2;
    common(mho, o);
    mho->add_option("--M", o.M, "iceberg parameter (with --model iceberg)");
    mho->add_option("--window", o.box, "F = [-n, n]^d");
    mho->add_option("--l1", o.l1, "F = B_1(0, r) instead of a box");
    mho->add_option("--samples", o.samples, "configurations checked");
    mho->add_option("--H", o.H, "reference lattice: sum_zero or full")->check(CLI::IsMember({"sum_zero", "full"}));
    mho->add_option("--fiber-cap", o.fiber_cap, "exhaustive fiber search cap");
    mho->add_option("--exhaustive-limit", o.exhaustive_limit, "enumerate X_F when at most this large");
    seeded(mho, o);
  }

  auto* maltese = app.add_subcommand("check-maltese", "look for a safe symbol set");
  common(maltese, fresh(maltese));

  auto* parry = app.add_subcommand("parry", "measure of maximal entropy of a 1D chain");
  {
    Opts& o = fresh(parry);
    common(parry, o, false);
    parry->add_option("--maxlen", o.maxlen, "word length for the uniform specification check");
  }

  for (const char* name : {"gibbs-markov", "conformal-check-1d"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "gibbs-markov" ? "Gibbs-Markov measure of a site potential"
                                                                            : "conformality of the Gibbs-Markov measure");
    Opts& o = fresh(s);
    o.maxlen = 8;
    common(s, o, false);
    s->add_option("--phi", o.phi, "site potential, one value per symbol")->delimiter(',')->required();
    s->add_option("--maxlen", o.maxlen, "word length for the conformality check");
  }

  auto* decomp = app.add_subcommand("decomposition", "period and cyclic classes of an irreducible chain");
  {
    Opts& o = fresh(decomp);
    common(decomp, o, false);
    decomp->add_option("--block", o.block, "report the block alphabet size of every class");
  }

  auto* escan = app.add_subcommand("entropy-scan", "log|X_B(0,n)| / |B(0,n)| for n = 1..nmax");
  {
    Opts& o = fresh(escan);
    common(escan, o);
    escan->add_option("--nmax", o.nmax, "largest radius");
    escan->add_option("--margin", o.margin, "extension margin");
    escan->add_option("--cap", o.cap, "enumeration cap per radius");
  }

  auto* gibbs = app.add_subcommand("gibbs", "heat-bath sampling in a finite volume with a constant collar");
  {
    Opts& o = fresh(gibbs);
    o.sweeps = 200'000;
    common(gibbs, o);
    gibbs->add_option("--beta", o.beta, "coupling for three_spin_ising");
    gibbs->add_option("--phi", o.phi, "site potential")->delimiter(',');
    gibbs->add_option("--size", o.size, "side of the centered box");
    gibbs->add_option("--collar", o.collar, "plus, minus or a symbol name");
    gibbs->add_option("--sweeps", o.sweeps, "sweeps after burn-in");
    gibbs->add_option("--thin", o.thin, "keep every n-th state");
    gibbs->add_option("--burn-in", o.burn_in, "discarded sweeps");
    gibbs->add_flag("--allow-unsafe", o.allow_unsafe, "sample even without a safe symbol set");
    seeded(gibbs, o);
  }

  auto* tscan = app.add_subcommand("thermo-scan", "origin marginals over growing volumes and collar rules");
  {
    Opts& o = fresh(tscan);
    o.sizes = {2, 3, 4};
    o.cap = 200'000;
    common(tscan, o);
    tscan->add_option("--beta", o.beta, "coupling for three_spin_ising");
    tscan->add_option("--phi", o.phi, "site potential")->delimiter(',');
    tscan->add_option("--sizes", o.sizes, "box sides, increasing")->delimiter(',');
    tscan->add_option("--collars", o.collars, "collar rules: plus, minus or symbol names")->delimiter(',');
    tscan->add_option("--sweeps", o.sweeps, "sweeps per sampled cell");
    tscan->add_option("--burn-in", o.burn_in, "discarded sweeps");
    tscan->add_option("--exact-cap", o.cap, "largest exact table");
    tscan->add_option("--tolerance", o.tolerance, "stabilization tolerance");
    tscan->add_flag("--allow-unsafe", o.allow_unsafe, "sample even without a safe symbol set");
    seeded(tscan, o);
  }

  auto* phase = app.add_subcommand("phase-probe", "collar sensitivity of the origin observable");
  {
    Opts& o = fresh(phase);
    o.model = "three_spin_ising";
    o.sizes = {12};
    o.sweeps = 50'000;
    o.burn_in = 5'000;
    phase->add_option("--model", o.model, "three_spin_ising, iceberg(M) or beach(A0,A1,B)");
    phase->add_option("--betas", o.betas, "coupling grid")->delimiter(',');
    phase->add_option("--sizes", o.sizes, "box sides")->delimiter(',');
    phase->add_option("--chains", o.chains, "independent chains per collar");
    phase->add_option("--sweeps", o.sweeps, "sweeps after burn-in");
    phase->add_option("--burn-in", o.burn_in, "discarded sweeps");
    phase->add_option("--batches", o.batches, "batch means per chain");
    phase->add_option("--out", o.out_path, "output file");
    seeded(phase, o);
  }

  auto* spectrum = app.add_subcommand("spectrum", "correlations of a driven product field");
  {
    Opts& o = fresh(spectrum);
    o.format = "csv";
    spectrum->add_option("--base", o.model, "one-dimensional base model");
    spectrum->add_option("--driver", o.driver, "point_mass:+, periodic:+-, sturmian:a, chacon, bernoulli:q")->required();
    spectrum->add_option("--axis", o.axis, "lag direction; 0,1 is across layers");
    spectrum->add_option("--lags", o.lags, "largest lag K");
    spectrum->add_option("--replicas", o.replicas, "independent replicas (the batches)");
    spectrum->add_option("--positions", o.positions, "positions averaged per replica");
    spectrum->add_option("--width", o.width, "layer window of the magnetization observable");
    spectrum->add_option("--phi-plus", o.phi_plus, "site potential of P_+")->delimiter(',');
    spectrum->add_option("--phi-minus", o.phi_minus, "site potential of P_-")->delimiter(',');
    spectrum->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_flag("--periodogram", o.periodogram, "append the periodogram peaks");
    spectrum->add_option("--jobs", o.jobs, "worker threads; results do not depend on it");
    spectrum->add_option("--out", o.out_path, "output file");
    seeded(spectrum, o);
  }

  auto* fprod = app.add_subcommand("free-product", "stack a base model along a new unconstrained axis");
  {
    Opts& o = fresh(fprod);
    fprod->add_option("--model", o.model, "base model");
    fprod->add_option("--dim", o.dim, "base dimension");
    fprod->add_option("--out", o.out_path, "output file");
  }

  auto* catalog = app.add_subcommand("list-models", "built-in models");
  catalog->add_option("--out", fresh(catalog).out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Opts& a = *opts.at(sub);
  const json config = echo_config(*sub);
  json result;
  std::string text;  // set instead of `result` for CSV output
  int status = 0;

  try {
    const std::string cmd = sub->get_name();
    if (cmd == "enumerate") {
      const Model m = load_model(a.model, a.dim);
      const SiteSet F = window_from(m.space.dim(), a.box, a.l1);
      std::size_t count = 0;
      json listed = json::array();
      for_each_pattern(m.space, F, nullptr, EnumerationOptions{a.margin, a.cap}, [&](std::span<const Symbol> v) {
        if (count < a.limit) {
          json names = json::array();
          for (Symbol s : v) names.push_back(m.space.alphabet()[s]);
          listed.push_back(names);
        }
        ++count;
        return true;
      });
      result = {{"window", sites_json(F)}, {"count", count}, {"patterns", listed}};
    } else if (cmd == "frontier") {
      const SiteSet F = window_from(a.dim, a.box, a.l1);
      const Frontier fr = frontier(F);
      result = {{"size", F.size()},
                {"interior", {{"size", fr.interior.size()}, {"sites", sites_json(fr.interior)}}},
                {"boundary", {{"size", fr.boundary.size()}, {"sites", sites_json(fr.boundary)}}}};
    } else if (cmd == "check-irreducible") {
      const Model m = load_model(a.model, a.dim);
      IrreducibilityMode md;
      md.kind = a.mode == "strong" ? IrreducibilityMode::StronglyIrreducible : IrreducibilityMode::Transitive;
      md.r = a.r;
      const auto v = check_irreducibility(m.space, md, IrreducibilityBudget{a.max_window, a.extra_gap, a.max_pairs, a.margin});
      result = {{"verdict", v.verified ? "verified_up_to" : "counterexample"},
                {"max_window", v.max_window},
                {"min_gap", v.min_gap},
                {"max_gap", v.max_gap},
                {"pairs_tested", v.pairs_tested},
                {"truncated", v.truncated}};
      if (v.counterexample) {
        result["counterexample"] = {pattern_json(v.counterexample->first, m.space),
                                    pattern_json(v.counterexample->second, m.space)};
      }
      status = v.verified ? 0 : 1;
    } else if (cmd == "check-mho") {
      std::string ref = a.model;
      if (a.M >= 0) {
        if (a.model != "iceberg") throw SchemaError("--M only applies to --model iceberg");
        ref = "iceberg(" + std::to_string(a.M) + ")";
      }
      const Model m = load_model(ref, a.dim);
      const SiteSet F = window_from(m.space.dim(), a.box, a.l1);
      const int q = m.space.alphabet_size();
      const IntegerLattice Href = a.H == "full" ? IntegerLattice::full(q) : IntegerLattice::sum_zero(q);
      MhoOptions o;
      o.samples = a.samples;
      o.seed = a.seed;
      o.fiber_cap = a.fiber_cap;
      o.exhaustive_limit = a.exhaustive_limit;
      const MhoReport rep = check_mho(m.space, F, Href, o);
      result = to_json(rep, m.space);
      status = rep.verdict == MhoReport::Verdict::Counterexample ? 1 : 0;
    } else if (cmd == "check-maltese") {
      const Model m = load_model(a.model, a.dim);
      const MalteseVerdict v = check_maltese(m.space);
      json safe = json::array();
      for (Symbol s : v.safe) safe.push_back(m.space.alphabet()[s]);
      result = {{"verdict", v.satisfied ? "satisfied" : "not_found"}, {"safe", safe}};
      status = v.satisfied ? 0 : 1;
    } else if (cmd == "parry") {
      const Model m = load_model(a.model, 1);
      const MarkovMeasure mu = parry_measure(TransitionMatrix::from_space(m.space));
      result = {{"lambda", mu.lambda},
                {"entropy", mu.entropy()},
                {"max_deviation", uniform_specification_check(mu, a.maxlen)},
                {"p", vector_json(mu.p)},
                {"P", matrix_json(mu.P)}};
    } else if (cmd == "gibbs-markov" || cmd == "conformal-check-1d") {
      const Model m = load_model(a.model, 1);
      const auto f = vector_of(a.phi, m.space.alphabet_size(), "--phi");
      const MarkovMeasure mu = gibbs_markov(TransitionMatrix::from_space(m.space), f);
      const EntropyPressure ep = entropy_pressure(mu, f);
      result = {{"lambda", mu.lambda},
                {"entropy", ep.entropy},
                {"pressure", ep.pressure},
                {"max_deviation", conformality_check_1d(mu, f, a.maxlen)}};
      if (cmd == "gibbs-markov") {
        result["p"] = vector_json(mu.p);
        result["P"] = matrix_json(mu.P);
      }
    } else if (cmd == "decomposition") {
      const Model m = load_model(a.model, 1);
      const TransitionMatrix A = TransitionMatrix::from_space(m.space);
      const PeriodicDecomposition pd = periodic_decomposition(A);
      json classes = json::array();
      for (const auto& c : pd.classes) {
        json names = json::array();
        for (Symbol s : c) names.push_back(m.space.alphabet()[s]);
        classes.push_back(names);
      }
      result = {{"period", pd.period}, {"classes", classes}};
      if (a.block > 0) {
        json sizes_out = json::array();
        for (int k = 0; k < pd.period; ++k) sizes_out.push_back(block_recoding(A, k).blocks.size());
        result["block_alphabet_sizes"] = sizes_out;
      }
    } else if (cmd == "entropy-scan") {
      const Model m = load_model(a.model, a.dim);
      const EntropyScan s = box_entropy_scan(m.space, a.nmax, a.margin, a.cap);
      json rows = json::array();
      for (const auto& row : s.rows)
        rows.push_back({{"n", row.n}, {"count", row.count}, {"log_count", row.log_count}, {"value", row.value}});
      result = {{"margin", s.margin}, {"rows", rows}, {"truncated", s.truncated}};
      if (m.space.dim() == 1) {
        const auto lam = parry_measure(TransitionMatrix::from_space(m.space)).lambda;
        result["log_perron_root"] = std::log(lam);
      }
    } else if (cmd == "gibbs") {
      const Model m = load_model(a.model, a.dim);
      const LocalPotential G = potential_for(m, a.beta, a.phi);
      const SiteSet lambda = centered_box(m.space.dim(), a.size);
      const Symbol fill = collar_symbol(m, a.collar);
      const long origin = lambda.index_of(Site{});
      std::vector<double> origin_series;
      std::vector<double> values(m.values.begin(), m.values.end());
      const GlauberRun run = glauber_sample(
          m.space, G, lambda, constant_collar(lambda, fill), a.seed, a.sweeps, a.thin, a.burn_in, m.values,
          [&](const std::vector<Symbol>& st) { origin_series.push_back(values[st[origin]]); }, a.allow_unsafe);
      const Batch mag = batch_stats(run.observable), org = batch_stats(origin_series);
      result = {{"samples", run.samples},
                {"sweeps", run.diagnostics.sweeps},
                {"acceptance", run.diagnostics.acceptance()},
                {"safe_symbol_override", run.diagnostics.safe_symbol_override},
                {"tau_int", run.tau_int},
                {"magnetization", {{"mean", mag.mean}, {"stderr", mag.stderr}}},
                {"origin", {{"mean", org.mean}, {"stderr", org.stderr}}},
                {"replay", "rerun this config; the sample stream is a function of the seed"}};
    } else if (cmd == "thermo-scan") {
      const Model m = load_model(a.model, a.dim);
      const LocalPotential G = potential_for(m, a.beta, a.phi);
      if (a.sizes.empty()) a.sizes = {2, 3, 4};
      std::vector<SiteSet> volumes;
      for (int s : a.sizes) volumes.push_back(centered_box(m.space.dim(), s));
      std::vector<CollarRule> rules;
      for (const auto& c : a.collars) rules.push_back({c, collar_symbol(m, c)});
      std::vector<Pattern> cyl;
      const SiteSet origin(m.space.dim(), {Site{}});
      for (Symbol s = 0; s < m.space.alphabet_size(); ++s) cyl.emplace_back(origin, std::vector<Symbol>{s});
      ScanOptions o;
      o.exact_cap = a.cap;
      o.sweeps = a.sweeps;
      o.burn_in = a.burn_in;
      o.seed = a.seed;
      o.tolerance = a.tolerance;
      o.allow_without_safe_symbol = a.allow_unsafe;
      const ThermoScan ts = thermo_limit_scan(m.space, G, volumes, rules, cyl, o);
      json table = json::array();
      for (std::size_t ri = 0; ri < rules.size(); ++ri)
        for (std::size_t v = 0; v < volumes.size(); ++v) {
          json row = {{"collar", rules[ri].name}, {"volume", ts.volume_sizes[v]}};
          for (std::size_t c = 0; c < cyl.size(); ++c) {
            const ScanCell& cell = ts.cells[ri][v][c];
            row["origin=" + m.space.alphabet()[c]] = {{"value", cell.value}, {"stderr", cell.stderr}, {"exact", cell.exact}};
          }
          table.push_back(row);
        }
      result = {{"table", table}, {"diffs", ts.diffs}, {"stabilized", ts.stabilized},
                {"boundary_dependence", ts.boundary_dependence}};
    } else if (cmd == "phase-probe") {
      PhaseProbeOptions o;
      o.betas = a.betas;
      o.sizes = a.sizes.empty() ? std::vector<int>{12} : a.sizes;
      o.seeds.clear();
      for (int k = 0; k < std::max(1, a.chains); ++k) o.seeds.push_back(derive_seed(a.seed, static_cast<std::uint64_t>(k)));
      o.sweeps = a.sweeps;
      o.burn_in = a.burn_in;
      o.batches = a.batches;
      const PhaseProbe p = phase_probe(a.model, o);
      json rows = json::array();
      for (const auto& row : p.rows) {
        rows.push_back({{"beta", row.beta}, {"size", row.size},
                        {"mean_first", row.mean_first}, {"stderr_first", row.stderr_first},
                        {"mean_second", row.mean_second}, {"stderr_second", row.stderr_second},
                        {"gap", row.gap}, {"stderr_gap", row.stderr_gap},
                        {"gap_in_stderr", row.stderr_gap > 0 ? row.gap / row.stderr_gap : 0.0}});
      }
      result = {{"collar_first", p.collar_first}, {"collar_second", p.collar_second},
                {"observable", p.observable}, {"rows", rows}, {"monotone_in_beta", p.monotone_in_beta},
                {"note", "qualitative coexistence evidence at finite box sizes; not a phase diagram"}};
    } else if (cmd == "spectrum") {
      const Model base = load_model(a.model, 1);
      if (base.space.dim() != 1) throw SchemaError("spectrum needs a one-dimensional base");
      const DriverMeasure nu = DriverMeasure::parse(a.driver);
      const int q = base.space.alphabet_size();
      const TransitionMatrix A = TransitionMatrix::from_space(base.space);
      const MarkovMeasure Pp = gibbs_markov(A, vector_of(a.phi_plus, q, "--phi-plus"));
      const MarkovMeasure Pm = gibbs_markov(A, vector_of(a.phi_minus, q, "--phi-minus"));
      const FreeProduct fp(base.space);
      Site ax{};
      {
        std::stringstream ss(a.axis);
        std::string tok;
        int i = 0;
        while (std::getline(ss, tok, ',')) {
          if (i >= 2) throw SchemaError("--axis needs two components");
          ax[i++] = std::stoi(tok);
        }
        if (i != 2) throw SchemaError("--axis needs two components");
      }
      std::vector<double> vals(base.values.begin(), base.values.end());
      const Observable f = ax[1] != 0 ? layer_magnetization(fp, SiteSet::box(1, 0, a.width - 1), vals)
                                      : site_value(2, Site{}, vals);
      CorrelationOptions co;
      co.max_lag = a.lags;
      co.positions = a.positions;
      co.replicas = a.replicas;
      co.seed = a.seed;
      co.jobs = a.jobs;
      const CorrelationSeries cs =
          correlation_series(product_field_sampler(fp, markov_layer_sampler(Pp), markov_layer_sampler(Pm), nu), f, ax, co);
      const SpectralReport rep = classify_empirical(cs, nu);
      const auto peaks = a.periodogram && cs.C.size() >= 32 ? periodogram_peaks(cs) : std::vector<Peak>{};
      if (a.format == "csv") {
        std::ostringstream o;
        o.precision(12);
        o << "# config: " << config.dump() << "\n";
        o << "# verdict: " << to_string(rep.verdict) << "; " << rep.note << "\n";
        o << "lag,C,stderr\n";
        for (std::size_t k = 0; k < cs.C.size(); ++k) o << cs.lags[k] << "," << cs.C[k] << "," << cs.stderr[k] << "\n";
        if (a.periodogram) {
          o << "\nfrequency,power_fraction,magnitude\n";
          for (const Peak& p : peaks) o << p.frequency << "," << p.power_fraction << "," << p.magnitude << "\n";
        }
        text = o.str();
      } else {
        json pk = json::array();
        for (const Peak& p : peaks) pk.push_back({{"frequency", p.frequency}, {"power_fraction", p.power_fraction}});
        result = {{"observable", cs.observable}, {"lags", cs.lags}, {"C", cs.C}, {"stderr", cs.stderr},
                  {"verdict", to_string(rep.verdict)}, {"frequency", rep.frequency},
                  {"power_fraction", rep.power_fraction}, {"cesaro_mean", rep.cesaro_mean},
                  {"mean_stderr", rep.mean_stderr}, {"literature_label", to_string(rep.literature)},
                  {"note", rep.note}, {"peaks", pk}};
      }
    } else if (cmd == "free-product") {
      const Model base = load_model(a.model, a.dim);
      const FreeProduct fp(base.space);
      const Model prod{base.name + " free product", fp.space(), base.values, "layers are independent copies"};
      result = {{"layer_axis", fp.layer_axis()}, {"model", model_to_json(prod)}};
    } else if (cmd == "list-models") {
      json rows = json::array();
      for (const auto& e : list_models())
        rows.push_back({{"name", e.name}, {"default_dim", e.default_dim}, {"description", e.description}});
      result = rows;
    }
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (text.empty()) text = json{{"config", config}, {"result", result}}.dump(2) + "\n";
  try {
    if (a.out_path.empty()) out << text;
    else write_atomically(a.out_path, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}

}  // namespace tms::cli
