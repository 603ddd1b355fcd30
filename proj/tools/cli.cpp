#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "robustggm/alt_t_model.hpp"
#include "robustggm/csv_io.hpp"
#include "robustggm/errors.hpp"
#include "robustggm/glasso.hpp"
#include "robustggm/sim_bench.hpp"
#include "robustggm/tlasso.hpp"
#include "robustggm/version.hpp"

namespace robustggm::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioFlags {
  Index p = 20;
  Index n = 100;
  double edge_prob = 0.1;
  double min_magnitude = 0.3;
  double max_magnitude = 0.6;
  std::string kind = "gaussian";
  double nu = 3.0;
  double mean_multiplier = 25.0;
  Index contam_nodes = 3;
  Index contam_rows = 0;
  Index blocks = 5;
  Index block_rows = 20;
  Index block_nodes = 3;
};

struct MethodFlags {
  double nu = 3.0;
  double em_tol = 1e-5;
  int max_em_iter = 200;
  double glasso_tol = 1e-7;
  int k_samples = 50;
  int burn_in = 20;
  double theta_tol = 1e-3;
};

struct FitFlags {
  std::string input;
  std::string output;
  std::string method = "tlasso";
  double rho = 0.0;
  std::uint64_t seed = 0;
  bool full_tau = false;
  MethodFlags model;
};

struct RocFlags {
  ScenarioFlags scenario;
  MethodFlags model;
  std::string methods = "glasso,tlasso";
  int reps = 20;
  int grid_size = 30;
  double rho_min_ratio = 1e-3;
  std::string rho_grid;
  std::uint64_t seed = 1;
  std::string output;
};

struct TopkFlags {
  std::string input;
  std::string output;
  std::string method = "tlasso";
  std::size_t k = 0;
  std::uint64_t seed = 0;
  MethodFlags model;
};

struct SimulateFlags {
  ScenarioFlags scenario;
  std::uint64_t seed = 1;
  std::string output;
  std::string truth;
};

struct ReplayFlags {
  std::string manifest;
  std::string output;
  std::string truth;
};

const std::vector<std::string> kMethodNames{"glasso", "tlasso", "alt-tlasso"};
const std::vector<std::string> kKindNames{"gaussian", "student_t", "contaminated_fixed",
                                          "contaminated_blocks"};

void add_scenario_flags(CLI::App* sub, ScenarioFlags& f) {
  sub->add_option("--p", f.p, "number of variables")->check(CLI::PositiveNumber);
  sub->add_option("--n", f.n, "observations per replicate")->check(CLI::PositiveNumber);
  sub->add_option("--edge-prob", f.edge_prob, "probability of each edge")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--min-magnitude", f.min_magnitude)->check(CLI::PositiveNumber);
  sub->add_option("--max-magnitude", f.max_magnitude)->check(CLI::PositiveNumber);
  sub->add_option("--kind", f.kind, "data scenario")->check(CLI::IsMember(kKindNames));
  sub->add_option("--nu", f.nu, "degrees of freedom of student_t data");
  sub->add_option("--mean-multiplier", f.mean_multiplier,
                  "contamination mean as a multiple of the largest variance");
  sub->add_option("--contam-nodes", f.contam_nodes)->check(CLI::NonNegativeNumber);
  sub->add_option("--contam-rows", f.contam_rows)->check(CLI::NonNegativeNumber);
  sub->add_option("--blocks", f.blocks)->check(CLI::NonNegativeNumber);
  sub->add_option("--block-rows", f.block_rows)->check(CLI::NonNegativeNumber);
  sub->add_option("--block-nodes", f.block_nodes)->check(CLI::NonNegativeNumber);
}

void add_method_flags(CLI::App* sub, MethodFlags& f, const std::string& nu_flag) {
  sub->add_option(nu_flag, f.nu, "degrees of freedom of the fitted t model");
  sub->add_option("--em-tol", f.em_tol)->check(CLI::NonNegativeNumber);
  sub->add_option("--max-em-iter", f.max_em_iter)->check(CLI::NonNegativeNumber);
  sub->add_option("--glasso-tol", f.glasso_tol)->check(CLI::PositiveNumber);
  sub->add_option("--k-samples", f.k_samples, "retained MCMC cycles (alt-tlasso)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--burn-in", f.burn_in, "discarded MCMC cycles (alt-tlasso)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--theta-tol", f.theta_tol, "relative theta change stopping rule (alt-tlasso)")
      ->check(CLI::NonNegativeNumber);
}

GraphSpec to_graph_spec(const ScenarioFlags& f) {
  GraphSpec g;
  g.p = f.p;
  g.edge_prob = f.edge_prob;
  g.min_magnitude = f.min_magnitude;
  g.max_magnitude = f.max_magnitude;
  return g;
}

ScenarioSpec to_scenario(const ScenarioFlags& f) {
  ScenarioSpec s;
  s.kind = scenario_kind_from_string(f.kind);
  s.n = f.n;
  s.nu = f.nu;
  s.mean_multiplier = f.mean_multiplier;
  s.contam_nodes = f.contam_nodes;
  s.contam_rows = f.contam_rows;
  s.blocks = f.blocks;
  s.block_rows = f.block_rows;
  s.block_nodes = f.block_nodes;
  s.validate(f.p);
  return s;
}

MethodConfigs to_configs(const MethodFlags& f, std::uint64_t seed) {
  MethodConfigs c;
  c.glasso.tol = f.glasso_tol;
  c.glasso.throw_on_nonconvergence = false;
  c.tlasso.nu = f.nu;
  c.tlasso.em_tol = f.em_tol;
  c.tlasso.max_em_iter = f.max_em_iter;
  c.tlasso.glasso_tol = f.glasso_tol;
  c.tlasso.throw_on_nonconvergence = false;
  c.tlasso.validate();
  c.mcmc.k_samples = f.k_samples;
  c.mcmc.burn_in = f.burn_in;
  c.mcmc.theta_tol = f.theta_tol;
  c.mcmc.seed = seed;
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json row_major(const Matrix& m) {
  json a = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  return a;
}

json edge_list(const SpdMatrix& theta) {
  json a = json::array();
  for (const auto& [i, j] : edges_from_theta(theta).edges) {
    a.push_back({{"i", i}, {"j", j}, {"theta", theta(i, j)}});
  }
  return a;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << content;
  if (!f) throw Error("write failed: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// The subcommand name followed by every option with its resolved value.
std::vector<std::string> resolved_args(const CLI::App* sub) {
  std::vector<std::string> args{sub->get_name()};
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name.empty()) continue;
    if (opt->get_expected_min() == 0) {
      if (opt->count() > 0) args.push_back(name);
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      value = opt->results().front();
    } else {
      value = opt->get_default_str();
    }
    if (value.empty()) continue;
    args.push_back(name);
    args.push_back(value);
  }
  return args;
}

struct Manifest {
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

void write_manifest(const std::string& output, const Manifest& m, double seconds) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = m.argv.front();
  j["argv"] = m.argv;
  j["seed"] = m.seed;
  j["version"] = kVersion;
  j["duration_seconds"] = seconds;
  j["outputs"] = m.outputs;
  write_file(manifest_path(output), dump(j));
}

int threads_from_env() {
  const char* env = std::getenv("ROBUSTGGM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw UsageError("ROBUSTGGM_THREADS must be a positive integer");
  return static_cast<int>(v);
}

CsvTable load_csv(const std::string& path) {
  try {
    return read_csv_file(path);
  } catch (const CsvError& e) {
    throw CsvError(path + ": " + e.what(), e.row(), e.column());
  }
}

json variables_json(const CsvTable& t) {
  if (t.header.empty()) return nullptr;
  return t.header;
}

int cmd_fit(const FitFlags& f, std::ostream& out) {
  const CsvTable table = load_csv(f.input);
  const Dataset& data = table.data;
  const Index n = data.n();
  const Method method = method_from_string(f.method);
  const MethodConfigs configs = to_configs(f.model, f.seed);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = f.method;
  j["n"] = n;
  j["p"] = data.p();
  j["variables"] = variables_json(table);

  bool converged = false;
  try {
    if (method == Method::glasso) {
      const SpdMatrix s = empirical_covariance(data);
      const GlassoResult g = glasso_fit(s, PenaltySpec{f.rho, false}, configs.glasso);
      converged = g.converged;
      j["mu_hat"] = to_json(data.values().colwise().mean().transpose());
      j["theta_hat"] = row_major(g.theta_hat.matrix());
      j["psi_hat"] = row_major(g.sigma_hat.matrix());
      j["edges"] = edge_list(g.theta_hat);
      j["trace_kind"] = "glasso_objective";
      j["objective_trace"] = g.objective_trace;
      j["iterations"] = g.iterations;
    } else {
      TlassoConfig cfg = configs.tlasso;
      cfg.rho = static_cast<double>(n) * f.rho;
      const TlassoFit fit = method == Method::tlasso ? tlasso_fit(data, cfg)
                                                     : alt_tlasso_fit(data, cfg, configs.mcmc);
      converged = fit.converged;
      j["mu_hat"] = to_json(fit.mu_hat);
      j["theta_hat"] = row_major(fit.theta_hat.matrix());
      j["psi_hat"] = row_major(fit.psi_hat.matrix());
      j["edges"] = edge_list(fit.theta_hat);
      if (method == Method::tlasso) {
        j["weights"] = to_json(fit.weights.tau);
        j["trace_kind"] = "penalized_loglik";
        j["objective_trace"] = fit.penalized_loglik_trace;
      } else {
        json cells = json::array();
        for (Index i = 0; i < fit.cell_weights.rows(); ++i) {
          cells.push_back(to_json(fit.cell_weights.row(i).transpose()));
        }
        j["cell_weights"] = std::move(cells);
        if (f.full_tau) {
          json full = json::array();
          for (const Matrix& m : fit.tau_products) full.push_back(row_major(m));
          j["tau_products"] = std::move(full);
        }
        j["trace_kind"] = "relative_theta_change";
        j["objective_trace"] = fit.theta_change_trace;
      }
      j["iterations"] = fit.em_iterations;
    }
  } catch (const NonConvergence& e) {
    j["error"] = e.what();
  }
  j["converged"] = converged;
  j["run"] = {{"rho", f.rho},
              {"rho_penalized_loglik", method == Method::glasso ? f.rho : static_cast<double>(n) * f.rho},
              {"nu", f.model.nu},
              {"seed", f.seed},
              {"version", kVersion}};
  write_file(f.output, dump(j));
  if (!converged) {
    out << "warning: fit did not converge; partial result written to " << f.output << "\n";
    return kNonConvergence;
  }
  return kOk;
}

int cmd_roc(const RocFlags& f) {
  RocExperimentSpec spec;
  spec.graph = to_graph_spec(f.scenario);
  spec.scenario = to_scenario(f.scenario);
  spec.methods.clear();
  for (const std::string& m : split_list(f.methods)) {
    if (std::find(kMethodNames.begin(), kMethodNames.end(), m) == kMethodNames.end()) {
      throw UsageError("--methods: unknown method '" + m + "'");
    }
    spec.methods.push_back(method_from_string(m));
  }
  if (spec.methods.empty()) throw UsageError("--methods: no method given");
  for (const std::string& v : split_list(f.rho_grid)) {
    try {
      std::size_t used = 0;
      spec.rho_grid.push_back(std::stod(v, &used));
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::logic_error&) {
      throw UsageError("--rho-grid: not a number: '" + v + "'");
    }
  }
  for (std::size_t i = 0; i < spec.rho_grid.size(); ++i) {
    if (!(spec.rho_grid[i] > 0.0) || (i > 0 && !(spec.rho_grid[i] > spec.rho_grid[i - 1]))) {
      throw UsageError("--rho-grid must be positive and strictly increasing");
    }
  }
  spec.replicates = f.reps;
  spec.grid_size = f.grid_size;
  spec.rho_min_ratio = f.rho_min_ratio;
  spec.configs = to_configs(f.model, 0);
  spec.seed = f.seed;
  spec.threads = threads_from_env();

  const RocExperimentResult res = run_roc_experiment(spec);
  std::ostringstream csv;
  csv << "method,rho,mean_fpr,mean_tpr\n";
  for (const MethodSummary& m : res.methods) {
    for (const RocPoint& pt : m.mean_curve.points) {
      csv << to_string(m.method) << ',' << format_double(pt.rho) << ',' << format_double(pt.fpr)
          << ',' << format_double(pt.tpr) << '\n';
    }
  }
  csv << "\nmethod,mean_auc,replicates\n";
  for (const MethodSummary& m : res.methods) {
    csv << to_string(m.method) << ',' << format_double(m.mean_auc) << ','
        << m.replicate_auc.size() << '\n';
  }
  write_file(f.output, csv.str());
  return kOk;
}

int cmd_topk(const TopkFlags& f) {
  const CsvTable table = load_csv(f.input);
  const Index p = table.data.p();
  const std::size_t possible = static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2;
  if (f.k > possible) {
    throw UsageError("--k " + std::to_string(f.k) + " exceeds the " + std::to_string(possible) +
                     " possible edges");
  }
  const Method method = method_from_string(f.method);
  const TopKResult r = top_k_edges(method, table.data, f.k, to_configs(f.model, f.seed));
  json edges = json::array();
  std::size_t idx = 0;
  for (const auto& [i, j] : r.edges.edges) {
    json e = {{"i", i}, {"j", j}, {"magnitude", r.magnitudes[idx++]}};
    if (!table.header.empty()) {
      e["names"] = {table.header[static_cast<std::size_t>(i)],
                    table.header[static_cast<std::size_t>(j)]};
    }
    edges.push_back(std::move(e));
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = f.method;
  j["k"] = f.k;
  j["rho"] = r.rho;
  j["tie_broken"] = r.tie_broken;
  j["variables"] = variables_json(table);
  j["edges"] = std::move(edges);
  j["run"] = {{"nu", f.model.nu}, {"seed", f.seed}, {"version", kVersion}};
  write_file(f.output, dump(j));
  return kOk;
}

int cmd_simulate(const SimulateFlags& f) {
  RocExperimentSpec spec;
  spec.graph = to_graph_spec(f.scenario);
  spec.scenario = to_scenario(f.scenario);
  spec.seed = f.seed;
  const Replicate rep = make_replicate(spec, 0);
  std::vector<std::string> header;
  for (Index j = 0; j < f.scenario.p; ++j) header.push_back("x" + std::to_string(j + 1));
  std::ostringstream csv;
  write_csv(csv, rep.generated.data, header);
  write_file(f.output, csv.str());

  json edges = json::array();
  for (const auto& [i, j] : rep.graph.truth.edges) edges.push_back({i, j});
  json cells = json::array();
  for (Index i = 0; i < rep.generated.contaminated.rows(); ++i) {
    for (Index j = 0; j < rep.generated.contaminated.cols(); ++j) {
      if (rep.generated.contaminated(i, j)) cells.push_back({i, j});
    }
  }
  json t;
  t["schema_version"] = kSchemaVersion;
  t["p"] = f.scenario.p;
  t["n"] = f.scenario.n;
  t["kind"] = f.scenario.kind;
  t["edges"] = std::move(edges);
  t["theta"] = row_major(rep.graph.theta.matrix());
  t["contaminated_nodes"] = rep.generated.contaminated_nodes;
  t["contaminated_cells"] = std::move(cells);
  t["run"] = {{"seed", f.seed}, {"version", kVersion}};
  write_file(f.truth, dump(t));
  return kOk;
}

std::vector<std::string> replay_args(const ReplayFlags& f) {
  std::ifstream in(f.manifest);
  if (!in) throw UsageError("cannot read manifest " + f.manifest);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("malformed manifest " + f.manifest + ": " + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array() || m["argv"].empty()) {
    throw UsageError("manifest " + f.manifest + " has no argv");
  }
  std::vector<std::string> args = m["argv"].get<std::vector<std::string>>();
  if (args.front() == "replay") throw UsageError("manifest refers to another replay");
  auto override_value = [&](const std::string& flag, const std::string& value) {
    if (value.empty()) return;
    auto it = std::find(args.begin(), args.end(), flag);
    if (it == args.end() || std::next(it) == args.end()) {
      throw UsageError("manifest has no " + flag + " to override");
    }
    *std::next(it) = value;
  };
  override_value("--output", f.output);
  override_value("--truth", f.truth);
  return args;
}

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               int depth);

int dispatch(CLI::App* fit, CLI::App* roc, CLI::App* topk, CLI::App* sim,
             CLI::App* replay, FitFlags& fit_f, RocFlags& roc_f, TopkFlags& topk_f,
             SimulateFlags& sim_f, ReplayFlags& replay_f, std::ostream& out, std::ostream& err,
             int depth) {
  if (*replay) {
    if (depth > 0) throw UsageError("nested replay");
    return run_parsed(replay_args(replay_f), out, err, depth + 1);
  }
  const auto start = std::chrono::steady_clock::now();
  Manifest manifest;
  std::string output;
  int code = kOk;
  if (*fit) {
    manifest.argv = resolved_args(fit);
    manifest.seed = fit_f.seed;
    output = fit_f.output;
    manifest.outputs = {output};
    code = cmd_fit(fit_f, out);
  } else if (*roc) {
    manifest.argv = resolved_args(roc);
    manifest.seed = roc_f.seed;
    output = roc_f.output;
    manifest.outputs = {output};
    code = cmd_roc(roc_f);
  } else if (*topk) {
    manifest.argv = resolved_args(topk);
    manifest.seed = topk_f.seed;
    output = topk_f.output;
    manifest.outputs = {output};
    code = cmd_topk(topk_f);
  } else if (*sim) {
    if (sim_f.truth.empty()) sim_f.truth = sim_f.output + ".truth.json";
    manifest.argv = resolved_args(sim);
    if (std::find(manifest.argv.begin(), manifest.argv.end(), "--truth") == manifest.argv.end()) {
      manifest.argv.push_back("--truth");
      manifest.argv.push_back(sim_f.truth);
    }
    manifest.seed = sim_f.seed;
    output = sim_f.output;
    manifest.outputs = {output, sim_f.truth};
    code = cmd_simulate(sim_f);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(output, manifest, seconds);
  return code;
}

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               int depth) {
  CLI::App app{"Robust Gaussian graphical model estimation with t-distributions", "robustggm"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  FitFlags fit_f;
  CLI::App* fit = app.add_subcommand("fit", "fit one model to a CSV dataset");
  fit->add_option("--input", fit_f.input, "CSV file, rows are observations")->required();
  fit->add_option("--output", fit_f.output, "JSON result file")->required();
  fit->add_option("--method", fit_f.method)->check(CLI::IsMember(kMethodNames));
  fit->add_option("--rho", fit_f.rho, "penalty, per-entry threshold on the scatter matrix")
      ->required()
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--seed", fit_f.seed, "MCMC seed (alt-tlasso)");
  fit->add_flag("--full-tau", fit_f.full_tau, "export full tau product matrices (alt-tlasso)");
  add_method_flags(fit, fit_f.model, "--nu");

  RocFlags roc_f;
  CLI::App* roc = app.add_subcommand("roc", "simulate replicates and average ROC curves");
  add_scenario_flags(roc, roc_f.scenario);
  add_method_flags(roc, roc_f.model, "--fit-nu");
  roc->add_option("--methods", roc_f.methods, "comma-separated list of glasso, tlasso, alt-tlasso");
  roc->add_option("--reps", roc_f.reps)->check(CLI::PositiveNumber);
  roc->add_option("--grid-size", roc_f.grid_size)->check(CLI::Range(2, 100000));
  roc->add_option("--rho-min-ratio", roc_f.rho_min_ratio)->check(CLI::Range(1e-12, 1.0));
  roc->add_option("--rho-grid", roc_f.rho_grid, "comma-separated ascending grid (glasso scale)");
  roc->add_option("--seed", roc_f.seed);
  roc->add_option("--output", roc_f.output, "CSV result file")->required();

  TopkFlags topk_f;
  CLI::App* topk = app.add_subcommand("topk", "the k strongest edges of a CSV dataset");
  topk->add_option("--input", topk_f.input)->required();
  topk->add_option("--output", topk_f.output)->required();
  topk->add_option("--method", topk_f.method)->check(CLI::IsMember(kMethodNames));
  topk->add_option("--k", topk_f.k)->required();
  topk->add_option("--seed", topk_f.seed);
  add_method_flags(topk, topk_f.model, "--nu");

  SimulateFlags sim_f;
  CLI::App* sim = app.add_subcommand("simulate", "write one simulated dataset and its graph");
  add_scenario_flags(sim, sim_f.scenario);
  sim->add_option("--seed", sim_f.seed);
  sim->add_option("--output", sim_f.output, "CSV data file")->required();
  sim->add_option("--truth", sim_f.truth, "JSON truth file (default <output>.truth.json)");

  ReplayFlags replay_f;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_f.manifest)->required();
  replay->add_option("--output", replay_f.output, "write to this path instead");
  replay->add_option("--truth", replay_f.truth, "simulate only: truth path override");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  return dispatch(fit, roc, topk, sim, replay, fit_f, roc_f, topk_f, sim_f, replay_f, out,
                  err, depth);
}

}  // namespace

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_parsed(args, out, err, 0);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CsvError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidScenario& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace robustggm::cli
