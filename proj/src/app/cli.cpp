#include "nonclass/app/cli.hpp"

#include "nonclass/app/families.hpp"
#include "nonclass/app/probe.hpp"
#include "nonclass/app/reproduce.hpp"
#include "nonclass/app/sweep.hpp"
#include "nonclass/closed_forms.hpp"
#include "nonclass/discord.hpp"
#include "nonclass/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace nonclass::app {

namespace {

using nlohmann::json;

constexpr int kMaxOptimizerDim = 4;

struct Common {
  std::string family;
  std::string input;
  int d = 0;
  double p = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int m = 2;
  int n = 2;
  int rank = 0;
  std::uint64_t state_seed = 1;
  std::string format;
  std::string out;
  OptimizerConfig optimizer;
  CLI::Option* d_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* a_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  FamilyParams params() const {
    FamilyParams fp;
    if (d_opt->count() > 0) fp.d = d;
    if (p_opt->count() > 0) fp.p = p;
    if (a_opt->count() > 0) fp.a = a;
    if (alpha_opt->count() > 0) fp.alpha = alpha;
    if (beta_opt->count() > 0) fp.beta = beta;
    fp.m = m;
    fp.n = n;
    fp.rank = rank;
    fp.seed = state_seed;
    return fp;
  }
};

void add_optimizer_flags(CLI::App* cmd, OptimizerConfig& cfg, CLI::Option** seed_opt) {
  cmd->add_option("--restarts", cfg.restarts, "Optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", cfg.max_iters, "Compass sweeps per restart")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "Optimizer convergence tolerance")->capture_default_str();
  *seed_opt = cmd->add_option("--seed", cfg.seed, "Optimizer seed; restart k uses seed + k")->capture_default_str();
}

void add_family_flags(CLI::App* cmd, Common& c) {
  c.d_opt = cmd->add_option("--d", c.d, "Local dimension (werner, maximally-entangled)");
  c.p_opt = cmd->add_option("--p", c.p, "Werner weight");
  c.a_opt = cmd->add_option("--a", c.a, "Schmidt amplitude");
  c.alpha_opt = cmd->add_option("--alpha", c.alpha, "rank2-separable angle of b2");
  c.beta_opt = cmd->add_option("--beta", c.beta, "rank2-separable angle of a2");
  cmd->add_option("--m", c.m, "random: dimension of A")->capture_default_str();
  cmd->add_option("--n", c.n, "random: dimension of B")->capture_default_str();
  cmd->add_option("--rank", c.rank, "random: rank, 0 for full")->capture_default_str();
  cmd->add_option("--state-seed", c.state_seed, "random: state seed")->capture_default_str();
}

std::string families_help() {
  std::string out = "Families:\n";
  for (const FamilyInfo& f : families()) {
    out += "  " + f.name + (f.params.empty() ? "" : " " + f.params) + "\n      " + f.help + "\n";
  }
  return out;
}

// Writes to --out when given, else to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::optional<double> formula_for(const std::string& family, const FamilyParams& fp) {
  if (family == "werner") return werner_d(WernerParams(*fp.d, *fp.p));
  if (family == "schmidt-pure") return 2.0 * *fp.a * std::sqrt(std::max(0.0, 1.0 - *fp.a * *fp.a));
  if (family == "bell" || family == "maximally-entangled") return 1.0;
  return std::nullopt;
}

json compute_report(const Common& c) {
  json j;
  std::optional<DensityOperator> state;
  std::optional<double> formula;
  if (!c.input.empty()) {
    state = read_state_file(c.input);
    j["source"] = "file:" + c.input;
  } else {
    const FamilyParams fp = c.params();
    state = make_family_state(c.family, fp);
    formula = formula_for(c.family, fp);
    j["source"] = "family:" + c.family;
  }
  const DensityOperator& rho = *state;
  const int m = rho.dim_a();
  j["dim_a"] = m;
  j["dim_b"] = rho.dim_b();

  std::optional<double> best;
  std::string best_method;
  if (m == 2) {
    best = d_closed_2xN(rho);
    best_method = to_string(MeasureMethod::closed_form_2xN);
    j["D_closed_form"] = *best;
    j["bounds"] = {{"lower", lower_bound_2xN(rho)}, {"upper", upper_bound_2xN(rho)}};
  }
  if (formula) {
    j["D_formula"] = *formula;
    if (!best) {
      best = formula;
      best_method = c.family == "werner" ? to_string(MeasureMethod::werner_formula) : to_string(MeasureMethod::pure_formula);
    }
  }
  std::optional<MeasureResult> optimized;
  if (m <= kMaxOptimizerDim) {
    OptimizerConfig cfg = c.optimizer;
    cfg.closed_form_dispatch = false;
    optimized = minimize_d(rho, cfg);
    j["optimizer"] = measure_result_to_json(*optimized);
    if (!best) {
      best = optimized->value;
      best_method = to_string(MeasureMethod::optimizer);
    }
  } else {
    j["optimizer"] = nullptr;
  }
  j["D"] = best ? json(*best) : json(nullptr);
  j["D_method"] = best ? json(best_method) : json(nullptr);
  j["horodecki_M"] = m == 2 && rho.dim_b() == 2 ? json(horodecki_m(rho)) : json(nullptr);
  if (c.family == "werner" && c.input.empty()) {
    j["discord"] = werner_discord(WernerParams(c.d, c.p));
  } else {
    j["discord"] = m == 2 ? json(discord_numeric(rho)) : json(nullptr);
  }
  if (optimized) {
    ClassicalityConfig cfg;
    cfg.optimizer = c.optimizer;
    const ClassicalBasisSearch s = find_classical_basis(rho, cfg);
    j["classical_basis_found"] = s.basis.has_value();
    j["defect"] = s.defect;
  } else {
    j["classical_basis_found"] = nullptr;
    j["defect"] = nullptr;
  }
  return j;
}

// key,value lines for the scalar entries of a compute report.
std::string flat_csv(const json& j) {
  std::ostringstream s;
  s << "key,value\n";
  const auto scalar = [&](const std::string& key, const json& v) {
    if (v.is_number()) {
      s << key << "," << format_number(v.get<double>()) << "\n";
    } else if (v.is_boolean()) {
      s << key << "," << (v.get<bool>() ? "true" : "false") << "\n";
    } else if (v.is_string()) {
      s << key << "," << v.get<std::string>() << "\n";
    } else if (v.is_null()) {
      s << key << ",\n";
    }
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) scalar(key + "." + sub, v);
    } else {
      scalar(key, value);
    }
  }
  return s.str();
}

int run_compute(const Common& c, std::ostream& out) {
  if (c.family.empty() == c.input.empty()) {
    throw std::invalid_argument("compute: give exactly one of --family or --input");
  }
  const json j = compute_report(c);
  const std::string format = c.format.empty() ? "json" : c.format;
  emit(format == "json" ? j.dump(2) + "\n" : flat_csv(j), c.out, out);
  return exit_code::ok;
}

int run_sweep_cmd(const Common& c, int steps, int samples, std::ostream& out) {
  SweepOptions o;
  o.family = c.family;
  o.params = c.params();
  o.steps = steps;
  o.samples = samples;
  o.optimizer = c.optimizer;
  const SweepTable table = run_sweep(o);
  std::ostringstream s;
  if (c.format.empty() || c.format == "csv") {
    write_csv(table, s);
  } else {
    write_json(table, s);
  }
  emit(s.str(), c.out, out);
  return exit_code::ok;
}

int run_probe(const Common& c, int samples, int refine, std::ostream& out) {
  ProbeOptions o;
  o.terms = c.rank > 0 ? c.rank : 3;
  o.samples = samples;
  o.refine_steps = refine;
  o.seed = c.optimizer.seed;
  o.threads = c.optimizer.threads;
  const ProbeResult r = probe_separable_max(o);
  json terms = json::array();
  double max_p = 0.0;
  for (const SeparableTerm& t : r.best.terms()) {
    const auto vec = [](const Vector& v) {
      json e = json::array();
      for (Eigen::Index k = 0; k < v.size(); ++k) e.push_back({v(k).real(), v(k).imag()});
      return e;
    };
    terms.push_back({{"p", t.p}, {"a", vec(t.a)}, {"b", vec(t.b)}});
    max_p = std::max(max_p, t.p);
  }
  const json j = {{"terms", o.terms},
                  {"samples", r.samples},
                  {"refine_steps", o.refine_steps},
                  {"seed", o.seed},
                  {"best_D_found", r.best_d},
                  {"one_minus_max_p", 1.0 - max_p},
                  {"rank2_maximum", 0.5},
                  {"ensemble", terms},
                  {"note", "best value found by random search and greedy refinement; not a proven maximum"}};
  emit(j.dump(2) + "\n", c.out, out);
  return exit_code::ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-unitary non-classicality measure D(rho) for bipartite states", "nonclass"};
  app.require_subcommand(1);
  app.footer(families_help());

  Common c;   // compute
  Common sc;  // sweep
  Common pc;  // probe-conjecture

  CLI::App* compute = app.add_subcommand("compute", "D, bounds, CHSH quantity, discord and classicality for one state");
  CLI::Option* fam = compute->add_option("--family", c.family, "Named family (see below)");
  CLI::Option* input = compute->add_option("--input", c.input, "JSON state file");
  fam->excludes(input);
  add_family_flags(compute, c);
  add_optimizer_flags(compute, c.optimizer, &c.seed_opt);
  compute->add_option("--format", c.format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));
  compute->add_option("--out", c.out, "Output file (default stdout)");
  compute->footer(families_help());

  int steps = 10;
  int samples = 10;
  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate a family over a parameter grid");
  sweep->add_option("--family", sc.family, "werner | schmidt-pure | rank2-separable | random")->required();
  add_family_flags(sweep, sc);
  add_optimizer_flags(sweep, sc.optimizer, &sc.seed_opt);
  sweep->add_option("--steps", steps, "Grid intervals per swept parameter")->capture_default_str();
  sweep->add_option("--samples", samples, "random: number of states (seeds state-seed, state-seed+1, ...)")
      ->capture_default_str();
  sweep->add_option("--format", sc.format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sc.out, "Output file (default stdout)");
  sweep->footer("CSV columns by family:\n" + sweep_columns_help() +
                "werner sweeps p over [0, 1], schmidt-pure a over [0, 1], rank2-separable alpha and beta over "
                "[0, pi].\nD_optimizer is filled for M <= 4, discord for M = 2, M_horodecki for 2 x 2.");

  ReproduceOptions rep;
  bool quiet = false;
  CLI::App* reproduce = app.add_subcommand("reproduce", "Run the acceptance checks; exit 0 iff all pass");
  reproduce->add_option("--filter", rep.filter, "Run only criteria whose key contains this substring");
  reproduce->add_option("--tolerance-scale", rep.tolerance_scale, "Multiply every tolerance (0 must fail)")
      ->capture_default_str();
  reproduce->add_flag("--quiet", quiet, "Print detail lines only for failing criteria");
  CLI::Option* rep_seed = nullptr;
  add_optimizer_flags(reproduce, rep.optimizer, &rep_seed);
  std::string keys = "Criteria:\n";
  for (const CriterionInfo& k : criteria()) keys += "  " + std::to_string(k.number) + " " + k.key + "  " + k.title + "\n";
  reproduce->footer(keys);

  int probe_samples = 2000;
  int probe_refine = 4000;
  CLI::App* probe = app.add_subcommand(
      "probe-conjecture", "Search separable two-qubit ensembles with --rank terms for large D (best found only)");
  probe->add_option("--rank", pc.rank, "Number of product terms (default 3)");
  probe->add_option("--samples", probe_samples, "Random ensembles sampled")->capture_default_str();
  probe->add_option("--refine-steps", probe_refine, "Greedy perturbation steps on the best sample")
      ->capture_default_str();
  probe->add_option("--seed", pc.optimizer.seed, "Search seed")->capture_default_str();
  probe->add_option("--out", pc.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "nonclass: " << e.what() << "\n";
    return exit_code::usage;
  }

  try {
    if (compute->parsed()) return run_compute(c, out);
    if (sweep->parsed()) return run_sweep_cmd(sc, steps, samples, out);
    if (probe->parsed()) return run_probe(pc, probe_samples, probe_refine, out);
    rep.details = !quiet;
    const ReproduceSummary summary = run_reproduce(rep, out);
    if (summary.results.empty()) {
      err << "nonclass: no criterion matches filter '" << rep.filter << "'\n";
      return exit_code::usage;
    }
    return summary.all_passed() ? exit_code::ok : exit_code::check_failed;
  } catch (const InvalidState& e) {
    err << "nonclass: invalid density matrix: " << e.what() << "\n";
    return exit_code::invalid_state;
  } catch (const FormatError& e) {
    err << "nonclass: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::invalid_argument& e) {
    err << "nonclass: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "nonclass: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace nonclass::app
