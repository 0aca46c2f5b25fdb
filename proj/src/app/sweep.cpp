#include "nonclass/app/sweep.hpp"

#include "nonclass/closed_forms.hpp"
#include "nonclass/discord.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace nonclass::app {

namespace {

constexpr int kMaxOptimizerDim = 4;

struct GridPoint {
  FamilyParams params;
  std::vector<std::optional<double>> columns;
};

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) out.push_back(lo + (hi - lo) * k / steps);
  return out;
}

std::vector<GridPoint> build_grid(const SweepOptions& o) {
  if (o.steps < 1) throw std::invalid_argument("sweep: --steps must be at least 1");
  std::vector<GridPoint> grid;
  const std::string& f = o.family;
  if (f == "werner") {
    const int d = o.params.d.value_or(2);
    for (const double p : linspace(0.0, 1.0, o.steps)) {
      FamilyParams fp = o.params;
      fp.d = d;
      fp.p = p;
      grid.push_back({fp, {d, p}});
    }
  } else if (f == "schmidt-pure") {
    for (const double a : linspace(0.0, 1.0, o.steps)) {
      FamilyParams fp = o.params;
      fp.a = a;
      grid.push_back({fp, {a}});
    }
  } else if (f == "rank2-separable") {
    const auto axis = linspace(0.0, std::numbers::pi, o.steps);
    for (const double alpha : axis) {
      for (const double beta : axis) {
        FamilyParams fp = o.params;
        fp.alpha = alpha;
        fp.beta = beta;
        grid.push_back({fp, {alpha, beta}});
      }
    }
  } else if (f == "random") {
    if (o.samples < 1) throw std::invalid_argument("sweep: --samples must be at least 1");
    for (int s = 0; s < o.samples; ++s) {
      FamilyParams fp = o.params;
      fp.seed = o.params.seed + static_cast<std::uint64_t>(s);
      const int rank = fp.rank > 0 ? fp.rank : fp.m * fp.n;
      grid.push_back({fp, {fp.m, fp.n, rank, static_cast<double>(fp.seed)}});
    }
  } else {
    throw UnknownFamily("sweep: unknown family '" + f + "' (werner | schmidt-pure | rank2-separable | random)");
  }
  return grid;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) return std::to_string(static_cast<long long>(x));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> sweep_param_columns(const std::string& family) {
  if (family == "werner") return {"d", "p"};
  if (family == "schmidt-pure") return {"a"};
  if (family == "rank2-separable") return {"alpha", "beta"};
  if (family == "random") return {"m", "n", "rank", "seed"};
  throw UnknownFamily("sweep: unknown family '" + family + "'");
}

std::string sweep_csv_header(const std::string& family) {
  std::string h = "family";
  for (const auto& c : sweep_param_columns(family)) h += "," + c;
  return h + ",D_formula,D_optimizer,discord,M_horodecki";
}

std::string sweep_columns_help() {
  std::string out;
  for (const char* f : {"werner", "schmidt-pure", "rank2-separable", "random"}) {
    out += "  " + sweep_csv_header(f) + "\n";
  }
  return out;
}

SweepTable run_sweep(const SweepOptions& o) {
  const std::vector<GridPoint> grid = build_grid(o);
  OptimizerConfig inner = o.optimizer;
  inner.closed_form_dispatch = false;
  inner.threads = 1;

  SweepTable table;
  table.family = o.family;
  table.columns = sweep_param_columns(o.family);
  for (const char* c : {"D_formula", "D_optimizer", "discord", "M_horodecki"}) table.columns.emplace_back(c);
  table.provenance = "nonclass sweep family=" + o.family + " seed=" + std::to_string(o.optimizer.seed) +
                     " restarts=" + std::to_string(o.optimizer.restarts) +
                     " max_iters=" + std::to_string(o.optimizer.max_iters) + " tol=" + format_number(o.optimizer.tol);
  if (o.family == "random") table.provenance += " state_seed=" + std::to_string(o.params.seed);

  table.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.optimizer.threads), [&](int i) {
    const GridPoint& g = grid[i];
    const DensityOperator rho = make_family_state(o.family, g.params);
    std::optional<double> formula;
    std::optional<double> optimized;
    std::optional<double> discord;
    std::optional<double> horodecki;
    if (o.family == "werner") {
      const WernerParams wp(*g.params.d, *g.params.p);
      formula = werner_d(wp);
      discord = werner_discord(wp);
    } else if (rho.dim_a() == 2) {
      formula = d_closed_2xN(rho);
    }
    if (rho.dim_a() == 2 && !discord) discord = discord_numeric(rho);
    if (rho.dim_a() <= kMaxOptimizerDim) optimized = minimize_d(rho, inner).value;
    if (rho.dim_a() == 2 && rho.dim_b() == 2) horodecki = horodecki_m(rho);

    std::vector<std::optional<double>> row = g.columns;
    for (const auto& v : {formula, optimized, discord, horodecki}) row.push_back(v);
    table.rows[i] = std::move(row);
  });
  return table;
}

void write_csv(const SweepTable& t, std::ostream& out) {
  out << "# " << t.provenance << "\n" << sweep_csv_header(t.family) << "\n";
  for (const auto& row : t.rows) {
    out << t.family;
    for (const auto& v : row) out << "," << cell(v);
    out << "\n";
  }
}

void write_json(const SweepTable& t, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    rows.push_back(std::move(r));
  }
  const nlohmann::json j = {{"family", t.family}, {"provenance", t.provenance}, {"columns", t.columns}, {"rows", rows}};
  out << j.dump(2) << "\n";
}

}  // namespace nonclass::app
