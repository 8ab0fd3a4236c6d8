// catshield command-line front end: single-point queries as JSON records and
// grid sweeps reproducing the figure data sets as CSV/JSON files.
//
// Exit codes: 0 success, 2 usage error, 3 sweep with no feasible rows,
// 4 numeric failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "catshield/catshield.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumeric = 4;

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "catshield: " << message << "\n";
  std::exit(code);
}

void require_ok(cs_status status, const std::string& what) {
  if (status == CS_OK) return;
  const int code = (status == CS_ERROR_INTERNAL) ? kExitNumeric : kExitUsage;
  fail(code, what + ": " + cs_last_error());
}

// 12 significant digits, C locale; the CSV contract is byte-stable output
std::string fmt12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double rate_to_nats(double value, bool nats) {
  return nats ? value : cs_db_to_nats(value);
}

cs_parity parse_parity(const std::string& parity) {
  if (parity == "odd") return CS_PARITY_ODD;
  if (parity == "even") return CS_PARITY_EVEN;
  fail(kExitUsage, "parity must be 'odd' or 'even'");
}

// ---------------------------------------------------------------------------
// sweep configuration

struct StageTemplate {
  double v = 0.5;
  double gamma_t_db = 0.0;
};

struct SweepConfig {
  std::string scenario = "custom";
  std::string objective = "cn";
  double x0 = 3.0;
  double p0 = 0.0;
  std::string parity = "odd";
  double eta_from = 0.5;
  double eta_to = 1.0;
  int eta_steps = 21;
  std::vector<double> v_values{0.5};
  std::vector<double> gamma_t_db_values{0.0};
  bool has_stage2 = false;
  StageTemplate stage2;
  std::string output_path;
  std::string format = "csv";
  bool oracle_check = false;
};

void apply_scenario(SweepConfig& cfg) {
  if (cfg.scenario == "custom") return;
  cfg.x0 = 3.0;
  cfg.p0 = 0.0;
  cfg.parity = "odd";
  cfg.has_stage2 = false;
  if (cfg.scenario == "fig2") {
    cfg.objective = "cn";
    cfg.eta_from = 0.60;
    cfg.eta_to = 1.0;
    cfg.eta_steps = 41;
    cfg.v_values = {1.0};
    cfg.gamma_t_db_values = {0.0, 1.0, 3.0, 5.0, 6.0};
  } else if (cfg.scenario == "fig3") {
    cfg.objective = "cn";
    cfg.eta_from = 0.50;
    cfg.eta_to = 1.0;
    cfg.eta_steps = 51;
    cfg.v_values = {0.5, 1.0, 1.5, 2.0};
    cfg.gamma_t_db_values = {0.0};
  } else if (cfg.scenario == "fig4") {
    cfg.objective = "cn";
    cfg.eta_from = 0.60;
    cfg.eta_to = 1.0;
    cfg.eta_steps = 41;
    cfg.v_values = {1.0};
    cfg.gamma_t_db_values = {-2.0, -1.0, 1.0, 2.0};
    cfg.has_stage2 = true;
    cfg.stage2 = {2.0, 1.0};
  } else if (cfg.scenario == "fig5") {
    cfg.objective = "hs";
    cfg.eta_from = 0.10;
    cfg.eta_to = 1.0;
    cfg.eta_steps = 46;
    cfg.v_values = {0.5, 1.0, 1.5, 2.0};
    cfg.gamma_t_db_values = {0.0};
  } else {
    fail(kExitUsage, "unknown scenario '" + cfg.scenario + "'");
  }
}

ordered_json config_to_json(const SweepConfig& cfg) {
  ordered_json j;
  j["scenario"] = cfg.scenario;
  j["objective"] = cfg.objective;
  j["state"] = {{"x0", cfg.x0}, {"p0", cfg.p0}, {"parity", cfg.parity}};
  j["eta"] = {{"from", cfg.eta_from}, {"to", cfg.eta_to}, {"steps", cfg.eta_steps}};
  j["v_values"] = cfg.v_values;
  j["gamma_t_db_values"] = cfg.gamma_t_db_values;
  if (cfg.has_stage2)
    j["stage2"] = {{"v", cfg.stage2.v}, {"gamma_t_db", cfg.stage2.gamma_t_db}};
  j["output_path"] = cfg.output_path;
  j["format"] = cfg.format;
  j["oracle_check"] = cfg.oracle_check;
  return j;
}

SweepConfig config_from_json(const ordered_json& j) {
  SweepConfig cfg;
  try {
    cfg.scenario = j.value("scenario", cfg.scenario);
    cfg.objective = j.value("objective", cfg.objective);
    if (j.contains("state")) {
      const auto& s = j.at("state");
      cfg.x0 = s.value("x0", cfg.x0);
      cfg.p0 = s.value("p0", cfg.p0);
      cfg.parity = s.value("parity", cfg.parity);
    }
    if (j.contains("eta")) {
      const auto& e = j.at("eta");
      cfg.eta_from = e.value("from", cfg.eta_from);
      cfg.eta_to = e.value("to", cfg.eta_to);
      cfg.eta_steps = e.value("steps", cfg.eta_steps);
    }
    if (j.contains("v_values"))
      cfg.v_values = j.at("v_values").get<std::vector<double>>();
    if (j.contains("gamma_t_db_values"))
      cfg.gamma_t_db_values = j.at("gamma_t_db_values").get<std::vector<double>>();
    if (j.contains("stage2")) {
      cfg.has_stage2 = true;
      cfg.stage2.v = j.at("stage2").value("v", cfg.stage2.v);
      cfg.stage2.gamma_t_db = j.at("stage2").value("gamma_t_db", cfg.stage2.gamma_t_db);
    }
    cfg.output_path = j.value("output_path", cfg.output_path);
    cfg.format = j.value("format", cfg.format);
    cfg.oracle_check = j.value("oracle_check", cfg.oracle_check);
  } catch (const ordered_json::exception& e) {
    fail(kExitUsage, std::string("bad config: ") + e.what());
  }
  return cfg;
}

void validate_config(SweepConfig& cfg) {
  if (cfg.objective != "cn" && cfg.objective != "hs")
    fail(kExitUsage, "objective must be 'cn' or 'hs'");
  if (cfg.format != "csv" && cfg.format != "json")
    fail(kExitUsage, "format must be 'csv' or 'json'");
  parse_parity(cfg.parity);
  if (cfg.objective == "cn" && cfg.parity != "odd")
    fail(kExitUsage, "the cn objective is defined for odd-parity states");
  if (cfg.eta_steps < 1) fail(kExitUsage, "eta grid needs at least one step");
  if (cfg.eta_steps > 1 && !(cfg.eta_from < cfg.eta_to))
    fail(kExitUsage, "eta grid must be increasing");
  if (cfg.v_values.empty() || cfg.gamma_t_db_values.empty())
    fail(kExitUsage, "v and gamma_t grids must be non-empty");
  for (std::size_t i = 1; i < cfg.v_values.size(); ++i)
    if (!(cfg.v_values[i - 1] < cfg.v_values[i]))
      fail(kExitUsage, "v grid must be strictly increasing");
  for (std::size_t i = 1; i < cfg.gamma_t_db_values.size(); ++i)
    if (!(cfg.gamma_t_db_values[i - 1] < cfg.gamma_t_db_values[i]))
      fail(kExitUsage, "gamma_t grid must be strictly increasing");
  if (cfg.has_stage2 && cfg.objective == "hs")
    fail(kExitUsage, "two-stage sweeps support only the cn objective");
  if (cfg.objective == "hs")
    for (double g : cfg.gamma_t_db_values)
      if (g != 0.0)
        fail(kExitUsage,
             "the hs objective assumes a symmetric environment (gamma_t = 0)");
  if (cfg.output_path.empty())
    cfg.output_path = "catshield_" + cfg.scenario + "." + cfg.format;
}

std::vector<double> eta_grid(const SweepConfig& cfg) {
  std::vector<double> grid(cfg.eta_steps);
  if (cfg.eta_steps == 1) {
    grid[0] = cfg.eta_from;
    return grid;
  }
  const double step = (cfg.eta_to - cfg.eta_from) / (cfg.eta_steps - 1);
  for (int i = 0; i < cfg.eta_steps; ++i) grid[i] = cfg.eta_from + step * i;
  grid.back() = cfg.eta_to;  // endpoints exact regardless of rounding
  return grid;
}

// ---------------------------------------------------------------------------
// sweep execution

struct SweepRow {
  double eta = 0.0;
  double v = 0.0;
  double gamma_t_db = 0.0;
  double eta2 = 0.0;
  double v2 = 0.0;
  double gamma_t2_db = 0.0;
  bool feasible = true;
  double unprotected = 0.0;
  double optimal = 0.0;
  double gamma_opt = 0.0;
  double gamma_mid_opt = 0.0;
  double oracle_value = 0.0;
  double oracle_abs_err = 0.0;
  std::string error;
};

#define ROW_CHECK(call)                        \
  do {                                         \
    const cs_status st_ = (call);              \
    if (st_ != CS_OK) {                        \
      row.error = std::string(#call) + ": " + cs_last_error(); \
      return;                                  \
    }                                          \
  } while (0)

void compute_row(const SweepConfig& cfg, SweepRow& row) {
  const cs_cat_state state{cfg.x0, cfg.p0, parse_parity(cfg.parity)};
  cs_lossy_stage s1{row.eta, 0.0, row.v, cs_db_to_nats(row.gamma_t_db)};
  cs_optimization_result res{};

  if (!cfg.has_stage2) {
    cs_channel_params ch0;
    ROW_CHECK(cs_lossy_channel(&s1, &ch0));
    if (cfg.objective == "cn") {
      ROW_CHECK(cs_central_negativity(&state, &ch0, &row.unprotected));
      ROW_CHECK(cs_optimize_presqueeze_cn(&state, row.eta, row.v, s1.gamma_t, &res));
    } else {
      cs_distance_breakdown bd;
      ROW_CHECK(cs_hs_distance(cfg.x0, cfg.p0, &ch0, &bd));
      row.unprotected = bd.distance;
      ROW_CHECK(cs_optimize_presqueeze_hs(cfg.x0, cfg.p0, row.eta, row.v, &res));
    }
    row.feasible = res.status != CS_OPT_INFEASIBLE;
    row.optimal = res.objective;
    row.gamma_opt = res.gamma_opt;

    if (cfg.oracle_check) {
      cs_lossy_stage best = s1;
      best.gamma = res.gamma_opt;
      cs_channel_params ch;
      ROW_CHECK(cs_lossy_channel(&best, &ch));
      if (cfg.objective == "cn")
        ROW_CHECK(cs_wigner_numeric(&state, &ch, 0.0, 0.0, 0, &row.oracle_value));
      else
        ROW_CHECK(cs_hs_distance_numeric(cfg.x0, cfg.p0, &ch, 0, &row.oracle_value));
      row.oracle_abs_err = std::abs(row.oracle_value - row.optimal);
    }
    return;
  }

  const cs_lossy_stage s2{row.eta2, 0.0, row.v2, cs_db_to_nats(row.gamma_t2_db)};
  cs_composite* spec = cs_composite_create();
  if (!spec) {
    row.error = "out of memory";
    return;
  }
  struct Guard {
    cs_composite* p;
    ~Guard() { cs_composite_free(p); }
  } guard{spec};

  if (cs_composite_add_stage(spec, &s1) != CS_OK ||
      cs_composite_add_stage(spec, &s2) != CS_OK) {
    row.error = std::string("composite stage: ") + cs_last_error();
    return;
  }
  cs_channel_params ch0;
  ROW_CHECK(cs_composite_channel(spec, &ch0));
  ROW_CHECK(cs_central_negativity(&state, &ch0, &row.unprotected));
  ROW_CHECK(cs_optimize_composite(&state, spec, &res));
  row.feasible = res.status != CS_OPT_INFEASIBLE;
  row.optimal = res.objective;
  row.gamma_opt = res.gamma_opt;
  row.gamma_mid_opt = res.has_gamma_mid ? res.gamma_mid_opt : 0.0;

  if (cfg.oracle_check) {
    cs_composite* best = cs_composite_create();
    if (!best) {
      row.error = "out of memory";
      return;
    }
    Guard guard_best{best};
    cs_lossy_stage b1 = s1;
    cs_lossy_stage b2 = s2;
    b1.gamma = row.gamma_opt;
    b2.gamma = row.gamma_mid_opt;
    if (cs_composite_add_stage(best, &b1) != CS_OK ||
        cs_composite_add_stage(best, &b2) != CS_OK) {
      row.error = std::string("composite stage: ") + cs_last_error();
      return;
    }
    cs_channel_params ch;
    ROW_CHECK(cs_composite_channel(best, &ch));
    ROW_CHECK(cs_wigner_numeric(&state, &ch, 0.0, 0.0, 0, &row.oracle_value));
    row.oracle_abs_err = std::abs(row.oracle_value - row.optimal);
  }
}

#undef ROW_CHECK

unsigned thread_budget(std::size_t rows) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("CATSHIELD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
  }
  if (n > rows) n = static_cast<unsigned>(rows == 0 ? 1 : rows);
  return n;
}

std::vector<std::string> csv_header(const SweepConfig& cfg) {
  std::vector<std::string> cols{"eta", "v", "gamma_t_db"};
  if (cfg.has_stage2) {
    cols.push_back("eta2");
    cols.push_back("v2");
    cols.push_back("gamma_t2_db");
  }
  cols.push_back("feasible");
  const std::string prefix = (cfg.objective == "cn") ? "cn" : "hs";
  cols.push_back(prefix + "_unprotected");
  cols.push_back(prefix + "_optimal");
  cols.push_back("gamma_opt_nats");
  cols.push_back("gamma_opt_db");
  if (cfg.has_stage2) {
    cols.push_back("gamma_mid_opt_nats");
    cols.push_back("gamma_mid_opt_db");
  }
  if (cfg.oracle_check) {
    cols.push_back(prefix + "_oracle");
    cols.push_back("oracle_abs_err");
  }
  return cols;
}

std::vector<std::pair<std::string, ordered_json>> row_fields(
    const SweepConfig& cfg, const SweepRow& row) {
  std::vector<std::pair<std::string, ordered_json>> fields;
  fields.emplace_back("eta", row.eta);
  fields.emplace_back("v", row.v);
  fields.emplace_back("gamma_t_db", row.gamma_t_db);
  if (cfg.has_stage2) {
    fields.emplace_back("eta2", row.eta2);
    fields.emplace_back("v2", row.v2);
    fields.emplace_back("gamma_t2_db", row.gamma_t2_db);
  }
  fields.emplace_back("feasible", row.feasible);
  const std::string prefix = (cfg.objective == "cn") ? "cn" : "hs";
  fields.emplace_back(prefix + "_unprotected", row.unprotected);
  fields.emplace_back(prefix + "_optimal", row.optimal);
  fields.emplace_back("gamma_opt_nats", row.gamma_opt);
  fields.emplace_back("gamma_opt_db", cs_nats_to_db(row.gamma_opt));
  if (cfg.has_stage2) {
    fields.emplace_back("gamma_mid_opt_nats", row.gamma_mid_opt);
    fields.emplace_back("gamma_mid_opt_db", cs_nats_to_db(row.gamma_mid_opt));
  }
  if (cfg.oracle_check) {
    fields.emplace_back(prefix + "_oracle", row.oracle_value);
    fields.emplace_back("oracle_abs_err", row.oracle_abs_err);
  }
  return fields;
}

int run_sweep(SweepConfig cfg) {
  validate_config(cfg);
  const std::vector<double> etas = eta_grid(cfg);

  std::vector<SweepRow> rows;
  rows.reserve(cfg.v_values.size() * cfg.gamma_t_db_values.size() * etas.size());
  for (double v : cfg.v_values)
    for (double gt : cfg.gamma_t_db_values)
      for (double eta : etas) {
        SweepRow row;
        row.eta = eta;
        row.v = v;
        row.gamma_t_db = gt;
        if (cfg.has_stage2) {
          row.eta2 = eta;  // presets share the transmittance across stages
          row.v2 = cfg.stage2.v;
          row.gamma_t2_db = cfg.stage2.gamma_t_db;
        }
        rows.push_back(row);
      }

  const unsigned workers = thread_budget(rows.size());
  if (workers <= 1) {
    for (SweepRow& row : rows) compute_row(cfg, row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size();
             i = next.fetch_add(1))
          compute_row(cfg, rows[i]);
      });
    for (std::thread& t : pool) t.join();
  }

  std::size_t feasible_count = 0;
  for (const SweepRow& row : rows) {
    if (!row.error.empty()) fail(kExitUsage, row.error);
    if (row.feasible) ++feasible_count;
    for (double value : {row.unprotected, row.optimal, row.gamma_opt})
      if (std::isnan(value)) fail(kExitNumeric, "numeric failure (NaN result)");
  }

  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) fail(kExitUsage, "cannot open output file " + cfg.output_path);
  if (cfg.format == "csv") {
    const auto header = csv_header(cfg);
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << header[i];
    out << "\n";
    for (const SweepRow& row : rows) {
      const auto fields = row_fields(cfg, row);
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const ordered_json& v = fields[i].second;
        out << (i ? "," : "");
        if (v.is_boolean())
          out << (v.get<bool>() ? "true" : "false");
        else
          out << fmt12(v.get<double>());
      }
      out << "\n";
    }
  } else {
    ordered_json doc = ordered_json::array();
    for (const SweepRow& row : rows) {
      ordered_json rec;
      for (const auto& [key, value] : row_fields(cfg, row)) rec[key] = value;
      doc.push_back(std::move(rec));
    }
    out << doc.dump(2) << "\n";
  }
  out.close();

  std::cout << "wrote " << rows.size() << " rows (" << feasible_count
            << " feasible) to " << cfg.output_path << "\n";
  return feasible_count == 0 ? kExitInfeasible : 0;
}

// ---------------------------------------------------------------------------
// single-point queries

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json channel_json(const cs_channel_params& ch) {
  return {{"f_x", ch.f_x},
          {"f_p", ch.f_p},
          {"sigma_x", ch.sigma_x},
          {"sigma_p", ch.sigma_p}};
}

const char* status_name(cs_opt_status status) {
  switch (status) {
    case CS_OPT_CONVERGED:
      return "converged";
    case CS_OPT_FLAT:
      return "flat";
    case CS_OPT_INFEASIBLE:
      return "infeasible";
    case CS_OPT_EVAL_LIMIT:
      return "eval_limit";
  }
  return "unknown";
}

ordered_json result_json(const cs_optimization_result& res) {
  ordered_json j;
  j["gamma_opt_nats"] = res.gamma_opt;
  j["gamma_opt_db"] = cs_nats_to_db(res.gamma_opt);
  if (res.has_gamma_mid) {
    j["gamma_mid_opt_nats"] = res.gamma_mid_opt;
    j["gamma_mid_opt_db"] = cs_nats_to_db(res.gamma_mid_opt);
  }
  j["objective"] = res.objective;
  j["evaluations"] = res.evaluations;
  j["converged"] = res.converged != 0;
  j["status"] = status_name(res.status);
  j["bracket"] = {res.bracket_lo, res.bracket_hi};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cat-state protection toolkit"};
  app.require_subcommand(1);

  // ---- sweep -------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "grid sweep written to CSV/JSON");
  std::string sw_scenario = "custom";
  std::string sw_config_path;
  bool sw_dump_config = false;
  SweepConfig flags;  // values read only where the user actually set them
  sweep->add_option("--scenario", sw_scenario, "fig2|fig3|fig4|fig5|custom");
  sweep->add_option("--config", sw_config_path, "JSON config file");
  sweep->add_flag("--dump-config", sw_dump_config,
                  "print the resolved config as JSON and exit");
  sweep->add_option("--objective", flags.objective, "cn|hs");
  sweep->add_option("--state-x0", flags.x0, "cat displacement x0");
  sweep->add_option("--state-p0", flags.p0, "cat displacement p0");
  sweep->add_option("--parity", flags.parity, "odd|even");
  sweep->add_option("--eta-from", flags.eta_from, "grid start");
  sweep->add_option("--eta-to", flags.eta_to, "grid end");
  sweep->add_option("--eta-steps", flags.eta_steps, "grid size");
  sweep->add_option("--v", flags.v_values, "environment variances");
  sweep->add_option("--gamma-t-db", flags.gamma_t_db_values,
                    "environment squeeze rates (dB)");
  sweep->add_option("--v2", flags.stage2.v, "second-stage variance");
  sweep->add_option("--gamma-t2-db", flags.stage2.gamma_t_db,
                    "second-stage squeeze rate (dB)");
  sweep->add_option("--out", flags.output_path, "output file");
  sweep->add_option("--format", flags.format, "csv|json");
  sweep->add_flag("--oracle-check", flags.oracle_check,
                  "append quadrature cross-check columns");

  // ---- single-point subcommands -------------------------------------------
  struct {
    double x0 = 3.0, p0 = 0.0;
    std::string parity = "odd";
    double x = 0.0, p = 0.0;
    bool ideal = false;
    double eta = 1.0, v = 0.5, gamma = 0.0, gamma_t = 0.0;
    bool nats = false;
  } wg;
  auto* wigner = app.add_subcommand("wigner", "Wigner value at a point");
  wigner->add_option("--x0", wg.x0);
  wigner->add_option("--p0", wg.p0);
  wigner->add_option("--parity", wg.parity, "odd|even");
  wigner->add_option("--x", wg.x);
  wigner->add_option("--p", wg.p);
  wigner->add_flag("--ideal", wg.ideal, "no channel");
  wigner->add_option("--eta", wg.eta);
  wigner->add_option("--v", wg.v);
  wigner->add_option("--gamma", wg.gamma, "pre-squeeze rate");
  wigner->add_option("--gamma-t", wg.gamma_t, "environment squeeze rate");
  wigner->add_flag("--nats", wg.nats, "rates are nats, not dB");

  struct {
    double x0 = 3.0, p0 = 0.0;
    double eta = 1.0, v = 0.5, gamma = 0.0, gamma_t = 0.0;
    bool nats = false;
  } cn;
  auto* cncmd = app.add_subcommand("cn", "central negativity of the odd cat");
  cncmd->add_option("--x0", cn.x0);
  cncmd->add_option("--p0", cn.p0);
  cncmd->add_option("--eta", cn.eta);
  cncmd->add_option("--v", cn.v);
  cncmd->add_option("--gamma", cn.gamma, "pre-squeeze rate");
  cncmd->add_option("--gamma-t", cn.gamma_t, "environment squeeze rate");
  cncmd->add_flag("--nats", cn.nats, "rates are nats, not dB");

  struct {
    double eta = 1.0, v = 0.5, gamma = 0.0, gamma_t = 0.0;
    double fx = 0.0, fp = 0.0, sx = 0.0, sp = 0.0;
    bool raw = false;
    bool nats = false;
  } cond;
  auto* condition =
      app.add_subcommand("condition", "negativity condition verdict");
  condition->add_option("--eta", cond.eta);
  condition->add_option("--v", cond.v);
  condition->add_option("--gamma", cond.gamma);
  condition->add_option("--gamma-t", cond.gamma_t);
  auto* fx_opt = condition->add_option("--fx", cond.fx, "raw kernel gain");
  condition->add_option("--fp", cond.fp, "raw kernel gain");
  condition->add_option("--sigma-x", cond.sx, "raw kernel noise");
  condition->add_option("--sigma-p", cond.sp, "raw kernel noise");
  condition->add_flag("--nats", cond.nats, "rates are nats, not dB");

  struct {
    double v = 0.0, eta = 0.0;
    bool has_v = false, has_eta = false;
  } feas;
  auto* feasible = app.add_subcommand("feasible", "protectable channel window");
  feasible->add_option("--v", feas.v, "environment variance");
  feasible->add_option("--eta", feas.eta, "transmittance");

  struct {
    double x0 = 3.0, p0 = 0.0;
    double eta = 1.0, v = 0.5, gamma = 0.0;
    bool nats = false;
  } hs;
  auto* hscmd = app.add_subcommand("hs", "Hilbert-Schmidt distance breakdown");
  hscmd->add_option("--x0", hs.x0);
  hscmd->add_option("--p0", hs.p0);
  hscmd->add_option("--eta", hs.eta);
  hscmd->add_option("--v", hs.v);
  hscmd->add_option("--gamma", hs.gamma, "pre-squeeze rate");
  hscmd->add_flag("--nats", hs.nats, "rates are nats, not dB");

  struct {
    double eta = 1.0, eta2 = 1.0, v = 0.5, v2 = 0.5;
    double gamma_t = 0.0, gamma_t2 = 0.0;
    double mid = 0.0;
    bool has_mid = false;
    bool nats = false;
  } eff;
  auto* effective =
      app.add_subcommand("effective", "equivalent single-stage channel");
  effective->add_option("--eta", eff.eta)->required();
  effective->add_option("--eta2", eff.eta2)->required();
  effective->add_option("--v", eff.v);
  effective->add_option("--v2", eff.v2);
  effective->add_option("--gamma-t", eff.gamma_t);
  effective->add_option("--gamma-t2", eff.gamma_t2);
  auto* mid_opt = effective->add_option("--mid", eff.mid, "mid squeeze rate");
  effective->add_flag("--nats", eff.nats, "rates are nats, not dB");

  struct {
    std::string objective = "cn";
    double x0 = 3.0, p0 = 0.0;
    double eta = 0.9, v = 0.5, gamma_t = 0.0;
    double eta2 = 0.0, v2 = 0.5, gamma_t2 = 0.0;
    bool nats = false;
  } opt;
  auto* optimize = app.add_subcommand("optimize", "best squeezing rates");
  optimize->add_option("--objective", opt.objective, "cn|hs");
  optimize->add_option("--x0", opt.x0);
  optimize->add_option("--p0", opt.p0);
  optimize->add_option("--eta", opt.eta)->required();
  optimize->add_option("--v", opt.v);
  optimize->add_option("--gamma-t", opt.gamma_t);
  auto* eta2_opt = optimize->add_option("--eta2", opt.eta2, "second stage");
  optimize->add_option("--v2", opt.v2, "second stage");
  optimize->add_option("--gamma-t2", opt.gamma_t2, "second stage");
  optimize->add_flag("--nats", opt.nats, "rates are nats, not dB");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (app.got_subcommand(sweep)) {
    SweepConfig cfg;
    if (!sw_config_path.empty()) {
      std::ifstream in(sw_config_path);
      if (!in) fail(kExitUsage, "cannot read config file " + sw_config_path);
      ordered_json j;
      try {
        in >> j;
      } catch (const ordered_json::exception& e) {
        fail(kExitUsage, std::string("bad config: ") + e.what());
      }
      cfg = config_from_json(j);
    }
    if (sweep->count("--scenario") || sw_config_path.empty()) {
      cfg.scenario = sw_scenario;
      apply_scenario(cfg);
    }
    if (sweep->count("--objective")) cfg.objective = flags.objective;
    if (sweep->count("--state-x0")) cfg.x0 = flags.x0;
    if (sweep->count("--state-p0")) cfg.p0 = flags.p0;
    if (sweep->count("--parity")) cfg.parity = flags.parity;
    if (sweep->count("--eta-from")) cfg.eta_from = flags.eta_from;
    if (sweep->count("--eta-to")) cfg.eta_to = flags.eta_to;
    if (sweep->count("--eta-steps")) cfg.eta_steps = flags.eta_steps;
    if (sweep->count("--v")) cfg.v_values = flags.v_values;
    if (sweep->count("--gamma-t-db")) cfg.gamma_t_db_values = flags.gamma_t_db_values;
    if (sweep->count("--v2") || sweep->count("--gamma-t2-db")) {
      cfg.has_stage2 = true;
      if (sweep->count("--v2")) cfg.stage2.v = flags.stage2.v;
      if (sweep->count("--gamma-t2-db")) cfg.stage2.gamma_t_db = flags.stage2.gamma_t_db;
    }
    if (sweep->count("--out")) cfg.output_path = flags.output_path;
    if (sweep->count("--format")) cfg.format = flags.format;
    if (sweep->count("--oracle-check")) cfg.oracle_check = flags.oracle_check;

    if (sw_dump_config) {
      validate_config(cfg);
      print_json(config_to_json(cfg));
      return 0;
    }
    return run_sweep(std::move(cfg));
  }

  if (app.got_subcommand(wigner)) {
    const cs_cat_state state{wg.x0, wg.p0, parse_parity(wg.parity)};
    double value = 0.0;
    ordered_json j;
    if (wg.ideal) {
      require_ok(cs_wigner_ideal(&state, wg.x, wg.p, &value), "wigner");
      j["channel"] = "ideal";
    } else {
      const cs_lossy_stage stage{wg.eta, rate_to_nats(wg.gamma, wg.nats), wg.v,
                                 rate_to_nats(wg.gamma_t, wg.nats)};
      cs_channel_params ch;
      require_ok(cs_lossy_channel(&stage, &ch), "channel");
      require_ok(cs_wigner_transformed(&state, &ch, wg.x, wg.p, &value),
                 "wigner");
      j["channel"] = channel_json(ch);
    }
    if (std::isnan(value)) fail(kExitNumeric, "numeric failure (NaN result)");
    j["x"] = wg.x;
    j["p"] = wg.p;
    j["wigner"] = value;
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(cncmd)) {
    const cs_cat_state state{cn.x0, cn.p0, CS_PARITY_ODD};
    const cs_lossy_stage stage{cn.eta, rate_to_nats(cn.gamma, cn.nats), cn.v,
                               rate_to_nats(cn.gamma_t, cn.nats)};
    cs_channel_params ch;
    require_ok(cs_lossy_channel(&stage, &ch), "channel");
    double value = 0.0;
    require_ok(cs_central_negativity(&state, &ch, &value), "cn");
    double margin = 0.0;
    int possible = 0;
    require_ok(cs_negativity_margin(&ch, &margin), "margin");
    require_ok(cs_negativity_possible(&ch, &possible), "condition");
    int classical = 0;
    double gt_max = 0.0;
    require_ok(cs_classicality_check(stage.v, stage.gamma_t, &classical, &gt_max),
               "classicality");
    if (std::isnan(value)) fail(kExitNumeric, "numeric failure (NaN result)");
    ordered_json j;
    j["cn"] = value;
    j["negativity_possible"] = possible != 0;
    j["margin"] = margin;
    j["environment_classical"] = classical != 0;
    j["channel"] = channel_json(ch);
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(condition)) {
    cs_channel_params ch;
    if (fx_opt->count()) {
      if (!condition->count("--fp") || !condition->count("--sigma-x") ||
          !condition->count("--sigma-p"))
        fail(kExitUsage, "raw kernels need --fx --fp --sigma-x --sigma-p");
      ch = {cond.fx, cond.fp, cond.sx, cond.sp};
    } else {
      const cs_lossy_stage stage{cond.eta, rate_to_nats(cond.gamma, cond.nats),
                                 cond.v, rate_to_nats(cond.gamma_t, cond.nats)};
      require_ok(cs_lossy_channel(&stage, &ch), "channel");
    }
    double margin = 0.0;
    int possible = 0;
    require_ok(cs_negativity_margin(&ch, &margin), "margin");
    require_ok(cs_negativity_possible(&ch, &possible), "condition");
    ordered_json j;
    j["margin"] = margin;
    j["negativity_possible"] = possible != 0;
    j["channel"] = channel_json(ch);
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(feasible)) {
    feas.has_v = feasible->count("--v") > 0;
    feas.has_eta = feasible->count("--eta") > 0;
    if (feas.has_v == feas.has_eta)
      fail(kExitUsage, "pass exactly one of --v or --eta");
    ordered_json j;
    if (feas.has_v) {
      cs_feasible_region region;
      require_ok(cs_feasible_window(feas.v, &region), "feasible");
      j["eta_min"] = region.eta_min;
      j["eta_max"] = region.eta_max;
    } else {
      double v_max = 0.0;
      require_ok(cs_feasible_v(feas.eta, &v_max), "feasible");
      j["v_max"] = v_max;
    }
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(hscmd)) {
    const cs_lossy_stage stage{hs.eta, rate_to_nats(hs.gamma, hs.nats), hs.v,
                               0.0};
    cs_channel_params ch;
    require_ok(cs_lossy_channel(&stage, &ch), "channel");
    cs_distance_breakdown bd;
    require_ok(cs_hs_distance(hs.x0, hs.p0, &ch, &bd), "hs");
    if (std::isnan(bd.distance)) fail(kExitNumeric, "numeric failure (NaN result)");
    ordered_json j;
    j["distance"] = bd.distance;
    j["purity_even"] = bd.purity_even;
    j["purity_odd"] = bd.purity_odd;
    j["overlap"] = bd.overlap;
    j["m_factor"] = bd.m_factor;
    j["n_factor"] = bd.n_factor;
    j["l_factor"] = bd.l_factor;
    j["channel"] = channel_json(ch);
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(effective)) {
    const double gt1 = rate_to_nats(eff.gamma_t, eff.nats);
    const double gt2 = rate_to_nats(eff.gamma_t2, eff.nats);
    const double mid =
        mid_opt->count() ? rate_to_nats(eff.mid, eff.nats) : gt2 - gt1;
    cs_composite* spec = cs_composite_create();
    if (!spec) fail(kExitNumeric, "out of memory");
    const cs_lossy_stage s1{eff.eta, 0.0, eff.v, gt1};
    const cs_lossy_stage s2{eff.eta2, 0.0, eff.v2, gt2};
    require_ok(cs_composite_add_stage(spec, &s1), "stage 1");
    require_ok(cs_composite_add_stage(spec, &s2), "stage 2");
    double eta_e = 0.0, v_e = 0.0;
    const cs_status st = cs_effective_single(spec, mid, &eta_e, &v_e);
    cs_composite_free(spec);
    require_ok(st, "effective");
    ordered_json j;
    j["eta_e"] = eta_e;
    j["v_e"] = v_e;
    j["mid_squeeze_nats"] = mid;
    print_json(j);
    return 0;
  }

  if (app.got_subcommand(optimize)) {
    const cs_cat_state state{opt.x0, opt.p0, CS_PARITY_ODD};
    cs_optimization_result res{};
    if (opt.objective == "cn" && !eta2_opt->count()) {
      require_ok(cs_optimize_presqueeze_cn(&state, opt.eta, opt.v,
                                           rate_to_nats(opt.gamma_t, opt.nats),
                                           &res),
                 "optimize");
    } else if (opt.objective == "cn") {
      cs_composite* spec = cs_composite_create();
      if (!spec) fail(kExitNumeric, "out of memory");
      const cs_lossy_stage s1{opt.eta, 0.0, opt.v,
                              rate_to_nats(opt.gamma_t, opt.nats)};
      const cs_lossy_stage s2{opt.eta2, 0.0, opt.v2,
                              rate_to_nats(opt.gamma_t2, opt.nats)};
      require_ok(cs_composite_add_stage(spec, &s1), "stage 1");
      require_ok(cs_composite_add_stage(spec, &s2), "stage 2");
      const cs_status st = cs_optimize_composite(&state, spec, &res);
      cs_composite_free(spec);
      require_ok(st, "optimize");
    } else if (opt.objective == "hs") {
      if (eta2_opt->count())
        fail(kExitUsage, "two-stage optimization supports only the cn objective");
      if (opt.gamma_t != 0.0)
        fail(kExitUsage,
             "the hs objective assumes a symmetric environment (gamma_t = 0)");
      require_ok(cs_optimize_presqueeze_hs(opt.x0, opt.p0, opt.eta, opt.v, &res),
                 "optimize");
    } else {
      fail(kExitUsage, "objective must be 'cn' or 'hs'");
    }
    if (std::isnan(res.objective)) fail(kExitNumeric, "numeric failure (NaN result)");
    print_json(result_json(res));
    return 0;
  }

  return 0;
}
