// Command-line front end: symbolic verification (verify, multipliers,
// order) and numeric experiments (simulate, audit, convergence) for the
// conservation-law-preserving wave-equation schemes.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conslaw/ansatz.hpp"
#include "conslaw/audit.hpp"
#include "conslaw/io.hpp"
#include "conslaw/jet.hpp"
#include "conslaw/schemes.hpp"
#include "conslaw/sexpr.hpp"
#include "conslaw/stepper.hpp"

using json = nlohmann::json;
using namespace conslaw;

namespace {

std::vector<const Scheme*> selected_schemes(const std::string& name) {
  std::vector<const Scheme*> out;
  if (name.empty() || name == "all") {
    for (const auto& n : scheme_names()) out.push_back(&get_scheme(n));
  } else {
    out.push_back(&get_scheme(name));
  }
  return out;
}

std::string order_str(const std::optional<int>& o) {
  return o ? std::to_string(*o) : "exact";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << content;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& scheme_name, const std::string& json_path) {
  bool all_ok = true;
  json report = json::array();
  for (const Scheme* s : selected_schemes(scheme_name)) {
    std::printf("scheme %s\n", s->name.c_str());
    const auto checks = verify_conservation_identity(*s);
    const auto syms = check_symmetries(*s);
    const auto cons = consistency_report(s->residual, s->pde_target);

    json sym_json = json::array();
    for (const auto& c : syms.checks)
      sym_json.push_back({{"name", c.name}, {"ok", c.ok}});

    for (const auto& c : checks) {
      const bool ok = c.passed();
      all_ok &= ok;
      std::printf("  triple %-16s identity=%s multiplier=%s limit=%s%s %s\n",
                  c.label.c_str(), c.identity_ok ? "ok" : "FAIL",
                  c.multiplier_ok ? "ok" : "FAIL", c.limit_ok ? "ok" : "FAIL",
                  c.reconstructed ? " (certificate reconstructed)" : "",
                  ok ? "[pass]" : "[FAIL]");
      report.push_back({{"scheme", s->name},
                        {"triple", c.label},
                        {"identity_ok", c.identity_ok},
                        {"multiplier_ok", c.multiplier_ok},
                        {"limit_ok", c.limit_ok},
                        {"reconstructed", c.reconstructed},
                        {"symmetry_ok", sym_json}});
    }
    for (const auto& c : syms.checks) {
      all_ok &= c.ok;
      std::printf("  symmetry %-12s %s  (%s)\n", c.name.c_str(),
                  c.ok ? "ok" : "FAIL", c.detail.c_str());
    }
    std::printf("  note: %s\n", syms.note.c_str());
    all_ok &= cons.consistent;
    std::printf("  consistency: %s, order (tau=%s, h=%s)\n",
                cons.consistent ? "ok" : "FAIL",
                order_str(cons.order_t).c_str(),
                order_str(cons.order_x).c_str());
  }
  if (!json_path.empty()) write_file(json_path, report.dump(2) + "\n");
  std::printf("verify: %s\n", all_ok ? "all checks passed" : "FAILURES");
  return all_ok ? 0 : 1;
}

// ----------------------------------------------------------- multipliers

int cmd_multipliers(const std::string& scheme_name,
                    const std::string& ansatz_name) {
  const Scheme& s = get_scheme(scheme_name);
  const AnsatzSpec ansatz = named_ansatz(ansatz_name);
  const auto basis = find_multipliers(s.residual, ansatz);
  std::printf("scheme %s, ansatz %s: %zu multiplier(s)\n", s.name.c_str(),
              ansatz_name.c_str(), basis.size());
  for (const auto& m : basis) {
    const auto [deg, lead] = leading_step_part(taylor_expand(m, 2));
    std::printf("  %s\n", to_sexpr(m).c_str());
    std::printf("    leading term: %s%s\n", to_sexpr(lead).c_str(),
                deg > 0 ? "  [vanishes in the continuum limit]" : "");
  }
  return 0;
}

// ------------------------------------------------------------------ order

int cmd_order(const std::string& scheme_name) {
  bool all_ok = true;
  std::printf("%-16s %-10s %-8s %-8s leading residual\n", "scheme",
              "consistent", "order_t", "order_x");
  for (const Scheme* s : selected_schemes(scheme_name)) {
    const auto rep = consistency_report(s->residual, s->pde_target);
    all_ok &= rep.consistent && rep.order_t.value_or(99) >= s->stated_order_t &&
              rep.order_x.value_or(99) >= s->stated_order_x;
    std::printf("%-16s %-10s %-8s %-8s %s\n", s->name.c_str(),
                rep.consistent ? "yes" : "NO",
                order_str(rep.order_t).c_str(), order_str(rep.order_x).c_str(),
                to_sexpr(rep.leading_residual).c_str());
  }
  return all_ok ? 0 : 1;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& cfg) {
  const Grid1D grid = make_grid(cfg);
  const Scheme& s = get_scheme(cfg.scheme);
  const Trajectory tr =
      run(s, grid, make_ic(cfg.ic, grid), cfg.steps, ic_seed(cfg.ic));
  if (!cfg.out.empty()) write_trajectory_csv(cfg.out, tr);
  if (!cfg.out_bin.empty()) write_trajectory_binary(cfg.out_bin, tr);
  const double resid = scheme_residual_rel_max(tr, s);
  std::printf("simulate %s: %ld layers of %d nodes, residual(rel)=%.3e\n",
              s.name.c_str(), tr.layer_count(), grid.M, resid);
  return resid < 1e-10 ? 0 : 1;
}

// ------------------------------------------------------------------ audit

int cmd_audit(const RunConfig& cfg) {
  const Grid1D grid = make_grid(cfg);
  const Scheme& s = get_scheme(cfg.scheme);
  const Trajectory tr =
      run(s, grid, make_ic(cfg.ic, grid), cfg.steps, ic_seed(cfg.ic));
  const AuditReport rep = run_audit(tr, s);

  bool ok = rep.scheme_residual_rel < 1e-10;
  std::ostringstream csv;
  csv << "level,triple,Q_h,drift\n";
  json jdrifts = json::array();
  for (const auto& d : rep.drifts) {
    const double c0 = d.q.front();
    for (std::size_t i = 0; i < d.q.size(); ++i)
      csv << (d.first_level + static_cast<long>(i)) << "," << d.label << ","
          << format_g17(d.q[i]) << ","
          << format_g17(std::abs(d.q[i] + d.boundary_flux[i] - c0)) << "\n";
    ok &= d.max_rel_drift <= cfg.drift_tol;
    std::printf("  drift %-16s max_abs=%.3e max_rel=%.3e %s\n",
                d.label.c_str(), d.max_abs_drift, d.max_rel_drift,
                d.max_rel_drift <= cfg.drift_tol ? "[pass]" : "[FAIL]");
    jdrifts.push_back({{"triple", d.label},
                       {"max_abs_drift", d.max_abs_drift},
                       {"max_rel_drift", d.max_rel_drift}});
  }
  json jcons = json::array();
  for (const auto& [label, r] : rep.conservation_residual_rel) {
    ok &= r < 1e-10;
    jcons.push_back({{"triple", label}, {"residual_rel", r}});
  }
  json jsyms = json::array();
  for (TransformKind k : {TransformKind::Gauge, TransformKind::Galilei,
                          TransformKind::StretchX, TransformKind::Scale}) {
    if (k == TransformKind::StretchX && !s.admits_stretch_x) continue;
    const double param = k == TransformKind::Scale ? 2.0 : 0.37;
    const double r = symmetry_residual(tr, s, k, param);
    ok &= r < 1e-10;
    jsyms.push_back({{"transform", transform_name(k)},
                     {"param", param},
                     {"residual_rel", r}});
  }
  std::printf("  scheme residual (rel) = %.3e\n", rep.scheme_residual_rel);

  if (!cfg.out.empty()) write_file(cfg.out, csv.str());
  if (!cfg.out_json.empty()) {
    json summary = {{"scheme", s.name},
                    {"ic", tr.ic_description},
                    {"steps", cfg.steps},
                    {"M", grid.M},
                    {"h", grid.h},
                    {"tau", grid.tau},
                    {"scheme_residual_rel", rep.scheme_residual_rel},
                    {"drift_tolerance", cfg.drift_tol},
                    {"drifts", jdrifts},
                    {"conservation_residuals", jcons},
                    {"symmetry_residuals", jsyms},
                    {"pass", ok}};
    write_file(cfg.out_json, summary.dump(2) + "\n");
  }
  std::printf("audit %s: %s\n", s.name.c_str(), ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

// ------------------------------------------------------------ convergence

int cmd_convergence(const std::string& scheme_name,
                    const std::vector<int>& levels, int reference,
                    double final_time, double ratio, const std::string& ic,
                    const std::string& out_path) {
  const Scheme& s = get_scheme(scheme_name);
  ConvergenceTable table;
  std::string mode;
  if (!s.nonlinear && ic.rfind("sine", 0) == 0) {
    const auto [name, args] = conslaw::detail::parse_call(ic);
    if (args.size() != 2) throw Error("sine ic needs (k, amplitude)");
    const double k = args[0], amp = args[1];
    table = convergence_exact(
        s, levels, 1.0, final_time, ratio,
        [&](const Grid1D& g) { return make_ic(ic, g); },
        [k, amp](double x, double t) {
          return amp * std::sin(2.0 * M_PI * k * (x - t));
        });
    mode = "reference=exact traveling wave";
  } else {
    const int ref = reference > 0 ? reference : levels.back() * 4;
    table = convergence_self(s, levels, ref, 1.0, final_time, ratio,
                             [&](const Grid1D& g) { return make_ic(ic, g); });
    mode = "reference=self, M=" + std::to_string(ref);
  }
  std::ostringstream csv;
  csv << "M,h,error,observed_order\n";
  std::printf("convergence %s (%s)\n", s.name.c_str(), mode.c_str());
  bool ok = true;
  for (const auto& row : table.rows) {
    csv << row.M << "," << format_g17(row.h) << "," << format_g17(row.error)
        << ","
        << (row.observed_order ? format_g17(*row.observed_order) : "") << "\n";
    std::printf("  M=%5d  err=%.6e  order=%s\n", row.M, row.error,
                row.observed_order ? format_g17(*row.observed_order).c_str()
                                   : "-");
    if (row.observed_order)
      ok &= std::abs(*row.observed_order - 2.0) < (s.nonlinear ? 0.2 : 0.1);
  }
  if (!out_path.empty()) write_file(out_path, csv.str());
  return ok ? 0 : 1;
}

/// Config file provides the base; explicitly passed flags win over it.
RunConfig resolve_config(CLI::App* cmd, const RunConfig& cli,
                         const std::string& config_path) {
  if (config_path.empty()) return cli;
  RunConfig cfg;
  apply_config_file(cfg, config_path);
  if (cmd->count("--scheme")) cfg.scheme = cli.scheme;
  if (cmd->count("--M")) cfg.M = cli.M;
  if (cmd->count("--h")) cfg.h = cli.h;
  if (cmd->count("--tau")) cfg.tau = cli.tau;
  if (cmd->count("--x0")) cfg.x0 = cli.x0;
  if (cmd->count("--bc")) cfg.bc = cli.bc;
  if (cmd->count("--ic")) cfg.ic = cli.ic;
  if (cmd->count("--steps")) cfg.steps = cli.steps;
  if (cmd->count("--out")) cfg.out = cli.out;
  cfg.out_bin = cli.out_bin.empty() ? cfg.out_bin : cli.out_bin;
  cfg.out_json = cli.out_json.empty() ? cfg.out_json : cli.out_json;
  if (cli.drift_tol != RunConfig{}.drift_tol) cfg.drift_tol = cli.drift_tol;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discrete conservation-law toolkit for finite-difference wave-equation "
      "schemes: exact multiplier/divergence verification and conservation "
      "audits of numerical runs"};
  app.require_subcommand(1);

  std::string scheme = "all";
  std::string json_path;
  auto* verify = app.add_subcommand(
      "verify", "Symbolic conservation, symmetry and consistency checks");
  verify->add_option("--scheme", scheme, "Scheme name or 'all'");
  verify->add_option("--json", json_path, "Write a JSON report here");

  std::string m_scheme = "LinearCross", m_ansatz = "cross5_linear";
  auto* mult = app.add_subcommand(
      "multipliers",
      "Solve the multiplier determining equations over a named ansatz");
  mult->add_option("--scheme", m_scheme, "Scheme name");
  mult->add_option(
      "--ansatz", m_ansatz,
      "cross5_linear | nine_linear | affine_tx | cross5_coordinate");

  std::string o_scheme = "all";
  auto* order = app.add_subcommand(
      "order", "Consistency order table against the continuum equations");
  order->add_option("--scheme", o_scheme, "Scheme name or 'all'");

  auto add_run_options = [&](CLI::App* cmd, RunConfig& cfg,
                             std::string& config_path) {
    // long-only help so that --h stays available for the mesh step
    cmd->set_help_flag("--help", "Print this help message and exit");
    cmd->add_option("--config", config_path, "key=value configuration file");
    cmd->add_option("--scheme", cfg.scheme, "Scheme name");
    cmd->add_option("--M", cfg.M, "Number of nodes");
    cmd->add_option("--h", cfg.h, "Space step");
    cmd->add_option("--tau", cfg.tau, "Time step");
    cmd->add_option("--x0", cfg.x0, "Left endpoint");
    cmd->add_option("--bc", cfg.bc, "periodic | dirichlet(l,r)");
    cmd->add_option("--ic", cfg.ic,
                    "zero | affine(a,b) | sine(k,amp) | gaussian(c,w) | "
                    "random_smooth(seed)");
    cmd->add_option("--steps", cfg.steps, "Time steps");
    cmd->add_option("--out", cfg.out, "CSV output path");
  };

  RunConfig sim_cfg;
  std::string sim_config_path;
  auto* sim = app.add_subcommand("simulate", "Integrate and export layers");
  add_run_options(sim, sim_cfg, sim_config_path);
  sim->add_option("--out-bin", sim_cfg.out_bin, "Binary output path");

  RunConfig audit_cfg;
  std::string audit_config_path;
  auto* audit = app.add_subcommand(
      "audit", "Run a simulation and audit conservation on it");
  add_run_options(audit, audit_cfg, audit_config_path);
  audit->add_option("--json", audit_cfg.out_json, "JSON summary path");
  audit->add_option("--drift-tol", audit_cfg.drift_tol,
                    "Relative drift tolerance");

  std::string c_scheme = "LinearCross", c_ic = "sine(1,1)", c_out;
  std::vector<int> c_levels = {32, 64, 128, 256};
  int c_reference = 0;
  double c_T = 0.5, c_ratio = 0.5;
  auto* conv = app.add_subcommand("convergence",
                                  "Observed-order study across refinements");
  conv->add_option("--scheme", c_scheme, "Scheme name");
  conv->add_option("--levels", c_levels, "Node counts, coarse to fine");
  conv->add_option("--reference", c_reference,
                   "Self-reference node count (nonlinear schemes)");
  conv->add_option("--final-time", c_T, "Comparison time");
  conv->add_option("--ratio", c_ratio, "tau / h");
  conv->add_option("--ic", c_ic, "Initial condition");
  conv->add_option("--out", c_out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(scheme == "all" ? "" : scheme, json_path);
    if (*mult) return cmd_multipliers(m_scheme, m_ansatz);
    if (*order) return cmd_order(o_scheme == "all" ? "" : o_scheme);
    if (*sim) return cmd_simulate(resolve_config(sim, sim_cfg, sim_config_path));
    if (*audit)
      return cmd_audit(resolve_config(audit, audit_cfg, audit_config_path));
    if (*conv)
      return cmd_convergence(c_scheme, c_levels, c_reference, c_T, c_ratio,
                             c_ic, c_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
