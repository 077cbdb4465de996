#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>

#include "gradpde/appendix.hpp"
#include "gradpde/cli.hpp"
#include "gradpde/curves.hpp"
#include "gradpde/radial.hpp"

namespace gradpde {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                   std::make_error_code(std::errc::io_error));
  return os;
}

std::string file_label(const std::string& s) {
  std::string o;
  for (char c : s) o += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
  return o;
}

struct Outcome {
  nlohmann::json doc;
  int code = 0;
};

Outcome run_classify(const RunConfig& cfg) {
  ParamPoint pt(*cfg.N, *cfg.p, *cfg.q);
  return {region_json(pt, classify(pt)), 0};
}

Outcome run_appendix(const RunConfig& cfg) {
  std::vector<int> dims;
  if (cfg.all) {
    for (int N = 3; N <= 12; ++N) dims.push_back(N);
  } else {
    dims.push_back(*cfg.N);
  }
  auto results = run_appendix_suite(dims);
  Outcome out;
  out.doc["results"] = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json e;
    e["N"] = r.N;
    e["certificates"] = nlohmann::json::array();
    for (const auto& c : r.certificates) {
      e["certificates"].push_back(certificate_json(c));
      auto path = cfg.out / "appendix" / ("N" + std::to_string(r.N)) / (file_label(c.label) + ".cert");
      std::ofstream os = open_out(path);
      write_certificate(os, c);
      all = all && c.proven();
    }
    e["proven"] = r.proven();
    out.doc["results"].push_back(e);
  }
  out.doc["all_proven"] = all;
  out.code = all ? 0 : 2;
  return out;
}

ParamPoint radial_point(const RunConfig& cfg, bool need_p) {
  int N = cfg.N.value_or(4);
  Rational q = cfg.q.value_or(Rational(0));
  if (need_p && !cfg.p) throw ConfigError("invalid configuration:\n  radial " + cfg.mode + " needs --p");
  Rational p = cfg.p.value_or(p_crit_exact(N, q));
  return ParamPoint(N, p, q);
}

Outcome run_radial(const RunConfig& cfg) {
  Outcome out;
  if (cfg.mode == "family") {
    int N = cfg.N.value_or(4);
    double q = to_double(cfg.q.value_or(Rational(0)));
    ExplicitFamily f = explicit_family(N, q, cfg.a);
    ParamPoint pt = f.params();
    double famres = 0;
    for (int i = 0; i <= 1000; ++i) {
      double r = 1e-3 * std::pow(1e4, i / 1000.0);
      famres = std::max(famres, std::abs(radial_defect(pt, r, f.u(r), f.du(r), f.d2u(r))));
    }
    RadialState s{1e-3, f.u(1e-3), f.du(1e-3)};
    auto tr = integrate_radial(pt, s, 10, cfg.tol);
    double dev = 0;
    for (const auto& x : tr.samples) dev = std::max(dev, std::abs(x.u - f.u(x.r)));
    out.doc = {{"N", N},         {"q", q},
               {"c", cfg.a},     {"K", f.K},
               {"p", f.p},       {"closed_form_residual", famres},
               {"integration_deviation", dev}, {"m_laplacian_residual", m_laplacian_residual(pt, tr)}};
    std::ofstream os = open_out(cfg.out / "radial_family.csv");
    write_trajectory_csv(os, tr);
    return out;
  }
  ParamPoint pt = radial_point(cfg, true);
  out.doc["N"] = pt.N;
  out.doc["p"] = pt.p.get_str();
  out.doc["q"] = pt.q.get_str();
  out.doc["p_crit"] = p_crit_exact(pt.N, pt.q).get_str();
  if (cfg.mode == "shoot") {
    auto o = classify_shooting(pt, cfg.a, cfg.rmax, cfg.tol);
    out.doc["classification"] = to_string(o.classification);
    if (o.r_cross) out.doc["r_cross"] = *o.r_cross;
    if (o.decay_exponent_estimate) out.doc["decay_exponent"] = *o.decay_exponent_estimate;
    out.doc["max_residual"] = o.trajectory.max_residual;
    out.doc["u_end"] = o.trajectory.samples.back().u;
    std::ofstream os = open_out(cfg.out / "radial_shoot.csv");
    write_trajectory_csv(os, o.trajectory);
    return out;
  }
  RadialState s = series_start(pt, cfg.a, default_series_eps(pt, cfg.a));
  auto tr = integrate_radial(pt, s, cfg.rmax, cfg.tol);
  auto e = sample_energy(pt, tr);
  out.doc["relative_drift"] = e.relative_drift;
  out.doc["monotonic"] = e.monotonic > 0 ? "increasing" : (e.monotonic < 0 ? "decreasing" : "neither");
  out.doc["derivative_sign"] = energy_derivative_sign(pt);
  out.doc["F_first"] = e.F.front();
  out.doc["F_last"] = e.F.back();
  std::ofstream os = open_out(cfg.out / "radial_energy.csv");
  os.precision(17);
  os << "r,F\n";
  for (std::size_t i = 0; i < e.r.size(); ++i) os << e.r[i] << ',' << e.F[i] << '\n';
  return out;
}

Outcome run_sphere(const RunConfig& cfg) {
  int N = cfg.N.value_or(3);
  if (N < 2) throw DomainError("sphere needs N >= 2");
  int n = N - 1;
  double p = to_double(cfg.p.value_or(Rational(3)));
  double q = to_double(cfg.q.value_or(Rational(0)));
  double Q = p + q - 1;
  if (!(Q > 0)) throw DomainError("sphere needs p + q - 1 > 0");
  double mu_star = n / Q;
  SphereGrid grid = cfg.grid_kind == GridKind::uniform ? SphereGrid::uniform(n, cfg.grid_nodes)
                                                       : SphereGrid::chebyshev(n, cfg.grid_nodes);
  Outcome out;
  out.doc["n"] = n;
  out.doc["p"] = p;
  out.doc["q"] = q;
  out.doc["gamma"] = cfg.gamma;
  out.doc["grid"] = {{"kind", cfg.grid_kind == GridKind::uniform ? "uniform" : "chebyshev"},
                     {"nodes", cfg.grid_nodes}};
  out.doc["mu_star"] = mu_star;
  if (cfg.mode == "spectrum") {
    double mu = cfg.mu.value_or(mu_star);
    double w = constant_solution(n, p, q, cfg.gamma, mu);
    auto sp = linearized_spectrum(SphereProfile::constant(grid, w, mu, cfg.gamma, p, q), 6);
    out.doc["mu"] = mu;
    out.doc["omega_mu"] = w;
    out.doc["eigenvalues"] = sp.values;
    out.doc["first_nontrivial_cos_correlation"] = cos_correlation(grid, sp.vectors.at(1));
    if (cfg.grid_kind == GridKind::uniform)
      out.doc["crossing_mu_on_grid"] = bifurcation_mu(n, p, q, cfg.gamma, cfg.grid_nodes);
    return out;
  }
  if (cfg.mode == "solve") {
    double mu = cfg.mu.value_or(mu_star / 2);
    double w = constant_solution(n, p, q, cfg.gamma, mu);
    SphereProfile init = SphereProfile::constant(grid, w, mu, cfg.gamma, p, q);
    for (int i = 0; i < grid.size(); ++i) init.omega[i] += 1e-3 * w * std::cos(grid.theta[i]);
    const double tol = 1e-11;
    SphereProfile sol = newton_solve(init, tol);
    auto b = bound_checks(sol);
    auto rg = rigidity_test(sol, tol);
    out.doc["mu"] = mu;
    out.doc["residual"] = azimuthal_residual(sol).lpNorm<Eigen::Infinity>();
    out.doc["min_omega"] = b.min_omega;
    out.doc["max_omega"] = b.max_omega;
    out.doc["omega_mu"] = b.omega_mu;
    out.doc["deviation"] = rg.deviation;
    out.doc["rigidity"] = to_string(rg.verdict);
    out.doc["amplitude"] = branch_amplitude(sol);
    std::ofstream os = open_out(cfg.out / "sphere_profile.csv");
    write_profile_csv(os, sol);
    return out;
  }
  ContinuationOptions opt;
  opt.M = cfg.grid_nodes;
  opt.kind = cfg.grid_kind;
  auto trace = continue_branch(n, p, q, cfg.gamma, cfg.steps, opt);
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& b : trace.points) {
    auto bc = bound_checks(b.profile);
    auto rg = rigidity_test(b.profile, opt.tol);
    pts.push_back({{"mu", b.mu},
                   {"s", b.s},
                   {"residual", b.residual},
                   {"smallest_eig", b.stability_indicator},
                   {"bounds_strict", bc.strict},
                   {"rigidity", to_string(rg.verdict)}});
  }
  out.doc["points"] = pts;
  if (trace.stop_reason) out.doc["stop_reason"] = *trace.stop_reason;
  std::ofstream os = open_out(cfg.out / "sphere_branch.csv");
  write_branch_csv(os, trace);
  return out;
}

Outcome run_curves(const RunConfig& cfg) {
  auto written = emit_figure(*cfg.N, cfg.out);
  Outcome out;
  out.doc["N"] = *cfg.N;
  out.doc["files"] = nlohmann::json::array();
  for (const auto& w : written) out.doc["files"].push_back(w.filename().generic_string());
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical tools for -Lap u = u^p |grad u|^q"};
  app.require_subcommand(1);

  const std::vector<std::string> value_keys = {"N", "p", "q", "a", "rmax", "tol", "mu", "gamma", "grid",
                                               "steps", "out", "format"};
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  bool all = false;
  std::string mode;

  auto add_common = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
    for (const char* k : keys) options[std::string(sub->get_name()) + "." + k] = sub->add_option(std::string("--") + k, values[k]);
    options[std::string(sub->get_name()) + ".out"] = sub->add_option("--out", values["out"], "output directory");
    options[std::string(sub->get_name()) + ".format"] =
        sub->add_option("--format", values["format"], "json, text or csv");
    sub->add_option("--config", config_path, "JSON configuration file");
  };

  auto* c_classify = app.add_subcommand("classify", "classify (N, p, q)");
  add_common(c_classify, {"N", "p", "q"});
  auto* c_curves = app.add_subcommand("curves", "trace separatrix curves and write the figure");
  add_common(c_curves, {"N"});
  auto* c_appendix = app.add_subcommand("appendix", "run the exact certificate suite");
  add_common(c_appendix, {"N"});
  auto* all_flag = c_appendix->add_flag("--all", all, "every N in 3..12");
  auto* c_radial = app.add_subcommand("radial", "radial ODE: shoot, family or energy");
  c_radial->add_option("mode", mode, "shoot|family|energy")->required();
  add_common(c_radial, {"N", "p", "q", "a", "rmax", "tol"});
  auto* c_sphere = app.add_subcommand("sphere", "sphere equation: branch, solve or spectrum");
  c_sphere->add_option("mode", mode, "branch|solve|spectrum")->required();
  add_common(c_sphere, {"N", "p", "q", "mu", "gamma", "grid", "steps"});
  auto* c_report = app.add_subcommand("report", "run every module and write a JSON summary");
  add_common(c_report, {"N"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string name = sub->get_name();
  if (sub->get_subcommands().empty() && sub->count("--help")) {
    out << sub->help();
    return 0;
  }
  Command cmd = name == "classify"   ? Command::classify
                : name == "curves"   ? Command::curves
                : name == "appendix" ? Command::appendix
                : name == "radial"   ? Command::radial
                : name == "sphere"   ? Command::sphere
                                     : Command::report;
  OutputFormat fmt = OutputFormat::json;
  try {
    nlohmann::json settings = config_path.empty() ? nlohmann::json::object() : parse_config_file(config_path);
    if (const char* env = std::getenv("LIOUV_OUTPUT_DIR"); env && *env) settings["out"] = env;
    for (const auto& k : value_keys) {
      auto it = options.find(name + "." + k);
      if (it != options.end() && it->second->count() > 0) settings[k] = values[k];
    }
    if (cmd == Command::appendix && all_flag->count() > 0) settings["all"] = all;
    RunConfig cfg = build_config(cmd, mode, settings);
    fmt = cfg.format;
    for (const auto& n : cfg.notes) err << n << '\n';
    Outcome res;
    switch (cmd) {
      case Command::classify: res = run_classify(cfg); break;
      case Command::curves: res = run_curves(cfg); break;
      case Command::appendix: res = run_appendix(cfg); break;
      case Command::radial: res = run_radial(cfg); break;
      case Command::sphere: res = run_sphere(cfg); break;
      case Command::report: res = {run_report(*cfg.N, cfg.out), 0}; break;
    }
    render(out, res.doc, fmt);
    return res.code;
  } catch (const CertificationFailed& e) {
    err << "certification failed: " << e.what() << " (counterexample " << e.counterexample << ")\n";
    return 2;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return 2;
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gradpde
