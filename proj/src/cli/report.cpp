#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "gradpde/appendix.hpp"
#include "gradpde/cli.hpp"
#include "gradpde/curves.hpp"
#include "gradpde/radial.hpp"

namespace gradpde {

nlohmann::json region_json(const ParamPoint& pt, const RegionReport& r) {
  nlohmann::json j;
  j["N"] = pt.N;
  j["p"] = pt.p.get_str();
  j["q"] = pt.q.get_str();
  j["subcritical"] = r.subcritical;
  j["supercritical"] = r.supercritical;
  j["thmB_case"] = to_string(r.thmB_case);
  j["liouville_C"] = r.liouville_C;
  j["radial_ground_state"] = r.radial_ground_state;
  j["thmE"] = r.thmE_hypothesis;
  j["values"] = nlohmann::json::object();
  for (const auto& [k, v] : r.evaluated_lhs) j["values"][k] = v;
  j["notes"] = r.notes;
  return j;
}

nlohmann::json certificate_json(const SignCertificate& c) {
  nlohmann::json j;
  j["label"] = c.label;
  j["claim"] = to_string(c.claimed);
  j["interval"] = c.interval.str();
  j["method"] = to_string(c.method);
  j["verdict"] = c.proven() ? "proven" : "refuted";
  j["sturm_length"] = c.sturm_length;
  j["equality_points"] = nlohmann::json::array();
  for (const auto& e : c.equality_points) j["equality_points"].push_back(e.get_str());
  j["notes"] = c.notes;
  if (c.counterexample) j["counterexample"] = c.counterexample->get_str();
  if (!c.steps.empty()) {
    j["steps"] = nlohmann::json::array();
    for (const auto& s : c.steps) j["steps"].push_back(certificate_json(s));
  }
  return j;
}

namespace {

std::string scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const nlohmann::json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array()) {
    if (v.empty()) out.emplace_back(prefix, "[]");
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, scalar(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

void render(std::ostream& os, const nlohmann::json& doc, OutputFormat format) {
  if (format == OutputFormat::json) {
    os << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  if (format == OutputFormat::text) {
    for (const auto& [k, v] : rows) os << k << ": " << v << '\n';
    return;
  }
  os << "key,value\n";
  for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
}

nlohmann::json run_report(int N, const std::filesystem::path& dir) {
  if (N < 3) throw DomainError("report needs N >= 3");
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["N"] = N;

  nlohmann::json pc = nlohmann::json::array();
  for (const char* qs : {"0", "1/2", "1", "3/2", "2"}) {
    Rational q = parse_rational(qs);
    QuadSurd v = p_c_exact(N, q);
    pc.push_back({{"q", qs}, {"p_c", to_string(v)}, {"value", v.to_double()}});
  }
  j["p_c"] = pc;
  j["p_c(0)"] = to_string(p_c_exact(N, Rational(0)));
  j["sobolev_exponent"] = make_rational(N + 2, N - 2).get_str();

  auto suite = run_appendix_suite({N});
  nlohmann::json app = nlohmann::json::array();
  bool all_proven = true;
  for (const auto& c : suite.front().certificates) {
    app.push_back({{"label", c.label}, {"verdict", c.proven() ? "proven" : "refuted"}});
    all_proven = all_proven && c.proven();
  }
  j["appendix"] = {{"certificates", app}, {"all_proven", all_proven}};

  auto written = emit_figure(N, dir / "curves");
  auto traces = trace_all(N, 400);
  auto cons = region_consistency(N, 500, 20240601u);
  nlohmann::json cur;
  cur["ids"] = nlohmann::json::array();
  for (const auto& t : traces) cur["ids"].push_back(to_string(t.spec.id));
  cur["files"] = nlohmann::json::array();
  for (const auto& w : written) cur["files"].push_back(w.lexically_relative(dir).generic_string());
  cur["consistency"] = {{"checked", cons.checked}, {"skipped", cons.skipped}, {"mismatches", cons.mismatches.size()}};
  const CurveTrace* lg = nullptr;
  const CurveTrace* rt = nullptr;
  for (const auto& t : traces) {
    if (t.spec.id == CurveId::liouville_G) lg = &t;
    if (t.spec.id == CurveId::radial_threshold) rt = &t;
  }
  if (lg && rt) {
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& [q, p] : intersect_curves(*lg, *rt).points) xs.push_back({q, p});
    cur["liouville_G_x_radial_threshold"] = xs;
  }
  j["curves"] = cur;

  nlohmann::json rad;
  Rational q4 = make_rational(1, 4);
  Rational pcrit = p_crit_exact(N, q4);
  rad["q"] = "1/4";
  rad["p_crit"] = pcrit.get_str();
  for (const auto& [name, dp] : {std::pair{"above", make_rational(1, 5)}, std::pair{"below", make_rational(-1, 5)}}) {
    ParamPoint pt(N, Rational(pcrit + dp), q4);
    auto o = classify_shooting(pt, 1.0, 1000.0);
    nlohmann::json s = {{"p", pt.p.get_str()}, {"classification", to_string(o.classification)}};
    if (o.r_cross) s["r_cross"] = *o.r_cross;
    rad[std::string("shoot_") + name] = s;
  }
  auto fam = explicit_family(N, 0.25, 1.0);
  double famres = 0;
  for (int i = 0; i <= 1000; ++i) {
    double r = 1e-3 * std::pow(1e4, i / 1000.0);
    famres = std::max(famres, std::abs(radial_defect(fam.params(), r, fam.u(r), fam.du(r), fam.d2u(r))));
  }
  rad["family"] = {{"K", fam.K}, {"max_residual", famres}};
  j["radial"] = rad;

  nlohmann::json sph;
  int n = N - 1;
  std::vector<double> hs, mus;
  for (int M : {64, 128, 256}) {
    hs.push_back(std::numbers::pi / (M - 1));
    mus.push_back(bifurcation_mu(n, 3, 0, 1, M));
  }
  sph["n"] = n;
  sph["p"] = 3;
  sph["q"] = 0;
  sph["mu_star"] = n / 2.0;
  sph["mu_hat"] = richardson_extrapolate(hs, mus);
  auto trace = continue_branch(n, 3, 0, 1, 12);
  int bounds_ok = 0, rigidity_constant = 0;
  for (const auto& b : trace.points) {
    bound_checks(b.profile);
    ++bounds_ok;
    if (rigidity_test(b.profile, 1e-11).verdict == RigidityVerdict::constant) ++rigidity_constant;
  }
  sph["branch_points"] = trace.points.size();
  sph["branch_max_s"] = trace.points.back().s;
  sph["bound_checks_passed"] = bounds_ok;
  sph["rigidity_constant_verdicts"] = rigidity_constant;
  if (trace.stop_reason) sph["stop_reason"] = *trace.stop_reason;
  {
    std::ofstream os(dir / ("branch_n" + std::to_string(n) + ".csv"), std::ios::binary);
    write_branch_csv(os, trace);
  }
  j["sphere"] = sph;

  std::ofstream os(dir / ("report_N" + std::to_string(N) + ".json"), std::ios::binary);
  os << j.dump(2) << '\n';
  if (!os) throw std::filesystem::filesystem_error("write failed", dir, std::make_error_code(std::errc::io_error));
  return j;
}

}  // namespace gradpde
