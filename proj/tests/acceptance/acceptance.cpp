#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gradpde/appendix.hpp"
#include "gradpde/curves.hpp"
#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"
#include "gradpde/radial.hpp"
#include "gradpde/sphere.hpp"

using namespace gradpde;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Rational R(long a, long b = 1) { return make_rational(a, b); }

Outcome certificate_suite() {
  auto t0 = Clock::now();
  std::vector<int> dims;
  for (int N = 3; N <= 12; ++N) dims.push_back(N);
  auto results = run_appendix_suite(dims);
  double secs = seconds_since(t0);
  Outcome o;
  int proven = 0, total = 0;
  for (const auto& r : results)
    for (const auto& c : r.certificates) {
      ++total;
      if (c.proven()) ++proven;
      else o.pass = false;
    }
  bool equality = false;
  for (const auto& c : results.front().certificates)
    if (c.label == "m0_shift_positive")
      for (const auto& e : c.equality_points) equality = equality || e == 0;
  if (!equality) o.pass = false;
  if (secs >= 60) o.pass = false;
  o.detail = fmt("%d/%d certificates proven, N=3 equality at h=0 %s, %.2f s", proven, total,
                 equality ? "detected" : "missing", secs);
  return o;
}

Outcome identity_suite() {
  Outcome o;
  int checks = 0;
  auto need = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && o.pass) {
      o.pass = false;
      o.detail = "failed: " + what;
    }
  };
  for (int N = 3; N <= 12; ++N) {
    auto P = build_appendix_polynomials(N);
    std::string tag = " N=" + std::to_string(N);
    need(line_identity(P), "form identity" + tag);
    need(discriminant_identity(P), "discriminant identity" + tag);
    bool grid = true;
    for (int i = 0; i < 100 && grid; ++i)
      for (int j = 0; j < 100 && grid; ++j) {
        Rational p = R(i, 25), q = R(j, 50);
        grid = P.G_tilde(p, Rational((N - 1) * q)) == G_value(N, p, q);
      }
    need(grid, "G-tilde grid" + tag);
    for (int k = 0; k < 50; ++k) {
      Rational h = R(2 * (N - 1) * k, 49);
      try {
        auto t = tangency_data(P, h);
        bool ok = P.G_tilde(t.p0, h).sign() == 0 && ellipse(P, h, t.m0, t.y0).sign() == 0 &&
                  QuadSurd(Rational(-P.a(h))) * t.m0 + QuadSurd(P.b(h)) * t.p0 == t.y0;
        need(ok, "tangency at h=" + h.get_str() + tag);
      } catch (const CertificationFailed& e) {
        need(false, std::string(e.what()) + tag);
      }
    }
    auto z = tangency_data(P, R(0));
    need(z.p0 == QuadSurd(R(N + 2, N - 2)) && z.m0 == QuadSurd(R(-2, N - 2)) && z.y0 == QuadSurd(R(N, N - 2)),
         "q=0 values" + tag);
    auto two = tangency_data(P, Rational(2 * (N - 1)));
    need(two.p0 == QuadSurd(R(4, 2 * N - 3)) && two.m0 == QuadSurd(R(-4, 2 * N - 3)) &&
             two.y0 == QuadSurd(R(2, 2 * N - 3)),
         "q=2 values" + tag);
  }
  if (o.pass) o.detail = fmt("%d exact identity checks over N=3..12", checks);
  return o;
}

Outcome critical_recovery() {
  Outcome o;
  for (int N = 3; N <= 12; ++N) {
    QuadSurd v = p_c_exact(N, R(0));
    if (!(v.is_rational() && v.rational_part() == R(N + 2, N - 2))) {
      o.pass = false;
      o.detail = "p_c(" + std::to_string(N) + ", 0) = " + to_string(v);
      return o;
    }
  }
  o.detail = "p_c(N, 0) = (N+2)/(N-2) exactly for N=3..12";
  return o;
}

Outcome explicit_family_check() {
  Outcome o;
  double worst = 0;
  for (int N : {3, 4, 5})
    for (double q : {0.0, 0.25, 0.5}) {
      auto f = explicit_family(N, q, 1);
      ParamPoint pt = f.params();
      for (int i = 0; i <= 4000; ++i) {
        double r = 1e-3 * std::pow(1e4, i / 4000.0);
        double d = std::abs(radial_defect(pt, r, f.u(r), f.du(r), f.d2u(r)));
        worst = std::max(worst, d);
      }
    }
  auto f4 = explicit_family(4, 0, 1);
  bool k_ok = f4.K == 0.125 && 8 * f4.K == 1;
  double hand = 0;
  for (int i = 0; i <= 1000; ++i) {
    double r = 1e-3 * std::pow(1e4, i / 1000.0);
    double D = 0.125 + r * r;
    double u = 1 / D, du = -2 * r / (D * D), d2u = -2 / (D * D) + 8 * r * r / (D * D * D);
    double lap = d2u + 3 * du / r;
    hand = std::max(hand, std::abs(lap + u * u * u) / (u * u * u));
    hand = std::max(hand, std::abs(f4.u(r) - u) / u);
  }
  o.pass = worst <= 1e-8 && k_ok && hand <= 1e-12;
  o.detail = fmt("max residual %.3e on [1e-3, 10], K(4,0) = %.17g, hand oracle deviation %.3e", worst, f4.K, hand);
  return o;
}

Outcome energy_trichotomy() {
  const int N = 4;
  const double q = 0.25;
  double pc = p_crit(N, q);
  auto run = [&](const ParamPoint& pt) {
    auto s = series_start(pt, 1, default_series_eps(pt, 1));
    auto t = integrate_radial(pt, s, 1000, 1e-11);
    return sample_energy(pt, t);
  };
  auto crit = run(ParamPoint(N, p_crit_exact(N, R(1, 4)), R(1, 4)));
  auto above = run(ParamPoint::from_doubles(N, pc + 0.2, q));
  auto below = run(ParamPoint::from_doubles(N, pc - 0.2, q));
  bool c = crit.relative_drift <= 1e-6;
  bool inc = above.monotonic == 1;
  bool dec = below.monotonic == -1;
  Outcome o;
  o.pass = c && inc && dec;
  auto word = [](int m) { return m > 0 ? "increasing" : (m < 0 ? "decreasing" : "not monotone"); };
  o.detail = fmt("p_crit drift %.3e (%s); p_crit+0.2 %s (%s); p_crit-0.2 %s (%s)", crit.relative_drift,
                 c ? "ok" : "too large", word(above.monotonic), inc ? "ok" : "expected increasing",
                 word(below.monotonic), dec ? "ok" : "expected decreasing");
  return o;
}

Outcome shooting_dichotomy() {
  const int N = 4;
  const double q = 0.25;
  double pc = p_crit(N, q);
  auto t0 = Clock::now();
  auto up = classify_shooting(ParamPoint::from_doubles(N, pc + 0.2, q), 1, 1000);
  double s_up = seconds_since(t0);
  t0 = Clock::now();
  auto down = classify_shooting(ParamPoint::from_doubles(N, pc - 0.2, q), 1, 1000);
  double s_down = seconds_since(t0);
  Outcome o;
  o.pass = up.classification == ShootingClass::ground_state && down.classification == ShootingClass::crossing &&
           s_up < 10 && s_down < 10;
  o.detail = fmt("p_crit+0.2 %s in %.3f s, p_crit-0.2 %s in %.3f s", to_string(up.classification), s_up,
                 to_string(down.classification), s_down);
  return o;
}

std::vector<SphereProfile>& converged_profiles() {
  static std::vector<SphereProfile> v;
  return v;
}

Outcome bifurcation_location() {
  std::vector<double> h, mu;
  for (int M : {64, 128, 256}) {
    h.push_back(M_PI / (M - 1));
    mu.push_back(bifurcation_mu(2, 3, 0, 1, M));
  }
  double mu_hat = richardson_extrapolate(h, mu);
  SphereGrid g = SphereGrid::uniform(2, 256);
  auto base = SphereProfile::constant(g, constant_solution(2, 3, 0, 1, mu[2]), mu[2], 1, 3, 0);
  auto spec = linearized_spectrum(base, 2);
  double corr = cos_correlation(g, spec.vectors[1]);
  ContinuationOptions opt;
  auto tr = continue_branch(2, 3, 0, 1, 14, opt);
  int good = 0;
  std::string bad;
  for (std::size_t k = 1; k < tr.points.size(); ++k) {
    const auto& b = tr.points[k];
    double spread = b.profile.omega.maxCoeff() - b.profile.omega.minCoeff();
    if (spread <= 1e-8 || b.residual > 1e-9) continue;
    try {
      bound_checks(b.profile);
      ++good;
      converged_profiles().push_back(b.profile);
    } catch (const BoundViolation& e) {
      bad = e.what();
    }
  }
  Outcome o;
  o.pass = std::abs(mu_hat - 1) <= 1e-3 && corr >= 0.999 && good >= 10 && bad.empty();
  o.detail = fmt("mu_hat = %.12f, |mu_hat - 1| = %.3e, cos correlation %.6f, %d branch points pass bounds", mu_hat,
                 std::abs(mu_hat - 1), corr, good);
  if (!bad.empty()) o.detail += ", " + bad;
  return o;
}

Outcome rigidity_non_violation() {
  auto& profiles = converged_profiles();
  if (profiles.empty()) bifurcation_location();
  struct Case {
    int n;
    double p, q, gamma;
  };
  int solved = 0;
  for (Case c : {Case{2, 3, 0, 1}, Case{3, 2, 0.5, 1}, Case{2, 1.5, 1, 1.2}, Case{4, 2, 0, 0.8}}) {
    double mu_star = c.n / (c.p + c.q - 1);
    for (double f : {0.2, 0.5, 0.9, 1.0, 1.5}) {
      double mu = f * mu_star;
      SphereGrid g = SphereGrid::uniform(c.n, 129);
      double w = constant_solution(c.n, c.p, c.q, c.gamma, mu);
      profiles.push_back(SphereProfile::constant(g, w, mu, c.gamma, c.p, c.q));
      auto start = SphereProfile::constant(g, w, mu, c.gamma, c.p, c.q);
      for (int i = 0; i < g.size(); ++i) start.omega[i] *= 1 + 0.05 * std::cos(g.theta[i]);
      try {
        profiles.push_back(newton_solve(start, 1e-11));
        ++solved;
      } catch (const NoConvergence&) {
      }
    }
    ContinuationOptions opt;
    opt.M = 97;
    auto tr = continue_branch(c.n, c.p, c.q, c.gamma, 6, opt);
    for (const auto& b : tr.points) profiles.push_back(b.profile);
  }
  Outcome o;
  int constant = 0;
  for (const auto& pr : profiles) {
    try {
      if (rigidity_test(pr, 1e-11).verdict == RigidityVerdict::constant) ++constant;
    } catch (const TheoremViolation& e) {
      o.pass = false;
      o.detail = std::string("TheoremViolation: ") + e.what();
      return o;
    }
  }
  o.detail = fmt("%zu converged profiles (%d from Newton), %d certified constant, no violation", profiles.size(),
                 solved, constant);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome region_and_figure() {
  const int N = 6;
  auto rep = region_consistency(N, 500, 20240601u);
  auto g = trace_curve(CurveSpec::natural(CurveId::liouville_G, N), 400);
  auto r = trace_curve(CurveSpec::natural(CurveId::radial_threshold, N), 400);
  bool through = std::abs(curve_value(g.spec, 0) - 2) <= 1e-12 && std::abs(curve_value(r.spec, 0) - 2) <= 1e-12;
  auto x = intersect_curves(g, r);
  bool hit = false;
  for (const auto& [q, p] : x.points) hit = hit || (std::abs(q) <= 1e-9 && std::abs(p - 2) <= 1e-9);
  int below = 0, above = 0;
  for (CurveId id : {CurveId::thmB_boundary_i, CurveId::thmB_boundary_ii}) {
    auto t = trace_curve(CurveSpec::natural(id, N), 400);
    for (const auto& [q, p] : t.points) {
      if (p <= p_c(N, q) + 1e-12) ++below;
      else ++above;
    }
  }
  auto base = fs::temp_directory_path() / "gradpde_acceptance";
  fs::remove_all(base);
  auto f1 = emit_figure(N, base / "a");
  auto f2 = emit_figure(N, base / "b");
  bool same = f1.size() == f2.size();
  for (std::size_t i = 0; same && i < f1.size(); ++i) same = slurp(f1[i]) == slurp(f2[i]);
  fs::remove_all(base);
  Outcome o;
  o.pass = rep.ok() && rep.checked + rep.skipped == 500 && through && hit && above == 0 && same;
  o.detail = fmt("consistency %d checked, %d skipped, %zu mismatches; (0,2) on both curves %s; B below G at %d/%d "
                 "samples; outputs %s",
                 rep.checked, rep.skipped, rep.mismatches.size(), (through && hit) ? "yes" : "no", below,
                 below + above, same ? "byte-identical" : "differ");
  return o;
}

Outcome moser_recursion() {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> dn(3, 12), dnum(0, 400), dden(1, 97);
  int sets = 0, attempts = 0;
  Outcome o;
  while (sets < 100) {
    if (++attempts > 100000) {
      o.pass = false;
      o.detail = "could not draw admissible parameters";
      return o;
    }
    int n = dn(rng);
    Rational q = make_rational(dnum(rng), dden(rng) * 100);
    Rational p = make_rational(dnum(rng), dden(rng) * 40);
    Rational alpha0 = make_rational(dnum(rng), dden(rng));
    if (q >= 2 || sgn(p + q - 1) <= 0) continue;
    if (!((n - 2) * p + (n - 1) * q < n)) continue;
    Rational fp = (p + q - 1) * (n - 2) / (2 - q);
    if (!(1 - fp > 0)) {
      o.pass = false;
      o.detail = "admissible set with fixed point >= 1";
      return o;
    }
    auto s = moser_exponent_sequence(n, p, q, alpha0, 30);
    if (s.recursion != s.closed_form || s.recursion.size() != 31) {
      o.pass = false;
      o.detail = "mismatch at n=" + std::to_string(n) + " p=" + p.get_str() + " q=" + q.get_str();
      return o;
    }
    ++sets;
  }
  o.detail = fmt("closed form equals recursion for k <= 30 on %d admissible rational sets", sets);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--only") only = std::atoi(argv[i + 1]);
  const std::vector<std::function<Outcome()>> criteria = {
      certificate_suite,     identity_suite,         critical_recovery, explicit_family_check, energy_trichotomy,
      shooting_dichotomy,    bifurcation_location,   rigidity_non_violation, region_and_figure, moser_recursion};
  bool all = true;
  for (std::size_t k = 1; k <= criteria.size(); ++k) {
    if (only != 0 && static_cast<std::size_t>(only) != k) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu %s: %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
