#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gradpde/curves.hpp"
#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"
#include "gradpde/radial.hpp"

using namespace gradpde;

namespace {

double at(CurveId id, int N, double q) { return curve_value(CurveSpec::natural(id, N), q); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("gradpde_curves_" + tag);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("curve ids") {
  CHECK(all_curve_ids().size() == 6);
  for (CurveId id : all_curve_ids()) CHECK(curve_id_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(curve_id_from_string("nope"), DomainError);
}

TEST_CASE("curve values for N = 6") {
  CHECK(at(CurveId::subcritical_line, 6, 0) == doctest::Approx(1.5));
  CHECK(at(CurveId::subcritical_line, 6, 1.2) == doctest::Approx(0).epsilon(1e-12));
  CHECK(at(CurveId::thmB_boundary_i, 6, 0) == doctest::Approx(1.8));
  CHECK(at(CurveId::thmB_boundary_i, 6, 0.8) == doctest::Approx(1));
  CHECK(at(CurveId::thmB_boundary_ii, 6, 0.8) == doctest::Approx(1).epsilon(1e-9));
  CHECK(at(CurveId::thmB_boundary_ii, 6, 2) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(at(CurveId::liouville_G, 6, 0) == doctest::Approx(2));
  CHECK(at(CurveId::radial_threshold, 6, 0) == doctest::Approx(2));
  CHECK(at(CurveId::thmE_line, 6, 0) == doctest::Approx(5.0 / 3));
  CHECK(at(CurveId::thmE_line, 6, 1.25) == doctest::Approx(0).epsilon(1e-12));
  auto r = CurveSpec::natural(CurveId::radial_threshold, 6).q_range;
  CHECK(r.hi == 1);
  CHECK(r.hi_open);
  CHECK_THROWS_AS(at(CurveId::radial_threshold, 6, 1), DomainError);
  CHECK_THROWS_AS(at(CurveId::subcritical_line, 6, 1.5), DomainError);
}

TEST_CASE("curve oracles") {
  for (int N = 3; N <= 12; ++N) {
    for (int i = 0; i <= 100; ++i) {
      double q = 2.0 * i / 100;
      double g = at(CurveId::liouville_G, N, q);
      CHECK(std::abs(G_value(N, g, q)) <= 1e-9 * (1 + g * g));
      if (q < 1) CHECK(at(CurveId::radial_threshold, N, q) == doctest::Approx(p_crit(N, q)));
      auto bi = CurveSpec::natural(CurveId::thmB_boundary_i, N);
      if (q <= bi.q_range.hi) CHECK(at(CurveId::thmB_boundary_i, N, q) <= g + 1e-12);
      auto bii = CurveSpec::natural(CurveId::thmB_boundary_ii, N);
      if (!bii.degenerate() && q >= bii.q_range.lo) {
        double p = at(CurveId::thmB_boundary_ii, N, q);
        CHECK(p > 0);
        CHECK(p <= 1 + 1e-12);
        CHECK(std::abs(p + q - 1 - (p + 1) * (p + 1) / (p * (N - 1))) <= 1e-9);
        CHECK(p <= g + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(CurveSpec::natural(CurveId::subcritical_line, 2), DomainError);
  CHECK_THROWS_AS(trace_all(2, 10), DomainError);
}

TEST_CASE("degenerate curves for N = 3") {
  CHECK(CurveSpec::natural(CurveId::thmE_line, 3).degenerate());
  auto traces = trace_all(3, 50);
  CHECK(traces.size() == 4);
  for (const auto& t : traces) {
    CHECK(t.spec.id != CurveId::thmE_line);
    CHECK(t.spec.id != CurveId::thmB_boundary_ii);
  }
  auto rad = CurveSpec::natural(CurveId::radial_threshold, 3);
  auto tr = trace_curve(rad, 50);
  CHECK(tr.points.back().first < 1);
  CHECK(std::isfinite(tr.points.back().second));
  CHECK(trace_all(6, 50).size() == 6);
}

TEST_CASE("intersections") {
  auto g = trace_curve(CurveSpec::natural(CurveId::liouville_G, 6), 400);
  auto r = trace_curve(CurveSpec::natural(CurveId::radial_threshold, 6), 400);
  auto x = intersect_curves(g, r);
  REQUIRE(x.points.size() == 1);
  CHECK(x.points[0].first == doctest::Approx(0).epsilon(1e-9));
  CHECK(x.points[0].second == doctest::Approx(2).epsilon(1e-9));
  CHECK_FALSE(x.full_overlap);
  auto self = intersect_curves(g, g);
  CHECK(self.full_overlap);
  CHECK(self.points.empty());
  auto bi = trace_curve(CurveSpec::natural(CurveId::thmB_boundary_i, 6), 400);
  auto bii = trace_curve(CurveSpec::natural(CurveId::thmB_boundary_ii, 6), 400);
  auto j = intersect_curves(bi, bii);
  REQUIRE_FALSE(j.points.empty());
  CHECK(j.points[0].first == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("region consistency") {
  for (int N : {3, 4, 6, 10}) {
    auto rep = region_consistency(N, 500, 12345u + static_cast<unsigned>(N));
    CHECK(rep.ok());
    CHECK(rep.checked + rep.skipped == 500);
    CHECK(rep.checked > 400);
  }
}

TEST_CASE("csv and figure output") {
  auto t = trace_curve(CurveSpec::natural(CurveId::subcritical_line, 6), 5);
  std::ostringstream os;
  write_curve_csv(os, t);
  CHECK(os.str().rfind("curve_id,q,p\n", 0) == 0);
  CHECK(os.str().find("subcritical_line,0.000000000,1.500000000") != std::string::npos);

  auto d1 = temp_dir("a"), d2 = temp_dir("b");
  auto f1 = emit_figure(6, d1);
  auto f2 = emit_figure(6, d2);
  REQUIRE(f1.size() == 7);
  REQUIRE(f2.size() == f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(slurp(f1[i]) == slurp(f2[i]));
  auto svg = slurp(d1 / "figure_N6.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg == slurp(std::filesystem::path(GOLDEN_DIR) / "figure_N6.svg"));
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}
