#include "gradpde/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <random>

#include "gradpde/errors.hpp"
#include "gradpde/param.hpp"

namespace gradpde {

const char* to_string(CurveId id) {
  switch (id) {
    case CurveId::subcritical_line: return "subcritical_line";
    case CurveId::thmB_boundary_i: return "thmB_boundary_i";
    case CurveId::thmB_boundary_ii: return "thmB_boundary_ii";
    case CurveId::liouville_G: return "liouville_G";
    case CurveId::radial_threshold: return "radial_threshold";
    case CurveId::thmE_line: return "thmE_line";
  }
  return "?";
}

const std::vector<CurveId>& all_curve_ids() {
  static const std::vector<CurveId> ids = {CurveId::subcritical_line, CurveId::thmB_boundary_i,
                                           CurveId::thmB_boundary_ii, CurveId::liouville_G,
                                           CurveId::radial_threshold, CurveId::thmE_line};
  return ids;
}

CurveId curve_id_from_string(const std::string& s) {
  for (CurveId id : all_curve_ids())
    if (s == to_string(id)) return id;
  throw DomainError("unknown curve id '" + s + "'");
}

CurveSpec CurveSpec::natural(CurveId id, int N) {
  if (N < 3) throw DomainError("curves need N >= 3");
  CurveSpec s;
  s.id = id;
  s.N = N;
  double n1 = N - 1.0;
  switch (id) {
    case CurveId::subcritical_line: s.q_range = {0, N / n1}; break;
    case CurveId::thmB_boundary_i: s.q_range = {0, std::min(4 / n1, 2.0)}; break;
    case CurveId::thmB_boundary_ii: s.q_range = {std::min(4 / n1, 2.0), 2.0}; break;
    case CurveId::liouville_G: s.q_range = {0, 2}; break;
    case CurveId::radial_threshold: s.q_range = {0, 1, true}; break;
    case CurveId::thmE_line:
      if (N == 3) s.q_range = {0, 0};
      else s.q_range = {0, std::min(n1 / (N - 2), 2.0)};
      break;
  }
  return s;
}

bool CurveSpec::degenerate() const { return !(q_range.hi > q_range.lo); }

static double boundary_ii(int N, double q) {
  auto f = [&](double p) { return p + q - 1 - (p + 1) * (p + 1) / (p * (N - 1)); };
  double f1 = f(1);
  if (f1 < -1e-12) throw DomainError("case (ii) boundary leaves the strip p <= 1");
  if (f1 <= 0) return 1;
  double lo = 0, hi = 1;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = (lo + hi) / 2;
    if (mid == 0 || f(mid) < 0) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

double curve_value(const CurveSpec& spec, double q) {
  const int N = spec.N;
  if (N < 3) throw DomainError("curves need N >= 3");
  const QRange& r = spec.q_range;
  if (q < r.lo || q > r.hi || (r.hi_open && q >= r.hi)) throw DomainError("q outside the curve's range");
  switch (spec.id) {
    case CurveId::subcritical_line: return (N - (N - 1) * q) / (N - 2);
    case CurveId::thmB_boundary_i: return (N + 3.0) / (N - 1) - q;
    case CurveId::thmB_boundary_ii: return boundary_ii(N, q);
    case CurveId::liouville_G: return p_c(N, q);
    case CurveId::radial_threshold:
      if (q >= 1) throw DomainError("radial threshold needs q < 1");
      return (N + (2 - q) / (1 - q) - (N - 1) * q) / (N - 2);
    case CurveId::thmE_line:
      if (N == 3) throw DomainError("thmE_line is degenerate for N = 3");
      return (N - 1 - q * (N - 2)) / (N - 3);
  }
  throw DomainError("unknown curve");
}

CurveTrace trace_curve(const CurveSpec& spec, int samples) {
  if (samples < 2) throw DomainError("trace needs at least 2 samples");
  if (spec.degenerate()) throw DomainError(std::string("curve ") + to_string(spec.id) + " is degenerate for this N");
  CurveTrace t;
  t.spec = spec;
  double lo = spec.q_range.lo;
  double hi = spec.q_range.hi_open ? spec.q_range.hi - (spec.q_range.hi - lo) / (4.0 * samples) : spec.q_range.hi;
  t.density = (samples - 1) / (hi - lo);
  for (int i = 0; i < samples; ++i) {
    double q = i + 1 == samples ? hi : lo + (hi - lo) * i / (samples - 1);
    double p = curve_value(spec, q);
    if (!std::isfinite(p)) throw DomainError("curve value not finite");
    t.points.emplace_back(q, p);
  }
  return t;
}

std::vector<CurveTrace> trace_all(int N, int samples) {
  if (N < 3) throw DomainError("curves need N >= 3");
  std::vector<std::future<CurveTrace>> jobs;
  for (CurveId id : all_curve_ids()) {
    CurveSpec s = CurveSpec::natural(id, N);
    if (s.degenerate()) continue;
    jobs.push_back(std::async(std::launch::async, [s, samples] { return trace_curve(s, samples); }));
  }
  std::vector<CurveTrace> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Intersection intersect_curves(const CurveTrace& a, const CurveTrace& b) {
  Intersection res;
  if (a.spec.id == b.spec.id && a.spec.N == b.spec.N) {
    res.full_overlap = true;
    return res;
  }
  double lo = std::max(a.points.front().first, b.points.front().first);
  double hi = std::min(a.points.back().first, b.points.back().first);
  if (!(hi >= lo)) return res;
  auto d = [&](double q) { return curve_value(a.spec, q) - curve_value(b.spec, q); };
  const double zero_tol = 1e-12;
  if (hi == lo) {
    if (std::abs(d(lo)) <= zero_tol) res.points.emplace_back(lo, curve_value(a.spec, lo));
    return res;
  }
  int n = 4 * static_cast<int>(std::max(a.points.size(), b.points.size()));
  double prev_q = lo, prev_d = d(lo);
  auto add = [&](double q) {
    if (res.points.empty() || std::abs(res.points.back().first - q) > 1e-9)
      res.points.emplace_back(q, curve_value(a.spec, q));
  };
  if (std::abs(prev_d) <= zero_tol) add(lo);
  for (int i = 1; i <= n; ++i) {
    double q = i == n ? hi : lo + (hi - lo) * i / n;
    double dq = d(q);
    if (std::abs(dq) <= zero_tol) {
      add(q);
    } else if (std::abs(prev_d) > zero_tol && (prev_d < 0) != (dq < 0)) {
      double l = prev_q, r = q, dl = prev_d;
      while (r - l > 1e-12) {
        double m = (l + r) / 2;
        double dm = d(m);
        if ((dm < 0) == (dl < 0)) {
          l = m;
          dl = dm;
        } else {
          r = m;
        }
      }
      add((l + r) / 2);
    }
    prev_q = q;
    prev_d = dq;
  }
  return res;
}

namespace {

// Membership predicted from the curves alone.
struct Predicted {
  bool subcritical, case_i, case_ii, liouville, radial, thmE;
  bool near_boundary = false;
};

Predicted predict(int N, double p, double q) {
  Predicted pr{};
  const double eps = 1e-9;
  auto side = [&](CurveId id, double qq) {
    double v = curve_value(CurveSpec::natural(id, N), qq);
    if (std::abs(p - v) < eps) pr.near_boundary = true;
    return p < v;
  };
  double Q = p + q - 1;
  if (std::abs(Q) < eps || std::abs(p - 1) < eps || p < eps || q < eps || std::abs(q - 1) < eps)
    pr.near_boundary = true;
  double sub_hi = N / (N - 1.0);
  pr.subcritical = q <= sub_hi ? side(CurveId::subcritical_line, q) : false;
  double qi = std::min(4.0 / (N - 1), 2.0);
  if (std::abs(q - qi) < eps) pr.near_boundary = true;
  pr.case_i = p >= 1 && q < qi && side(CurveId::thmB_boundary_i, q);
  pr.case_ii = p < 1 && Q > 0 && q < 2 && (q <= qi || side(CurveId::thmB_boundary_ii, q));
  pr.liouville = side(CurveId::liouville_G, q);
  pr.radial = q < 1 && !side(CurveId::radial_threshold, q);
  if (N == 3) {
    pr.thmE = Q > 0 && q < 2;
  } else {
    double e_hi = std::min((N - 1.0) / (N - 2), 2.0);
    pr.thmE = Q > 0 && q <= e_hi && side(CurveId::thmE_line, q);
  }
  return pr;
}

}  // namespace

ConsistencyReport region_consistency(int N, int count, unsigned seed) {
  if (N < 3) throw DomainError("curves need N >= 3");
  ConsistencyReport rep;
  std::mt19937 rng(seed);
  const long D = 997;
  std::uniform_int_distribution<long> qd(0, 2 * D - 1), pd(0, 4 * D - 1);
  for (int k = 0; k < count; ++k) {
    long qi = qd(rng), pi = pd(rng);
    ParamPoint pt(N, make_rational(pi, D), make_rational(qi, D));
    double p = pt.pd(), q = pt.qd();
    Predicted pr = predict(N, p, q);
    if (pr.near_boundary) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    RegionReport r = classify(pt);
    auto check = [&](const char* what, bool got, bool want) {
      if (got != want)
        rep.mismatches.push_back(std::string(what) + " at " + pt.str() + ": classify " + (got ? "1" : "0") +
                                 ", curves " + (want ? "1" : "0"));
    };
    check("subcritical", r.subcritical, pr.subcritical);
    check("thmB case (i)", r.thmB_case == ThmBCase::case_i, pr.case_i);
    check("thmB case (ii)", r.thmB_case == ThmBCase::case_ii, pr.case_ii);
    check("liouville_C", r.liouville_C, pr.liouville);
    check("radial_ground_state", r.radial_ground_state, pr.radial);
    check("thmE", r.thmE_hypothesis, pr.thmE);
  }
  return rep;
}

static std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

void write_curve_csv(std::ostream& os, const CurveTrace& t) {
  os << "curve_id,q,p\n";
  for (const auto& [q, p] : t.points) os << to_string(t.spec.id) << ',' << fmt9(q) << ',' << fmt9(p) << '\n';
}

namespace {

constexpr double kLeft = 70, kRight = 780, kTop = 20, kBottom = 560;
constexpr double kQmax = 2, kPmax = 4;

double sx(double q) { return kLeft + (kRight - kLeft) * q / kQmax; }
double sy(double p) { return kBottom - (kBottom - kTop) * p / kPmax; }

const char* colour(CurveId id) {
  switch (id) {
    case CurveId::subcritical_line: return "#1f77b4";
    case CurveId::thmB_boundary_i: return "#ff7f0e";
    case CurveId::thmB_boundary_ii: return "#2ca02c";
    case CurveId::liouville_G: return "#d62728";
    case CurveId::radial_threshold: return "#9467bd";
    case CurveId::thmE_line: return "#8c564b";
  }
  return "#000000";
}

// Splits the polyline into runs inside the box, interpolating exit points.
std::vector<std::vector<std::pair<double, double>>> clip(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::vector<std::pair<double, double>>> runs;
  std::vector<std::pair<double, double>> cur;
  auto inside = [](const std::pair<double, double>& a) { return a.second >= 0 && a.second <= kPmax; };
  auto cut = [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
    double edge = (a.second > kPmax || b.second > kPmax) ? kPmax : 0.0;
    double t = (edge - a.second) / (b.second - a.second);
    return std::pair<double, double>{a.first + t * (b.first - a.first), edge};
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool in = inside(pts[i]);
    if (i > 0 && in != inside(pts[i - 1])) {
      auto c = cut(pts[i - 1], pts[i]);
      cur.push_back(c);
      if (!in) {
        runs.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (in) cur.push_back(pts[i]);
  }
  if (cur.size() >= 2) runs.push_back(std::move(cur));
  return runs;
}

}  // namespace

void write_figure_svg(std::ostream& os, const std::vector<CurveTrace>& traces, int N) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 "
        "600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"400\" y=\"14\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">N = " << N
     << "</text>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<line x1=\"" << fmt9(sx(0)) << "\" y1=\"" << fmt9(sy(0)) << "\" x2=\"" << fmt9(sx(kQmax)) << "\" y2=\""
     << fmt9(sy(0)) << "\"/>\n";
  os << "<line x1=\"" << fmt9(sx(0)) << "\" y1=\"" << fmt9(sy(0)) << "\" x2=\"" << fmt9(sx(0)) << "\" y2=\""
     << fmt9(sy(kPmax)) << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 4; ++k) {
    double q = 0.5 * k;
    os << "<text x=\"" << fmt9(sx(q)) << "\" y=\"" << fmt9(sy(0) + 16) << "\" text-anchor=\"middle\">" << fmt9(q)
       << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    double p = 1.0 * k;
    os << "<text x=\"" << fmt9(sx(0) - 6) << "\" y=\"" << fmt9(sy(p) + 4) << "\" text-anchor=\"end\">" << fmt9(p)
       << "</text>\n";
  }
  os << "<text x=\"" << fmt9(sx(kQmax / 2)) << "\" y=\"594\" text-anchor=\"middle\">q</text>\n";
  os << "<text x=\"14\" y=\"" << fmt9(sy(kPmax / 2)) << "\" text-anchor=\"middle\">p</text>\n";
  os << "</g>\n";
  for (const auto& t : traces) {
    os << "<g id=\"" << to_string(t.spec.id) << "\" stroke=\"" << colour(t.spec.id)
       << "\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (const auto& run : clip(t.points)) {
      os << "<polyline points=\"";
      for (std::size_t i = 0; i < run.size(); ++i) {
        if (i) os << ' ';
        os << fmt9(sx(run[i].first)) << ',' << fmt9(sy(run[i].second));
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  double ly = 40;
  for (const auto& t : traces) {
    os << "<line x1=\"600\" y1=\"" << fmt9(ly) << "\" x2=\"625\" y2=\"" << fmt9(ly) << "\" stroke=\""
       << colour(t.spec.id) << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"630\" y=\"" << fmt9(ly + 4) << "\">" << to_string(t.spec.id) << "</text>\n";
    ly += 16;
  }
  os << "</g>\n</svg>\n";
}

std::vector<std::filesystem::path> emit_figure(int N, const std::filesystem::path& dir, int samples) {
  if (N < 3) throw DomainError("figure needs N >= 3");
  std::vector<CurveTrace> traces = trace_all(N, samples);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                     std::make_error_code(std::errc::io_error));
    return os;
  };
  for (const auto& t : traces) {
    auto path = dir / ("curve_" + std::string(to_string(t.spec.id)) + ".csv");
    std::ofstream os = open(path);
    write_curve_csv(os, t);
    if (!os) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
    written.push_back(path);
  }
  auto svg = dir / ("figure_N" + std::to_string(N) + ".svg");
  std::ofstream os = open(svg);
  write_figure_svg(os, traces, N);
  if (!os) throw std::filesystem::filesystem_error("write failed", svg, std::make_error_code(std::errc::io_error));
  written.push_back(svg);
  return written;
}

}  // namespace gradpde
