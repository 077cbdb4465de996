#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gradpde {

enum class CurveId { subcritical_line, thmB_boundary_i, thmB_boundary_ii, liouville_G, radial_threshold, thmE_line };

const char* to_string(CurveId id);
CurveId curve_id_from_string(const std::string& s);
const std::vector<CurveId>& all_curve_ids();

struct QRange {
  double lo = 0;
  double hi = 0;
  bool hi_open = false;
};

struct CurveSpec {
  CurveId id = CurveId::subcritical_line;
  int N = 3;
  QRange q_range;

  // Full validity range of the curve for this N; DomainError when it is empty.
  static CurveSpec natural(CurveId id, int N);
  bool degenerate() const;
};

// p on the curve at q; DomainError outside validity or when the curve leaves p in [0, 1] for case (ii).
double curve_value(const CurveSpec& spec, double q);

struct CurveTrace {
  CurveSpec spec;
  std::vector<std::pair<double, double>> points;  // (q, p)
  double density = 0;
};

CurveTrace trace_curve(const CurveSpec& spec, int samples);
// Every nondegenerate curve for N, in id order.
std::vector<CurveTrace> trace_all(int N, int samples);

struct Intersection {
  std::vector<std::pair<double, double>> points;
  bool full_overlap = false;
};

Intersection intersect_curves(const CurveTrace& a, const CurveTrace& b);

struct ConsistencyReport {
  int checked = 0;
  int skipped = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Random rational points compared against classify; points within 1e-9 of a curve are skipped.
ConsistencyReport region_consistency(int N, int count, unsigned seed);

void write_curve_csv(std::ostream& os, const CurveTrace& trace);
void write_figure_svg(std::ostream& os, const std::vector<CurveTrace>& traces, int N);
// Writes curve_<id>.csv per curve and figure_N<N>.svg; returns the written paths.
std::vector<std::filesystem::path> emit_figure(int N, const std::filesystem::path& dir, int samples = 400);

}  // namespace gradpde
