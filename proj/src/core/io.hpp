#pragma once

// Surface definition files, CSV/JSON exports and the theorem report schema.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offset.hpp"
#include "ruled.hpp"
#include "theorem_lab.hpp"

namespace mannheim {

/// Either a closed-form surface (k, q, domain[, samples]) or a frame-ODE recipe
/// (synthesize, kappa, domain[, ds1_ds, step, q0, h0, a0, c0, samples]).
struct SurfaceFile {
  enum class Kind { Analytic, Recipe };
  Kind kind = Kind::Analytic;
  std::string k, q;  // curve literals as written
  Interval domain{0.0, 1.0};
  int samples = 512;
  // recipe form
  SurfaceTag type = SurfaceTag::M1Minus;
  std::string kappa;
  std::string ds1_ds = "1";
  double step = 1e-3;
  std::optional<std::string> q0, h0, a0, c0;
};

/// Throws ParseError carrying the 1-based line and column of the offending text.
SurfaceFile parse_surface_file(std::string_view text);
SurfaceFile load_surface_file(const std::string& path);  // Io on unreadable files
std::string write_surface_file(const SurfaceFile& f);
SurfacePtr build_surface(const SurfaceFile& f);

/// %.17g: round-trips every double.
std::string format_double(double v);

struct FrameRow {
  double s = 0.0;
  LVec3 q, h, a;
  double ds1_ds = 0.0;
  double kappa = 0.0;
  double drall = 0.0;
};

inline constexpr const char* kFrameColumns = "s,q1,q2,q3,h1,h2,h3,a1,a2,a3,ds1_ds,kappa,drall";

/// n >= 1 uniform points (n == 1: the left end).
std::vector<FrameRow> frame_grid(const RuledSurface& S, int n);
std::string frame_csv(const std::vector<FrameRow>& rows);
std::string frame_json(const std::vector<FrameRow>& rows);
std::vector<FrameRow> parse_frame_csv(std::string_view text);
std::vector<FrameRow> parse_frame_json(std::string_view text);

struct OffsetSummary {
  MannheimCheck mannheim;
  SurfaceType offset_type;
  double max_offset_drall = 0.0;
  std::optional<double> argmax_s;
  std::vector<Interval> excluded;
  int grid = 0;
};

/// Grid statistics of a built offset over points outside its excluded intervals.
OffsetSummary summarize_offset(const Offset& o, int n);
std::string offset_summary_text(const OffsetSummary& s);
/// Columns s,c1,c2,c3,q1,q2,q3.
std::string offset_csv(const Offset& o, int n);

/// Columns t,s.
std::string reparam_csv(const ArclengthTable& t);

std::string report_json(const std::vector<CaseReport>& cases, std::uint64_t seed);

}  // namespace mannheim
