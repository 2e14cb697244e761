// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "io.hpp"
#include "offset.hpp"
#include "prop.hpp"
#include "surfaces.hpp"
#include "theorem_lab.hpp"

using namespace mannheim;
using namespace mannheim::testing;

namespace {

struct Line {
  double value = 0.0;  // worst measured quantity
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct Worst {
  double value = 0.0;
  double tol = 0.0;
  double ratio = -1.0;
  std::string what;
  bool ok = true;

  void add(const std::string& name, double v, double t) {
    const bool good = v <= t;  // NaN fails
    ok = ok && good;
    const double r = std::isnan(v) ? INFINITY : t > 0 ? v / t : (v > 0 ? INFINITY : 0.0);
    if (r > ratio) ratio = r, value = std::isnan(v) ? INFINITY : v, tol = t, what = name;
  }
  Line line(std::string extra = {}) const {
    return {value, tol, ok, what + (extra.empty() ? "" : "; " + extra)};
  }
};

double grid_max(const std::vector<double>& grid, const std::function<double(double)>& f) {
  double m = 0.0;
  for (double s : grid) {
    const double v = std::abs(f(s));
    if (!(v <= m)) m = std::isnan(v) ? INFINITY : v;
  }
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OffsetSpec spec_of(SurfacePtr base, double R, Expr theta, OffsetPairing p) {
  OffsetSpec sp;
  sp.base = std::move(base);
  sp.R = Expr::number(R);
  sp.theta = std::move(theta);
  sp.pairing = p;
  return sp;
}

// ---------------------------------------------------------------------------

Line crit1() {
  Worst w;
  Gen g(kDefaultSeed);
  double orth = 0, anti = 0, alt = 0;
  for (int i = 0; i < 10000; ++i) {
    const LVec3 a = g.vec(1.0), b = g.vec(1.0), c = g.vec(1.0);
    const LVec3 x = lorentz_cross(a, b);
    orth = std::max({orth, std::abs(lorentz_dot(x, a)), std::abs(lorentz_dot(x, b))});
    anti = std::max(anti, euclidean_norm(x + lorentz_cross(b, a)));
    const double m = mixed_product(a, b, c);
    alt = std::max({alt, std::abs(m - mixed_product(b, c, a)), std::abs(m - mixed_product(c, a, b)),
                    std::abs(m + mixed_product(b, a, c))});
  }
  w.add("cross orthogonality", orth, 1e-12);
  w.add("cross antisymmetry", anti, 1e-12);
  w.add("mixed alternation", alt, 1e-12);
  const CaseReport lemma = run_case("lemma-2.1", {kDefaultSeed, false});
  for (const CheckResult& c : lemma.checks) w.add("lemma: " + c.name, c.value, c.tolerance);
  return w.line();
}

Line crit2() {
  Worst w;
  const SurfacePtr hel = helicoid(), cone = cone_m1minus(0, 2);
  for (auto [name, S, kappa] : {std::tuple{"helicoid", hel, 0.0}, {"cone", cone, std::cosh(1.0) / std::sinh(1.0)}}) {
    const auto grid = S->domain().grid(512);
    w.add(std::string(name) + " frame ODE residual", grid_max(grid, [&](double s) { return frame_ode_residual(*S, s).max(); }),
          1e-7);
    w.add(std::string(name) + " kappa", grid_max(grid, [&](double s) { return S->frame(s).kappa - kappa; }), 1e-8);
  }
  return w.line();
}

Line crit3() {
  Worst w;
  const SurfacePtr td = analytic("(sinh(s), cosh(s), 0)", "(cosh(s), sinh(s), 0)", -1, 1), hel = helicoid();
  const auto grid = td->domain().grid(512);
  w.add("tangent developable |drall|", grid_max(grid, [&](double s) { return drall(*td, s); }), 1e-10);
  w.add("helicoid |drall + 1|", grid_max(grid, [&](double s) { return drall(*hel, s) + 1.0; }), 1e-10);
  return w.line();
}

Line crit4() {
  Worst w;
  const auto base = synthesized(SurfaceTag::M1Minus, "0.4 + 0.3*sin(s)", {0, 2});
  const auto grid = base->knot_grid(512);
  for (double R : {-0.7, 0.5, 2.0})
    for (OffsetPairing p : {OffsetPairing::M1mToM1p, OffsetPairing::M1mToM1m}) {
      const OffsetSpec sp = spec_of(base, R, Expr::number(0.3), p);
      w.add("constant R striction residual", grid_max(grid, [&](double s) { return striction_offset_residual(sp, s); }),
            1e-8);
    }
  OffsetSpec sp = spec_of(helicoid(), 0.0, Expr::number(0.3), OffsetPairing::M1mToM1m);
  sp.R = parse_expr("-s");
  w.add("helicoid R = -s residual",
        grid_max(sp.base->domain().grid(512), [&](double s) { return striction_offset_residual(sp, s); }), 1e-10);
  return w.line();
}

// Characterization, offset drall and theta evolution on the segments of a
// synthesized base with theta = 3 - s.
void end_to_end(Worst& w, SurfaceTag type, const std::string& kappa, const std::vector<Interval>& segments,
                OffsetPairing p) {
  for (const Interval& seg : segments) {
    const auto base = synthesized(type, kappa, seg);
    std::vector<double> knots;
    for (const auto& k : base->knots()) knots.push_back(k.s);
    w.add("characterization residual",
          grid_max(knots, [&](double s) { return characterization_residual(*base, 1.0, s, type); }), 1e-8);
    const OffsetSpec sp = spec_of(base, 1.0, parse_expr("3 - s"), p);
    w.add("theta evolution residual", grid_max(knots, [&](double s) { return theta_evolution_residual(sp, s); }), 1e-8);
    const Offset o = build_offset(sp);
    w.add("offset |drall|", grid_max(base->knot_grid(512), [&](double s) { return drall(*o.surface, s); }), 1e-5);
  }
}

Line crit5() {
  Worst w;
  end_to_end(w, SurfaceTag::M1Minus, "-cosh(3 - s)/sinh(3 - s)", {{0, 2}}, OffsetPairing::M1mToM1p);
  return w.line();
}

Line crit6() {
  Worst w;
  const double pole = 3 - M_PI / 2;
  end_to_end(w, SurfaceTag::M1Plus, "tan(3 - s)", {{0, pole - 0.05}, {pole + 0.05, 2}}, OffsetPairing::M1pToM2p);
  return w.line("poles trimmed by 0.05");
}

Line crit7() {
  Worst w;
  for (const char* id : {"cor-5.3", "cor-5.4", "cor-6.3", "cor-6.4"}) {
    const CaseReport r = run_case(id, {kDefaultSeed, false});
    if (r.checks.empty()) w.add(std::string(id) + " (no checks)", INFINITY, 0.0);
    for (const CheckResult& c : r.checks) w.add(std::string(id) + ": " + c.name, c.value, c.tolerance);
  }
  return w.line();
}

Line crit8() {
  Worst w;
  const SurfacePtr cone = cone_m1minus(0, 2);
  for (auto [p, R] : {std::pair{OffsetPairing::M1mToM1p, 1.0}, {OffsetPairing::M1mToM1m, 0.5}}) {
    for (double s0 : {0.5, 1.0, 1.5}) {
      const FrameInvariants inv = cone->invariants(s0);
      const double closed = solve_theta(p, R, inv.kappa, inv.ds1_ds);
      auto offset_drall = [&](double tc) {
        const Expr theta = Expr::number(tc) - Expr::number(inv.ds1_ds) * (Expr::var() - Expr::number(s0));
        return drall(*build_offset(spec_of(cone, R, theta, p)).surface, s0);
      };
      const double numeric = bisect(offset_drall, closed - 0.3, closed + 0.3, 1e-13);
      w.add(std::string(pairing_name(p)) + " theta root gap", std::abs(numeric - closed), 1e-8);
    }
  }
  return w.line();
}

Line crit9() {
  Worst w;
  Gen g(kDefaultSeed);
  double fd_err = 0.0;
  int checked = 0, trip_fail = 0, skipped = 0;
  while (checked < 1000) {
    const Expr e = random_expr(g, 4);
    const double s = g.uniform(-2, 2);
    double fd;
    try {
      fd = central_fd(e, s);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    const double d = differentiate(e).eval(s);
    // FD rounding error grows with |f|, so |f| enters the relative scale too
    fd_err = std::max(fd_err, std::abs(d - fd) / std::max({1.0, std::abs(fd), std::abs(e.eval(s))}));
    const std::string text = e.to_string();
    const Expr back = parse_expr(text);
    if (back.to_string() != text || !(back.eval(s) == e.eval(s))) ++trip_fail;
    ++checked;
  }
  w.add("symbolic vs 5-point FD (relative)", fd_err, 1e-6);
  w.add("print/parse round-trip failures", trip_fail, 0.0);
  return w.line(std::to_string(checked) + " ASTs, " + std::to_string(skipped) + " skipped off-domain");
}

int run(const std::string& cmd, std::string& out) {
  out.clear();
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return -1;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  const int st = pclose(p);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

bool same_bits(const std::vector<FrameRow>& a, const std::vector<FrameRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const FrameRow &x = a[i], &y = b[i];
    const double u[] = {x.s, x.q.x1, x.q.x2, x.q.x3, x.h.x1, x.h.x2, x.h.x3, x.a.x1, x.a.x2, x.a.x3, x.ds1_ds, x.kappa, x.drall};
    const double v[] = {y.s, y.q.x1, y.q.x2, y.q.x3, y.h.x1, y.h.x2, y.h.x3, y.a.x1, y.a.x2, y.a.x3, y.ds1_ds, y.kappa, y.drall};
    if (std::memcmp(u, v, sizeof u) != 0) return false;
  }
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line crit10(const std::string& cli, const std::string& data) {
  Worst w;
  std::string out;
  const int rc = run("\"" + cli + "\" theorems", out);
  int passes = 0;
  std::istringstream lines(out);
  for (std::string l; std::getline(lines, l);) passes += l.rfind("PASS ", 0) == 0;
  w.add("theorems exit code", rc, 0.0);
  w.add("failing or missing cases", 13 - passes, 0.0);

  const auto dir = std::filesystem::temp_directory_path() / ("mannheim-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  int mismatches = 0;
  for (const char* surf : {"helicoid.surf", "cone.surf", "coth_base.surf"}) {
    const std::string file = data + "/" + surf;
    const auto rows = frame_grid(*build_surface(load_surface_file(file)), 257);
    for (const char* fmt : {"csv", "json"}) {
      const std::string dst = (dir / (std::string(surf) + "." + fmt)).string();
      if (run("\"" + cli + "\" frame \"" + file + "\" --grid 257 --out " + fmt + " -o \"" + dst + "\"", out) != 0) {
        ++mismatches;
        continue;
      }
      const std::string text = slurp(dst);
      try {
        const auto back = std::string(fmt) == "csv" ? parse_frame_csv(text) : parse_frame_json(text);
        mismatches += !same_bits(rows, back);
      } catch (const Error&) {
        ++mismatches;
      }
    }
  }
  std::filesystem::remove_all(dir);
  w.add("export round-trip mismatches", mismatches, 0.0);
  return w.line(std::to_string(passes) + "/13 cases passed");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = MANNHEIM_CLI_PATH, data = MANNHEIM_DATA_DIR;
  if (argc > 1) cli = argv[1];
  if (argc > 2) data = argv[2];

  struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds, 0 = none
    std::function<Line()> run;
  };
  const std::vector<Criterion> crits = {
      {1, "algebra kernel and lemma", 1.0, crit1},
      {2, "frame correctness", 1.0, crit2},
      {3, "drall examples", 0, crit3},
      {4, "striction offset both directions", 0, crit4},
      {5, "coth base end-to-end", 10.0, crit5},
      {6, "tan base end-to-end", 10.0, crit6},
      {7, "corollaries", 0, crit7},
      {8, "theta equivalence sweep", 0, crit8},
      {9, "parser and differentiator", 0, crit9},
      {10, "CLI contract", 0, [&] { return crit10(cli, data); }},
  };

  int failed = 0;
  for (const Criterion& c : crits) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
      l = c.run();
    } catch (const std::exception& e) {
      l = {INFINITY, 0.0, false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    bool ok = l.pass;
    std::string timing = "time=" + std::to_string(t).substr(0, 5) + "s";
    if (c.time_limit > 0) {
      timing += " (limit " + std::to_string(int(c.time_limit)) + "s)";
      ok = ok && t < c.time_limit;
    }
    failed += !ok;
    std::printf("criterion %2d %s  %-34s worst=%.3g tol=%.3g %s  [%s]\n", c.id, ok ? "PASS" : "FAIL", c.title, l.value,
                l.tol, timing.c_str(), l.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(crits.size()) - failed, crits.size());
  return failed ? 1 : 0;
}
