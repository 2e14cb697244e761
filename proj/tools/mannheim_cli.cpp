// mannheim: command-line front end over the C API.
//
// exit codes: 0 ok, 1 input/IO error, 2 degenerate surface or pairing mismatch,
// 3 theorem failure, 64 usage error.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mannheim/mannheim.h"

namespace {

enum Exit { kOk = 0, kInput = 1, kGeometry = 2, kTheorem = 3, kUsage = 64 };

int exit_for(mh_status s) {
  switch (s) {
    case MH_OK: return kOk;
    case MH_ERR_DEGENERATE:
    case MH_ERR_PAIRING_MISMATCH:
    case MH_ERR_NO_REAL_SOLUTION:
    case MH_ERR_NULL_VECTOR:
    case MH_ERR_DIVISION_BY_ZERO: return kGeometry;
    default: return kInput;
  }
}

int report(mh_status s, const std::string& what) {
  std::cerr << "mannheim: " << what << ": " << mh_status_name(s);
  if (*mh_last_error()) std::cerr << ": " << mh_last_error();
  std::cerr << "\n";
  return exit_for(s);
}

struct SurfaceDeleter {
  void operator()(mh_surface* s) const { mh_surface_free(s); }
};
struct OffsetDeleter {
  void operator()(mh_offset* o) const { mh_offset_free(o); }
};
struct StringDeleter {
  void operator()(char* s) const { mh_string_free(s); }
};
using Surface = std::unique_ptr<mh_surface, SurfaceDeleter>;
using Offset = std::unique_ptr<mh_offset, OffsetDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* type_name(mh_surface_type t) {
  switch (t) {
    case MH_TYPE_M1_MINUS: return "M1-";
    case MH_TYPE_M1_PLUS: return "M1+";
    case MH_TYPE_M2_PLUS: return "M2+";
    default: return "degenerate";
  }
}

// "-" means stdout.
bool emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  out.close();
  return bool(out);
}

int load(const std::string& path, Surface& S) {
  mh_surface* raw = nullptr;
  const mh_status st = mh_surface_load(path.c_str(), &raw);
  S.reset(raw);
  return st == MH_OK ? kOk : report(st, path);
}

int cmd_classify(const std::string& file) {
  Surface S;
  if (int rc = load(file, S)) return rc;
  mh_classification c;
  const mh_status st = mh_surface_classify(S.get(), &c);
  if (st == MH_ERR_DEGENERATE) {
    std::printf("type=degenerate reason=%s\n", mh_last_error());
    return kGeometry;
  }
  if (st != MH_OK) return report(st, file);
  std::printf("type=%s eps1=%+d eps2=%+d developable=%s kappa=[%s,%s]\n", type_name(c.type), c.eps1, c.eps2,
              c.developable ? "true" : "false", fmt(c.kappa_min + 0.0).c_str(), fmt(c.kappa_max + 0.0).c_str());
  return kOk;
}

int cmd_frame(const std::string& file, int grid, const std::string& format, const std::string& out) {
  Surface S;
  if (int rc = load(file, S)) return rc;
  mh_classification c;
  if (mh_status st = mh_surface_classify(S.get(), &c); st != MH_OK) return report(st, file);
  char* raw = nullptr;
  const mh_status st = mh_surface_frame_export(S.get(), grid, format == "json" ? MH_FORMAT_JSON : MH_FORMAT_CSV, &raw);
  CString text(raw);
  if (st != MH_OK) return report(st, file);
  if (!emit(out, text.get())) {
    std::cerr << "mannheim: cannot write '" << out << "': " << std::strerror(errno) << "\n";
    return kInput;
  }
  return kOk;
}

int cmd_offset(const std::string& file, const std::string& R, const std::string& theta, const std::string& pairing,
               int grid, const std::string& out) {
  Surface S;
  if (int rc = load(file, S)) return rc;
  mh_offset* raw = nullptr;
  const mh_status st = mh_offset_build(S.get(), R.c_str(), theta.empty() ? nullptr : theta.c_str(), pairing.c_str(), &raw);
  Offset O(raw);
  if (st != MH_OK) return report(st, "offset");
  char* sraw = nullptr;
  if (mh_status s2 = mh_offset_summary_text(O.get(), grid, &sraw); s2 != MH_OK) return report(s2, "offset summary");
  CString summary(sraw);
  char* craw = nullptr;
  if (mh_status s3 = mh_offset_export_csv(O.get(), grid, &craw); s3 != MH_OK) return report(s3, "offset export");
  CString csv(craw);
  if (!out.empty() && !emit(out, csv.get())) {
    std::cerr << "mannheim: cannot write '" << out << "': " << std::strerror(errno) << "\n";
    return kInput;
  }
  std::fputs(summary.get(), stdout);
  return kOk;
}

int cmd_theorems(std::vector<std::string> filter, const std::string& report_path, std::uint64_t seed) {
  if (const char* env = std::getenv("MANNHEIM_SEED"); env && *env) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end || errno) {
      std::cerr << "mannheim: MANNHEIM_SEED must be a non-negative integer\n";
      return kUsage;
    }
    seed = v;
  }
  // --filter accepts comma lists as well as repeats
  std::vector<std::string> ids;
  for (const std::string& f : filter) {
    std::stringstream ss(f);
    for (std::string id; std::getline(ss, id, ',');)
      if (!id.empty()) ids.push_back(id);
  }
  std::vector<const char*> argv;
  for (const std::string& id : ids) argv.push_back(id.c_str());
  char* raw = nullptr;
  int all_pass = 0;
  const mh_status st = mh_run_theorems(argv.data(), argv.size(), seed, &raw, &all_pass);
  CString json(raw);
  if (st == MH_ERR_INVALID_ARGUMENT) {
    std::cerr << "mannheim: " << mh_last_error() << "\n";
    return kUsage;
  }
  if (st != MH_OK) return report(st, "theorems");

  const auto doc = nlohmann::json::parse(json.get());
  int passed = 0;
  for (const auto& c : doc["cases"]) {
    const bool ok = c["verdict"] == "pass";
    passed += ok;
    const auto& r = c["max_residual"];
    std::printf("%-4s %-10s max_residual=%s tol=%s", ok ? "PASS" : "FAIL", c["id"].get<std::string>().c_str(),
                r.is_null() ? "null" : fmt(r.get<double>()).c_str(), fmt(c["tolerance"].get<double>()).c_str());
    if (!ok) std::printf("  %s", c["reason"].get<std::string>().c_str());
    std::printf("\n");
  }
  std::printf("%d/%zu cases passed (seed %llu)\n", passed, doc["cases"].size(), static_cast<unsigned long long>(seed));
  std::fflush(stdout);
  if (!report_path.empty() && !emit(report_path, json.get())) {
    std::cerr << "mannheim: cannot write report '" << report_path << "': " << std::strerror(errno) << "\n";
    return kInput;
  }
  return all_pass ? kOk : kTheorem;
}

int cmd_reparam(const std::string& file, int grid, const std::string& out) {
  Surface S;
  if (int rc = load(file, S)) return rc;
  char* raw = nullptr;
  const mh_status st = mh_surface_reparam_csv(S.get(), grid, &raw);
  CString text(raw);
  if (st != MH_OK) return report(st, file);
  if (!emit(out, text.get())) {
    std::cerr << "mannheim: cannot write '" << out << "'\n";
    return kInput;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruled surfaces in Minkowski 3-space and their Mannheim offsets"};
  app.set_version_flag("--version", std::string("mannheim ") + mh_version());
  app.require_subcommand(1);

  std::string file, out, format = "csv", R = "0", theta, pairing, report_path;
  int grid = 101;
  std::vector<std::string> filter;
  std::uint64_t seed = mh_default_seed();

  auto* classify = app.add_subcommand("classify", "Print type, causal signs, developability and kappa range");
  classify->add_option("file", file, "surface file")->required();

  auto* frame = app.add_subcommand("frame", "Export the Frenet frame on a uniform grid");
  frame->add_option("file", file, "surface file")->required();
  frame->add_option("--grid,-n", grid, "number of grid points")->check(CLI::PositiveNumber);
  frame->add_option("--out", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  frame->add_option("--output,-o", out, "destination file (default stdout)");

  auto* offset = app.add_subcommand("offset", "Build a Mannheim offset and verify it");
  offset->add_option("file", file, "base surface file")->required();
  offset->add_option("--R", R, "offset distance R(s)");
  offset->add_option("--theta", theta, "angle theta(s); omit to solve the developability equation");
  offset->add_option("--pairing", pairing, "eq11, eq12 or eq13")->required()->check(CLI::IsMember({"eq11", "eq12", "eq13"}));
  offset->add_option("--grid,-n", grid, "grid points for summary and export")->check(CLI::Range(2, 10000000));
  offset->add_option("--out", out, "write s,c1,c2,c3,q1,q2,q3 rows here");

  auto* theorems = app.add_subcommand("theorems", "Run the verification suite");
  theorems->add_option("--filter", filter, "case ids (comma separated or repeated)");
  theorems->add_option("--report", report_path, "write the JSON report here");
  theorems->add_option("--seed", seed, "RNG seed (MANNHEIM_SEED overrides)");

  auto* reparam = app.add_subcommand("reparam", "Arclength reparametrisation of the striction curve");
  reparam->add_option("file", file, "surface file")->required();
  reparam->add_option("--grid,-n", grid, "number of knots")->check(CLI::Range(2, 10000000));
  reparam->add_option("--output,-o", out, "destination file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*classify) return cmd_classify(file);
  if (*frame) return cmd_frame(file, grid, format, out);
  if (*offset) return cmd_offset(file, R, theta, pairing, grid, out);
  if (*theorems) return cmd_theorems(filter, report_path, seed);
  if (*reparam) return cmd_reparam(file, grid, out);
  return kUsage;
}
