#include "mannheim/mannheim.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "error.hpp"
#include "io.hpp"
#include "offset.hpp"
#include "theorem_lab.hpp"

struct mh_surface {
  mannheim::SurfacePtr S;
};

struct mh_offset {
  mannheim::Offset o;
};

namespace {

using namespace mannheim;

thread_local std::string g_last_error;

mh_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return MH_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return MH_ERR_PARSE;
    case ErrorKind::Domain: return MH_ERR_DOMAIN;
    case ErrorKind::NullVector: return MH_ERR_NULL_VECTOR;
    case ErrorKind::Degenerate: return MH_ERR_DEGENERATE;
    case ErrorKind::PairingMismatch: return MH_ERR_PAIRING_MISMATCH;
    case ErrorKind::NoRealSolution: return MH_ERR_NO_REAL_SOLUTION;
    case ErrorKind::DivisionByZero: return MH_ERR_DIVISION_BY_ZERO;
    case ErrorKind::Convergence: return MH_ERR_CONVERGENCE;
    case ErrorKind::Io: return MH_ERR_IO;
  }
  return MH_ERR_INTERNAL;
}

mh_status fail(mh_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs f, translating exceptions to status codes.
template <class F>
mh_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MH_ERR_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

mh_surface_type type_of(SurfaceTag t) {
  switch (t) {
    case SurfaceTag::M1Minus: return MH_TYPE_M1_MINUS;
    case SurfaceTag::M1Plus: return MH_TYPE_M1_PLUS;
    case SurfaceTag::M2Plus: return MH_TYPE_M2_PLUS;
    default: return MH_TYPE_DEGENERATE;
  }
}

#define MH_REQUIRE(cond, what) \
  if (!(cond)) return fail(MH_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* mh_version(void) { return "1.0.0"; }

const char* mh_status_name(mh_status s) {
  switch (s) {
    case MH_OK: return "ok";
    case MH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MH_ERR_PARSE: return "parse error";
    case MH_ERR_DOMAIN: return "domain error";
    case MH_ERR_NULL_VECTOR: return "null vector";
    case MH_ERR_DEGENERATE: return "degenerate";
    case MH_ERR_PAIRING_MISMATCH: return "pairing mismatch";
    case MH_ERR_NO_REAL_SOLUTION: return "no real solution";
    case MH_ERR_DIVISION_BY_ZERO: return "division by zero";
    case MH_ERR_CONVERGENCE: return "convergence failure";
    case MH_ERR_IO: return "i/o error";
    case MH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mh_last_error(void) { return g_last_error.c_str(); }

void mh_string_free(char* s) { std::free(s); }

mh_status mh_surface_load(const char* path, mh_surface** out) {
  return guarded([&] {
    MH_REQUIRE(path && out, "null argument");
    *out = nullptr;
    auto S = build_surface(load_surface_file(path));
    *out = new mh_surface{std::move(S)};
    return MH_OK;
  });
}

mh_status mh_surface_parse(const char* text, mh_surface** out) {
  return guarded([&] {
    MH_REQUIRE(text && out, "null argument");
    *out = nullptr;
    auto S = build_surface(parse_surface_file(text));
    *out = new mh_surface{std::move(S)};
    return MH_OK;
  });
}

void mh_surface_free(mh_surface* s) { delete s; }

mh_status mh_surface_domain(const mh_surface* s, double* lo, double* hi) {
  return guarded([&] {
    MH_REQUIRE(s && lo && hi, "null argument");
    *lo = s->S->domain().lo;
    *hi = s->S->domain().hi;
    return MH_OK;
  });
}

mh_status mh_surface_classify(const mh_surface* s, mh_classification* out) {
  return guarded([&] {
    MH_REQUIRE(s && out, "null argument");
    *out = mh_classification{};
    const SurfaceType t = classify_surface(*s->S);
    out->type = type_of(t.tag);
    if (t.degenerate()) return fail(MH_ERR_DEGENERATE, t.reason);
    out->eps1 = eps1_of(t.tag);
    out->eps2 = eps2_of(t.tag);
    const StrictionData sd = striction_data(*s->S);
    out->developable = sd.developable;
    out->max_abs_drall = sd.max_abs_drall;
    out->kappa_min = std::numeric_limits<double>::infinity();
    out->kappa_max = -out->kappa_min;
    for (double x : s->S->domain().grid(s->S->samples())) {
      const double k = s->S->frame(x).kappa;
      out->kappa_min = std::min(out->kappa_min, k);
      out->kappa_max = std::max(out->kappa_max, k);
    }
    return MH_OK;
  });
}

mh_status mh_surface_frame_export(const mh_surface* s, int n, mh_format fmt, char** out) {
  return guarded([&] {
    MH_REQUIRE(s && out, "null argument");
    MH_REQUIRE(n >= 1, "grid needs at least one point");
    MH_REQUIRE(fmt == MH_FORMAT_CSV || fmt == MH_FORMAT_JSON, "unknown format");
    const auto rows = frame_grid(*s->S, n);
    *out = dup(fmt == MH_FORMAT_CSV ? frame_csv(rows) : frame_json(rows));
    return MH_OK;
  });
}

mh_status mh_surface_frame_rows(const mh_surface* s, int n, double* rows) {
  return guarded([&] {
    MH_REQUIRE(s && rows, "null argument");
    MH_REQUIRE(n >= 1, "grid needs at least one point");
    double* p = rows;
    for (const FrameRow& r : frame_grid(*s->S, n)) {
      for (double v : {r.s, r.q.x1, r.q.x2, r.q.x3, r.h.x1, r.h.x2, r.h.x3, r.a.x1, r.a.x2, r.a.x3, r.ds1_ds, r.kappa,
                       r.drall})
        *p++ = v;
    }
    return MH_OK;
  });
}

mh_status mh_surface_reparam_csv(const mh_surface* s, int n, char** out) {
  return guarded([&] {
    MH_REQUIRE(s && out, "null argument");
    MH_REQUIRE(n >= 2, "reparametrisation needs at least two knots");
    *out = dup(reparam_csv(arclength_reparametrization(*s->S, n)));
    return MH_OK;
  });
}

mh_status mh_offset_build(const mh_surface* base, const char* R, const char* theta, const char* pairing,
                          mh_offset** out) {
  return guarded([&] {
    MH_REQUIRE(base && R && pairing && out, "null argument");
    *out = nullptr;
    const auto p = parse_pairing(pairing);
    if (!p) return fail(MH_ERR_INVALID_ARGUMENT, std::string("unknown pairing '") + pairing + "' (eq11, eq12, eq13)");
    OffsetSpec spec;
    spec.base = base->S;
    spec.R = parse_expr(R);
    if (theta) spec.theta = parse_expr(theta);
    spec.pairing = *p;
    auto o = build_offset(spec);
    *out = new mh_offset{std::move(o)};
    return MH_OK;
  });
}

void mh_offset_free(mh_offset* o) { delete o; }

mh_status mh_offset_summarize(const mh_offset* o, int n, mh_offset_summary* out) {
  return guarded([&] {
    MH_REQUIRE(o && out, "null argument");
    MH_REQUIRE(n >= 2, "grid needs at least two points");
    const OffsetSummary s = summarize_offset(o->o, n);
    *out = mh_offset_summary{};
    out->mannheim_ok = s.mannheim.ok;
    out->max_h_deviation = s.mannheim.max_deviation;
    out->offset_type = type_of(s.offset_type.tag);
    out->max_offset_drall = s.max_offset_drall;
    out->has_argmax = s.argmax_s.has_value();
    out->argmax_s = s.argmax_s.value_or(0.0);
    out->excluded_count = s.excluded.size();
    out->grid_points = s.grid;
    return MH_OK;
  });
}

mh_status mh_offset_excluded(const mh_offset* o, size_t i, double* lo, double* hi) {
  return guarded([&] {
    MH_REQUIRE(o && lo && hi, "null argument");
    MH_REQUIRE(i < o->o.excluded.size(), "excluded interval index out of range");
    *lo = o->o.excluded[i].lo;
    *hi = o->o.excluded[i].hi;
    return MH_OK;
  });
}

mh_status mh_offset_summary_text(const mh_offset* o, int n, char** out) {
  return guarded([&] {
    MH_REQUIRE(o && out, "null argument");
    MH_REQUIRE(n >= 2, "grid needs at least two points");
    *out = dup(offset_summary_text(summarize_offset(o->o, n)));
    return MH_OK;
  });
}

mh_status mh_offset_export_csv(const mh_offset* o, int n, char** out) {
  return guarded([&] {
    MH_REQUIRE(o && out, "null argument");
    MH_REQUIRE(n >= 1, "grid needs at least one point");
    *out = dup(offset_csv(o->o, n));
    return MH_OK;
  });
}

mh_status mh_theorem_ids(char** out) {
  return guarded([&] {
    MH_REQUIRE(out, "null argument");
    std::string s;
    for (const std::string& id : case_ids()) s += id + "\n";
    *out = dup(s);
    return MH_OK;
  });
}

mh_status mh_run_theorems(const char* const* ids, size_t count, uint64_t seed, char** report_json_out, int* all_pass) {
  return guarded([&] {
    MH_REQUIRE(report_json_out, "null argument");
    MH_REQUIRE(count == 0 || ids, "null id list");
    *report_json_out = nullptr;
    std::vector<std::string> filter;
    for (size_t i = 0; i < count; ++i) {
      MH_REQUIRE(ids[i], "null id");
      filter.emplace_back(ids[i]);
    }
    SuiteOptions opts;
    opts.seed = seed;
    const auto reports = run_suite(filter, opts);
    bool pass = true;
    for (const CaseReport& r : reports) pass = pass && r.pass;
    if (all_pass) *all_pass = pass;
    *report_json_out = dup(report_json(reports, seed));
    return MH_OK;
  });
}

uint64_t mh_default_seed(void) { return kDefaultSeed; }

}  // extern "C"
