#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace mannheim {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view v, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < v.size() && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
  std::size_t b = v.size();
  while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
  if (lead) *lead = a;
  return v.substr(a, b - a);
}

struct Field {
  std::string value;
  int line = 0;
  int column = 0;  // of the first value character
};

[[noreturn]] void fail_at(const std::string& msg, int line, int column) { throw ParseError(msg, 0, {}, line, column); }

// Constant real expression (may use pi, e, functions); s is not allowed.
double constant_value(std::string_view text, int line, int column) {
  Expr e;
  try {
    e = parse_expr(text);
  } catch (const ParseError& p) {
    throw ParseError(p.message(), p.offset(), p.expected(), line, column + static_cast<int>(p.offset()));
  }
  if (e.depends_on_s()) fail_at("expected a constant, found an expression in s", line, column);
  try {
    return e.eval(0.0);
  } catch (const Error& err) {
    fail_at(err.what(), line, column);
  }
}

void check_curve(const Field& f) {
  try {
    parse_curve_components(f.value);
  } catch (const ParseError& p) {
    throw ParseError(p.message(), p.offset(), p.expected(), f.line, f.column + static_cast<int>(p.offset()));
  }
}

void check_expr(const Field& f) {
  try {
    parse_expr(f.value);
  } catch (const ParseError& p) {
    throw ParseError(p.message(), p.offset(), p.expected(), f.line, f.column + static_cast<int>(p.offset()));
  }
}

Interval parse_domain(const Field& f) {
  const std::string_view v = f.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail_at("domain must look like [lo, hi]", f.line, f.column);
  const std::string_view inner = v.substr(1, v.size() - 2);
  int depth = 0;
  std::size_t comma = std::string_view::npos;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) {
      if (comma != std::string_view::npos) fail_at("domain takes exactly two bounds", f.line, f.column + 1 + int(i));
      comma = i;
    }
  }
  if (comma == std::string_view::npos) fail_at("domain takes exactly two bounds", f.line, f.column);
  std::size_t lead = 0;
  const std::string_view a = trim(inner.substr(0, comma), &lead);
  const double lo = constant_value(a, f.line, f.column + 1 + int(lead));
  const std::string_view rest = inner.substr(comma + 1);
  const std::string_view b = trim(rest, &lead);
  const double hi = constant_value(b, f.line, f.column + 2 + int(comma + lead));
  if (!(lo < hi)) fail_at("domain needs lo < hi", f.line, f.column);
  return {lo, hi};
}

LVec3 constant_vector(const std::string& text) {
  const auto c = parse_curve_components(text);
  for (const Expr& e : c)
    if (e.depends_on_s()) throw Error(ErrorKind::InvalidArgument, "frame vectors must be constant: " + text);
  return {c[0].eval(0.0), c[1].eval(0.0), c[2].eval(0.0)};
}

std::optional<SurfaceTag> parse_type(std::string_view v) {
  if (v == "M1-") return SurfaceTag::M1Minus;
  if (v == "M1+") return SurfaceTag::M1Plus;
  if (v == "M2+") return SurfaceTag::M2Plus;
  return std::nullopt;
}

FrameSeed default_seed(SurfaceTag t) {
  switch (t) {
    case SurfaceTag::M1Plus: return {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    case SurfaceTag::M2Plus: return {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}};
    default: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  }
}

double json_number(const ojson& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

ojson json_number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SurfaceFile parse_surface_file(std::string_view text) {
  std::map<std::string, Field> fields;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view line = trim(raw, &lead);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail_at("expected 'key = value'", line_no, int(lead) + 1);
    const std::string key(trim(line.substr(0, eq)));
    static const char* known[] = {"k", "q", "domain", "samples", "synthesize", "kappa",
                                  "ds1_ds", "step", "q0", "h0", "a0", "c0"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      fail_at("unknown key '" + key + "'", line_no, int(lead) + 1);
    if (fields.count(key)) fail_at("duplicate key '" + key + "'", line_no, int(lead) + 1);
    std::size_t vlead = 0;
    const std::string_view value = trim(line.substr(eq + 1), &vlead);
    const int vcol = int(lead + eq + 1 + vlead) + 1;
    if (value.empty()) fail_at("missing value for '" + key + "'", line_no, vcol);
    fields[key] = {std::string(value), line_no, vcol};
  }
  const int eof_line = std::max(1, line_no);
  auto require = [&](const char* key) -> const Field& {
    auto it = fields.find(key);
    if (it == fields.end()) fail_at(std::string("missing required key '") + key + "'", eof_line, 1);
    return it->second;
  };

  SurfaceFile f;
  f.kind = fields.count("synthesize") ? SurfaceFile::Kind::Recipe : SurfaceFile::Kind::Analytic;
  const char* other_form[] = {"synthesize", "kappa", "ds1_ds", "step", "q0", "h0", "a0", "c0"};
  if (f.kind == SurfaceFile::Kind::Analytic) {
    for (const char* k : other_form)
      if (auto it = fields.find(k); it != fields.end())
        fail_at(std::string("key '") + k + "' needs 'synthesize ='", it->second.line, it->second.column);
    const Field& k = require("k");
    check_curve(k);
    f.k = k.value;
    const Field& q = require("q");
    check_curve(q);
    f.q = q.value;
  } else {
    for (const char* k : {"k", "q"})
      if (auto it = fields.find(k); it != fields.end())
        fail_at(std::string("key '") + k + "' cannot be combined with 'synthesize'", it->second.line, it->second.column);
    const Field& t = require("synthesize");
    const auto type = parse_type(t.value);
    if (!type) fail_at("synthesize must be M1-, M1+ or M2+", t.line, t.column);
    f.type = *type;
    const Field& kappa = require("kappa");
    check_expr(kappa);
    f.kappa = kappa.value;
    if (auto it = fields.find("ds1_ds"); it != fields.end()) {
      check_expr(it->second);
      f.ds1_ds = it->second.value;
    }
    if (auto it = fields.find("step"); it != fields.end()) {
      f.step = constant_value(it->second.value, it->second.line, it->second.column);
      if (!(f.step > 0)) fail_at("step must be positive", it->second.line, it->second.column);
    }
    for (auto [key, slot] : {std::pair{"q0", &f.q0}, {"h0", &f.h0}, {"a0", &f.a0}, {"c0", &f.c0}}) {
      if (auto it = fields.find(key); it != fields.end()) {
        check_curve(it->second);
        *slot = it->second.value;
      }
    }
  }
  f.domain = parse_domain(require("domain"));
  if (auto it = fields.find("samples"); it != fields.end()) {
    const double n = constant_value(it->second.value, it->second.line, it->second.column);
    if (!(n >= 2 && n <= 1e7 && n == std::floor(n))) fail_at("samples must be an integer >= 2", it->second.line, it->second.column);
    f.samples = static_cast<int>(n);
  }
  return f;
}

SurfaceFile load_surface_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_surface_file(ss.str());
}

std::string write_surface_file(const SurfaceFile& f) {
  std::ostringstream os;
  if (f.kind == SurfaceFile::Kind::Analytic) {
    os << "k = " << f.k << "\n";
    os << "q = " << f.q << "\n";
  } else {
    os << "synthesize = " << short_name(f.type) << "\n";
    os << "kappa = " << f.kappa << "\n";
    os << "ds1_ds = " << f.ds1_ds << "\n";
    os << "step = " << format_double(f.step) << "\n";
    for (auto [key, v] : {std::pair{"q0", &f.q0}, {"h0", &f.h0}, {"a0", &f.a0}, {"c0", &f.c0}})
      if (*v) os << key << " = " << **v << "\n";
  }
  os << "domain = [" << format_double(f.domain.lo) << ", " << format_double(f.domain.hi) << "]\n";
  os << "samples = " << f.samples << "\n";
  return os.str();
}

SurfacePtr build_surface(const SurfaceFile& f) {
  if (f.kind == SurfaceFile::Kind::Analytic)
    return std::make_shared<const AnalyticSurface>(parse_curve(f.k, f.domain), parse_curve(f.q, f.domain), f.samples);
  FrameRecipe r;
  r.type = f.type;
  r.kappa = parse_expr(f.kappa);
  r.ds1_ds = parse_expr(f.ds1_ds);
  r.domain = f.domain;
  r.step = f.step;
  r.frame0 = default_seed(f.type);
  if (f.q0) r.frame0.q = constant_vector(*f.q0);
  if (f.h0) r.frame0.h = constant_vector(*f.h0);
  if (f.a0) r.frame0.a = constant_vector(*f.a0);
  if (f.c0) r.c0 = constant_vector(*f.c0);
  auto s = integrate_frame(r);
  const_cast<SampledFrameSurface&>(*s).set_samples(f.samples);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<FrameRow> frame_grid(const RuledSurface& S, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
  std::vector<FrameRow> rows;
  for (double s : S.domain().grid(n)) {
    const FrameSample f = S.frame(s);
    rows.push_back({s, f.q, f.h, f.a, f.ds1_ds, f.kappa, drall(S, s)});
  }
  return rows;
}

std::string frame_csv(const std::vector<FrameRow>& rows) {
  std::string out = std::string(kFrameColumns) + "\n";
  for (const FrameRow& r : rows) {
    const double v[] = {r.s,   r.q.x1, r.q.x2, r.q.x3, r.h.x1,   r.h.x2,  r.h.x3,
                        r.a.x1, r.a.x2, r.a.x3, r.ds1_ds, r.kappa, r.drall};
    for (std::size_t i = 0; i < std::size(v); ++i) {
      if (i) out += ',';
      out += format_double(v[i]);
    }
    out += '\n';
  }
  return out;
}

std::string frame_json(const std::vector<FrameRow>& rows) {
  ojson arr = ojson::array();
  for (const FrameRow& r : rows) {
    ojson o;
    o["s"] = r.s;
    o["q1"] = r.q.x1, o["q2"] = r.q.x2, o["q3"] = r.q.x3;
    o["h1"] = r.h.x1, o["h2"] = r.h.x2, o["h3"] = r.h.x3;
    o["a1"] = r.a.x1, o["a2"] = r.a.x2, o["a3"] = r.a.x3;
    o["ds1_ds"] = r.ds1_ds;
    o["kappa"] = r.kappa;
    o["drall"] = r.drall;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::vector<FrameRow> parse_frame_csv(std::string_view text) {
  std::vector<FrameRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kFrameColumns)
    throw ParseError("frame CSV header must be " + std::string(kFrameColumns), 0, {}, 1, 1);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v[13];
    const char* p = line.c_str();
    for (int i = 0; i < 13; ++i) {
      const auto [end, ec] = std::from_chars(p, line.c_str() + line.size(), v[i]);
      if (ec != std::errc()) fail_at("bad number", line_no, int(p - line.c_str()) + 1);
      p = end;
      if (i < 12) {
        if (*p != ',') fail_at("expected ','", line_no, int(p - line.c_str()) + 1);
        ++p;
      }
    }
    if (*p != '\0') fail_at("trailing characters", line_no, int(p - line.c_str()) + 1);
    rows.push_back({v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6]}, {v[7], v[8], v[9]}, v[10], v[11], v[12]});
  }
  return rows;
}

std::vector<FrameRow> parse_frame_json(std::string_view text) {
  ojson arr;
  try {
    arr = ojson::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 0);
  }
  if (!arr.is_array()) throw ParseError("frame JSON must be an array", 0);
  std::vector<FrameRow> rows;
  try {
    for (const ojson& o : arr) {
      FrameRow r;
      r.s = json_number(o.at("s"));
      r.q = {json_number(o.at("q1")), json_number(o.at("q2")), json_number(o.at("q3"))};
      r.h = {json_number(o.at("h1")), json_number(o.at("h2")), json_number(o.at("h3"))};
      r.a = {json_number(o.at("a1")), json_number(o.at("a2")), json_number(o.at("a3"))};
      r.ds1_ds = json_number(o.at("ds1_ds"));
      r.kappa = json_number(o.at("kappa"));
      r.drall = json_number(o.at("drall"));
      rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

bool excluded(const std::vector<Interval>& ex, double s) {
  for (const Interval& iv : ex)
    if (iv.contains(s)) return true;
  return false;
}

}  // namespace

OffsetSummary summarize_offset(const Offset& o, int n) {
  OffsetSummary sum;
  sum.excluded = o.excluded;
  sum.mannheim = mannheim_condition_check(*o.spec.base, *o.surface, 1e-6, n);
  sum.offset_type = classify_surface(*o.surface);
  for (double s : o.surface->domain().grid(n)) {
    if (excluded(o.excluded, s)) continue;
    ++sum.grid;
    const double d = std::abs(drall(*o.surface, s));
    if (!(d <= sum.max_offset_drall)) {
      sum.max_offset_drall = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
      sum.argmax_s = s;
    }
  }
  return sum;
}

std::string offset_summary_text(const OffsetSummary& s) {
  std::ostringstream os;
  os << "mannheim=" << (s.mannheim.ok ? "true" : "false") << " max_h_deviation=" << format_double(s.mannheim.max_deviation)
     << "\n";
  os << "offset_type=" << short_name(s.offset_type.tag);
  if (s.offset_type.degenerate()) os << " (" << s.offset_type.reason << ")";
  os << "\n";
  os << "max_offset_drall=" << format_double(s.max_offset_drall);
  if (s.argmax_s) os << " at s=" << format_double(*s.argmax_s);
  os << "\n";
  os << "excluded=";
  if (s.excluded.empty()) os << "none";
  for (std::size_t i = 0; i < s.excluded.size(); ++i)
    os << (i ? " " : "") << "[" << format_double(s.excluded[i].lo) << ", " << format_double(s.excluded[i].hi) << "]";
  os << "\n";
  return os.str();
}

std::string offset_csv(const Offset& o, int n) {
  std::string out = "s,c1,c2,c3,q1,q2,q3\n";
  for (double s : o.surface->domain().grid(n)) {
    if (excluded(o.excluded, s)) continue;
    const LVec3 c = o.surface->base_point(s), q = o.surface->director(s);
    for (double v : {s, c.x1, c.x2, c.x3, q.x1, q.x2}) out += format_double(v) + ",";
    out += format_double(q.x3) + "\n";
  }
  return out;
}

std::string reparam_csv(const ArclengthTable& t) {
  std::string out = "t,s\n";
  for (std::size_t i = 0; i < t.t.size(); ++i) out += format_double(t.t[i]) + "," + format_double(t.s[i]) + "\n";
  return out;
}

std::string report_json(const std::vector<CaseReport>& cases, std::uint64_t seed) {
  ojson root;
  root["suite_version"] = kSuiteVersion;
  root["seed"] = seed;
  ojson arr = ojson::array();
  for (const CaseReport& c : cases) {
    ojson o;
    o["id"] = c.id;
    o["verdict"] = c.pass ? "pass" : "fail";
    o["max_residual"] = json_number_or_null(c.max_residual);
    o["argmax_s"] = c.argmax_s ? ojson(*c.argmax_s) : ojson(nullptr);
    ojson ex = ojson::array();
    for (const Interval& iv : c.excluded) ex.push_back({iv.lo, iv.hi});
    o["excluded_intervals"] = std::move(ex);
    ojson params = ojson::object();
    for (const auto& [k, v] : c.params)
      std::visit([&](const auto& x) { params[k] = x; }, v);
    o["params"] = std::move(params);
    o["tolerance"] = c.tolerance;
    ojson checks = ojson::array();
    for (const CheckResult& r : c.checks) {
      ojson ck;
      ck["name"] = r.name;
      ck["value"] = json_number_or_null(r.value);
      ck["tolerance"] = r.tolerance;
      ck["pass"] = r.pass;
      ck["argmax_s"] = r.argmax_s ? ojson(*r.argmax_s) : ojson(nullptr);
      checks.push_back(std::move(ck));
    }
    o["checks"] = std::move(checks);
    o["reason"] = c.reason;
    arr.push_back(std::move(o));
  }
  root["cases"] = std::move(arr);
  return root.dump(2) + "\n";
}

}  // namespace mannheim
