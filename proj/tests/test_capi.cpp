#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "mannheim/mannheim.h"

namespace {

const char* kHelicoid = "k = (0, 0, s)\nq = (cosh(s), sinh(s), 0)\ndomain = [-1, 1]\n";
const char* kCone =
    "k = (s*cosh(1), sinh(1)*sin(s), -sinh(1)*cos(s))\nq = (cosh(1), sinh(1)*cos(s), sinh(1)*sin(s))\n"
    "domain = [0, 1]\n";

mh_surface* parse(const char* text) {
  mh_surface* s = nullptr;
  EXPECT_EQ(mh_surface_parse(text, &s), MH_OK) << mh_last_error();
  return s;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(mh_version(), "1.0.0");
  EXPECT_STREQ(mh_status_name(MH_OK), "ok");
  EXPECT_STREQ(mh_status_name(MH_ERR_PAIRING_MISMATCH), "pairing mismatch");
}

TEST(CApi, ClassifyHelicoid) {
  mh_surface* s = parse(kHelicoid);
  mh_classification c;
  ASSERT_EQ(mh_surface_classify(s, &c), MH_OK);
  EXPECT_EQ(c.type, MH_TYPE_M1_MINUS);
  EXPECT_EQ(c.eps1, 1);
  EXPECT_EQ(c.eps2, -1);
  EXPECT_FALSE(c.developable);
  EXPECT_NEAR(c.max_abs_drall, 1.0, 1e-10);
  EXPECT_EQ(c.kappa_min, 0.0);
  EXPECT_EQ(c.kappa_max, 0.0);
  double lo, hi;
  ASSERT_EQ(mh_surface_domain(s, &lo, &hi), MH_OK);
  EXPECT_EQ(lo, -1.0);
  EXPECT_EQ(hi, 1.0);
  mh_surface_free(s);
}

TEST(CApi, DegenerateReportsReason) {
  mh_surface* s = parse("k = (0, s, 0)\nq = (1, 0, 0)\ndomain = [0, 1]\n");
  mh_classification c;
  EXPECT_EQ(mh_surface_classify(s, &c), MH_ERR_DEGENERATE);
  EXPECT_EQ(c.type, MH_TYPE_DEGENERATE);
  EXPECT_GT(std::strlen(mh_last_error()), 0u);
  mh_surface_free(s);
}

TEST(CApi, ParseErrorsAndNulls) {
  mh_surface* s = reinterpret_cast<mh_surface*>(1);
  EXPECT_EQ(mh_surface_parse("k = (0, 0, s)\ndomain = [0, 1]\n", &s), MH_ERR_PARSE);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(mh_last_error()).find("'q'"), std::string::npos);
  EXPECT_EQ(mh_surface_parse(nullptr, &s), MH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mh_surface_load("/nonexistent/x.surf", &s), MH_ERR_IO);
  mh_surface_free(nullptr);
  mh_offset_free(nullptr);
  mh_string_free(nullptr);
}

TEST(CApi, FrameExportMatchesRows) {
  mh_surface* s = parse(kCone);
  const int n = 11;
  std::vector<double> rows(13 * n);
  ASSERT_EQ(mh_surface_frame_rows(s, n, rows.data()), MH_OK);
  char* csv = nullptr;
  ASSERT_EQ(mh_surface_frame_export(s, n, MH_FORMAT_CSV, &csv), MH_OK);
  // first data row, first and last field
  const std::string text(csv);
  const std::string row1 = text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1) - text.find('\n') - 1);
  EXPECT_EQ(std::strtod(row1.c_str(), nullptr), rows[0]);
  EXPECT_EQ(std::strtod(row1.substr(row1.rfind(',') + 1).c_str(), nullptr), rows[12]);
  EXPECT_NEAR(rows[11], std::cosh(1.0) / std::sinh(1.0), 1e-8);  // kappa of the cone
  mh_string_free(csv);
  char* bad = nullptr;
  EXPECT_EQ(mh_surface_frame_export(s, 0, MH_FORMAT_CSV, &bad), MH_ERR_INVALID_ARGUMENT);
  mh_surface_free(s);
}

TEST(CApi, OffsetBuildAndSummary) {
  mh_surface* s = parse(kCone);
  mh_offset* o = nullptr;
  ASSERT_EQ(mh_offset_build(s, "1", "1.8 - sinh(1)*s", "eq12", &o), MH_OK) << mh_last_error();
  mh_surface_free(s);  // the offset keeps its base alive
  mh_offset_summary sum;
  ASSERT_EQ(mh_offset_summarize(o, 65, &sum), MH_OK);
  EXPECT_TRUE(sum.mannheim_ok);
  EXPECT_LT(sum.max_h_deviation, 1e-6);
  EXPECT_EQ(sum.excluded_count, 0u);
  EXPECT_EQ(sum.grid_points, 65);
  double lo, hi;
  EXPECT_EQ(mh_offset_excluded(o, 0, &lo, &hi), MH_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  ASSERT_EQ(mh_offset_export_csv(o, 3, &csv), MH_OK);
  EXPECT_EQ(std::string(csv).substr(0, 20), "s,c1,c2,c3,q1,q2,q3\n");
  mh_string_free(csv);
  mh_offset_free(o);
}

TEST(CApi, OffsetErrors) {
  mh_surface* s = parse(kCone);
  mh_offset* o = nullptr;
  EXPECT_EQ(mh_offset_build(s, "1", "0", "eq13", &o), MH_ERR_PAIRING_MISMATCH);
  EXPECT_EQ(o, nullptr);
  EXPECT_EQ(mh_offset_build(s, "1", "0", "eq7", &o), MH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mh_offset_build(s, "1 +", "0", "eq12", &o), MH_ERR_PARSE);
  // |R kappa ds1/ds| = 0.1 cosh(1) < 1 everywhere: eq11 has no real theta
  EXPECT_EQ(mh_offset_build(s, "0.1", nullptr, "eq11", &o), MH_ERR_NO_REAL_SOLUTION);
  mh_surface_free(s);
}

TEST(CApi, TheoremsFilteredAndUnknown) {
  char* json = nullptr;
  int all = 0;
  const char* ids[] = {"thm-3.1"};
  ASSERT_EQ(mh_run_theorems(ids, 1, mh_default_seed(), &json, &all), MH_OK);
  EXPECT_EQ(all, 1);
  EXPECT_NE(std::string(json).find("\"thm-3.1\""), std::string::npos);
  mh_string_free(json);
  const char* bad[] = {"nope"};
  EXPECT_EQ(mh_run_theorems(bad, 1, 1, &json, &all), MH_ERR_INVALID_ARGUMENT);
  char* list = nullptr;
  ASSERT_EQ(mh_theorem_ids(&list), MH_OK);
  EXPECT_EQ(std::count(list, list + std::strlen(list), '\n'), 13);
  mh_string_free(list);
}

TEST(CApi, LastErrorIsPerThread) {
  mh_surface* s = nullptr;
  ASSERT_EQ(mh_surface_parse("nonsense", &s), MH_ERR_PARSE);
  std::string other;
  std::thread([&] { other = mh_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(mh_last_error()), "");
}
