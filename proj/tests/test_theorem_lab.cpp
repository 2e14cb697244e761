#include <gtest/gtest.h>

#include <set>

#include "error.hpp"
#include "theorem_lab.hpp"

using namespace mannheim;

TEST(Registry, ThirteenUniqueIds) {
  const auto& ids = case_ids();
  EXPECT_EQ(ids.size(), 13u);
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
  for (const std::string& id : ids) EXPECT_EQ(canonical_case_id(id), id);
}

TEST(Registry, Aliases) {
  EXPECT_EQ(canonical_case_id("frame-5"), "frame-5-7");
  EXPECT_EQ(canonical_case_id("frame-7"), "frame-5-7");
  EXPECT_EQ(canonical_case_id("thm-5.1-i"), "thm-5.1");
  EXPECT_EQ(canonical_case_id("thm-5.1-ii"), "thm-5.1");
  EXPECT_FALSE(canonical_case_id("thm-9.9"));
}

TEST(Suite, FilterSelectsOne) {
  const auto r = run_suite({"thm-5.2"});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].id, "thm-5.2");
  EXPECT_TRUE(r[0].pass) << r[0].reason;
}

TEST(Suite, FilterKeepsRegistryOrderAndDedups) {
  const auto r = run_suite({"eq-25", "thm-3.1", "eq-25"}, {kDefaultSeed, false});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, "thm-3.1");
  EXPECT_EQ(r[1].id, "eq-25");
}

TEST(Suite, UnknownIdThrows) {
  try {
    run_suite({"thm-3.1", "nope"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Suite, SeededCaseIsDeterministic) {
  const CaseReport a = run_case("lemma-2.1", {7, false});
  const CaseReport b = run_case("lemma-2.1", {7, false});
  EXPECT_EQ(a.max_residual, b.max_residual);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].value, b.checks[i].value);
}

TEST(Suite, ParallelMatchesSerial) {
  const auto p = run_suite({}, {kDefaultSeed, true});
  const auto s = run_suite({}, {kDefaultSeed, false});
  ASSERT_EQ(p.size(), s.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p[i].id, s[i].id);
    EXPECT_EQ(p[i].max_residual, s[i].max_residual);
  }
}

TEST(Suite, AllCasesPass) {
  const auto r = run_suite();
  ASSERT_EQ(r.size(), 13u);
  for (const CaseReport& c : r) {
    EXPECT_TRUE(c.pass) << c.id << ": " << c.reason;
    EXPECT_FALSE(c.checks.empty()) << c.id;
    for (const CheckResult& k : c.checks) EXPECT_EQ(k.pass, k.value <= k.tolerance) << c.id << " " << k.name;
  }
}
