#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cpc/report.hpp"
#include "json.hpp"

using namespace cpc;

TEST(Report, EntryVerdicts) {
  EXPECT_TRUE(AuditEntry::below("s", "a", "", 1e-12, 1e-10, Provenance::kTrivial).pass);
  EXPECT_FALSE(AuditEntry::below("s", "a", "", 1e-9, 1e-10, Provenance::kTrivial).pass);
  EXPECT_FALSE(AuditEntry::below("s", "a", "", std::nan(""), 1e-10, Provenance::kTrivial).pass);
  EXPECT_TRUE(AuditEntry::above("s", "a", "", 0.5, 0.1, Provenance::kTrivial).pass);
  EXPECT_FALSE(AuditEntry::above("s", "a", "", std::nan(""), 0.1, Provenance::kTrivial).pass);

  AuditEntry f = AuditEntry::below("s", "a", "", 1.0, 1e-10, Provenance::kPublished);
  EXPECT_STREQ(f.status(), "fail");
  f.informational("why");
  EXPECT_STREQ(f.status(), "finding");
  EXPECT_EQ(f.note, "why");
  EXPECT_STREQ(AuditEntry::info("s", "a", "", 3.0).status(), "info");
}

TEST(Report, PassedIgnoresNonGating) {
  AuditReport r;
  r.add(AuditEntry::below("s", "ok", "", 0.0, 1.0, Provenance::kDerived));
  r.add(AuditEntry::below("s", "bad", "", 2.0, 1.0, Provenance::kDerived).informational());
  EXPECT_TRUE(r.passed());
  r.add(AuditEntry::below("s", "worse", "", 2.0, 1.0, Provenance::kDerived));
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("nope"), nullptr);
  EXPECT_THROW(r.at("nope"), std::out_of_range);
}

TEST(Report, MaxResidualIsNaNSticky) {
  MaxResidual m;
  m.update(-0.5);
  m.update(0.25);
  EXPECT_EQ(m.value(), 0.5);
  m.update(std::nan(""));
  m.update(10.0);
  EXPECT_TRUE(std::isnan(m.value()));
}

TEST(Report, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Report, JsonShape) {
  AuditReport r;
  r.title = "t";
  r.metadata = {"verify", "m", 7, 10, {{"tol", "1e-09"}}};
  r.notes.push_back("n");
  r.add(AuditEntry::below("sec", "x", "x = 0", 1e-12, 1e-10, Provenance::kPublished));
  r.add(AuditEntry::below("sec", "y", "", std::nan(""), 1e-10, Provenance::kTrivial));
  const auto j = nlohmann::json::parse(render_json(r));
  for (const char* k : {"tool", "command", "manifold", "seed", "samples", "flags", "title", "passed", "notes", "entries"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["flags"]["tol"], "1e-09");
  EXPECT_FALSE(j["passed"].get<bool>());
  ASSERT_EQ(j["entries"].size(), 2u);
  const auto& e = j["entries"][0];
  for (const char* k : {"section", "name", "anchor", "value", "tol", "criterion", "status", "gating", "provenance", "note"})
    EXPECT_TRUE(e.contains(k)) << k;
  EXPECT_EQ(e["provenance"], "published");
  EXPECT_EQ(e["status"], "pass");
  EXPECT_TRUE(j["entries"][1]["value"].is_null());
}

TEST(Report, TextRendering) {
  AuditReport r;
  r.metadata = {"verify", "m", 42, 100, {}};
  r.add(AuditEntry::below("pair", "x", "x = 0", 0.0, 1e-10, Provenance::kTrivial));
  const std::string t = render_text(r);
  EXPECT_EQ(t.rfind("# cpc verify  manifold=m  seed=42  samples=100\n", 0), 0u);
  EXPECT_NE(t.find("[pair]\n  PASS    x = 0  (tol < 1e-10)  [trivial]  x = 0\n"), std::string::npos);
  EXPECT_NE(t.find("# result: PASS"), std::string::npos);
}
