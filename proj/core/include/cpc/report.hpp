#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cpc {

/// Where an expected value comes from: the published identity, a trivial
/// hand computation, or an independent numerical/derived oracle.
enum class Provenance { kPublished, kTrivial, kDerived };

/// kBelow: passes when value < tol. kAbove: passes when value > tol.
/// kInfo: a reported number with no verdict.
enum class Criterion { kBelow, kAbove, kInfo };

const char* to_string(Provenance p);
const char* to_string(Criterion c);

struct AuditEntry {
  std::string section;
  std::string name;
  std::string anchor;  // the identity being measured, as a formula
  double value = 0.0;
  double tol = 0.0;
  Criterion criterion = Criterion::kBelow;
  bool pass = true;
  Provenance provenance = Provenance::kDerived;
  /// Non-gating entries are reported but never fail a report.
  bool gating = true;
  std::string note;

  static AuditEntry below(std::string section, std::string name, std::string anchor, double value,
                          double tol, Provenance provenance);
  static AuditEntry above(std::string section, std::string name, std::string anchor, double value,
                          double tol, Provenance provenance);
  static AuditEntry info(std::string section, std::string name, std::string anchor, double value,
                         Provenance provenance = Provenance::kDerived);

  AuditEntry& informational(std::string why = {});
  AuditEntry& with_note(std::string n);

  /// "pass", "fail", "info" or "finding" (a non-gating entry outside tol).
  const char* status() const;
};

struct ReportMetadata {
  std::string command;
  std::string manifold;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<std::pair<std::string, std::string>> flags;
};

struct AuditReport {
  std::string title;
  ReportMetadata metadata;
  std::vector<AuditEntry> entries;
  std::vector<std::string> notes;

  void add(AuditEntry e) { entries.push_back(std::move(e)); }
  void append(const AuditReport& other);
  /// True when every gating entry passes.
  bool passed() const;
  const AuditEntry* find(const std::string& name) const;
  /// Throws std::out_of_range when absent.
  const AuditEntry& at(const std::string& name) const;
};

/// Running maximum of absolute residuals; NaN is sticky so it can never
/// read as a pass.
class MaxResidual {
 public:
  void update(double r);
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

/// Numbers are printed with 12 significant digits.
std::string format_number(double v);
std::string render_text(const AuditReport& report);
std::string render_json(const AuditReport& report);

}  // namespace cpc
