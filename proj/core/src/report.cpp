#include "cpc/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace cpc {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kPublished: return "published";
    case Provenance::kTrivial: return "trivial";
    case Provenance::kDerived: return "derived";
  }
  return "?";
}

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::kBelow: return "below";
    case Criterion::kAbove: return "above";
    case Criterion::kInfo: return "info";
  }
  return "?";
}

AuditEntry AuditEntry::below(std::string section, std::string name, std::string anchor, double value,
                             double tol, Provenance provenance) {
  AuditEntry e;
  e.section = std::move(section);
  e.name = std::move(name);
  e.anchor = std::move(anchor);
  e.value = value;
  e.tol = tol;
  e.criterion = Criterion::kBelow;
  e.pass = value < tol;  // false for NaN
  e.provenance = provenance;
  return e;
}

AuditEntry AuditEntry::above(std::string section, std::string name, std::string anchor, double value,
                             double tol, Provenance provenance) {
  AuditEntry e = below(std::move(section), std::move(name), std::move(anchor), value, tol, provenance);
  e.criterion = Criterion::kAbove;
  e.pass = value > tol;
  return e;
}

AuditEntry AuditEntry::info(std::string section, std::string name, std::string anchor, double value,
                            Provenance provenance) {
  AuditEntry e = below(std::move(section), std::move(name), std::move(anchor), value, 0.0, provenance);
  e.criterion = Criterion::kInfo;
  e.pass = true;
  e.gating = false;
  return e;
}

AuditEntry& AuditEntry::informational(std::string why) {
  gating = false;
  if (!why.empty()) note = std::move(why);
  return *this;
}

AuditEntry& AuditEntry::with_note(std::string n) {
  note = std::move(n);
  return *this;
}

const char* AuditEntry::status() const {
  if (criterion == Criterion::kInfo) return "info";
  if (gating) return pass ? "pass" : "fail";
  return pass ? "info" : "finding";
}

void AuditReport::append(const AuditReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool AuditReport::passed() const {
  for (const AuditEntry& e : entries) {
    if (e.gating && !e.pass) return false;
  }
  return true;
}

const AuditEntry* AuditReport::find(const std::string& name) const {
  for (const AuditEntry& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const AuditEntry& AuditReport::at(const std::string& name) const {
  if (const AuditEntry* e = find(name)) return *e;
  throw std::out_of_range("no report entry named '" + name + "'");
}

void MaxResidual::update(double r) {
  if (std::isnan(value_)) return;
  if (std::isnan(r)) {
    value_ = r;
    return;
  }
  value_ = std::max(value_, std::abs(r));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_text(const AuditReport& report) {
  std::string out;
  const ReportMetadata& m = report.metadata;
  out += "# cpc " + m.command + "  manifold=" + m.manifold + "  seed=" + std::to_string(m.seed) +
         "  samples=" + std::to_string(m.samples);
  for (const auto& [k, v] : m.flags) out += "  " + k + "=" + v;
  out += '\n';
  if (!report.title.empty()) out += "# " + report.title + '\n';
  for (const std::string& n : report.notes) out += "# note: " + n + '\n';

  std::string section;
  for (const AuditEntry& e : report.entries) {
    if (e.section != section) {
      section = e.section;
      out += "[" + section + "]\n";
    }
    char status[16];
    std::snprintf(status, sizeof status, "%-8s", e.status());
    for (char* c = status; *c; ++c) *c = static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    std::string line = "  ";
    line += status;
    line += e.name;
    line += " = " + format_number(e.value);
    if (e.criterion == Criterion::kBelow) line += "  (tol < " + format_number(e.tol) + ")";
    if (e.criterion == Criterion::kAbove) line += "  (tol > " + format_number(e.tol) + ")";
    line += "  [" + std::string(to_string(e.provenance)) + "]";
    if (!e.anchor.empty()) line += "  " + e.anchor;
    if (!e.note.empty()) line += "  -- " + e.note;
    out += line + '\n';
  }
  out += std::string("# result: ") + (report.passed() ? "PASS" : "FAIL") + '\n';
  return out;
}

std::string render_json(const AuditReport& report) {
  using nlohmann::ordered_json;
  const ReportMetadata& m = report.metadata;
  ordered_json j;
  j["tool"] = "cpc";
  j["command"] = m.command;
  j["manifold"] = m.manifold;
  j["seed"] = m.seed;
  j["samples"] = m.samples;
  ordered_json flags = ordered_json::object();
  for (const auto& [k, v] : m.flags) flags[k] = v;
  j["flags"] = flags;
  j["title"] = report.title;
  j["passed"] = report.passed();
  j["notes"] = report.notes;
  ordered_json entries = ordered_json::array();
  for (const AuditEntry& e : report.entries) {
    ordered_json je;
    je["section"] = e.section;
    je["name"] = e.name;
    je["anchor"] = e.anchor;
    if (std::isfinite(e.value)) {
      je["value"] = e.value;
    } else {
      je["value"] = nullptr;
    }
    je["tol"] = e.tol;
    je["criterion"] = to_string(e.criterion);
    je["status"] = e.status();
    je["gating"] = e.gating;
    je["provenance"] = to_string(e.provenance);
    je["note"] = e.note;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

}  // namespace cpc
