// cpc: validators, curvature and flatness audits for metric contact pairs on
// a single chart. Exit codes: 0 pass, 1 failed check, 2 usage or load error.

#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpc/contact_pair.hpp"
#include "cpc/curvature_tensors.hpp"
#include "cpc/errors.hpp"
#include "cpc/geometry.hpp"
#include "cpc/report.hpp"
#include "cpc/sampling.hpp"
#include "cpc/spec_file.hpp"
#include "cpc/zoo.hpp"

namespace {

using namespace cpc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Target {
  std::shared_ptr<const ChartedManifold> manifold;
  std::optional<ContactPairStructure> pair;
  std::optional<ZooEntry> entry;
};

Target load_target(const std::string& spec) {
  Target t;
  if (spec.rfind("zoo:", 0) == 0) {
    ZooEntry e = builtin(spec.substr(4));
    t.manifold = e.manifold;
    t.pair = e.pair;
    t.entry = std::move(e);
    return t;
  }
  const LoadedSpec loaded = load_spec_file(spec);
  t.manifold = loaded.manifold;
  t.pair = loaded.structure();
  return t;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CPC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "cpc: ignoring malformed CPC_SEED='" << env << "'\n";
    }
  }
  return kDefaultSeed;
}

struct Common {
  std::string target;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;

  SamplingOptions options() const {
    SamplingOptions o;
    o.samples = samples;
    o.seed = seed;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("target", c.target, "zoo:NAME or a manifold spec file")->required();
  cmd->add_option("--samples", c.samples, "number of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "sampling seed (default 42, or CPC_SEED)");
  cmd->add_flag("--json", c.json, "emit a JSON report");
}

void emit(const AuditReport& r, bool json) { std::cout << (json ? render_json(r) : render_text(r)); }

void stamp(AuditReport& r, const std::string& command, const Target& t, const Common& c) {
  r.metadata.command = command;
  r.metadata.manifold = t.manifold->name();
  r.metadata.seed = c.seed;
  r.metadata.samples = c.samples;
}

std::string type_of(const ZooEntry& e) {
  if (!e.pair) return "";
  return "type (" + std::to_string(e.pair->p()) + "," + std::to_string(e.pair->q()) + ")";
}

// zoo ------------------------------------------------------------------------

int cmd_zoo_list(bool json) {
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const std::string& name : builtin_names()) {
      const ZooEntry e = builtin(name);
      nlohmann::ordered_json j;
      j["name"] = e.name;
      j["dim"] = e.manifold->dim();
      if (e.pair) {
        j["type"] = {e.pair->p(), e.pair->q()};
      } else {
        j["type"] = nullptr;
      }
      j["description"] = e.description;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
    return kExitPass;
  }
  for (const std::string& name : builtin_names()) {
    const ZooEntry e = builtin(name);
    std::string head = e.name + " (dim " + std::to_string(e.manifold->dim());
    if (e.pair) head += ", " + type_of(e);
    head += ")";
    std::cout << head << std::string(head.size() < 32 ? 32 - head.size() : 1, ' ') << e.description << "\n";
  }
  return kExitPass;
}

int cmd_zoo_show(const std::string& name, bool json) {
  const ZooEntry e = builtin(name);
  const ChartedManifold& m = *e.manifold;
  if (json) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["dim"] = m.dim();
    j["coords"] = m.coord_names();
    nlohmann::ordered_json box = nlohmann::ordered_json::array();
    for (const Interval& iv : m.sample_box()) box.push_back({iv.lo, iv.hi});
    j["box"] = box;
    std::vector<std::string> forms, vectors, endos;
    for (const auto& kv : m.one_forms()) forms.push_back(kv.first);
    for (const auto& kv : m.vector_fields()) vectors.push_back(kv.first);
    for (const auto& kv : m.endomorphisms()) endos.push_back(kv.first);
    j["forms"] = forms;
    j["vectors"] = vectors;
    j["endomorphisms"] = endos;
    if (e.pair) {
      j["type"] = {e.pair->p(), e.pair->q()};
    } else {
      j["type"] = nullptr;
    }
    nlohmann::ordered_json expected = nlohmann::ordered_json::array();
    for (const ExpectedValue& v : e.expected) {
      expected.push_back({{"name", v.name}, {"value", v.value}, {"provenance", to_string(v.provenance)}});
    }
    j["expected"] = expected;
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  }
  std::cout << e.name << ": " << e.description << "\n";
  std::cout << "dim " << m.dim();
  if (e.pair) std::cout << ", " << type_of(e);
  std::cout << "\ncoords:";
  for (std::size_t i = 0; i < m.coord_names().size(); ++i) {
    const Interval& iv = m.sample_box()[i];
    std::cout << " " << m.coord_names()[i] << " in [" << format_number(iv.lo) << ", " << format_number(iv.hi) << "]";
  }
  std::cout << "\n";
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) {
      const Expr& g = m.metric(i, j);
      if (g.is_constant() && g.constant_value() == 0.0) continue;
      std::cout << "g" << i << j << " = " << g.to_string() << "\n";
    }
  for (const auto& kv : m.one_forms()) std::cout << "form " << kv.first << "\n";
  for (const auto& kv : m.vector_fields()) std::cout << "vector " << kv.first << "\n";
  for (const auto& kv : m.endomorphisms()) std::cout << "endo " << kv.first << "\n";
  for (const ExpectedValue& v : e.expected) {
    std::cout << "expected " << v.name << " = " << format_number(v.value) << "  [" << to_string(v.provenance) << "]\n";
  }
  return kExitPass;
}

int cmd_zoo_export(const std::string& name) {
  const ZooEntry e = builtin(name);
  std::optional<PairSpec> pair;
  if (e.pair) pair = PairSpec{e.pair->names(), e.pair->p(), e.pair->q()};
  std::cout << export_spec(*e.manifold, pair);
  return kExitPass;
}

// verify ---------------------------------------------------------------------

AuditReport metric_suite(const ChartedManifold& m, const SamplingOptions& opts) {
  AuditReport r;
  Sampler sampler(opts.seed);
  int failures = 0;
  MaxResidual inverse;
  for (const Vector& x : sampler.points(m, opts.samples)) {
    try {
      const MetricAt g = metric_at(m, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
      inverse.update((g.g * g.g_inv - Matrix::Identity(m.dim(), m.dim())).cwiseAbs().maxCoeff());
    } catch (const NotSPD&) {
      ++failures;
    }
  }
  r.add(AuditEntry::below("metric", "points with non-SPD metric", "g positive definite", failures, 0.5,
                          Provenance::kTrivial));
  r.add(AuditEntry::below("metric", "g g^-1 - I", "g g^-1 = I", inverse.value(), 1e-12, Provenance::kTrivial));
  return r;
}

int cmd_verify(const Common& c) {
  const Target t = load_target(c.target);
  AuditReport r;
  r.title = "metric contact pair structure";
  r.append(metric_suite(*t.manifold, c.options()));
  if (t.pair) {
    if (r.passed()) {
      r.append(verify_structure(*t.pair, c.options()));
    } else {
      r.notes.push_back("metric not positive definite on the sample box: structure checks skipped");
    }
  } else {
    r.notes.push_back("no contact pair structure: structure checks skipped");
  }
  stamp(r, "verify", t, c);
  emit(r, c.json);
  return r.passed() ? kExitPass : kExitFail;
}

// curvature ------------------------------------------------------------------

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
    out.push_back(v);
  }
  return out;
}

void sectional_range(const CurvatureBundle& b, Sampler& sampler, int planes, double& lo, double& hi) {
  for (int k = 0; k < planes; ++k) {
    const Vector x = sampler.unit_vector(b.g);
    const Vector y = sampler.unit_vector(b.g);
    try {
      const double s = sectional(b, x, y);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    } catch (const DegeneratePlane&) {
    }
  }
}

void expected_checks(AuditReport& r, const Target& t, double scal_dev, double sec_dev) {
  if (!t.entry) return;
  if (const ExpectedValue* e = t.entry->find_expected("scal")) {
    r.add(AuditEntry::below("expected", "|scal - " + format_number(e->value) + "|", "scal", scal_dev, 1e-7,
                            e->provenance));
  }
  if (t.entry->find_expected("sectional") != nullptr && !std::isnan(sec_dev)) {
    const ExpectedValue* e = t.entry->find_expected("sectional");
    r.add(AuditEntry::below("expected", "|k - " + format_number(e->value) + "|", "sectional curvature", sec_dev,
                            1e-7, e->provenance));
  }
}

int cmd_curvature(const Common& c, const std::string& at) {
  const Target t = load_target(c.target);
  const ChartedManifold& m = *t.manifold;
  const int n = m.dim();
  AuditReport r;
  r.title = "curvature";
  Sampler sampler(c.seed);
  const double inf = std::numeric_limits<double>::infinity();
  const auto expected_scal = [&]() -> std::optional<double> {
    if (t.entry) {
      if (const ExpectedValue* e = t.entry->find_expected("scal")) return e->value;
    }
    return std::nullopt;
  }();
  const auto expected_sec = [&]() -> std::optional<double> {
    if (t.entry) {
      if (const ExpectedValue* e = t.entry->find_expected("sectional")) return e->value;
    }
    return std::nullopt;
  }();

  if (!at.empty()) {
    std::vector<double> x;
    try {
      x = parse_point(at);
    } catch (const std::exception&) {
      std::cerr << "cpc: --at expects comma-separated numbers\n";
      return kExitUsage;
    }
    if (static_cast<int>(x.size()) != n) {
      std::cerr << "cpc: --at needs " << n << " coordinates\n";
      return kExitUsage;
    }
    if (!m.in_box(x)) std::cerr << "cpc: warning: point lies outside the sample box\n";
    const CurvatureBundle b = curvature_at(m, x);
    r.metadata.flags.emplace_back("at", at);
    r.add(AuditEntry::info("curvature", "scal", "scal = tr Q", b.scal));
    const Vector ev = ricci_eigenvalues(b);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      r.add(AuditEntry::info("curvature", "Ricci eigenvalue " + std::to_string(i), "eigenvalues of Q", ev(i)));
    }
    double lo = inf, hi = -inf;
    sectional_range(b, sampler, 100, lo, hi);
    r.add(AuditEntry::info("curvature", "sectional min", "k over 100 random planes", lo));
    r.add(AuditEntry::info("curvature", "sectional max", "k over 100 random planes", hi));
    r.add(AuditEntry::info("curvature", "max |R| (frame)", "R", to_frame(b.riemann_ud, orthonormal_frame(b.g)).max_abs()));
    const double sec_dev = expected_sec ? std::max(std::abs(lo - *expected_sec), std::abs(hi - *expected_sec)) : NAN;
    expected_checks(r, t, expected_scal ? std::abs(b.scal - *expected_scal) : 0.0, sec_dev);
    stamp(r, "curvature", t, c);
    r.metadata.samples = 1;
    emit(r, c.json);
    return r.passed() ? kExitPass : kExitFail;
  }

  double scal_sum = 0.0, scal_lo = inf, scal_hi = -inf, sec_lo = inf, sec_hi = -inf;
  Vector ev_sum = Vector::Zero(n), ev_lo = Vector::Constant(n, inf), ev_hi = Vector::Constant(n, -inf);
  MaxResidual scal_dev;
  const std::vector<Vector> pts = sampler.points(m, c.samples);
  for (const Vector& x : pts) {
    const CurvatureBundle b = curvature_at(m, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    scal_sum += b.scal;
    scal_lo = std::min(scal_lo, b.scal);
    scal_hi = std::max(scal_hi, b.scal);
    if (expected_scal) scal_dev.update(b.scal - *expected_scal);
    const Vector ev = ricci_eigenvalues(b);
    ev_sum += ev;
    ev_lo = ev_lo.cwiseMin(ev);
    ev_hi = ev_hi.cwiseMax(ev);
    sectional_range(b, sampler, 1, sec_lo, sec_hi);
  }
  const double count = static_cast<double>(pts.size());
  r.add(AuditEntry::info("curvature", "scal (mean)", "scal = tr Q", scal_sum / count));
  r.add(AuditEntry::info("curvature", "scal (min)", "scal = tr Q", scal_lo));
  r.add(AuditEntry::info("curvature", "scal (max)", "scal = tr Q", scal_hi));
  for (int i = 0; i < n; ++i) {
    r.add(AuditEntry::info("curvature", "Ricci eigenvalue " + std::to_string(i) + " (mean)", "eigenvalues of Q",
                           ev_sum(i) / count));
    r.add(AuditEntry::info("curvature", "Ricci eigenvalue " + std::to_string(i) + " (spread)", "eigenvalues of Q",
                           ev_hi(i) - ev_lo(i)));
  }
  r.add(AuditEntry::info("curvature", "sectional min", "k over one random plane per point", sec_lo));
  r.add(AuditEntry::info("curvature", "sectional max", "k over one random plane per point", sec_hi));
  const double sec_dev =
      expected_sec ? std::max(std::abs(sec_lo - *expected_sec), std::abs(sec_hi - *expected_sec)) : NAN;
  expected_checks(r, t, scal_dev.value(), sec_dev);
  stamp(r, "curvature", t, c);
  emit(r, c.json);
  return r.passed() ? kExitPass : kExitFail;
}

// flatness / audit -----------------------------------------------------------

struct TensorArgs {
  std::optional<double> a;
  std::optional<double> b;
  double tol = 1e-7;
};

QuasiConformalParams resolve_params(const TensorArgs& args, int n, AuditReport& r) {
  const QuasiConformalParams d = conformal_params(n);
  QuasiConformalParams p{args.a.value_or(d.a), args.b.value_or(d.b)};
  if (!args.a || !args.b) {
    r.notes.push_back("defaults used for missing parameters: (a, b) = (1, -1/(2p+2q)) = (" + format_number(d.a) +
                      ", " + format_number(d.b) + ")");
  }
  return p;
}

int cmd_flatness(const Common& c, const std::string& tensor, const TensorArgs& args) {
  const Target t = load_target(c.target);
  const int n = t.manifold->dim();
  AuditReport r;
  r.title = "flatness of the " + tensor + " tensor";
  TensorKind kind = TensorKind::kConformal;
  std::optional<QuasiConformalParams> params;
  if (tensor == "concircular") kind = TensorKind::kConcircular;
  if (tensor == "quasi") {
    kind = TensorKind::kQuasiConformal;
    params = resolve_params(args, n, r);
  }
  const FlatnessReport f = flatness(*t.manifold, kind, params, c.options(), args.tol);
  std::string anchor = tensor == "quasi" ? "C~ = 0" : tensor == "concircular" ? "W = 0" : "C = 0";
  r.add(AuditEntry::below("flatness", "max frame component", anchor, f.max_component, f.tol, Provenance::kDerived));
  stamp(r, "flatness", t, c);
  r.metadata.flags.emplace_back("tensor", tensor);
  if (params) {
    r.metadata.flags.emplace_back("a", format_number(params->a));
    r.metadata.flags.emplace_back("b", format_number(params->b));
  }
  r.metadata.flags.emplace_back("tol", format_number(args.tol));
  emit(r, c.json);
  return f.is_flat ? kExitPass : kExitFail;
}

int cmd_audit(const Common& c, const std::string& theorem, const TensorArgs& args) {
  const Target t = load_target(c.target);
  const ContactPairStructure* pair = t.pair ? &*t.pair : nullptr;
  AuditReport r;
  int code = kExitPass;
  if (theorem == "identities") {
    if (pair == nullptr) {
      std::cerr << "cpc: --theorem identities needs a contact pair structure\n";
      return kExitUsage;
    }
    r = audit_identities(*pair, c.options());
    code = r.passed() ? kExitPass : kExitFail;
  } else if (theorem == "conformal") {
    r = audit_theorem_conformal(*t.manifold, pair, c.options(), args.tol);
  } else if (theorem == "concircular") {
    r = audit_theorem_concircular(*t.manifold, pair, c.options(), args.tol);
  } else {
    AuditReport defaults;
    const QuasiConformalParams p = resolve_params(args, t.manifold->dim(), defaults);
    r = audit_theorem_quasiconformal(*t.manifold, pair, p, c.options(), args.tol);
    r.notes.insert(r.notes.begin(), defaults.notes.begin(), defaults.notes.end());
  }
  std::vector<std::pair<std::string, std::string>> extra = r.metadata.flags;
  stamp(r, "audit", t, c);
  r.metadata.flags.clear();
  r.metadata.flags.emplace_back("theorem", theorem);
  r.metadata.flags.insert(r.metadata.flags.end(), extra.begin(), extra.end());
  if (theorem != "identities") r.metadata.flags.emplace_back("tol", format_number(args.tol));
  emit(r, c.json);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpc: curvature and structure audits for metric contact pairs"};
  app.require_subcommand(1);

  auto* zoo = app.add_subcommand("zoo", "built-in manifolds");
  zoo->require_subcommand(1);
  bool list_json = false, show_json = false;
  std::string show_name, export_name;
  auto* zoo_list = zoo->add_subcommand("list", "list built-in manifolds");
  zoo_list->add_flag("--json", list_json, "emit JSON");
  auto* zoo_show = zoo->add_subcommand("show", "describe a built-in manifold");
  zoo_show->add_option("name", show_name)->required();
  zoo_show->add_flag("--json", show_json, "emit JSON");
  auto* zoo_export = zoo->add_subcommand("export", "print a built-in manifold as a spec file");
  zoo_export->add_option("name", export_name)->required();

  const std::uint64_t seed = default_seed();
  Common verify_c, curv_c, flat_c, audit_c;
  for (Common* c : {&verify_c, &curv_c, &flat_c, &audit_c}) c->seed = seed;

  auto* verify = app.add_subcommand("verify", "run the contact pair structure suite");
  add_common(verify, verify_c);

  std::string at;
  auto* curvature = app.add_subcommand("curvature", "scalar, Ricci and sectional curvature");
  add_common(curvature, curv_c);
  curvature->add_option("--at", at, "evaluate at one point \"x0,...,xn-1\"");

  std::string tensor;
  TensorArgs flat_args;
  auto* flat = app.add_subcommand("flatness", "flatness of C, W or C~");
  add_common(flat, flat_c);
  flat->add_option("--tensor", tensor, "conformal | concircular | quasi")
      ->required()
      ->check(CLI::IsMember({"conformal", "concircular", "quasi"}));
  flat->add_option("--a", flat_args.a, "quasi-conformal parameter a");
  flat->add_option("--b", flat_args.b, "quasi-conformal parameter b");
  flat->add_option("--tol", flat_args.tol, "flatness tolerance");

  std::string theorem;
  TensorArgs audit_args;
  auto* audit = app.add_subcommand("audit", "audit curvature identities and flatness theorems");
  add_common(audit, audit_c);
  audit->add_option("--theorem", theorem, "identities | conformal | concircular | quasiconformal")
      ->required()
      ->check(CLI::IsMember({"identities", "conformal", "concircular", "quasiconformal"}));
  audit->add_option("--a", audit_args.a, "quasi-conformal parameter a");
  audit->add_option("--b", audit_args.b, "quasi-conformal parameter b");
  audit->add_option("--tol", audit_args.tol, "flatness tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*zoo_list) return cmd_zoo_list(list_json);
    if (*zoo_show) return cmd_zoo_show(show_name, show_json);
    if (*zoo_export) return cmd_zoo_export(export_name);
    if (*verify) return cmd_verify(verify_c);
    if (*curvature) return cmd_curvature(curv_c, at);
    if (*flat) return cmd_flatness(flat_c, tensor, flat_args);
    if (*audit) return cmd_audit(audit_c, theorem, audit_args);
  } catch (const SpecFormatError& e) {
    std::cerr << "cpc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "cpc: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
