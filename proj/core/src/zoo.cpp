#include "cpc/zoo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cpc/errors.hpp"
#include "cpc/geometry.hpp"
#include "cpc/sampling.hpp"

namespace cpc {

const ExpectedValue* ZooEntry::find_expected(const std::string& key) const {
  for (const ExpectedValue& e : expected) {
    if (e.name == key) return &e;
  }
  return nullptr;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"euclidean4", "flat_torus4", "sphere2",  "sphere3",   "sphere4",
                                                 "sasakian_s3", "s3_x_s1",    "s3_x_s3", "flat_pair4"};
  return names;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMargin = 0.1;

using Exprs = std::vector<Expr>;

std::string x(int i) { return "x" + std::to_string(i); }

Exprs zeros(int count) { return Exprs(static_cast<std::size_t>(count), Expr::constant(0.0)); }

Expr& at(Exprs& m, int dim, int i, int j) { return m[static_cast<std::size_t>(i * dim + j)]; }

Expr difference(const Expr& a, const Expr& b) { return sum_of(a, product_of(Expr::constant(-1.0), b)); }

// Row-major v ⊗ alpha.
Exprs outer_expr(const Exprs& v, const Exprs& alpha) {
  const int n = static_cast<int>(v.size());
  Exprs out = zeros(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at(out, n, i, j) = product_of(v[static_cast<std::size_t>(i)], alpha[static_cast<std::size_t>(j)]);
  return out;
}

Exprs add(const Exprs& a, const Exprs& b) {
  Exprs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sum_of(a[i], b[i]);
  return out;
}

Exprs subtract(const Exprs& a, const Exprs& b) {
  Exprs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = difference(a[i], b[i]);
  return out;
}

std::vector<Interval> uniform_box(int dim, double lo, double hi) { return std::vector<Interval>(dim, Interval{lo, hi}); }

void identity_metric(ChartedManifold& m) {
  for (int i = 0; i < m.dim(); ++i) m.set_metric(i, i, Expr::constant(1.0));
}

// The round unit S^3 in Hopf coordinates (eta, xi1, xi2) at offset o:
//   g = d eta^2 + sin^2(eta) d xi1^2 + cos^2(eta) d xi2^2.
struct HopfBlock {
  int o;
  int n;
  std::string s() const { return "sin(" + x(o) + ")"; }
  std::string c() const { return "cos(" + x(o) + ")"; }
  Expr e(const std::string& text) const { return parse(text, n); }

  void metric(ChartedManifold& m) const {
    m.set_metric(o, o, Expr::constant(1.0));
    m.set_metric(o + 1, o + 1, e(s() + "^2"));
    m.set_metric(o + 2, o + 2, e(c() + "^2"));
  }
  /// Contact form sin^2 d xi1 + cos^2 d xi2.
  Exprs alpha() const {
    Exprs a = zeros(n);
    a[static_cast<std::size_t>(o + 1)] = e(s() + "^2");
    a[static_cast<std::size_t>(o + 2)] = e(c() + "^2");
    return a;
  }
  /// Reeb field d xi1 + d xi2.
  Exprs reeb() const {
    Exprs z = zeros(n);
    z[static_cast<std::size_t>(o + 1)] = Expr::constant(1.0);
    z[static_cast<std::size_t>(o + 2)] = Expr::constant(1.0);
    return z;
  }
  Exprs phi() const {
    Exprs f = zeros(n * n);
    at(f, n, o, o + 1) = e(s() + "*" + c());
    at(f, n, o, o + 2) = e("-(" + s() + "*" + c() + ")");
    at(f, n, o + 1, o) = e("-(" + c() + "/" + s() + ")");
    at(f, n, o + 2, o) = e(s() + "/" + c());
    return f;
  }
  // Orthonormal horizontal frame e1 = d eta, e2 = (cos/sin) d xi1 - (sin/cos) d xi2,
  // with e2 = -phi e1, and the dual one-forms g(e_a, .).
  Exprs frame1() const {
    Exprs v = zeros(n);
    v[static_cast<std::size_t>(o)] = Expr::constant(1.0);
    return v;
  }
  Exprs frame2() const {
    Exprs v = zeros(n);
    v[static_cast<std::size_t>(o + 1)] = e(c() + "/" + s());
    v[static_cast<std::size_t>(o + 2)] = e("-(" + s() + "/" + c() + ")");
    return v;
  }
  Exprs coframe1() const { return frame1(); }
  Exprs coframe2() const {
    Exprs a = zeros(n);
    a[static_cast<std::size_t>(o + 1)] = e(s() + "*" + c());
    a[static_cast<std::size_t>(o + 2)] = e("-(" + s() + "*" + c() + ")");
    return a;
  }
  void box(std::vector<Interval>& b) const {
    b[static_cast<std::size_t>(o)] = {kMargin, kPi / 2 - kMargin};
    b[static_cast<std::size_t>(o + 1)] = {0.0, 2 * kPi};
    b[static_cast<std::size_t>(o + 2)] = {0.0, 2 * kPi};
  }
};

ZooEntry plain(std::string name, std::string description, std::shared_ptr<ChartedManifold> m,
               std::vector<ExpectedValue> expected) {
  ZooEntry z;
  z.name = std::move(name);
  z.description = std::move(description);
  z.manifold = std::move(m);
  z.expected = std::move(expected);
  return z;
}

ZooEntry make_euclidean4() {
  auto m = std::make_shared<ChartedManifold>("euclidean4", std::vector<std::string>{"x", "y", "z", "w"},
                                             uniform_box(4, -1.0, 1.0));
  identity_metric(*m);
  for (int i = 0; i < 4; ++i) {
    Exprs v = zeros(4);
    v[static_cast<std::size_t>(i)] = Expr::constant(1.0);
    m->add_vector_field("d" + std::to_string(i), v);
    m->add_one_form("dx" + std::to_string(i), v);
  }
  Exprs j = zeros(16), id = zeros(16);
  at(j, 4, 1, 0) = Expr::constant(1.0);
  at(j, 4, 0, 1) = Expr::constant(-1.0);
  at(j, 4, 3, 2) = Expr::constant(1.0);
  at(j, 4, 2, 3) = Expr::constant(-1.0);
  for (int i = 0; i < 4; ++i) at(id, 4, i, i) = Expr::constant(1.0);
  m->add_endomorphism("J", j);
  m->add_endomorphism("I", id);
  return plain("euclidean4", "flat R^4 with coordinate fields and a constant complex structure J", m,
               {{"scal", 0.0, Provenance::kTrivial}});
}

ZooEntry make_flat_torus4() {
  auto m = std::make_shared<ChartedManifold>("flat_torus4", std::vector<std::string>{"u0", "u1", "u2", "u3"},
                                             uniform_box(4, 0.0, 2 * kPi));
  identity_metric(*m);
  return plain("flat_torus4", "flat 4-torus", m, {{"scal", 0.0, Provenance::kTrivial}});
}

ZooEntry make_sphere2() {
  auto m = std::make_shared<ChartedManifold>("sphere2", std::vector<std::string>{"theta", "phi"},
                                             std::vector<Interval>{{kMargin, kPi - kMargin}, {0.0, 2 * kPi}});
  m->set_metric(0, 0, Expr::constant(1.0));
  m->set_metric(1, 1, parse("sin(x0)^2", 2));
  return plain("sphere2", "round unit S^2", m,
               {{"scal", 2.0, Provenance::kDerived}, {"sectional", 1.0, Provenance::kDerived}});
}

ZooEntry make_sphere3() {
  HopfBlock h{0, 3};
  std::vector<Interval> box(3);
  h.box(box);
  auto m = std::make_shared<ChartedManifold>("sphere3", std::vector<std::string>{"eta", "xi1", "xi2"}, box);
  h.metric(*m);
  return plain("sphere3", "round unit S^3 in Hopf coordinates", m,
               {{"scal", 6.0, Provenance::kDerived}, {"sectional", 1.0, Provenance::kDerived}});
}

ZooEntry make_sphere4() {
  auto m = std::make_shared<ChartedManifold>(
      "sphere4", std::vector<std::string>{"chi", "theta", "psi", "phi"},
      std::vector<Interval>{{kMargin, kPi - kMargin}, {kMargin, kPi - kMargin}, {kMargin, kPi - kMargin}, {0.0, 2 * kPi}});
  m->set_metric(0, 0, Expr::constant(1.0));
  m->set_metric(1, 1, parse("sin(x0)^2", 4));
  m->set_metric(2, 2, parse("sin(x0)^2*sin(x1)^2", 4));
  m->set_metric(3, 3, parse("sin(x0)^2*sin(x1)^2*sin(x2)^2", 4));
  return plain("sphere4", "round unit S^4 in hyperspherical coordinates", m,
               {{"scal", 12.0, Provenance::kDerived},
                {"sectional", 1.0, Provenance::kDerived},
                {"lambda", 3.0, Provenance::kDerived}});
}

ZooEntry make_sasakian_s3() {
  HopfBlock h{0, 3};
  std::vector<Interval> box(3);
  h.box(box);
  auto m = std::make_shared<ChartedManifold>("sasakian_s3", std::vector<std::string>{"eta", "xi1", "xi2"}, box);
  h.metric(*m);
  m->add_one_form("eta", h.alpha());
  m->add_vector_field("xi", h.reeb());
  m->add_endomorphism("phi", h.phi());
  return plain("sasakian_s3", "standard Sasakian structure (eta, xi, phi) on the round unit S^3", m,
               {{"scal", 6.0, Provenance::kDerived}});
}

ZooEntry pair_entry(std::string name, std::string description, std::shared_ptr<ChartedManifold> m, int p, int q,
                    std::vector<ExpectedValue> expected) {
  ZooEntry z = plain(std::move(name), std::move(description), m, std::move(expected));
  z.pair.emplace(z.manifold, PairFieldNames{}, p, q);
  return z;
}

ZooEntry make_s3_x_s1() {
  const int n = 4;
  HopfBlock h{0, n};
  std::vector<Interval> box(n);
  h.box(box);
  box[3] = {0.0, 2 * kPi};
  auto m = std::make_shared<ChartedManifold>("s3_x_s1", std::vector<std::string>{"eta", "xi1", "xi2", "t"}, box);
  h.metric(*m);
  m->set_metric(3, 3, Expr::constant(1.0));
  Exprs dt = zeros(n);
  dt[3] = Expr::constant(1.0);
  m->add_one_form("alpha1", h.alpha());
  m->add_one_form("alpha2", dt);
  m->add_vector_field("Z1", h.reeb());
  m->add_vector_field("Z2", dt);
  m->add_endomorphism("phi", h.phi());
  return pair_entry("s3_x_s1", "Sasakian S^3 times a circle, normal metric contact pair of type (1,0)", m, 1, 0,
                    {{"Ric(Z,Z)", 2.0, Provenance::kPublished},
                     {"Ric(Z1,Z1)", 2.0, Provenance::kPublished},
                     {"Ric(Z2,Z2)", 0.0, Provenance::kPublished},
                     {"scal", 6.0, Provenance::kDerived},
                     {"ricci_eigenvalues", 2.0, Provenance::kDerived}});
}

ZooEntry make_s3_x_s3() {
  const int n = 6;
  HopfBlock h1{0, n}, h2{3, n};
  std::vector<Interval> box(n);
  h1.box(box);
  h2.box(box);
  auto m = std::make_shared<ChartedManifold>(
      "s3_x_s3", std::vector<std::string>{"eta", "xi1", "xi2", "zeta", "psi1", "psi2"}, box);
  h1.metric(*m);
  h2.metric(*m);
  m->add_one_form("alpha1", h1.alpha());
  m->add_one_form("alpha2", h2.alpha());
  m->add_vector_field("Z1", h1.reeb());
  m->add_vector_field("Z2", h2.reeb());
  m->add_endomorphism("phi", add(h1.phi(), h2.phi()));
  return pair_entry("s3_x_s3", "product of two Sasakian S^3, normal metric contact pair of type (1,1)", m, 1, 1,
                    {{"Ric(Z,Z)", 4.0, Provenance::kPublished},
                     {"Ric(Z1,Z1)", 2.0, Provenance::kPublished},
                     {"Ric(Z2,Z2)", 2.0, Provenance::kPublished},
                     {"scal", 12.0, Provenance::kDerived}});
}

ZooEntry make_flat_pair4() {
  const int n = 4;
  auto m = std::make_shared<ChartedManifold>("flat_pair4", std::vector<std::string>{"x", "y", "z", "t"},
                                             uniform_box(n, 0.0, 2 * kPi));
  m->set_metric(0, 0, Expr::constant(1.0));
  m->set_metric(1, 1, Expr::constant(1.0));
  m->set_metric(2, 2, Expr::constant(0.25));
  m->set_metric(3, 3, Expr::constant(1.0));
  auto e = [&](const char* text) { return parse(text, n); };
  m->add_one_form("alpha1", {e("cos(x2)"), e("sin(x2)"), e("0"), e("0")});
  m->add_one_form("alpha2", {e("0"), e("0"), e("0"), e("1")});
  m->add_vector_field("Z1", {e("cos(x2)"), e("sin(x2)"), e("0"), e("0")});
  m->add_vector_field("Z2", {e("0"), e("0"), e("0"), e("1")});
  m->add_endomorphism("phi", {e("0"), e("0"), e("0.5*sin(x2)"), e("0"),         //
                              e("0"), e("0"), e("-(0.5*cos(x2))"), e("0"),      //
                              e("-(2*sin(x2))"), e("2*cos(x2)"), e("0"), e("0"),  //
                              e("0"), e("0"), e("0"), e("0")});
  return pair_entry("flat_pair4", "flat contact metric T^3 times a circle, metric contact pair of type (1,0)", m, 1,
                    0, {{"scal", 0.0, Provenance::kTrivial}});
}

}  // namespace

ZooEntry builtin(const std::string& name) {
  if (name == "euclidean4") return make_euclidean4();
  if (name == "flat_torus4") return make_flat_torus4();
  if (name == "sphere2") return make_sphere2();
  if (name == "sphere3") return make_sphere3();
  if (name == "sphere4") return make_sphere4();
  if (name == "sasakian_s3") return make_sasakian_s3();
  if (name == "s3_x_s1") return make_s3_x_s1();
  if (name == "s3_x_s3") return make_s3_x_s3();
  if (name == "flat_pair4") return make_flat_pair4();
  throw UnknownZooEntry(name);
}

HermitianPairInput hopf_hermitian_input() {
  const int n = 6;
  const ZooEntry product = builtin("s3_x_s3");
  const ChartedManifold& src = *product.manifold;
  HopfBlock h1{0, n}, h2{3, n};

  auto m = std::make_shared<ChartedManifold>("s3_x_s3_hermitian", src.coord_names(), src.sample_box());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m->set_metric(i, j, src.metric(i, j));

  const Exprs& a1 = src.one_form("alpha1");
  const Exprs& a2 = src.one_form("alpha2");
  const Exprs& z1 = src.vector_field("Z1");
  const Exprs& z2 = src.vector_field("Z2");
  const Exprs j = add(subtract(src.endomorphism("phi"), outer_expr(z1, a2)), outer_expr(z2, a1));

  // e1 -> f1, f1 -> -e1, e2 -> -f2, f2 -> e2 on H; zero on the Reeb fields.
  Exprs phi1 = outer_expr(h2.frame1(), h1.coframe1());
  phi1 = subtract(phi1, outer_expr(h1.frame1(), h2.coframe1()));
  phi1 = subtract(phi1, outer_expr(h2.frame2(), h1.coframe2()));
  phi1 = add(phi1, outer_expr(h1.frame2(), h2.coframe2()));
  const Exprs phi2 = compose_endomorphism_expr(phi1, j, n);

  m->add_endomorphism("J", j);
  m->add_endomorphism("varphi1", phi1);
  m->add_endomorphism("varphi2", phi2);
  m->add_one_form("eta1", a1);
  m->add_one_form("eta2", a2);
  m->add_vector_field("xi1", z1);
  m->add_vector_field("xi2", z2);

  HermitianPairInput in;
  in.base = m;
  return in;
}

HermitianPairResult hermitian_pair_build(const HermitianPairInput& input, const SamplingOptions& opts) {
  const ChartedManifold& base = *input.base;
  const int n = base.dim();
  auto m = std::make_shared<ChartedManifold>(base);
  m->add_endomorphism("phi", compose_endomorphism_expr(base.endomorphism(input.phi1), base.endomorphism(input.phi2), n));
  PairFieldNames names{input.eta1, input.eta2, input.xi1, input.xi2, "phi"};
  ContactPairStructure structure(m, names, input.p, input.q);

  MaxResidual skew1, skew2, jxi1, jxi2, sq1, sq2, phi1_xi, phi2_xi, eta_phi, a1j, a1jj, a2j, a2jj;
  MaxResidual stated_a, stated_b, flipped, j2, jmetric, nj;
  MaxResidual c_square, c_eta, c_phixi, m_skew, m_compat;
  Sampler sampler(opts.seed);
  for (const Vector& pv : sampler.points(base, opts.samples)) {
    const std::span<const double> xs(pv.data(), static_cast<std::size_t>(pv.size()));
    const Matrix g = metric_at(base, xs).g;
    auto norm = [&](const Vector& v) { return std::sqrt(std::max(v.dot(g * v), 0.0)); };
    const EndoJet jj = evaluate_endomorphism(base, input.j, xs);
    const Matrix& J = jj.value;
    const Matrix f1 = evaluate_endomorphism(base, input.phi1, xs).value;
    const Matrix f2 = evaluate_endomorphism(base, input.phi2, xs).value;
    const Vector e1 = evaluate_one_form(base, input.eta1, xs).value;
    const Vector e2 = evaluate_one_form(base, input.eta2, xs).value;
    const Vector x1 = evaluate_vector_field(base, input.xi1, xs).value;
    const Vector x2 = evaluate_vector_field(base, input.xi2, xs).value;
    const Matrix phi = evaluate_endomorphism(*m, "phi", xs).value;
    const Matrix vertical = x1 * e1.transpose() + x2 * e2.transpose();
    const Matrix cross = x2 * e1.transpose() - x1 * e2.transpose();  // X -> eta1(X) xi2 - eta2(X) xi1

    jxi1.update(norm(J * x1 - x2));
    jxi2.update(norm(J * x2 + x1));
    phi1_xi.update(norm(f1 * x1));
    phi1_xi.update(norm(f1 * x2));
    phi2_xi.update(norm(f2 * x1));
    phi2_xi.update(norm(f2 * x2));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double ea = (a == 0 ? e1 : e2).dot(b == 0 ? x1 : x2);
        c_eta.update(ea - (a == b ? 1.0 : 0.0));
      }
    }
    c_phixi.update(norm(phi * x1));
    c_phixi.update(norm(phi * x2));

    for (int k = 0; k < opts.vectors_per_point; ++k) {
      const Vector u = sampler.unit_vector(g);
      const Vector v = sampler.unit_vector(g);
      skew1.update((f1 * u).dot(g * v) + u.dot(g * (f1 * v)));
      skew2.update((f2 * u).dot(g * v) + u.dot(g * (f2 * v)));
      sq1.update(norm(f1 * (f1 * u) + u - vertical * u));
      sq2.update(norm(f2 * (f2 * u) + u - vertical * u));
      eta_phi.update(e1.dot(f1 * u));
      eta_phi.update(e2.dot(f2 * u));
      a1j.update(norm(f1 * (J * u) - f2 * u));
      a1jj.update(norm(J * (f1 * u) + f2 * u));
      a2j.update(norm(f2 * (J * u) + f1 * u));
      a2jj.update(norm(J * (f2 * u) - f1 * u));
      const Vector target = J * u + cross * u;
      stated_a.update(norm(f2 * (f1 * u) - target));
      stated_b.update(norm(f1 * (f2 * u) + target));
      flipped.update(norm(f2 * (f1 * u) - (J * u - cross * u)));
      flipped.update(norm(f1 * (f2 * u) + (J * u - cross * u)));
      j2.update(norm(J * (J * u) + u));
      jmetric.update((J * u).dot(g * (J * v)) - u.dot(g * v));
      c_square.update(norm(phi * (phi * u) + u - vertical * u));
      m_skew.update((phi * u).dot(g * v) + u.dot(g * (phi * v)));
      m_compat.update((phi * u).dot(g * (phi * v)) - u.dot(g * v) + e1.dot(u) * e1.dot(v) + e2.dot(u) * e2.dot(v));
    }
    const std::vector<VectorJet> fields = test_field_family(xs, opts.seed);
    for (std::size_t a = 0; a < fields.size(); ++a)
      for (std::size_t b = a + 1; b < fields.size(); ++b) nj.update(norm(nijenhuis(jj, fields[a], fields[b])));
  }

  HermitianPairResult out{structure, AuditReport{}, {}};
  AuditReport& r = out.report;
  r.title = "contact pair from two almost contact structures on a Hermitian manifold";
  r.metadata.manifold = base.name();
  const double tol = 1e-8;
  const Provenance pub = Provenance::kPublished;
  auto pre = [&](const std::string& name, const std::string& anchor, double value) {
    r.add(AuditEntry::below("prerequisites", name, anchor, value, tol, pub));
    if (!r.entries.back().pass) out.failed_prerequisites.push_back(name);
  };
  pre("J^2 + I", "J^2 = -I", j2.value());
  pre("g(JX,JY) - g(X,Y)", "g(JX, JY) = g(X, Y)", jmetric.value());
  r.add(AuditEntry::below("prerequisites", "N_J", "J integrable", nj.value(), kSecondDerivativeTol, pub));
  if (!r.entries.back().pass) out.failed_prerequisites.push_back("N_J");
  pre("g(varphi1 X,Y) + g(X,varphi1 Y)", "g(varphi_i X1, X2) = -g(X1, varphi_i X2), i = 1", skew1.value());
  pre("g(varphi2 X,Y) + g(X,varphi2 Y)", "g(varphi_i X1, X2) = -g(X1, varphi_i X2), i = 2", skew2.value());
  pre("J xi1 - xi2", "J xi1 = xi2", jxi1.value());
  pre("J xi2 + xi1", "J xi2 = -xi1", jxi2.value());
  pre("varphi1^2 + I - eta(x)xi", "varphi_1^2 X1 = -X1 + eta1(X1) xi1 + eta2(X1) xi2", sq1.value());
  pre("varphi2^2 + I - eta(x)xi", "varphi_2^2 X1 = -X1 + eta1(X1) xi1 + eta2(X1) xi2", sq2.value());
  pre("varphi1 xi_j", "varphi1 xi_j = 0", phi1_xi.value());
  pre("varphi2 xi_j", "varphi2 xi_j = 0", phi2_xi.value());
  pre("eta_i o varphi_i", "eta_i(varphi_i X) = 0", eta_phi.value());
  pre("varphi1 J - varphi2", "varphi1(J X1) = varphi2 X1", a1j.value());
  pre("J varphi1 + varphi2", "-J varphi1 X1 = varphi2 X1", a1jj.value());
  pre("varphi2 J + varphi1", "varphi2(J X1) = -varphi1 X1", a2j.value());
  pre("J varphi2 - varphi1", "-J varphi2 X1 = -varphi1 X1", a2jj.value());
  pre("varphi2 varphi1 - (J + eta1(x)xi2 - eta2(x)xi1)", "varphi2(varphi1 X1) = J X1 + eta1(X1) xi2 - eta2(X1) xi1",
      stated_a.value());
  pre("varphi1 varphi2 + (J + eta1(x)xi2 - eta2(x)xi1)",
      "-varphi1(varphi2 X1) = J X1 + eta1(X1) xi2 - eta2(X1) xi1", stated_b.value());
  r.add(AuditEntry::below("prerequisites", "sign-flipped: varphi2 varphi1 = -varphi1 varphi2 = J - eta1(x)xi2 + eta2(x)xi1",
                          "varphi2(varphi1 X1) = J X1 - eta1(X1) xi2 + eta2(X1) xi1", flipped.value(), tol,
                          Provenance::kDerived)
            .informational("variant consistent with the other hypotheses"));

  r.add(AuditEntry::below("conclusions", "phi^2 + I - eta(x)xi", "phi^2 X1 = -X1 + eta1(X1) xi1 + eta2(X1) xi2",
                          c_square.value(), tol, pub));
  r.add(AuditEntry::below("conclusions", "eta_i(xi_j) - delta_ij", "eta_i(xi_j) = delta_ij", c_eta.value(), 1e-10, pub));
  r.add(AuditEntry::below("conclusions", "phi xi_i", "phi(xi_i) = 0", c_phixi.value(), tol, pub));
  r.add(AuditEntry::below("metric", "g(phi X,Y) + g(X,phi Y)", "g(phi X1, X2) = -g(X1, phi X2)", m_skew.value(), tol,
                          pub));
  r.add(AuditEntry::below("metric", "compatibility",
                          "g(phi X1, phi X2) = g(X1, X2) - eta1(X1) eta1(X2) - eta2(X1) eta2(X2)", m_compat.value(),
                          tol, pub));
  for (const std::string& f : out.failed_prerequisites) {
    r.notes.push_back("prerequisite failed: " + f + " (" + format_number(r.at(f).value) + ")");
  }
  return out;
}

}  // namespace cpc
