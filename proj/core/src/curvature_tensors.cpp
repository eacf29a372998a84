#include "cpc/curvature_tensors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cpc/errors.hpp"

namespace cpc {

const char* to_string(TensorKind k) {
  switch (k) {
    case TensorKind::kConformal: return "conformal";
    case TensorKind::kConcircular: return "concircular";
    case TensorKind::kQuasiConformal: return "quasi";
  }
  return "?";
}

QuasiConformalParams conformal_params(int n) { return {1.0, -1.0 / (n - 2)}; }

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

TensorValue empty_13(const CurvatureBundle& b) {
  TensorValue t;
  t.contravariant = 1;
  t.covariant = 3;
  t.components = ComponentArray(b.dim(), 4);
  t.base_point = b.point;
  return t;
}

void check_type(const CurvatureBundle& b, int p, int q) {
  if (p < 0 || q < 0 || 2 * p + 2 * q + 2 != b.dim()) {
    throw DimensionMismatch("type (" + std::to_string(p) + ", " + std::to_string(q) +
                            ") does not match dimension " + std::to_string(b.dim()));
  }
}

}  // namespace

TensorValue riemann_tensor(const CurvatureBundle& b) {
  TensorValue t = empty_13(b);
  t.components = b.riemann_ud;
  return t;
}

TensorValue conformal_at(const CurvatureBundle& b) {
  const int n = b.dim();
  if (n < 3) throw DimensionMismatch("conformal tensor needs dimension >= 3, got " + std::to_string(n));
  const Matrix& g = b.g;
  const Matrix& ric = b.ricci;
  const Matrix& q = b.q_operator;
  const double c1 = b.scal / ((n - 1.0) * (n - 2.0));
  const double c2 = 1.0 / (n - 2.0);
  TensorValue t = empty_13(b);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          t.components(l, k, i, j) =
              b.riemann_ud(l, k, i, j) + c1 * (g(j, k) * delta(l, i) - g(i, k) * delta(l, j)) +
              c2 * (g(i, k) * q(l, j) - g(j, k) * q(l, i) + ric(i, k) * delta(l, j) - ric(j, k) * delta(l, i));
        }
  return t;
}

TensorValue conformal_at(const CurvatureBundle& b, int p, int q) {
  check_type(b, p, q);
  return conformal_at(b);
}

TensorValue concircular_at(const CurvatureBundle& b) {
  const int n = b.dim();
  if (n < 2) throw DimensionMismatch("concircular tensor needs dimension >= 2");
  const Matrix& g = b.g;
  const double c = b.scal / (n * (n - 1.0));
  TensorValue t = empty_13(b);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          t.components(l, k, i, j) =
              b.riemann_ud(l, k, i, j) - c * (g(j, k) * delta(l, i) - g(i, k) * delta(l, j));
        }
  return t;
}

TensorValue concircular_at(const CurvatureBundle& b, int p, int q) {
  check_type(b, p, q);
  return concircular_at(b);
}

TensorValue quasi_conformal_at(const CurvatureBundle& b, QuasiConformalParams params) {
  const int n = b.dim();
  if (n < 2) throw DimensionMismatch("quasi-conformal tensor needs dimension >= 2");
  const Matrix& g = b.g;
  const Matrix& ric = b.ricci;
  const Matrix& q = b.q_operator;
  const double c = b.scal / n * (params.a / (n - 1.0) + 2.0 * params.b);
  TensorValue t = empty_13(b);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          t.components(l, k, i, j) =
              params.a * b.riemann_ud(l, k, i, j) +
              params.b * (ric(j, k) * delta(l, i) - ric(i, k) * delta(l, j) + g(j, k) * q(l, i) - g(i, k) * q(l, j)) -
              c * (g(j, k) * delta(l, i) - g(i, k) * delta(l, j));
        }
  return t;
}

TensorValue quasi_conformal_at(const CurvatureBundle& b, int p, int q, QuasiConformalParams params) {
  check_type(b, p, q);
  return quasi_conformal_at(b, params);
}

double max_single_trace(const TensorValue& t) {
  const ComponentArray& c = t.components;
  const int n = c.dim();
  double out = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (int l = 0; l < n; ++l) {
        s1 += c(l, a, l, b);  // contract with the first slot
        s2 += c(l, a, b, l);  // second slot
        s3 += c(l, l, a, b);  // the argument being acted on
      }
      out = std::max({out, std::abs(s1), std::abs(s2), std::abs(s3)});
    }
  return out;
}

double frame_max_component(const TensorValue& t, const Matrix& g) {
  return to_frame(t.components, orthonormal_frame(g)).max_abs();
}

ChartedManifold conformally_rescaled(const ChartedManifold& m, const Expr& f) {
  ChartedManifold out(m.name() + "_rescaled", m.coord_names(), m.sample_box());
  const Expr factor = apply(UnaryOp::kExp, Expr::constant(2.0) * f);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) out.set_metric(i, j, factor * m.metric(i, j));
  return out;
}

namespace {

TensorValue tensor_of(const CurvatureBundle& b, TensorKind kind, const std::optional<QuasiConformalParams>& params) {
  switch (kind) {
    case TensorKind::kConformal: return conformal_at(b);
    case TensorKind::kConcircular: return concircular_at(b);
    case TensorKind::kQuasiConformal: return quasi_conformal_at(b, *params);
  }
  return conformal_at(b);
}

std::vector<CurvatureBundle> bundles_at(const ChartedManifold& m, const std::vector<Vector>& pts) {
  std::vector<CurvatureBundle> out;
  out.reserve(pts.size());
  for (const Vector& x : pts) {
    out.push_back(curvature_at(m, std::span<const double>(x.data(), static_cast<std::size_t>(x.size()))));
  }
  return out;
}

Matrix ricci_in_frame(const CurvatureBundle& b, const Matrix& e) { return e.transpose() * b.ricci * e; }

// max |Ric - c g| over an orthonormal frame E of the given subspace.
double ricci_deviation(const CurvatureBundle& b, const Matrix& e, double c) {
  const Matrix m = ricci_in_frame(b, e) - c * Matrix::Identity(e.cols(), e.cols());
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Frame for the horizontal bundle: from the pair if there is one, else TM.
Matrix horizontal_or_full(const ContactPairStructure* pair, const CurvatureBundle& b) {
  if (pair == nullptr) return orthonormal_frame(b.g);
  const PairPoint pt = evaluate_pair(*pair, std::span<const double>(b.point.data(), static_cast<std::size_t>(b.point.size())));
  return horizontal_frame(pt);
}

void begin_theorem(AuditReport& r, const ChartedManifold& m, const ContactPairStructure* pair,
                   const SamplingOptions& opts, const std::string& title) {
  r.title = title;
  r.metadata.manifold = m.name();
  if (pair == nullptr) {
    r.notes.push_back("no contact pair structure: H is taken to be all of TM");
    return;
  }
  const AuditReport normal = normality_check(*pair, opts);
  const double worst = std::max(normal.at("N_J").value, normal.at("N_T").value);
  r.add(AuditEntry::below("hypotheses", "normality (max N_J, N_T)", "J and T integrable", worst,
                          kSecondDerivativeTol, Provenance::kPublished));
}

void skip_note(AuditReport& r) { r.notes.push_back("theorem hypotheses unmet: steps skipped"); }

}  // namespace

FlatnessReport flatness(const ChartedManifold& m, TensorKind kind, std::optional<QuasiConformalParams> params,
                        const SamplingOptions& opts, double tol) {
  if (kind == TensorKind::kQuasiConformal && !params) {
    throw MissingParams("quasi-conformal flatness needs parameters a and b");
  }
  Sampler sampler(opts.seed);
  MaxResidual worst;
  for (const Vector& x : sampler.points(m, opts.samples)) {
    const CurvatureBundle b = curvature_at(m, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    worst.update(frame_max_component(tensor_of(b, kind, params), b.g));
  }
  FlatnessReport r;
  r.tensor_name = to_string(kind);
  r.max_component = worst.value();
  r.samples = opts.samples;
  r.tol = tol;
  r.is_flat = r.max_component < tol;
  return r;
}

EinsteinReport einstein_check(const ChartedManifold& m, const SamplingOptions& opts) {
  Sampler sampler(opts.seed);
  const std::vector<CurvatureBundle> bundles = bundles_at(m, sampler.points(m, opts.samples));
  const int n = m.dim();
  EinsteinReport r;
  if (bundles.empty()) return r;
  double trace_sum = 0.0;
  std::vector<Matrix> frames;
  for (const CurvatureBundle& b : bundles) {
    frames.push_back(orthonormal_frame(b.g));
    trace_sum += ricci_in_frame(b, frames.back()).trace();
  }
  r.scal = trace_sum / static_cast<double>(bundles.size());
  r.lambda = r.scal / n;
  MaxResidual worst;
  for (std::size_t s = 0; s < bundles.size(); ++s) worst.update(ricci_deviation(bundles[s], frames[s], r.lambda));
  r.max_residual = worst.value();
  r.is_einstein = r.max_residual < 1e-7;
  return r;
}

AuditReport audit_identities(const ContactPairStructure& s, const SamplingOptions& opts) {
  AuditReport r;
  r.title = "curvature identities of a normal metric contact pair";
  r.metadata.manifold = s.base().name();
  const bool normal = normality_check(s, opts).passed();
  if (!normal) r.notes.push_back("structure is not normal: identities reported without gating");

  const ChartedManifold& m = s.base();
  const double pq2 = 2.0 * (s.p() + s.q());
  Sampler sampler(opts.seed);
  MaxResidual rzz, ric_xz, ric_zz, ric_z1, ric_z2, ric_z12, split_form, combined_form, four;
  for (const Vector& x : sampler.points(m, opts.samples)) {
    const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    const CurvatureBundle b = curvature_at(m, xs);
    const PairPoint pt = evaluate_pair(s, xs);
    const Matrix& phi = pt.phi.value;
    const Vector& z1 = pt.z1.value;
    const Vector& z2 = pt.z2.value;
    const Vector z = z1 + z2;
    ric_zz.update(b.ric(z, z) - pq2);
    ric_z1.update(b.ric(z1, z1) - 2.0 * s.p());
    ric_z2.update(b.ric(z2, z2) - 2.0 * s.q());
    ric_z12.update(b.ric(z1, z2));
    for (int k = 0; k < opts.vectors_per_point; ++k) {
      const Vector v = sampler.unit_vector(pt.g);
      rzz.update(pt.norm(b.curvature_operator(v, z, z) + phi * (phi * v)));
      const Vector x1 = pt.random_horizontal(sampler);
      const Vector x2 = pt.random_horizontal(sampler);
      const Vector x3 = pt.random_horizontal(sampler);
      ric_xz.update(b.ric(x1, z));
      const Vector r_xzy = b.curvature_operator(x1, z, x2);
      split_form.update(pt.norm(r_xzy + pt.da1(phi * x1, x2) * z1 + pt.da2(phi * x1, x2) * z2));
      combined_form.update(pt.norm(r_xzy + (pt.da1(phi * x1, x2) + pt.da2(phi * x1, x2)) * z));
      const double rhs = pt.da1(phi * x3, x1) * pt.a1(x2) + pt.da2(phi * x3, x1) * pt.a2(x2) -
                         pt.da1(phi * x3, x1) * pt.a1(x2) - pt.da2(phi * x3, x2) * pt.a2(x1);
      four.update(b.riemann4(x1, x2, z, x3) - rhs);
    }
  }
  auto add = [&](AuditEntry e) {
    if (!normal) e.informational("structure is not normal");
    r.add(std::move(e));
  };
  add(AuditEntry::below("identities", "R(X,Z)Z + phi^2 X", "R(X, Z)Z = -phi^2 X", rzz.value(),
                        1e-8, Provenance::kPublished));
  add(AuditEntry::below("identities", "Ric(X,Z), X in H", "Ric(X, Z) = 0 for horizontal X", ric_xz.value(), 1e-8,
                        Provenance::kPublished));
  add(AuditEntry::below("identities", "Ric(Z,Z) - (2p+2q)", "Ric(Z, Z) = 2p + 2q", ric_zz.value(), 1e-8,
                        Provenance::kPublished));
  add(AuditEntry::below("identities", "Ric(Z1,Z1) - 2p", "Ric(Z1, Z1) = 2p", ric_z1.value(), 1e-8,
                        Provenance::kPublished));
  add(AuditEntry::below("identities", "Ric(Z2,Z2) - 2q", "Ric(Z2, Z2) = 2q", ric_z2.value(), 1e-8,
                        Provenance::kPublished));
  add(AuditEntry::below("identities", "Ric(Z1,Z2)", "Ric(Z1, Z2) = 0", ric_z12.value(), 1e-8,
                        Provenance::kPublished));
  add(AuditEntry::below("identities", "R(X1,Z)X2 (per-form)",
                        "R(X1, Z)X2 = -d alpha1(phi X1, X2) Z1 - d alpha2(phi X1, X2) Z2, X1, X2 in H",
                        split_form.value(), 1e-8, Provenance::kPublished));
  r.add(AuditEntry::below("identities", "R(X1,Z)X2 (summed form)",
                          "R(X1, Z)X2 = -(d alpha1 + d alpha2)(phi X1, X2) Z, X1, X2 in H", combined_form.value(),
                          1e-8, Provenance::kPublished)
            .informational("second stated form of the same identity; disagrees with the per-form line"));
  add(AuditEntry::below("identities", "R(X1,X2,Z,X3)",
                        "R(X1, X2, Z, X3) = d alpha1(phi X3, X1) alpha1(X2) + d alpha2(phi X3, X1) alpha2(X2) "
                        "- d alpha1(phi X3, X1) alpha1(X2) - d alpha2(phi X3, X2) alpha2(X1), Xi in H",
                        four.value(), 1e-8, Provenance::kPublished));
  return r;
}

ConformalConstants conformal_constants(int n, double scal) {
  ConformalConstants c;
  const double nd = n;
  c.a = scal / ((nd - 1.0) * (nd - 2.0));
  c.b = 1.0 / (nd - 2.0);
  c.einstein_factor = -(2.0 * c.a + 1.0) / (2.0 * c.b);
  c.predicted_scal = -(nd - 1.0) * nd / (nd + 1.0);
  c.stated_sectional = -(nd - 1.0) * (nd - 1.0) * nd * (nd - 2.0) / (nd + 1.0);
  c.derived_sectional = nd / ((nd + 1.0) * (nd - 2.0));
  return c;
}

AuditReport audit_theorem_conformal(const ChartedManifold& m, const ContactPairStructure* pair,
                                    const SamplingOptions& opts, double tol) {
  const int n = m.dim();
  if (n < 3) throw DimensionMismatch("conformal tensor needs dimension >= 3, got " + std::to_string(n));
  AuditReport r;
  begin_theorem(r, m, pair, opts, "conformally flat normal metric contact pairs");
  Sampler sampler(opts.seed);
  const std::vector<CurvatureBundle> bundles = bundles_at(m, sampler.points(m, opts.samples));
  MaxResidual c_max;
  for (const CurvatureBundle& b : bundles) c_max.update(frame_max_component(conformal_at(b), b.g));
  r.add(AuditEntry::below("hypotheses", "C flatness (max frame component)", "C = 0", c_max.value(), tol,
                          Provenance::kDerived));
  if (!r.passed()) {
    skip_note(r);
    return r;
  }

  MaxResidual einstein_h, scal_dev, k_minus_a, k_stated, k_derived, einstein;
  double a_sum = 0.0, scal_sum = 0.0;
  double k_min = std::numeric_limits<double>::infinity();
  double k_max = -std::numeric_limits<double>::infinity();
  for (const CurvatureBundle& b : bundles) {
    const ConformalConstants c = conformal_constants(n, b.scal);
    a_sum += c.a;
    scal_sum += b.scal;
    const Matrix h = horizontal_or_full(pair, b);
    einstein_h.update((h.transpose() * (b.ricci - c.einstein_factor * b.g) * h).norm());
    scal_dev.update(b.scal - c.predicted_scal);
    const Matrix e = orthonormal_frame(b.g);
    einstein.update(ricci_deviation(b, e, b.scal / n));
    for (int k = 0; k < opts.vectors_per_point; ++k) {
      const Vector x = sampler.unit_vector(b.g);
      const Vector y = sampler.unit_vector(b.g);
      double sec = nan();
      try {
        sec = sectional(b, x, y);
      } catch (const DegeneratePlane&) {
        continue;
      }
      k_min = std::min(k_min, sec);
      k_max = std::max(k_max, sec);
      k_minus_a.update(sec + c.a);
      k_stated.update(sec - c.stated_sectional);
      k_derived.update(sec - c.derived_sectional);
    }
  }
  const double count = static_cast<double>(bundles.size());
  const ConformalConstants mean = conformal_constants(n, scal_sum / count);
  r.add(AuditEntry::info("constants", "A = scal/((n-1)(n-2)) (mean)", "A = scal / ((2p+2q+1)(2p+2q))", a_sum / count,
                         Provenance::kPublished));
  r.add(AuditEntry::info("constants", "B = 1/(n-2)", "B = 1 / (2p+2q)", mean.b, Provenance::kPublished));
  r.add(AuditEntry::info("constants", "scal (mean)", "scal = tr Q", scal_sum / count, Provenance::kDerived));
  r.add(AuditEntry::below("steps", "horizontal Einstein residual |Ric + (2A+1)/(2B) g|_H",
                          "Ric(X1, X4) = -(2A+1)/(2B) g(X1, X4), X1, X4 in H", einstein_h.value(), tol,
                          Provenance::kPublished)
            .informational("Frobenius norm over an orthonormal frame of H"));
  r.add(AuditEntry::below("steps", "scal - predicted scal", "scal = -(2p+2q+1)(2p+2q+2)/(2p+2q+3)",
                          scal_dev.value(), tol, Provenance::kPublished)
            .informational("prediction " + format_number(mean.predicted_scal)));
  r.add(AuditEntry::below("steps", "sectional + A", "k(X1, X2) = -A", k_minus_a.value(), tol, Provenance::kPublished)
            .informational());
  r.add(AuditEntry::below("steps", "sectional - stated value",
                          "k = -(2p+2q+1)^2 (2p+2q+2)(2p+2q)/(2p+2q+3)", k_stated.value(), tol,
                          Provenance::kPublished)
            .informational("stated value " + format_number(mean.stated_sectional)));
  r.add(AuditEntry::below("steps", "sectional - value implied by predicted scal", "k = (2p+2q+2)/((2p+2q+3)(2p+2q))",
                          k_derived.value(), tol, Provenance::kDerived)
            .informational("implied value " + format_number(mean.derived_sectional)));
  r.add(AuditEntry::below("conclusions", "Einstein (max |Ric - scal/n g|)", "Ric = lambda g", einstein.value(), tol,
                          Provenance::kPublished)
            .informational());
  r.add(AuditEntry::below("conclusions", "scal < 0", "scal < 0", scal_sum / count, 0.0, Provenance::kPublished)
            .informational());
  r.add(AuditEntry::above("conclusions", "min sectional > 0", "k > 0", k_min, 0.0, Provenance::kPublished)
            .informational());
  r.add(AuditEntry::info("conclusions", "max sectional", "k", k_max));
  return r;
}

AuditReport audit_theorem_concircular(const ChartedManifold& m, const ContactPairStructure* pair,
                                      const SamplingOptions& opts, double tol) {
  const int n = m.dim();
  AuditReport r;
  begin_theorem(r, m, pair, opts, "concircularly flat normal metric contact pairs");
  Sampler sampler(opts.seed);
  const std::vector<CurvatureBundle> bundles = bundles_at(m, sampler.points(m, opts.samples));
  MaxResidual w_max, pointwise;
  for (const CurvatureBundle& b : bundles) {
    const double w = frame_max_component(concircular_at(b), b.g);
    w_max.update(w);
    if (w < tol) pointwise.update(ricci_deviation(b, orthonormal_frame(b.g), b.scal / n));
  }
  r.add(AuditEntry::below("hypotheses", "W flatness (max frame component)", "W = 0", w_max.value(), tol,
                          Provenance::kDerived));
  const bool hypotheses = r.passed();
  r.add(AuditEntry::below("steps", "W = 0 implies Ric = scal/n g (pointwise)", "Ric = scal/n g where W = 0",
                          pointwise.value(), 1e-8, Provenance::kDerived));
  if (!hypotheses) {
    skip_note(r);
    return r;
  }
  const EinsteinReport e = einstein_check(m, opts);
  r.add(AuditEntry::below("conclusions", "Einstein (max |Ric - lambda g|)", "Ric = lambda g", e.max_residual, tol,
                          Provenance::kPublished)
            .informational());
  r.add(AuditEntry::info("conclusions", "lambda", "lambda = scal / n", e.lambda));
  return r;
}

AuditReport audit_theorem_quasiconformal(const ChartedManifold& m, const ContactPairStructure* pair,
                                         QuasiConformalParams params, const SamplingOptions& opts, double tol) {
  const int n = m.dim();
  const double pq = (n - 2) / 2.0;  // p + q
  AuditReport r;
  begin_theorem(r, m, pair, opts, "quasi-conformally flat normal metric contact pairs");
  r.metadata.flags.emplace_back("a", format_number(params.a));
  r.metadata.flags.emplace_back("b", format_number(params.b));
  Sampler sampler(opts.seed);
  const std::vector<CurvatureBundle> bundles = bundles_at(m, sampler.points(m, opts.samples));
  MaxResidual q_max;
  double k_sum = 0.0;
  for (const CurvatureBundle& b : bundles) {
    q_max.update(frame_max_component(quasi_conformal_at(b, params), b.g));
    k_sum += b.scal / n * (params.a / (n - 1.0) + 2.0 * params.b);
  }
  const double count = std::max<double>(1.0, static_cast<double>(bundles.size()));
  r.add(AuditEntry::below("hypotheses", "C~ flatness (max frame component)", "C~ = 0", q_max.value(), tol,
                          Provenance::kDerived));
  const double lead = params.a + params.b * 2.0 * pq;
  const bool degenerate = std::abs(lead) < 1e-12;
  const bool a_zero = std::abs(params.a) < 1e-12;
  r.add(AuditEntry::info("constants", "a + b(2p+2q)", "a + b(2p+2q) != 0", lead, Provenance::kPublished)
            .with_note(degenerate ? "degenerate: Einstein step skipped" : ""));
  r.add(AuditEntry::info("constants", "a", "a != 0", params.a, Provenance::kPublished)
            .with_note(a_zero ? "degenerate: constant-curvature step skipped" : ""));
  r.add(AuditEntry::info("constants", "K (mean)", "K = scal/(2p+2q+2) [a/(2p+2q+1) + 2b]", k_sum / count,
                         Provenance::kPublished));
  if (!r.passed()) {
    skip_note(r);
    return r;
  }
  if (degenerate) return r;

  MaxResidual prop, scal_dev, ric_fixed, constant;
  const double c = pq / (2.0 * pq + 1.0);
  for (const CurvatureBundle& b : bundles) {
    const Matrix e = orthonormal_frame(b.g);
    prop.update(ricci_deviation(b, e, b.scal / n));
    scal_dev.update(b.scal - 4.0 * pq * (pq + 1.0));
    ric_fixed.update(ricci_deviation(b, e, 2.0 * pq));
    if (!a_zero) {
      const ComponentArray rf = to_frame(b.riemann_ud, e);
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              constant.update(rf(l, k, i, j) - c * (delta(j, k) * delta(i, l) - delta(i, k) * delta(j, l)));
            }
    }
  }
  r.add(AuditEntry::below("steps", "Ric - scal/(2p+2q+2) g", "Ric(X2, X3) = scal/(2p+2q+2) g(X2, X3)", prop.value(),
                          tol, Provenance::kPublished)
            .informational());
  r.add(AuditEntry::below("steps", "scal - 4(p+q)(p+q+1)", "scal = 4(p+q)(p+q+1)", scal_dev.value(), tol,
                          Provenance::kPublished)
            .informational("prediction " + format_number(4.0 * pq * (pq + 1.0))));
  r.add(AuditEntry::below("steps", "Ric - 2(p+q) g", "Ric(X2, X3) = 2(p+q) g(X2, X3)", ric_fixed.value(), tol,
                          Provenance::kPublished)
            .informational());
  if (!a_zero) {
    r.add(AuditEntry::below("conclusions", "R - constant-curvature form",
                            "R(X1,X2,X3,X4) = (p+q)/(2p+2q+1) [g(X2,X3) g(X1,X4) - g(X1,X3) g(X2,X4)]",
                            constant.value(), tol, Provenance::kPublished)
              .informational());
  }
  return r;
}

}  // namespace cpc
