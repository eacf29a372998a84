#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "cpc/curvature_tensors.hpp"
#include "cpc/errors.hpp"
#include "cpc/zoo.hpp"
#include "oracles.hpp"

using namespace cpc;

namespace {

std::span<const double> sp(const Vector& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }

SamplingOptions few(int samples = 20) {
  SamplingOptions o;
  o.samples = samples;
  return o;
}

CurvatureBundle bundle(const std::string& name, std::uint64_t seed = 1) {
  const ZooEntry e = builtin(name);
  Sampler s(seed);
  return curvature_at(*e.manifold, sp(s.point_in_box(*e.manifold)));
}

double diff(const TensorValue& a, const TensorValue& b) { return oracle::max_abs_diff(a.components, b.components); }

bool has_note(const AuditReport& r, const std::string& text) {
  return std::find(r.notes.begin(), r.notes.end(), text) != r.notes.end();
}

}  // namespace

TEST(Tensors, FlatTorusAllVanish) {
  const CurvatureBundle b = bundle("flat_torus4");
  EXPECT_EQ(conformal_at(b, 1, 0).components.max_abs(), 0.0);
  EXPECT_EQ(concircular_at(b, 1, 0).components.max_abs(), 0.0);
  EXPECT_EQ(quasi_conformal_at(b, 1, 0, {2, 3}).components.max_abs(), 0.0);
}

TEST(Tensors, RoundS4ConformallyAndConcircularlyFlat) {
  const CurvatureBundle b = bundle("sphere4");
  EXPECT_LT(conformal_at(b, 1, 0).components.max_abs(), 1e-10);
  EXPECT_LT(concircular_at(b, 1, 0).components.max_abs(), 1e-10);
}

TEST(Tensors, S3xS1ConformallyFlatButNotConcircular) {
  const ZooEntry e = builtin("s3_x_s1");
  Sampler s(42);
  double c = 0.0, w = 0.0;
  for (const Vector& x : s.points(*e.manifold, 100)) {
    const CurvatureBundle b = curvature_at(*e.manifold, sp(x));
    c = std::max(c, conformal_at(b, 1, 0).components.max_abs());
    w = std::max(w, concircular_at(b, 1, 0).components.max_abs());
  }
  EXPECT_LT(c, 1e-8);
  EXPECT_GT(w, 0.1);
}

TEST(Tensors, QuasiSpecializations) {
  for (const char* name : {"s3_x_s1", "s3_x_s3", "sphere4"}) {
    const CurvatureBundle b = bundle(name);
    EXPECT_LT(diff(quasi_conformal_at(b, {1, 0}), concircular_at(b)), 1e-12) << name;
    EXPECT_LT(diff(quasi_conformal_at(b, conformal_params(b.dim())), conformal_at(b)), 1e-12) << name;
    EXPECT_EQ(quasi_conformal_at(b, {0, 0}).components.max_abs(), 0.0) << name;
  }
  EXPECT_DOUBLE_EQ(conformal_params(6).b, -0.25);
}

TEST(Tensors, RiemannTensorWrapsBundle) {
  const CurvatureBundle b = bundle("sphere3");
  const TensorValue r = riemann_tensor(b);
  EXPECT_EQ(r.contravariant, 1);
  EXPECT_EQ(r.covariant, 3);
  EXPECT_EQ(oracle::max_abs_diff(r.components, b.riemann_ud), 0.0);
}

TEST(Tensors, DimensionChecks) {
  const CurvatureBundle b = bundle("s3_x_s1");
  EXPECT_THROW(conformal_at(b, 1, 1), DimensionMismatch);
  EXPECT_THROW(concircular_at(b, 0, 0), DimensionMismatch);
  EXPECT_THROW(quasi_conformal_at(b, 2, 0, {1, 0}), DimensionMismatch);
  EXPECT_THROW(conformal_at(bundle("sphere2")), DimensionMismatch);
}

TEST(Tensors, RescaledMetric) {
  const ZooEntry e = builtin("sphere2");
  const ChartedManifold r = conformally_rescaled(*e.manifold, parse("0.5", 2));
  const Vector x{{1.0, 0.5}};
  EXPECT_NEAR(curvature_at(r, sp(x)).scal, 2.0 / std::exp(1.0), 1e-12);
}

TEST(Flatness, FlatTorusEveryTensor) {
  const ZooEntry e = builtin("flat_torus4");
  EXPECT_TRUE(flatness(*e.manifold, TensorKind::kConformal, std::nullopt, few()).is_flat);
  EXPECT_TRUE(flatness(*e.manifold, TensorKind::kConcircular, std::nullopt, few()).is_flat);
  EXPECT_TRUE(flatness(*e.manifold, TensorKind::kQuasiConformal, QuasiConformalParams{2, 3}, few()).is_flat);
}

TEST(Flatness, S3xS1) {
  const ZooEntry e = builtin("s3_x_s1");
  const FlatnessReport c = flatness(*e.manifold, TensorKind::kConformal, std::nullopt, few());
  EXPECT_TRUE(c.is_flat);
  EXPECT_EQ(c.tensor_name, "conformal");
  EXPECT_EQ(c.samples, 20);
  EXPECT_FALSE(flatness(*e.manifold, TensorKind::kConcircular, std::nullopt, few()).is_flat);
  EXPECT_THROW(flatness(*e.manifold, TensorKind::kQuasiConformal, std::nullopt, few()), MissingParams);
}

TEST(Einstein, Examples) {
  const EinsteinReport s4 = einstein_check(*builtin("sphere4").manifold, few());
  EXPECT_TRUE(s4.is_einstein);
  EXPECT_NEAR(s4.lambda, 3.0, 1e-9);
  EXPECT_NEAR(s4.lambda, s4.scal / 4.0, 1e-8);
  const EinsteinReport t = einstein_check(*builtin("flat_torus4").manifold, few());
  EXPECT_TRUE(t.is_einstein);
  EXPECT_EQ(t.lambda, 0.0);
  const EinsteinReport p = einstein_check(*builtin("s3_x_s1").manifold, few());
  EXPECT_FALSE(p.is_einstein);
  EXPECT_NEAR(p.max_residual, 1.5, 1e-9);  // Ric eigenvalues (2,2,2,0), lambda = 6/4
}

TEST(Identities, S3xS1) {
  const AuditReport r = audit_identities(*builtin("s3_x_s1").pair, few());
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.at("Ric(Z,Z) - (2p+2q)").value, 1e-8);
  EXPECT_LT(r.at("Ric(Z1,Z1) - 2p").value, 1e-8);
  EXPECT_LT(r.at("Ric(Z2,Z2) - 2q").value, 1e-8);
  EXPECT_EQ(r.at("R(X1,Z)X2 (per-form)").provenance, Provenance::kPublished);
  EXPECT_FALSE(r.at("R(X1,Z)X2 (summed form)").gating);
}

TEST(Identities, S3xS3) {
  const AuditReport r = audit_identities(*builtin("s3_x_s3").pair, few());
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.at("Ric(Z,Z) - (2p+2q)").value, 1e-8);
}

TEST(Identities, NonNormalStructureNeverGates) {
  const AuditReport r = audit_identities(*builtin("flat_pair4").pair, few());
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.at("Ric(Z,Z) - (2p+2q)").value, 2.0, 1e-9);
  EXPECT_STREQ(r.at("Ric(Z,Z) - (2p+2q)").status(), "finding");
}

TEST(ConformalAuditor, Constants) {
  const ConformalConstants c = conformal_constants(4, 6.0);
  EXPECT_DOUBLE_EQ(c.a, 1.0);
  EXPECT_DOUBLE_EQ(c.b, 0.5);
  EXPECT_DOUBLE_EQ(c.einstein_factor, -3.0);
  EXPECT_DOUBLE_EQ(c.predicted_scal, -2.4);
  EXPECT_DOUBLE_EQ(c.stated_sectional, -14.4);
  EXPECT_DOUBLE_EQ(c.derived_sectional, 0.4);
}

TEST(ConformalAuditor, FlatTorus) {
  // A = 0, so the horizontal Einstein step predicts Ric = -(1/2B) g = -g while Ric = 0.
  const AuditReport r = audit_theorem_conformal(*builtin("flat_torus4").manifold, nullptr, few());
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.at("horizontal Einstein residual |Ric + (2A+1)/(2B) g|_H").value, 2.0, 1e-12);
  EXPECT_STREQ(r.at("horizontal Einstein residual |Ric + (2A+1)/(2B) g|_H").status(), "finding");
}

TEST(ConformalAuditor, S3xS1) {
  const ZooEntry e = builtin("s3_x_s1");
  const AuditReport r = audit_theorem_conformal(*e.manifold, &*e.pair, few());
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.at("C flatness (max frame component)").pass);
  EXPECT_NEAR(r.at("horizontal Einstein residual |Ric + (2A+1)/(2B) g|_H").value, 5.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(r.at("scal - predicted scal").value, 8.4, 1e-9);
  EXPECT_FALSE(r.at("Einstein (max |Ric - scal/n g|)").gating);
}

TEST(ConformalAuditor, HypothesesUnmetSkipsSteps) {
  const ZooEntry e = builtin("s3_x_s3");
  const AuditReport r = audit_theorem_conformal(*e.manifold, &*e.pair, few());
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(has_note(r, "theorem hypotheses unmet: steps skipped"));
  EXPECT_EQ(r.find("scal - predicted scal"), nullptr);
}

TEST(ConcircularAuditor, Examples) {
  const AuditReport s4 = audit_theorem_concircular(*builtin("sphere4").manifold, nullptr, few());
  EXPECT_TRUE(s4.passed());
  EXPECT_LT(s4.at("Einstein (max |Ric - lambda g|)").value, 1e-8);
  const AuditReport t = audit_theorem_concircular(*builtin("flat_torus4").manifold, nullptr, few());
  EXPECT_TRUE(t.passed());
  EXPECT_EQ(t.at("lambda").value, 0.0);
  const ZooEntry e = builtin("s3_x_s1");
  const AuditReport p = audit_theorem_concircular(*e.manifold, &*e.pair, few());
  EXPECT_FALSE(p.passed());
  EXPECT_TRUE(has_note(p, "theorem hypotheses unmet: steps skipped"));
}

TEST(QuasiAuditor, ConformalSpecializationOnS3xS1) {
  const ZooEntry e = builtin("s3_x_s1");
  const AuditReport r = audit_theorem_quasiconformal(*e.manifold, &*e.pair, conformal_params(4), few());
  // n - 2 = 2p + 2q, so the conformal choice always lands on a + b(2p+2q) = 0.
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.at("a + b(2p+2q)").value, 0.0, 1e-15);
  EXPECT_EQ(r.find("Ric - 2(p+q) g"), nullptr);
}

TEST(QuasiAuditor, DegenerateParametersSkipEinsteinStep) {
  const AuditReport r = audit_theorem_quasiconformal(*builtin("flat_torus4").manifold, nullptr, {1, -0.5}, few());
  EXPECT_EQ(r.at("a + b(2p+2q)").value, 0.0);
  EXPECT_EQ(r.find("Ric - scal/(2p+2q+2) g"), nullptr);
}

TEST(QuasiAuditor, FlatTorusScalarDeviation) {
  const AuditReport r = audit_theorem_quasiconformal(*builtin("flat_torus4").manifold, nullptr, {2, 3}, few());
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.at("scal - 4(p+q)(p+q+1)").value, 8.0, 1e-12);
}

// ---- properties --------------------------------------------------------------

TEST(TensorProperty, ConformalIsTraceFree) {
  for (const std::string& name : builtin_names()) {
    const ZooEntry e = builtin(name);
    if (e.manifold->dim() < 3) continue;
    Sampler s(42);
    for (const Vector& x : s.points(*e.manifold, 50))
      EXPECT_LT(max_single_trace(conformal_at(curvature_at(*e.manifold, sp(x)))), 1e-9) << name;
  }
}

TEST(TensorProperty, AntisymmetricInFirstTwoSlots) {
  for (const char* name : {"s3_x_s1", "s3_x_s3", "sphere4", "flat_pair4"}) {
    const CurvatureBundle b = bundle(name, 7);
    const int n = b.dim();
    for (const TensorValue& t : {conformal_at(b), concircular_at(b), quasi_conformal_at(b, {2, 3})}) {
      double worst = 0.0;
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              worst = std::max(worst, std::abs(t.components(l, k, i, j) + t.components(l, k, j, i)));
      EXPECT_LT(worst, 1e-10) << name;
    }
  }
}

TEST(TensorProperty, ConformalInvariance) {
  const Expr f4 = parse("0.1*x0 + 0.05*x1^2", 4);
  for (const char* name : {"euclidean4", "s3_x_s1", "sphere4"}) {
    const ZooEntry e = builtin(name);
    const ChartedManifold r = conformally_rescaled(*e.manifold, f4);
    Sampler s(42);
    for (const Vector& x : s.points(*e.manifold, 30)) {
      const TensorValue c0 = conformal_at(curvature_at(*e.manifold, sp(x)));
      const TensorValue c1 = conformal_at(curvature_at(r, sp(x)));
      EXPECT_LT(diff(c0, c1), 1e-6) << name;
    }
  }
}

TEST(TensorProperty, ConcircularFlatImpliesEinsteinPointwise) {
  for (const char* name : {"sphere3", "sphere4", "flat_torus4"}) {
    const ZooEntry e = builtin(name);
    Sampler s(42);
    for (const Vector& x : s.points(*e.manifold, 30)) {
      const CurvatureBundle b = curvature_at(*e.manifold, sp(x));
      ASSERT_LT(concircular_at(b).components.max_abs(), 1e-8);
      EXPECT_LT((b.ricci - b.scal / b.dim() * b.g).cwiseAbs().maxCoeff(), 1e-8) << name;
    }
  }
}

TEST(TensorProperty, FrameNormIsChartIndependent) {
  // The frame-normalized size of W on S^3 x S^1 does not depend on the point.
  const ZooEntry e = builtin("s3_x_s1");
  Sampler s(3);
  std::vector<double> values;
  for (const Vector& x : s.points(*e.manifold, 10)) {
    const CurvatureBundle b = curvature_at(*e.manifold, sp(x));
    values.push_back(frame_max_component(concircular_at(b), b.g));
  }
  for (double v : values) EXPECT_NEAR(v, values.front(), 1e-10);
}
