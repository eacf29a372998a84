#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "cpc/contact_pair.hpp"
#include "cpc/errors.hpp"
#include "cpc/zoo.hpp"

using namespace cpc;

namespace {

using Exprs = std::vector<Expr>;

std::span<const double> sp(const Vector& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }

SamplingOptions few(int samples = 20) {
  SamplingOptions o;
  o.samples = samples;
  return o;
}

double value(const AuditReport& r, const std::string& name) { return r.at(name).value; }

Exprs outer(const Exprs& v, const Exprs& a) {
  const std::size_t n = v.size();
  Exprs out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = product_of(v[i], a[j]);
  return out;
}

Exprs plus(const Exprs& a, const Exprs& b, double s = 1.0) {
  Exprs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sum_of(a[i], product_of(Expr::constant(s), b[i]));
  return out;
}

std::shared_ptr<ChartedManifold> copy_of(const std::string& name) {
  return std::make_shared<ChartedManifold>(*builtin(name).manifold);
}

// Flat R^4 with alpha1 = dx0, alpha2 = dx1, Reeb fields d0, d1 and a constant
// complex structure on span(d2, d3).
std::shared_ptr<ChartedManifold> flat_closed_pair() {
  auto m = copy_of("euclidean4");
  Exprs phi(16, Expr::constant(0.0));
  phi[3 * 4 + 2] = Expr::constant(1.0);
  phi[2 * 4 + 3] = Expr::constant(-1.0);
  m->add_endomorphism("phi", phi);
  return m;
}

const PairFieldNames kFlatNames{"dx0", "dx1", "d0", "d1", "phi"};

}  // namespace

TEST(Structure, ConstructorChecks) {
  const ZooEntry e = builtin("s3_x_s1");
  EXPECT_THROW(ContactPairStructure(e.manifold, PairFieldNames{}, 1, 1), DimensionMismatch);
  PairFieldNames bad;
  bad.phi = "psi";
  EXPECT_THROW(ContactPairStructure(e.manifold, bad, 1, 0), UnknownField);
  const ContactPairStructure s(e.manifold, PairFieldNames{}, 1, 0);
  EXPECT_EQ(s.with_convention(ExteriorConvention::kUnit).convention(), ExteriorConvention::kUnit);
}

TEST(ValidatePair, ProductsPass) {
  for (const char* name : {"s3_x_s1", "s3_x_s3"}) {
    const AuditReport r = validate_pair(*builtin(name).pair, few());
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_GT(r.entries.front().value, 1e-3) << name;
  }
}

TEST(ValidatePair, ClosedFormsFail) {
  const ContactPairStructure s(flat_closed_pair(), kFlatNames, 1, 0);
  const AuditReport r = validate_pair(s, few());
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.entries.front().value, 0.0);
  EXPECT_FALSE(r.entries.front().pass);
}

TEST(Reeb, ProductPasses) {
  const AuditReport r = verify_reeb(*builtin("s3_x_s1").pair, few());
  EXPECT_TRUE(r.passed());
  for (const AuditEntry& e : r.entries) EXPECT_LT(e.value, 1e-9) << e.name;
}

TEST(Reeb, ClosedFormsPassTrivially) {
  const ContactPairStructure s(flat_closed_pair(), kFlatNames, 1, 0);
  EXPECT_TRUE(verify_reeb(s, few()).passed());
}

TEST(Reeb, PerturbedReebFieldFlagged) {
  auto m = copy_of("s3_x_s1");
  Exprs d_eta(4, Expr::constant(0.0));
  d_eta[0] = Expr::constant(1.0);
  m->add_vector_field("Z1", plus(m->vector_field("Z1"), d_eta, 0.1));
  const ContactPairStructure s(m, PairFieldNames{}, 1, 0);
  const AuditReport r = verify_reeb(s, few());
  EXPECT_TRUE(r.at("alpha1(Z1) - 1").pass);
  EXPECT_FALSE(r.at("i_Z1 dalpha1").pass);
  EXPECT_FALSE(r.passed());
}

TEST(Endomorphism, ProductPasses) {
  EXPECT_TRUE(validate_endomorphism(*builtin("s3_x_s1").pair, few()).passed());
}

TEST(Endomorphism, ZeroPhiFailsRank) {
  auto m = copy_of("s3_x_s1");
  m->add_endomorphism("phi", Exprs(16, Expr::constant(0.0)));
  const AuditReport r = validate_endomorphism(ContactPairStructure(m, PairFieldNames{}, 1, 0), few());
  EXPECT_FALSE(r.at("rank(phi) - (2p+2q)").pass);
}

TEST(Endomorphism, ComplexStructureAsPhiFails) {
  auto m = copy_of("s3_x_s1");
  const Exprs j = plus(plus(m->endomorphism("phi"), outer(m->vector_field("Z1"), m->one_form("alpha2")), -1.0),
                       outer(m->vector_field("Z2"), m->one_form("alpha1")));
  m->add_endomorphism("phi", j);
  const AuditReport r = validate_endomorphism(ContactPairStructure(m, PairFieldNames{}, 1, 0), few());
  EXPECT_NEAR(value(r, "phi^2 + I - alpha1(x)Z1 - alpha2(x)Z2"), 1.0, 0.5);
  EXPECT_FALSE(r.passed());
}

TEST(Metric, ProductPasses) {
  const AuditReport r = validate_metric(*builtin("s3_x_s1").pair, few());
  EXPECT_TRUE(r.passed());
  EXPECT_LT(value(r, "g(Zi,Zj) - delta_ij"), 1e-10);
  EXPECT_LT(value(r, "g(phi X,Y) + g(X,phi Y)"), 1e-10);
}

TEST(Metric, ScaledMetricFailsAssociated) {
  auto m = copy_of("s3_x_s1");
  for (int i = 0; i < 4; ++i) m->set_metric(i, i, product_of(Expr::constant(2.0), m->metric(i, i)));
  const AuditReport r = validate_metric(ContactPairStructure(m, PairFieldNames{}, 1, 0), few());
  EXPECT_GT(value(r, "associated"), 0.1);
  EXPECT_FALSE(r.passed());
}

TEST(Metric, UnitConventionFailsAssociated) {
  // Without the 1/2 in the 2-form pairing, g(X, phi Y) = d alpha(X, Y) is off by a factor 2.
  const ContactPairStructure half = *builtin("s3_x_s1").pair;
  const AuditReport r_half = validate_metric(half, few());
  const AuditReport r_unit = validate_metric(half.with_convention(ExteriorConvention::kUnit), few());
  EXPECT_TRUE(r_half.at("associated").pass);
  EXPECT_FALSE(r_unit.at("associated").pass);
  EXPECT_NEAR(value(r_unit, "associated"), 1.0, 0.2);
}

TEST(Decompose, ReebFieldIsPurelyVertical) {
  const ZooEntry e = builtin("s3_x_s1");
  const Vector x{{0.5, 1.0, 2.0, 3.0}};
  const Vector z1 = evaluate_vector_field(*e.manifold, "Z1", sp(x)).value;
  const Decomposition d = decompose(*e.pair, z1, sp(x));
  EXPECT_LT(d.x1h.norm(), 1e-12);
  EXPECT_LT(d.x2h.norm(), 1e-12);
  EXPECT_NEAR(d.v1, 1.0, 1e-12);
  EXPECT_NEAR(d.v2, 0.0, 1e-12);
}

TEST(Decompose, ReebSumPlusHorizontal) {
  const ZooEntry e = builtin("s3_x_s3");
  Sampler s(3);
  const Vector x = s.point_in_box(*e.manifold);
  const PairPoint pt = evaluate_pair(*e.pair, sp(x));
  const Vector h = pt.random_horizontal(s);
  const Decomposition d = decompose(*e.pair, pt.z1.value + pt.z2.value + h, sp(x));
  EXPECT_NEAR(d.v1, 1.0, 1e-10);
  EXPECT_NEAR(d.v2, 1.0, 1e-10);
  EXPECT_LT((d.x1h + d.x2h - h).norm(), 1e-10);
}

TEST(Decompose, ReconstructionAndHorizontality) {
  const ZooEntry e = builtin("s3_x_s3");
  Sampler s(5);
  for (const Vector& x : s.points(*e.manifold, 30)) {
    const PairPoint pt = evaluate_pair(*e.pair, sp(x));
    const Vector v = s.raw_vector(6);
    const Decomposition d = decompose(*e.pair, v, sp(x));
    EXPECT_LT((d.x1h + d.x2h + d.v1 * pt.z1.value + d.v2 * pt.z2.value - v).norm(), 1e-10);
    for (const Vector* part : {&d.x1h, &d.x2h}) {
      EXPECT_LT(std::abs(pt.a1(*part)), 1e-10);
      EXPECT_LT(std::abs(pt.a2(*part)), 1e-10);
    }
  }
}

TEST(Decompose, MixedPhiIsNotDecomposable) {
  const HermitianPairInput in = hopf_hermitian_input();
  const ContactPairStructure s(in.base, PairFieldNames{"eta1", "eta2", "xi1", "xi2", "varphi1"}, 1, 1);
  const Vector x{{0.5, 1, 2, 0.7, 3, 4}};
  EXPECT_THROW(decompose(s, Vector::Ones(6), sp(x)), NotDecomposable);
  const AuditReport r = check_decomposable(s, few());
  EXPECT_FALSE(r.passed());
  EXPECT_GE(std::max(value(r, "[P_TF1, phi]"), value(r, "[P_TF2, phi]")), 0.1);
}

TEST(Decomposable, ProductsPass) {
  for (const char* name : {"s3_x_s1", "s3_x_s3"}) {
    const AuditReport r = check_decomposable(*builtin(name).pair, few());
    EXPECT_TRUE(r.passed()) << name;
  }
  const FoliationSplit f = foliation_split(evaluate_pair(*builtin("s3_x_s1").pair, std::vector<double>{0.5, 1, 2, 3}));
  EXPECT_EQ(f.rank_tg1, 0);
  EXPECT_EQ(f.rank_tg2, 2);
}

TEST(Normality, ProductsAreNormal) {
  for (const char* name : {"s3_x_s1", "s3_x_s3"}) {
    const AuditReport r = normality_check(*builtin(name).pair, few());
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_LT(value(r, "N_J"), 1e-7);
    EXPECT_LT(value(r, "N_T"), 1e-7);
  }
}

TEST(Normality, ConstantCoefficientsGiveZero) {
  const ContactPairStructure s(flat_closed_pair(), kFlatNames, 1, 0);
  const AuditReport r = normality_check(s, few());
  EXPECT_LT(value(r, "N_J"), 1e-14);
  EXPECT_LT(value(r, "N_T"), 1e-14);
}

TEST(Normality, DeformedPhiFlagged) {
  auto m = copy_of("s3_x_s1");
  Exprs phi = m->endomorphism("phi");
  phi[0 * 4 + 1] = sum_of(phi[1], parse("0.05*x0", 4));
  m->add_endomorphism("phi", phi);
  const AuditReport r = normality_check(ContactPairStructure(m, PairFieldNames{}, 1, 0), few());
  EXPECT_FALSE(r.passed());
  EXPECT_GT(std::max(value(r, "N_J"), value(r, "N_T")), 1e-4);
}

TEST(Normality, FlatPairIsNotNormal) {
  EXPECT_FALSE(normality_check(*builtin("flat_pair4").pair, few()).passed());
}

TEST(Theorem1, ProductsPass) {
  for (const char* name : {"s3_x_s1", "s3_x_s3"}) {
    const AuditReport r = check_theorem1(*builtin(name).pair, few());
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_LT(value(r, "(nabla_X1 phi) identity"), 1e-7);
    EXPECT_LT(value(r, "nabla_X Z + phi X"), 1e-8);
  }
}

TEST(Theorem1, ReebArgumentsGiveZero) {
  // X2 = X3 = Z1: both sides vanish since phi Z1 = 0.
  const ZooEntry e = builtin("s3_x_s1");
  const Vector x{{0.4, 0.3, 0.2, 0.1}};
  const PairPoint pt = evaluate_pair(*e.pair, sp(x));
  const ComponentArray gamma = christoffel_at(*e.manifold, sp(x));
  Sampler s(1);
  const Vector x1 = s.raw_vector(4);
  const Vector z1 = pt.z1.value;
  const double lhs = pt.inner(covariant_derivative(gamma, pt.phi, x1) * z1, z1);
  EXPECT_LT(std::abs(lhs), 1e-12);
  EXPECT_EQ(pt.da1(pt.phi.value * z1, x1), 0.0);
}

TEST(Theorem1, NonNormalResidualReported) {
  const AuditReport r = verify_structure(*builtin("flat_pair4").pair, few());
  EXPECT_FALSE(r.passed());
  const AuditEntry& e = r.at("nabla_X Z + phi X");
  EXPECT_FALSE(e.gating);
  EXPECT_GT(e.value, 0.1);
  EXPECT_STREQ(e.status(), "finding");
}

TEST(AlmostComplex, SquaresToMinusIdentity) {
  for (const char* name : {"s3_x_s1", "s3_x_s3", "flat_pair4"}) {
    const ZooEntry e = builtin(name);
    Sampler s(42);
    const int n = e.manifold->dim();
    for (const Vector& x : s.points(*e.manifold, 50)) {
      const PairPoint pt = evaluate_pair(*e.pair, sp(x));
      const Matrix j = almost_complex_j(pt).value, t = almost_complex_t(pt).value;
      EXPECT_LT((j * j + Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10) << name;
      EXPECT_LT((t * t + Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10) << name;
    }
  }
}

TEST(FieldFamily, DeterministicAndSized) {
  const std::vector<double> x{0.1, 0.2, 0.3};
  const auto a = test_field_family(x, 42);
  const auto b = test_field_family(x, 42);
  ASSERT_EQ(a.size(), 13u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].jacobian, b[i].jacobian);
  }
  EXPECT_EQ(a[0].value, Vector::Unit(3, 0));
}

// ---- properties --------------------------------------------------------------

TEST(ContactPairProperty, AlgebraAtManySamples) {
  for (const char* name : {"s3_x_s1", "s3_x_s3", "flat_pair4"}) {
    const ContactPairStructure s = *builtin(name).pair;
    const SamplingOptions o = few(200);
    const AuditReport end = validate_endomorphism(s, o);
    const AuditReport met = validate_metric(s, o);
    EXPECT_LT(value(end, "alpha1 o phi"), 1e-9) << name;
    EXPECT_LT(value(end, "alpha2 o phi"), 1e-9) << name;
    EXPECT_LT(value(end, "phi^2 + I - alpha1(x)Z1 - alpha2(x)Z2"), 1e-9) << name;
    EXPECT_LT(value(met, "compatibility"), 1e-9) << name;
  }
}

TEST(ContactPairProperty, DecomposeIsLinear) {
  const ZooEntry e = builtin("s3_x_s3");
  Sampler s(42);
  for (const Vector& x : s.points(*e.manifold, 50)) {
    const Vector u = s.raw_vector(6), v = s.raw_vector(6);
    const double a = s.uniform(-2, 2), b = s.uniform(-2, 2);
    const Decomposition du = decompose(*e.pair, u, sp(x));
    const Decomposition dv = decompose(*e.pair, v, sp(x));
    const Decomposition dw = decompose(*e.pair, a * u + b * v, sp(x));
    EXPECT_LT((dw.x1h - a * du.x1h - b * dv.x1h).norm(), 1e-10);
    EXPECT_LT((dw.x2h - a * du.x2h - b * dv.x2h).norm(), 1e-10);
    EXPECT_NEAR(dw.v1, a * du.v1 + b * dv.v1, 1e-10);
    EXPECT_NEAR(dw.v2, a * du.v2 + b * dv.v2, 1e-10);
  }
}
