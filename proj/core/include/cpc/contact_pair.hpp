#pragma once

// Metric contact pair structures (alpha1, alpha2, Z1, Z2, phi, g) of type
// (p, q) on a chart, and their sampled validators.
//
// Sub-bundle naming follows the usual split of a contact pair:
//   H    = ker alpha1 ∩ ker alpha2
//   TG_i = ker d(alpha_i) ∩ H
//   TF_1 = TG_1 ⊕ R Z2,  TF_2 = TG_2 ⊕ R Z1
// so on a product M1 x M2 (alpha1 contact on M1), TG_2 is the horizontal
// part of M1 and TG_1 that of M2. phi_1 = phi ∘ P(TG_2) and
// phi_2 = phi ∘ P(TG_1) are the factor pieces of phi.

#include <memory>
#include <span>
#include <string>

#include "cpc/forms.hpp"
#include "cpc/geometry.hpp"
#include "cpc/report.hpp"
#include "cpc/sampling.hpp"

namespace cpc {

struct PairFieldNames {
  std::string alpha1 = "alpha1";
  std::string alpha2 = "alpha2";
  std::string z1 = "Z1";
  std::string z2 = "Z2";
  std::string phi = "phi";
};

/// Tolerance ladder: no derivatives / first derivatives / second derivatives.
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kFirstDerivativeTol = 1e-8;
inline constexpr double kSecondDerivativeTol = 1e-7;

class ContactPairStructure {
 public:
  /// Throws UnknownField for missing names and DimensionMismatch unless
  /// 2p + 2q + 2 == dim.
  ContactPairStructure(std::shared_ptr<const ChartedManifold> base, PairFieldNames names, int p, int q,
                       ExteriorConvention convention = ExteriorConvention::kHalf);

  const ChartedManifold& base() const { return *base_; }
  const std::shared_ptr<const ChartedManifold>& base_ptr() const { return base_; }
  const PairFieldNames& names() const { return names_; }
  int p() const { return p_; }
  int q() const { return q_; }
  ExteriorConvention convention() const { return convention_; }

  ContactPairStructure with_convention(ExteriorConvention c) const;

 private:
  std::shared_ptr<const ChartedManifold> base_;
  PairFieldNames names_;
  int p_;
  int q_;
  ExteriorConvention convention_;
};

/// Everything about the structure at one point.
struct PairPoint {
  Vector x;
  Matrix g;
  Matrix g_inv;
  FormJet alpha1;
  FormJet alpha2;
  VectorJet z1;
  VectorJet z2;
  EndoJet phi;
  Matrix dalpha1;  // components d_i a_j - d_j a_i
  Matrix dalpha2;
  ExteriorConvention convention = ExteriorConvention::kHalf;

  double a1(const Vector& v) const { return alpha1.value.dot(v); }
  double a2(const Vector& v) const { return alpha2.value.dot(v); }
  double da1(const Vector& u, const Vector& v) const { return pair_two_form(dalpha1, u, v, convention); }
  double da2(const Vector& u, const Vector& v) const { return pair_two_form(dalpha2, u, v, convention); }
  double inner(const Vector& u, const Vector& v) const { return u.dot(g * v); }
  double norm(const Vector& u) const;
  /// X - alpha1(X) Z1 - alpha2(X) Z2.
  Vector horizontal(const Vector& v) const;
  /// A random g-unit horizontal vector.
  Vector random_horizontal(Sampler& s) const;
};

PairPoint evaluate_pair(const ContactPairStructure& s, std::span<const double> x);

/// g-orthonormal basis (columns) of H = ker alpha1 ∩ ker alpha2, from the
/// horizontal parts of the coordinate basis in coordinate order.
Matrix horizontal_frame(const PairPoint& pt);

/// Projectors (as matrices acting on coordinate vectors) for the splitting
/// TM = TG_1 ⊕ TG_2 ⊕ R Z1 ⊕ R Z2.
struct FoliationSplit {
  Matrix p_tg1;
  Matrix p_tg2;
  Matrix p_tf1;
  Matrix p_tf2;
  int rank_tg1 = 0;
  int rank_tg2 = 0;
};

/// Throws NotDecomposable when TG_1 and TG_2 do not span H.
FoliationSplit foliation_split(const PairPoint& pt);

struct Decomposition {
  Vector x1h;
  Vector x2h;
  double v1 = 0.0;
  double v2 = 0.0;
};

/// X = x1h + x2h + v1 Z1 + v2 Z2 with x_ih in TG_i. Throws NotDecomposable
/// when the foliation projectors fail to commute with phi at the point.
Decomposition decompose(const ContactPairStructure& s, const Vector& v, std::span<const double> x);

AuditReport validate_pair(const ContactPairStructure& s, const SamplingOptions& opts = {});
AuditReport verify_reeb(const ContactPairStructure& s, const SamplingOptions& opts = {});
AuditReport validate_endomorphism(const ContactPairStructure& s, const SamplingOptions& opts = {});
AuditReport validate_metric(const ContactPairStructure& s, const SamplingOptions& opts = {});
AuditReport check_decomposable(const ContactPairStructure& s, const SamplingOptions& opts = {});
AuditReport normality_check(const ContactPairStructure& s, const SamplingOptions& opts = {});

/// Covariant-derivative identities for normal pairs. When `normal` is false
/// the entries that need normality are reported as informational.
AuditReport check_theorem1(const ContactPairStructure& s, const SamplingOptions& opts = {}, bool normal = true);

/// Runs every validator above in order, feeding the normality verdict to
/// check_theorem1.
AuditReport verify_structure(const ContactPairStructure& s, const SamplingOptions& opts = {});

/// J = phi - alpha2 ⊗ Z1 + alpha1 ⊗ Z2 and T = phi + alpha2 ⊗ Z1 - alpha1 ⊗ Z2.
EndoJet almost_complex_j(const PairPoint& pt);
EndoJet almost_complex_t(const PairPoint& pt);

/// The seeded polynomial vector-field family used for Nijenhuis checks:
/// coordinate fields plus `random_fields` fields with affine components.
std::vector<VectorJet> test_field_family(std::span<const double> x, std::uint64_t seed, int random_fields = 10);

}  // namespace cpc
