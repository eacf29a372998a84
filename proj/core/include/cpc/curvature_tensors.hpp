#pragma once

// Conformal (C), concircular (W) and quasi-conformal (C~) curvature tensors,
// flatness and Einstein checks, and auditors for the curvature identities and
// flatness theorems of normal metric contact pairs.
//
// All three tensors use the TensorValue (1,3) layout:
// components(l, k, i, j) = (T(d_i, d_j) d_k)^l.

#include <optional>
#include <string>

#include "cpc/contact_pair.hpp"
#include "cpc/geometry.hpp"
#include "cpc/report.hpp"
#include "cpc/sampling.hpp"

namespace cpc {

struct QuasiConformalParams {
  double a = 1.0;
  double b = 0.0;
};

enum class TensorKind { kConformal, kConcircular, kQuasiConformal };

const char* to_string(TensorKind k);

/// The quasi-conformal parameters that reproduce C in dimension n: (1, -1/(n-2)).
QuasiConformalParams conformal_params(int n);

/// C(X1,X2)X3 = R(X1,X2)X3 + scal/((n-1)(n-2)) (g(X2,X3)X1 - g(X1,X3)X2)
///   + 1/(n-2) (g(X1,X3)QX2 - g(X2,X3)QX1 + Ric(X1,X3)X2 - Ric(X2,X3)X1).
/// Throws DimensionMismatch for n < 3.
TensorValue conformal_at(const CurvatureBundle& bundle);
/// As above, also checking 2p + 2q + 2 == dim.
TensorValue conformal_at(const CurvatureBundle& bundle, int p, int q);

/// W(X1,X2)X3 = R(X1,X2)X3 - scal/(n(n-1)) (g(X2,X3)X1 - g(X1,X3)X2).
TensorValue concircular_at(const CurvatureBundle& bundle);
TensorValue concircular_at(const CurvatureBundle& bundle, int p, int q);

/// C~ = aR + b[Ric(X2,X3)X1 - Ric(X1,X3)X2 + g(X2,X3)QX1 - g(X1,X3)QX2]
///      - scal/n [a/(n-1) + 2b] (g(X2,X3)X1 - g(X1,X3)X2).
TensorValue quasi_conformal_at(const CurvatureBundle& bundle, QuasiConformalParams params);
TensorValue quasi_conformal_at(const CurvatureBundle& bundle, int p, int q, QuasiConformalParams params);

TensorValue riemann_tensor(const CurvatureBundle& bundle);

/// Largest |T^l_{lij}|, |T^l_{kli}|, |T^l_{kil}| over all free indices.
double max_single_trace(const TensorValue& t);

/// Largest component of t in the g-orthonormal frame at its base point.
double frame_max_component(const TensorValue& t, const Matrix& g);

/// The metric e^{2f} g on the same chart and box (no other fields copied).
ChartedManifold conformally_rescaled(const ChartedManifold& m, const Expr& f);

struct FlatnessReport {
  std::string tensor_name;
  double max_component = 0.0;
  int samples = 0;
  double tol = 1e-7;
  bool is_flat = false;
};

/// Max over sample points of the tensor's largest frame component. Throws
/// MissingParams for the quasi-conformal tensor without params.
FlatnessReport flatness(const ChartedManifold& m, TensorKind kind, std::optional<QuasiConformalParams> params,
                        const SamplingOptions& opts = {}, double tol = 1e-7);

struct EinsteinReport {
  double lambda = 0.0;
  double max_residual = 0.0;
  double scal = 0.0;  // mean over samples
  bool is_einstein = false;
};

/// Fits Ric = lambda g by least squares over the sample points (in frames),
/// so lambda is the sample mean of scal/n.
EinsteinReport einstein_check(const ChartedManifold& m, const SamplingOptions& opts = {});

/// Curvature identities of a normal metric contact pair. Entries gate only
/// when the structure passes normality_check.
AuditReport audit_identities(const ContactPairStructure& s, const SamplingOptions& opts = {});

/// Flatness theorem auditors. `pair` may be null for plain manifolds; then
/// the horizontal bundle is taken to be all of TM and p + q = (n - 2) / 2.
/// Hypothesis checks (flatness, degeneracy) are gating entries; theorem
/// conclusions are reported as non-gating values.
AuditReport audit_theorem_conformal(const ChartedManifold& m, const ContactPairStructure* pair,
                                    const SamplingOptions& opts = {}, double tol = 1e-7);
AuditReport audit_theorem_concircular(const ChartedManifold& m, const ContactPairStructure* pair,
                                      const SamplingOptions& opts = {}, double tol = 1e-7);
AuditReport audit_theorem_quasiconformal(const ChartedManifold& m, const ContactPairStructure* pair,
                                         QuasiConformalParams params, const SamplingOptions& opts = {},
                                         double tol = 1e-7);

/// Conformal auditor constants for dimension n and scalar curvature scal.
struct ConformalConstants {
  double a = 0.0;  // scal / ((n-1)(n-2))
  double b = 0.0;  // 1 / (n-2)
  double einstein_factor = 0.0;  // -(2A+1)/(2B)
  double predicted_scal = 0.0;   // -(n-1) n / (n+1)
  double stated_sectional = 0.0;  // -(n-1)^2 n (n-2) / (n+1)
  double derived_sectional = 0.0;  // n / ((n+1)(n-2))
};
ConformalConstants conformal_constants(int n, double scal);

}  // namespace cpc
