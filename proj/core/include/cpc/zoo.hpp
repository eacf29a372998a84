#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpc/contact_pair.hpp"
#include "cpc/manifold.hpp"
#include "cpc/report.hpp"

namespace cpc {

struct ExpectedValue {
  std::string name;
  double value = 0.0;
  Provenance provenance = Provenance::kDerived;
};

struct ZooEntry {
  std::string name;
  std::string description;
  std::shared_ptr<const ChartedManifold> manifold;
  std::optional<ContactPairStructure> pair;
  std::vector<ExpectedValue> expected;

  const ExpectedValue* find_expected(const std::string& key) const;
};

/// euclidean4, flat_torus4, sphere2, sphere3, sphere4, sasakian_s3,
/// s3_x_s1, s3_x_s3, flat_pair4 in that order.
const std::vector<std::string>& builtin_names();

/// Throws UnknownZooEntry.
ZooEntry builtin(const std::string& name);

/// Two almost contact structures (varphi_i, eta_i, xi_i) on a Hermitian
/// manifold (M, g, J), as field names on `base`.
struct HermitianPairInput {
  std::shared_ptr<const ChartedManifold> base;
  std::string j = "J";
  std::string phi1 = "varphi1";
  std::string phi2 = "varphi2";
  std::string eta1 = "eta1";
  std::string eta2 = "eta2";
  std::string xi1 = "xi1";
  std::string xi2 = "xi2";
  int p = 1;
  int q = 1;
};

struct HermitianPairResult {
  ContactPairStructure structure;
  AuditReport report;
  /// Names of gating prerequisites that exceeded tolerance.
  std::vector<std::string> failed_prerequisites;
};

/// The instance on the s3_x_s3 chart: J is the normal-pair complex structure
/// of the product, varphi1 acts on H as a complex structure anticommuting
/// with J and kills Z1, Z2, and varphi2 = varphi1 ∘ J.
HermitianPairInput hopf_hermitian_input();

/// Builds phi = varphi1 ∘ varphi2 and audits the hypotheses on the two
/// almost contact structures, the resulting almost contact pair identities
/// and the metric identities. The structure is returned even when
/// prerequisites fail; those are listed in failed_prerequisites.
HermitianPairResult hermitian_pair_build(const HermitianPairInput& input, const SamplingOptions& opts = {});

}  // namespace cpc
