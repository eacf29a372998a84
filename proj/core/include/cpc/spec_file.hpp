#pragma once

// Line-oriented manifold spec files:
//
//   # comment
//   [manifold]
//   name = s3_x_s1
//   dim = 4
//   [coords]
//   names = eta, xi1, xi2, t
//   [box]
//   0 = 0.1, 1.4707963267948966
//   [metric]
//   0 0 = 1
//   1 1 = (sin(x0)^2)
//   [form alpha1]
//   1 = (sin(x0)^2)
//   [vector Z1]
//   1 = 1
//   [endo phi]
//   0 1 = (sin(x0)*cos(x0))
//   [pair]
//   alpha1 = alpha1
//   alpha2 = alpha2
//   Z1 = Z1
//   Z2 = Z2
//   phi = phi
//   p = 1
//   q = 0
//
// Unlisted components are zero; metric entries are given for i <= j only.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "cpc/contact_pair.hpp"
#include "cpc/manifold.hpp"

namespace cpc {

struct PairSpec {
  PairFieldNames names;
  int p = 0;
  int q = 0;
};

struct LoadedSpec {
  std::shared_ptr<const ChartedManifold> manifold;
  std::optional<PairSpec> pair;

  /// Throws DimensionMismatch or UnknownField when the [pair] section does
  /// not describe a valid structure.
  std::optional<ContactPairStructure> structure() const;
};

/// Throws SpecFormatError with the 1-based line of the problem.
LoadedSpec parse_spec(std::string_view text);
/// Reads a file and parses it; an unreadable file is a SpecFormatError at line 0.
LoadedSpec load_spec_file(const std::string& path);

/// Writes every field of m (and the pair, if given) so that parse_spec
/// reproduces structurally identical expressions.
std::string export_spec(const ChartedManifold& m, const std::optional<PairSpec>& pair);

}  // namespace cpc
