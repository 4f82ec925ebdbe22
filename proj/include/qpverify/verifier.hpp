#pragma once

// End-to-end verification of quasi-periodic identities: exact multipliers,
// the predicted zero count, exhibited zeros and seeded residual sampling,
// combined into a verdict.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qpverify/evaluate.hpp"
#include "qpverify/kernels.hpp"
#include "qpverify/multiplier.hpp"

namespace qpv {

enum class Verdict { verified, falsified, inconclusive };
std::string_view name(Verdict v);

/// An expression that must vanish identically in its distinguished variable.
struct IdentitySpec {
  std::string name;
  std::string summary;
  Expr expr;
  LinearForm gen1;
  LinearForm gen2;
  std::vector<LinearForm> candidates;
  std::string zero_note;  // shown when no candidates are listed
};

/// Both sides of a pointwise relation in one complex variable.
using Sides = std::function<std::pair<cplx, cplx>(cplx)>;

struct Relation {
  std::string name;
  /// Prepares the evaluator for one lattice (expensive setup happens here).
  std::function<Sides(const Lattice&)> bind;
  int sign = 1;  // the relation is lhs = sign * rhs
};

struct RelationSet {
  std::string name;
  std::string summary;
  Family family = Family::theta;  // picks the sampling cell and default tolerance
  std::vector<Relation> relations;
  bool sampled = true;            // false: a single evaluation, z is ignored
  double min_tolerance = 0.0;
};

struct CatalogEntry {
  enum class Kind { identity, relations };
  Kind kind = Kind::identity;
  IdentitySpec identity;
  RelationSet relations;

  const std::string& name() const;
  /// Number of single-sign mutations (one per term or relation).
  std::size_t mutation_count() const;
};

std::vector<CatalogEntry> builtin_catalog();
const CatalogEntry& find_builtin(const std::vector<CatalogEntry>& catalog, std::string_view name);

/// Flips the sign of term (or relation) `index`.
CatalogEntry mutate(const CatalogEntry& e, std::size_t index);

/// The lattice (pi/2, pi*tau/2), whose theta nome is tau.
Lattice lattice_from_tau(cplx tau, const ThetaOptions& opts = {});
std::vector<Lattice> default_contexts();

struct VerifyParams {
  std::uint64_t seed = 42;
  int samples = 200;
  std::optional<double> tol;  // family default when unset
  Execution execution = Execution::parallel;
};

double default_tolerance(Family f);

struct MultiplierEvidence {
  std::string generator;
  std::string coeff;
  std::string alpha;
  std::string beta;
  bool matched = false;
  std::string error;
};

struct ZeroEvidence {
  std::string candidate;
  bool symbolic = false;
  double residual = 0.0;
  bool verified = false;
};

struct ResidualStats {
  int samples = 0;
  std::uint64_t seed = 0;
  double max_rel = 0.0;
  int rejected = 0;
};

struct VerificationReport {
  std::string identity;
  cplx omega1, omega3, tau, q;
  std::vector<MultiplierEvidence> multipliers;
  std::optional<Rational> predicted_N;
  std::vector<ZeroEvidence> zeros;
  ResidualStats residuals;
  double tolerance = 0.0;
  Verdict verdict = Verdict::inconclusive;
  bool zero_excess = false;
  std::vector<std::string> notes;
};

VerificationReport verify(const IdentitySpec& spec, const Lattice& ctx, const VerifyParams& params);
VerificationReport verify(const RelationSet& set, const Lattice& ctx, const VerifyParams& params);
VerificationReport verify(const CatalogEntry& entry, const Lattice& ctx, const VerifyParams& params);

/// 0 verified, 1 falsified, 2 inconclusive.
int exit_code(Verdict v);

struct SuiteFailure {
  std::string identity;
  std::size_t context;
  std::string error;
};

struct SuiteReport {
  std::vector<Lattice> contexts;
  std::vector<VerificationReport> reports;
  std::vector<SuiteFailure> failures;  // entries that raised instead of reporting

  /// 0 when everything verified, 1 on any falsified, otherwise 2 for any
  /// inconclusive report or failure.
  int exit_code() const;
};

SuiteReport run_suite(const std::vector<CatalogEntry>& catalog, const std::vector<Lattice>& contexts,
                      const VerifyParams& params);

nlohmann::ordered_json to_json(cplx z);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const SuiteReport& s);

}  // namespace qpv
