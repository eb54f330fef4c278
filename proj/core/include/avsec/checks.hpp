#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "avsec/functionals.hpp"
#include "avsec/isotropic.hpp"
#include "avsec/json_util.hpp"

namespace avsec {

enum class Verdict { Pass, Fail, Indeterminate };
std::string to_string(Verdict v);

enum class CheckKind { Exact, Invariance, Empirical };
std::string to_string(CheckKind k);

/// Body class a check's hypotheses require.
enum class BodyClass {
  AnyStar,
  OriginSymmetric,
  CenteredConvex,
  SymmetricConvex,
  Ellipsoidal,        // balls/ellipsoids and their linear images (the class
                      // where the outer-volume-ratio distance is exactly 1)
  IsotropicCapable,   // centered convex and feasible for rejection sampling
};

bool body_in_class(const Body& body, BodyClass cls);

struct CheckInfo {
  std::string id;
  CheckKind kind;
  BodyClass required;
  bool needs_k = false;
  bool needs_r = false;
  std::string summary;
};

/// All registered checks, fixed order.
const std::vector<CheckInfo>& check_registry();
const CheckInfo& check_info(const std::string& id);

struct CheckParams {
  int k = 1;
  int r = 1;
  std::optional<Body> second;        // partner body for two-body inequalities
  Density density = Density::one();  // weight for the density-form checks
  std::string mode;                  // check-specific: "coordinate", "loomis_whitney"
};

struct CheckBudgets {
  long samples = 20000;         // sphere-integral draws
  long section_samples = 2000;  // per-section draws inside Grassmannian scans
  int subspaces = 96;           // Haar subspaces per scan
  int refine = 40;              // local-ascent iterations on the scan argmax
  long points = 10000;          // rejection-sampling points for body moments
  int pairs = 10;               // direction/subspace pairs for per-instance checks

  nlohmann::json to_json() const;
  static CheckBudgets from_json(const nlohmann::json& j);
};

/// One verification: operands, oriented slack, verdict, and (for the
/// empirical registry) the constant the body requires.
struct CheckReport {
  std::string check_id;
  nlohmann::json body;
  nlohmann::json params;  // n, k, r, seed, budgets, check-specific extras
  Estimate lhs;
  Estimate rhs;
  double slack = 0.0;  // rhs - lhs in the registered orientation
  Verdict verdict = Verdict::Indeterminate;
  std::optional<double> empirical_constant;
  std::string note;

  nlohmann::json to_json() const;
  static CheckReport from_json(const nlohmann::json& j);
  static std::string csv_header();
  std::string csv_row() const;
};

/// Exact-constant registry: identities and inequalities whose constants the
/// source results make explicit. Throws std::invalid_argument for unknown
/// ids or bodies outside the required class.
CheckReport check_exact(const std::string& id, const Body& body, const CheckParams& params,
                        const CheckBudgets& budgets, RngStream rng);

/// Invariance registry: rk-invariance, ik-equivariance, lk-invariance.
CheckReport check_invariance(const std::string& id, const Body& body, const Matrix& t,
                             const CheckParams& params, const CheckBudgets& budgets,
                             RngStream rng);

/// Empirical registry: solves a registered inequality for its absolute
/// constant and reports the value the body requires.
CheckReport estimate_constant(const std::string& id, const Body& body,
                              const CheckParams& params, const CheckBudgets& budgets,
                              RngStream rng);

/// Dispatch on the registry kind.
CheckReport run_check(const std::string& id, const Body& body, const CheckParams& params,
                      const CheckBudgets& budgets, RngStream rng);

/// Spherical Radon transform R_{m} g(E) = int_{S cap E} g dtheta
/// (unnormalized measure, total mass m * omega_m for m = dim E).
Estimate radon_transform(const std::function<double(const Vector&)>& g, const Subspace& e,
                         long num_samples, RngStream rng);

}  // namespace avsec
