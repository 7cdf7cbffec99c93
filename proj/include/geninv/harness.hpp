#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geninv/perturb.hpp"
#include "geninv/random.hpp"

namespace geninv {

/// Structural family of a generated pair. For the orthogonal set:
///   b4zero  - zero tail perturbation (the projected sum is the nilpotent
///             part of a alone);
///   shift   - tail perturbations built on shift patterns, chosen so the
///             projected product a^pi b a is nonzero;
///   general - coupled tails with an invertible component, existence
///             guaranteed or an index-2 part planted.
/// For the commutative set:
///   b4zero  - block-diagonal b with shift-plus-diagonal tails;
///   shift   - tails that are polynomials in one shift (commuting family);
///   general - nonzero lower coupling block satisfying the derived
///             constraints a2 b4 = 0 and b4 b1 = -b2 b4.
enum class Family { b4zero, shift, general };

/// Deterministic recipe for one random pair. Equal specs reproduce
/// bit-identical pairs.
struct GenSpec {
  ConditionSet theorem = ConditionSet::orthogonal;
  std::size_t dim = 4;       // 2..16
  std::size_t core_dim = 1;  // >= 1, < dim
  std::uint64_t seed = 0;
  bool conjugate = false;
  Family family = Family::general;
};

/// Everything measured about one fuzz trial.
struct TrialRecord {
  GenSpec spec;
  bool ok = false;           ///< trial ran to completion
  std::string message;       ///< failure description when !ok
  ConditionReport conditions;
  bool exists = false;
  /// Whether group invertibility of a+b and of the projected sum agreed;
  /// empty when the trial failed before the comparison.
  std::optional<bool> equivalence_ok;
  std::optional<double> formula_vs_oracle_err;  ///< set when exists
  std::optional<BoundBreakdown> bound;
  std::optional<bool> bound_satisfied;  ///< empty when divergent or !exists
  std::optional<double> actual_error;   ///< |(a+b)^# - a^D| when exists
  std::size_t generation_attempts = 0;
};

/// Aggregate of a fuzz batch.
struct BatchSummary {
  std::size_t trials = 0;
  std::size_t failed = 0;          ///< records with ok == false
  std::size_t existing = 0;        ///< exists == true
  std::size_t planted_missing = 0; ///< exists == false
  std::size_t bound_checked = 0;
  std::size_t bound_violations = 0;
  std::size_t equivalence_failures = 0;
  std::size_t generation_retries = 0;  ///< extra builds beyond one per trial
  double max_formula_err = 0.0;
  double mean_bound_ratio = 0.0;  ///< mean of bound/actual over checked trials
  double max_bound_ratio = 0.0;
  bool clean() const {
    return failed == 0 && bound_violations == 0 && equivalence_failures == 0;
  }
};

/// Builds a pair (a, b) in block coordinates that satisfies its condition
/// set at default tolerances, optionally conjugated by a random
/// well-conditioned similarity. Construction is exact in block coordinates,
/// so only conjugated pairs ever need a retry; `attempts`, when supplied,
/// receives how many builds ran. Throws GenerationError when the retry
/// budget is exhausted.
std::pair<Matrix, Matrix> generate_pair(const GenSpec& spec);
std::pair<Matrix, Matrix> generate_pair(const GenSpec& spec,
                                        std::size_t& attempts);

/// Generates, checks, runs both formula modes against the direct group
/// inverse, evaluates the bound and records everything. Module errors are
/// captured in the record, never thrown.
TrialRecord run_trial(const GenSpec& spec,
                      NormKind nk = NormKind::entrywise_l1,
                      const Tolerances& tol = Tolerances::defaults());

/// Runs `trials` records per dimension in [dim_lo, dim_hi], cycling
/// families and cores deterministically from `seed`. When `sink` is given
/// it receives every record.
BatchSummary run_batch(ConditionSet set, std::size_t dim_lo,
                       std::size_t dim_hi, std::size_t trials,
                       std::uint64_t seed,
                       NormKind nk = NormKind::entrywise_l1,
                       const Tolerances& tol = Tolerances::defaults(),
                       std::vector<TrialRecord>* sink = nullptr);

const char* family_name(Family family);

}  // namespace geninv
