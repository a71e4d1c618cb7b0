#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tadic/compatible_map.hpp"
#include "tadic/verdict.hpp"

namespace tadic {

/// Largest modulus exponent the exhaustive oracles accept.
inline constexpr unsigned kMaxOracleExponent = 20;

/// Offset d such that a coefficient-criterion rejection at digit level n is
/// always matched by an oracle failure mod 2^k for some k <= n + d. Fixed
/// by the calibration sweep in the acceptance suite.
inline constexpr unsigned kCriterionOracleOffset = 1;

struct Cycle {
  std::uint64_t length;
  std::uint64_t representative;  // smallest element
};

/// The reduced map f mod 2^k as a permutation, or a non-bijectivity witness.
struct CycleStructure {
  unsigned k;
  std::vector<Cycle> cycles;  // ordered by representative
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;

  bool bijective() const noexcept { return !collision.has_value(); }
  bool transitive() const noexcept {
    return bijective() && cycles.size() == 1 && cycles.front().length == (std::uint64_t{1} << k);
  }
};

/// Throws ModulusTooLarge for k > 20.
CycleStructure cycle_structure(const CompatibleMap& f, unsigned k);
bool oracle_is_transitive(const CompatibleMap& f, unsigned k);
bool oracle_is_bijective(const CompatibleMap& f, unsigned k);

/// Smallest k in [1, k_max] with f not transitive mod 2^k, if any.
std::optional<unsigned> first_nontransitive_level(const CompatibleMap& f, unsigned k_max);

/// Witness describing why f is not transitive mod 2^k (collision or the
/// cycle through 0 when it is short).
CycleEvidence cycle_evidence(const CompatibleMap& f, unsigned k);

/// Transitivity of f mod 2^k for k = 1..depth. DecidedNotErgodic with cycle
/// evidence at the first failing k, else VerifiedUpToLevel(depth).
Verdict oracle_ergodic(const CompatibleMap& f, unsigned depth);

/// Bijectivity mod 2^k for k = 1..k_max.
Verdict check_measure_preserving(const CompatibleMap& f, unsigned k_max);

/// Ergodicity of a 1-Lipschitz map of Z_2 from its normalized van der Put
/// coefficients b_m, checked in this order:
///   1. b_0 = 1 (mod 2)
///   2. b_0 + b_1 = 3 (mod 4)
///   3. b_m odd for 2 <= m < 2^level
///   4. b_2 + b_3 = 2 (mod 4)
///   5. sum of b_m over 2^(n-1) <= m < 2^n is 0 (mod 4), 3 <= n <= level
/// Works at precision level + 3. A violation is final (DecidedNotErgodic);
/// passing everything only gives VerifiedUpToLevel(level). A coefficient that
/// is not divisible as required yields NotOneLipschitz.
Verdict vdp_ergodicity_criterion(const CompatibleMap& f, unsigned level);

/// Equivalent form of condition 2 when b_0 is odd: b_1 - b_0 = 1 (mod 4).
/// Throws PreconditionViolated when b_0 is even.
bool alternate_condition2(const CompatibleMap& f);

/// Condition 2 of vdp_ergodicity_criterion on its own.
bool condition2_holds(const CompatibleMap& f);

/// A polynomial over Z_2 is ergodic iff it is transitive mod 8. Always
/// returns a decided verdict; throws WrongProvenance for non-polynomials.
Verdict larin_polynomial(const CompatibleMap& f);

}  // namespace tadic
