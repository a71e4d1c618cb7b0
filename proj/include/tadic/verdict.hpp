#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tadic {

enum class VerdictKind {
  DecidedErgodic,
  DecidedNotErgodic,
  DecidedNotMeasurePreserving,
  VerifiedUpToLevel,
  Inconclusive,
  NotInvariant,
  NotOneLipschitz,
};

enum class Method {
  Criterion,     // van der Put coefficient conditions
  Oracle,        // exhaustive reduction mod 2^k
  Larin,         // polynomial transitivity mod 8
  Monomial,      // closed-form rule for perturbed monomials on S(1)
  Compatibility, // van der Put divisibility scan
};

const char* to_string(VerdictKind kind);
const char* to_string(Method method);

/// A congruence that failed, with everything needed to re-check it.
struct ConditionViolation {
  int condition;        // 1-based index within the criterion
  unsigned level;       // digit level n the condition belongs to
  std::string relation; // e.g. "b_0 + b_1 = 3 (mod 4)"
  std::vector<std::pair<std::string, std::uint64_t>> operands;
  std::uint64_t observed;  // left-hand side reduced by the modulus
  std::uint64_t modulus;
};

/// Evidence from a reduced map mod 2^modulus_exp: either two residues with
/// equal image, or a cycle shorter than the full ring.
struct CycleEvidence {
  unsigned modulus_exp;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;
  std::uint64_t cycle_length = 0;
  std::vector<std::uint64_t> cycle{};  // starts at the representative; at most kMaxListed
  bool cycle_truncated = false;

  static constexpr std::size_t kMaxListed = 32;
};

using Witness = std::variant<std::monostate, ConditionViolation, CycleEvidence>;

struct Verdict {
  VerdictKind kind;
  Method method;
  unsigned level = 0;  // verified level, or level of the violation
  Witness witness{};
  std::string reason{};

  bool rejects() const noexcept {
    return kind == VerdictKind::DecidedNotErgodic ||
           kind == VerdictKind::DecidedNotMeasurePreserving || kind == VerdictKind::NotInvariant;
  }
  bool accepts() const noexcept {
    return kind == VerdictKind::DecidedErgodic || kind == VerdictKind::VerifiedUpToLevel;
  }
};

}  // namespace tadic
