#pragma once

#include <cstdint>
#include <optional>

#include "tadic/compatible_map.hpp"
#include "tadic/sphere_spec.hpp"
#include "tadic/truncated.hpp"
#include "tadic/verdict.hpp"

namespace tadic {

/// f(x) = x^s + 2^(r+1) u(x), studied on the sphere S_{2^-r}(1).
struct PerturbedMonomial {
  std::uint64_t s;
  unsigned r;
  CompatibleMap u;

  /// Throws InvalidParameter when s = 0 or r = 0.
  PerturbedMonomial(std::uint64_t s, unsigned r, CompatibleMap u);

  CompatibleMap map() const;
  SphereSpec sphere() const { return SphereSpec(r, 1); }
};

/// Recovers the parameters of a map built by perturbed_monomial().
std::optional<PerturbedMonomial> as_perturbed_monomial(const CompatibleMap& f);

/// Exact binomial coefficient C(n, k) reduced mod 2^64.
std::uint64_t binomial_mod_2_64(std::uint64_t n, std::uint64_t k);

/// Closed-form decision on S_{2^-r}(1): ergodic iff s = 1 (mod 4) and
/// u(1) is odd. Always a decided verdict naming the first failed clause.
Verdict monomial_decide(const PerturbedMonomial& pm);

/// s + 2^r C(s,2) + 2 u(1) = 3 (mod 4), the reduced form of
/// f(1 + 2^r) = 1 + 2^r + 2^(r+1) (mod 2^(r+2)).
bool invariance_congruence(const PerturbedMonomial& pm);

/// The conjugate on S_{2^-r}(1) through the binomial expansion
///   g(x) = u(1 + 2^r + 2^(r+1) x) + (s-1)/2 + s x
///          + sum_{j>=2} C(s,j) 2^(r(j-1)-1) (1+2x)^j,
/// evaluated at x's precision k. Needs s odd (else NotInvariant) and
/// k + r + 1 <= 64 (else PrecisionExceeded).
Truncated2Adic expansion_g(const PerturbedMonomial& pm, Truncated2Adic x);

/// Mod-8 polynomial decision applied to the conjugate when u is a
/// polynomial; nullopt otherwise or when the sphere is not invariant.
std::optional<Verdict> monomial_larin_cross_check(const PerturbedMonomial& pm);

}  // namespace tadic
