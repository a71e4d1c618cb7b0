#pragma once

#include <cstdint>
#include <vector>

#include "tadic/compatible_map.hpp"
#include "tadic/sphere_spec.hpp"
#include "tadic/verdict.hpp"

namespace tadic {

/// Residues of the sphere mod 2^(r+1+t), ascending: base + 2^(r+1) S for
/// 0 <= S < 2^t. Throws ModulusTooLarge when r + 1 + t > 20.
std::vector<std::uint64_t> sphere_points_mod(const SphereSpec& s, unsigned t);

/// f maps the sphere into itself iff f(base) = base (mod 2^(r+1)).
bool check_invariance(const CompatibleMap& f, const SphereSpec& s);

/// g(x) = (f(base + 2^(r+1) x) - base) / 2^(r+1). Evaluating g mod 2^k
/// evaluates f mod 2^(k+r+1). Throws NotInvariant if the sphere is not
/// f-invariant.
CompatibleMap conjugate(const CompatibleMap& f, const SphereSpec& s);

/// Ergodicity of f on the sphere from f's own van der Put coefficients at
/// the indices base + m 2^(r+1). Conditions, checked in this order:
///   1. f(base) = base + 2^(r+1) (mod 2^(r+2))
///   2. b_f(base + m 2^(r+1)) odd for 1 <= m < 2^level
///   3. b_f(base + 2^(r+1)) = 1 (mod 4)
///   4. b_f(base + 2^(r+2)) + b_f(base + 3 2^(r+1)) = 2 (mod 4)
///   5. sum over 2^(n-1) <= m < 2^n of b_f(base + m 2^(r+1)) = 0 (mod 4),
///      for 3 <= n <= level
/// f is evaluated at precision r + level + 4. Returns NotInvariant when f
/// does not preserve the sphere, NotOneLipschitz on a divisibility failure.
Verdict sphere_ergodicity_criterion(const CompatibleMap& f, const SphereSpec& s, unsigned level);

/// Whether the f-orbit of the base point covers all 2^t sphere residues
/// mod 2^(r+1+t). Assumes invariance.
bool sphere_orbit_transitive(const CompatibleMap& f, const SphereSpec& s, unsigned t);

/// Orbit of the base point under f mod 2^(r+1+t), up to the first repeat.
std::vector<std::uint64_t> sphere_orbit(const CompatibleMap& f, const SphereSpec& s, unsigned t);

/// Exhaustive check through the conjugate g: transitivity mod 2^t for
/// t = 1..t_max, each cross-checked against the direct orbit walk.
Verdict oracle_sphere_ergodic(const CompatibleMap& f, const SphereSpec& s, unsigned t_max);

}  // namespace tadic
