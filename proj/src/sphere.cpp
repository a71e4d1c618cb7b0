#include "tadic/sphere.hpp"

#include <stdexcept>
#include <string>

#include "tadic/ergodicity.hpp"
#include "tadic/error.hpp"
#include "tadic/vanderput.hpp"

namespace tadic {

SphereSpec::SphereSpec(unsigned r, std::int64_t center) : r_(r), a_(0) {
  if (r < 1 || r > kMaxRadiusExponent) {
    throw Error(ErrorCode::InvalidParameter,
                "sphere radius exponent must lie in [1, 60], got " + std::to_string(r));
  }
  a_ = static_cast<std::uint64_t>(center) & low_mask(r);
}

namespace {

void require_sphere_modulus(const SphereSpec& s, unsigned t) {
  if (s.r() + 1 + t > kMaxOracleExponent) {
    throw Error(ErrorCode::ModulusTooLarge,
                "sphere enumeration needs r + 1 + t <= 20, got r = " + std::to_string(s.r()) +
                    ", t = " + std::to_string(t));
  }
}

}  // namespace

std::vector<std::uint64_t> sphere_points_mod(const SphereSpec& s, unsigned t) {
  require_sphere_modulus(s, t);
  const std::uint64_t count = std::uint64_t{1} << t;
  std::vector<std::uint64_t> points;
  points.reserve(count);
  for (std::uint64_t S = 0; S < count; ++S) points.push_back(s.base_point() + s.step() * S);
  return points;
}

bool check_invariance(const CompatibleMap& f, const SphereSpec& s) {
  const unsigned k = s.r() + 1;
  return f.eval(s.base_point(), k) == (s.base_point() & low_mask(k));
}

CompatibleMap conjugate(const CompatibleMap& f, const SphereSpec& s) {
  if (!check_invariance(f, s)) {
    throw Error(ErrorCode::NotInvariant,
                "sphere (r=" + std::to_string(s.r()) + ", a=" + std::to_string(s.a()) +
                    ") is not invariant under " + f.describe());
  }
  return CompatibleMap(provenance::Conjugated{f, s});
}

Verdict sphere_ergodicity_criterion(const CompatibleMap& f, const SphereSpec& s, unsigned level) {
  if (level < 2 || level > 24) {
    throw Error(ErrorCode::InvalidParameter,
                "criterion level must lie in [2, 24], got " + std::to_string(level));
  }
  const unsigned r = s.r();
  const unsigned precision = r + level + 4;
  if (precision > f.max_precision()) {
    throw Error(ErrorCode::PrecisionExceeded,
                "sphere criterion needs precision " + std::to_string(precision) +
                    ", map supports " + std::to_string(f.max_precision()));
  }
  const std::uint64_t base = s.base_point();
  if (!check_invariance(f, s)) {
    const std::uint64_t fb = f.eval(base, r + 1);
    ConditionViolation v{0, 0, "f(base) = base (mod 2^(r+1))",
                         {{"base", base}, {"f(base)", fb}}, fb, pow2(r + 1)};
    return {VerdictKind::NotInvariant, Method::Criterion, 0, std::move(v),
            "sphere is not mapped into itself"};
  }

  const std::uint64_t count = std::uint64_t{1} << level;
  std::vector<VdpEntry> coeff;  // coeff[m - 1] belongs to index base + m 2^(r+1)
  coeff.reserve(count - 1);
  for (std::uint64_t m = 1; m < count; ++m) {
    auto entry = try_vdp_entry(f, base + m * s.step(), precision);
    if (auto* bad = std::get_if<LipschitzViolation>(&entry)) {
      const unsigned n = floor_log2(bad->m);
      ConditionViolation v{0, floor_log2(m) + 1, "B_m = 0 (mod 2^floor_log2(m))",
                           {{"m", bad->m}, {"B_m", bad->B.residue()}},
                           bad->B.residue() & low_mask(n), pow2(n)};
      return {VerdictKind::NotOneLipschitz, Method::Criterion, v.level, std::move(v),
              "B_" + std::to_string(bad->m) + " is not divisible by 2^" + std::to_string(n)};
    }
    coeff.push_back(std::get<VdpEntry>(entry));
  }
  const auto b4 = [&](std::uint64_t m) { return coeff[m - 1].b_mod(2); };
  const auto operand = [&](std::uint64_t m) {
    return std::pair{"b_f(" + std::to_string(coeff[m - 1].m) + ")", coeff[m - 1].b.residue()};
  };
  const auto reject = [&](ConditionViolation v) {
    std::string reason = "condition " + std::to_string(v.condition) + " fails: " + v.relation;
    const unsigned lvl = v.level;
    return Verdict{VerdictKind::DecidedNotErgodic, Method::Criterion, lvl, std::move(v),
                   std::move(reason)};
  };

  const std::uint64_t fb = f.eval(base, r + 2);
  const std::uint64_t target = (base + s.step()) & low_mask(r + 2);
  if (fb != target) {
    return reject({1, 1, "f(base) = base + 2^(r+1) (mod 2^(r+2))",
                   {{"base", base}, {"f(base)", fb}, {"expected", target}}, fb, pow2(r + 2)});
  }
  for (std::uint64_t m = 1; m < count; ++m) {
    if (b4(m) % 2 != 1) {
      const auto& e = coeff[m - 1];
      return reject({2, floor_log2(m) + 1, "b_f(" + std::to_string(e.m) + ") = 1 (mod 2)",
                     {{"m", m}, {"index", e.m}, {"B_f", e.B.residue()}, {"b_f", e.b.residue()}},
                     b4(m) % 2, 2});
    }
  }
  if (b4(1) != 1) {
    return reject({3, 1, "b_f(base + 2^(r+1)) = 1 (mod 4)", {operand(1)}, b4(1), 4});
  }
  if ((b4(2) + b4(3)) % 4 != 2) {
    return reject({4, 2, "b_f(base + 2^(r+2)) + b_f(base + 3 2^(r+1)) = 2 (mod 4)",
                   {operand(2), operand(3)}, (b4(2) + b4(3)) % 4, 4});
  }
  for (unsigned n = 3; n <= level; ++n) {
    std::uint64_t sum = 0;
    for (std::uint64_t m = std::uint64_t{1} << (n - 1); m < (std::uint64_t{1} << n); ++m) {
      sum += b4(m);
    }
    if (sum % 4 != 0) {
      return reject({5, n,
                     "sum of b_f(base + m 2^(r+1)) for " +
                         std::to_string(std::uint64_t{1} << (n - 1)) + " <= m < " +
                         std::to_string(std::uint64_t{1} << n) + " = 0 (mod 4)",
                     {{"n", n}, {"sum_mod_4", sum % 4}}, sum % 4, 4});
    }
  }
  return {VerdictKind::VerifiedUpToLevel, Method::Criterion, level, {},
          "all sphere coefficient conditions hold for m < 2^" + std::to_string(level)};
}

std::vector<std::uint64_t> sphere_orbit(const CompatibleMap& f, const SphereSpec& s, unsigned t) {
  require_sphere_modulus(s, t);
  const unsigned k = s.r() + 1 + t;
  std::vector<bool> seen(std::size_t{1} << k, false);
  std::vector<std::uint64_t> orbit;
  for (std::uint64_t x = s.base_point() & low_mask(k); !seen[x]; x = f.eval(x, k)) {
    seen[x] = true;
    orbit.push_back(x);
  }
  return orbit;
}

bool sphere_orbit_transitive(const CompatibleMap& f, const SphereSpec& s, unsigned t) {
  require_sphere_modulus(s, t);
  const unsigned k = s.r() + 1 + t;
  const std::uint64_t start = s.base_point() & low_mask(k);
  const std::uint64_t size = std::uint64_t{1} << t;
  std::uint64_t x = start;
  for (std::uint64_t steps = 1; steps <= size; ++steps) {
    x = f.eval(x, k);
    if (x == start) return steps == size;
  }
  return false;
}

Verdict oracle_sphere_ergodic(const CompatibleMap& f, const SphereSpec& s, unsigned t_max) {
  require_sphere_modulus(s, t_max);
  if (!check_invariance(f, s)) {
    const std::uint64_t fb = f.eval(s.base_point(), s.r() + 1);
    ConditionViolation v{0, 0, "f(base) = base (mod 2^(r+1))",
                         {{"base", s.base_point()}, {"f(base)", fb}}, fb, pow2(s.r() + 1)};
    return {VerdictKind::NotInvariant, Method::Oracle, 0, std::move(v),
            "sphere is not mapped into itself"};
  }
  const CompatibleMap g = conjugate(f, s);
  for (unsigned t = 1; t <= t_max; ++t) {
    const bool via_conjugate = oracle_is_transitive(g, t);
    if (via_conjugate != sphere_orbit_transitive(f, s, t)) {
      throw std::logic_error("conjugate and direct sphere orbit disagree at t = " +
                             std::to_string(t) + " for " + f.describe());
    }
    if (!via_conjugate) {
      CycleEvidence ev = cycle_evidence(g, t);
      return {VerdictKind::DecidedNotErgodic, Method::Oracle, t, std::move(ev),
              "conjugate map is not transitive mod 2^" + std::to_string(t)};
    }
  }
  return {VerdictKind::VerifiedUpToLevel, Method::Oracle, t_max, {},
          "conjugate map transitive mod 2^t for every t <= " + std::to_string(t_max)};
}

}  // namespace tadic
