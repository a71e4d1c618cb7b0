#include "tadic/ergodicity.hpp"

#include <string>

#include "tadic/error.hpp"
#include "tadic/vanderput.hpp"

namespace tadic {

namespace {

void require_modulus(unsigned k) {
  if (k < 1 || k > kMaxOracleExponent) {
    throw Error(ErrorCode::ModulusTooLarge,
                "exhaustive oracle supports 1 <= k <= 20, got k = " + std::to_string(k));
  }
}

std::vector<std::uint64_t> image_table(const CompatibleMap& f, unsigned k) {
  const std::uint64_t size = std::uint64_t{1} << k;
  std::vector<std::uint64_t> image(size);
  for (std::uint64_t x = 0; x < size; ++x) image[x] = f.eval(x, k);
  return image;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> find_collision(
    const std::vector<std::uint64_t>& image) {
  std::vector<std::uint64_t> preimage(image.size(), 0);  // stores x + 1
  for (std::uint64_t x = 0; x < image.size(); ++x) {
    auto& slot = preimage[image[x]];
    if (slot != 0) return std::pair{slot - 1, x};
    slot = x + 1;
  }
  return std::nullopt;
}

ConditionViolation violation(int condition, unsigned level, std::string relation,
                             std::vector<std::pair<std::string, std::uint64_t>> operands,
                             std::uint64_t observed, std::uint64_t modulus) {
  return {condition, level, std::move(relation), std::move(operands), observed, modulus};
}

Verdict not_ergodic(Method method, ConditionViolation v) {
  const unsigned level = v.level;
  std::string reason = "condition " + std::to_string(v.condition) + " fails: " + v.relation;
  return {VerdictKind::DecidedNotErgodic, method, level, std::move(v), std::move(reason)};
}

}  // namespace

CycleStructure cycle_structure(const CompatibleMap& f, unsigned k) {
  require_modulus(k);
  const auto image = image_table(f, k);
  CycleStructure cs{k, {}, find_collision(image)};
  if (cs.collision) return cs;
  std::vector<bool> visited(image.size(), false);
  for (std::uint64_t start = 0; start < image.size(); ++start) {
    if (visited[start]) continue;
    std::uint64_t length = 0;
    for (std::uint64_t x = start; !visited[x]; x = image[x]) {
      visited[x] = true;
      ++length;
    }
    cs.cycles.push_back({length, start});
  }
  return cs;
}

bool oracle_is_transitive(const CompatibleMap& f, unsigned k) {
  return cycle_structure(f, k).transitive();
}

bool oracle_is_bijective(const CompatibleMap& f, unsigned k) {
  require_modulus(k);
  return !find_collision(image_table(f, k)).has_value();
}

std::optional<unsigned> first_nontransitive_level(const CompatibleMap& f, unsigned k_max) {
  for (unsigned k = 1; k <= k_max; ++k) {
    if (!oracle_is_transitive(f, k)) return k;
  }
  return std::nullopt;
}

CycleEvidence cycle_evidence(const CompatibleMap& f, unsigned k) {
  require_modulus(k);
  const auto image = image_table(f, k);
  CycleEvidence ev{k, find_collision(image)};
  if (ev.collision) return ev;
  std::uint64_t x = 0;
  do {
    if (ev.cycle.size() < CycleEvidence::kMaxListed) {
      ev.cycle.push_back(x);
    } else {
      ev.cycle_truncated = true;
    }
    ++ev.cycle_length;
    x = image[x];
  } while (x != 0);
  return ev;
}

Verdict oracle_ergodic(const CompatibleMap& f, unsigned depth) {
  require_modulus(depth);
  if (const auto k = first_nontransitive_level(f, depth)) {
    CycleEvidence ev = cycle_evidence(f, *k);
    std::string reason = ev.collision ? "not bijective mod 2^" + std::to_string(*k)
                                      : "cycle through 0 has length " +
                                            std::to_string(ev.cycle_length) + " < 2^" +
                                            std::to_string(*k);
    return {VerdictKind::DecidedNotErgodic, Method::Oracle, *k, std::move(ev), std::move(reason)};
  }
  return {VerdictKind::VerifiedUpToLevel, Method::Oracle, depth, {},
          "transitive mod 2^k for every k <= " + std::to_string(depth)};
}

Verdict check_measure_preserving(const CompatibleMap& f, unsigned k_max) {
  require_modulus(k_max);
  for (unsigned k = 1; k <= k_max; ++k) {
    if (auto c = find_collision(image_table(f, k))) {
      CycleEvidence ev{k, c};
      std::string reason = "f(" + std::to_string(c->first) + ") = f(" + std::to_string(c->second) +
                           ") mod 2^" + std::to_string(k);
      return {VerdictKind::DecidedNotMeasurePreserving, Method::Oracle, k, std::move(ev),
              std::move(reason)};
    }
  }
  return {VerdictKind::VerifiedUpToLevel, Method::Oracle, k_max, {},
          "bijective mod 2^k for every k <= " + std::to_string(k_max)};
}

Verdict vdp_ergodicity_criterion(const CompatibleMap& f, unsigned level) {
  if (level < 2 || level > 24) {
    throw Error(ErrorCode::InvalidParameter,
                "criterion level must lie in [2, 24], got " + std::to_string(level));
  }
  const unsigned precision = level + 3;
  if (precision > f.max_precision()) {
    throw Error(ErrorCode::PrecisionExceeded,
                "criterion at level " + std::to_string(level) + " needs precision " +
                    std::to_string(precision) + ", map supports " +
                    std::to_string(f.max_precision()));
  }
  auto computed = VdpSpectrum::try_compute_range(f, 0, std::uint64_t{1} << level, precision);
  if (auto* bad = std::get_if<LipschitzViolation>(&computed)) {
    const unsigned n = floor_log2(bad->m);
    auto v = violation(0, n + 1, "B_m = 0 (mod 2^floor_log2(m))",
                       {{"m", bad->m}, {"B_m", bad->B.residue()}},
                       bad->B.residue() & low_mask(n), pow2(n));
    return {VerdictKind::NotOneLipschitz, Method::Criterion, n + 1, std::move(v),
            "B_" + std::to_string(bad->m) + " is not divisible by 2^" + std::to_string(n)};
  }
  const auto& spectrum = std::get<VdpSpectrum>(computed);
  const auto b = [&](std::uint64_t m) { return spectrum.at(m).b.residue(); };
  const auto b4 = [&](std::uint64_t m) { return spectrum.at(m).b_mod(2); };

  if (b4(0) % 2 != 1) {
    return not_ergodic(Method::Criterion,
                       violation(1, 1, "b_0 = 1 (mod 2)", {{"b_0", b(0)}}, b4(0) % 2, 2));
  }
  if ((b4(0) + b4(1)) % 4 != 3) {
    return not_ergodic(Method::Criterion,
                       violation(2, 1, "b_0 + b_1 = 3 (mod 4)", {{"b_0", b(0)}, {"b_1", b(1)}},
                                 (b4(0) + b4(1)) % 4, 4));
  }
  // A zero residue of b_m at this precision already shows b_m is even, so
  // indeterminate entries fail here rather than leaving the verdict open.
  for (std::uint64_t m = 2; m < spectrum.last(); ++m) {
    if (b4(m) % 2 != 1) {
      const auto& e = spectrum.at(m);
      return not_ergodic(Method::Criterion,
                         violation(3, e.log2 + 1, "b_" + std::to_string(m) + " = 1 (mod 2)",
                                   {{"m", m}, {"B_m", e.B.residue()}, {"b_m", e.b.residue()}},
                                   b4(m) % 2, 2));
    }
  }
  if ((b4(2) + b4(3)) % 4 != 2) {
    return not_ergodic(Method::Criterion,
                       violation(4, 2, "b_2 + b_3 = 2 (mod 4)", {{"b_2", b(2)}, {"b_3", b(3)}},
                                 (b4(2) + b4(3)) % 4, 4));
  }
  for (unsigned n = 3; n <= level; ++n) {
    std::uint64_t sum = 0;
    for (std::uint64_t m = std::uint64_t{1} << (n - 1); m < (std::uint64_t{1} << n); ++m) {
      sum += b4(m);
    }
    if (sum % 4 != 0) {
      return not_ergodic(
          Method::Criterion,
          violation(5, n,
                    "sum of b_m for " + std::to_string(std::uint64_t{1} << (n - 1)) +
                        " <= m < " + std::to_string(std::uint64_t{1} << n) + " = 0 (mod 4)",
                    {{"n", n}, {"sum_mod_4", sum % 4}}, sum % 4, 4));
    }
  }
  return {VerdictKind::VerifiedUpToLevel, Method::Criterion, level, {},
          "all coefficient conditions hold for m < 2^" + std::to_string(level)};
}

bool condition2_holds(const CompatibleMap& f) {
  const std::uint64_t b0 = f.eval(0, 2);
  const std::uint64_t b1 = f.eval(1, 2);
  return (b0 + b1) % 4 == 3;
}

bool alternate_condition2(const CompatibleMap& f) {
  const std::uint64_t b0 = f.eval(0, 2);
  if (b0 % 2 == 0) {
    throw Error(ErrorCode::PreconditionViolated,
                "b_0 = f(0) is even; the alternate form only applies when b_0 is odd");
  }
  const std::uint64_t b1 = f.eval(1, 2);
  return ((b1 - b0) & 3U) == 1;
}

Verdict larin_polynomial(const CompatibleMap& f) {
  if (!f.is_polynomial()) {
    throw Error(ErrorCode::WrongProvenance,
                "mod-8 decision applies to polynomials only, got " + f.describe());
  }
  for (unsigned k = 1; k <= 3; ++k) {
    if (!oracle_is_transitive(f, k)) {
      CycleEvidence ev = cycle_evidence(f, k);
      return {VerdictKind::DecidedNotErgodic, Method::Larin, k, std::move(ev),
              "polynomial is not transitive mod 2^" + std::to_string(k)};
    }
  }
  return {VerdictKind::DecidedErgodic, Method::Larin, 3, {}, "polynomial is transitive mod 8"};
}

}  // namespace tadic
