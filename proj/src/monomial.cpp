#include "tadic/monomial.hpp"

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "tadic/ergodicity.hpp"
#include "tadic/error.hpp"
#include "tadic/sphere.hpp"

namespace tadic {

namespace mp = boost::multiprecision;

namespace {

std::uint64_t low_word(const mp::cpp_int& v) {
  return static_cast<std::uint64_t>(v & mp::cpp_int(~std::uint64_t{0}));
}

// C(s, 2) mod 4 computed from the exact product.
std::uint64_t choose2_mod4(std::uint64_t s) {
  const mp::cpp_int c = mp::cpp_int(s) * (mp::cpp_int(s) - 1) / 2;
  return low_word(c) & 3U;
}

}  // namespace

PerturbedMonomial::PerturbedMonomial(std::uint64_t s_, unsigned r_, CompatibleMap u_)
    : s(s_), r(r_), u(std::move(u_)) {
  if (s == 0 || r == 0) {
    throw Error(ErrorCode::InvalidParameter, "perturbed monomial needs s >= 1 and r >= 1");
  }
}

CompatibleMap PerturbedMonomial::map() const { return perturbed_monomial(s, r, u); }

std::optional<PerturbedMonomial> as_perturbed_monomial(const CompatibleMap& f) {
  if (const auto* pm = std::get_if<provenance::PerturbedMonomial>(&f.provenance())) {
    return PerturbedMonomial(pm->s, pm->r, pm->u);
  }
  return std::nullopt;
}

std::uint64_t binomial_mod_2_64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mp::cpp_int c = 1;
  for (std::uint64_t j = 1; j <= k; ++j) c = c * (n - j + 1) / j;
  return low_word(c);
}

Verdict monomial_decide(const PerturbedMonomial& pm) {
  const std::uint64_t s_mod4 = pm.s % 4;
  const std::uint64_t u1 = pm.u.eval(1, 1);
  if (s_mod4 != 1) {
    ConditionViolation v{1, 1, "s = 1 (mod 4)", {{"s", pm.s}}, s_mod4, 4};
    return {VerdictKind::DecidedNotErgodic, Method::Monomial, 1, std::move(v),
            "exponent s = " + std::to_string(pm.s) + " is not 1 mod 4"};
  }
  if (u1 != 1) {
    ConditionViolation v{2, 1, "u(1) = 1 (mod 2)", {{"u(1) mod 2", u1}}, u1, 2};
    return {VerdictKind::DecidedNotErgodic, Method::Monomial, 1, std::move(v),
            "perturbation value u(1) is even"};
  }
  return {VerdictKind::DecidedErgodic, Method::Monomial, 0, {},
          "s = 1 (mod 4) and u(1) is odd"};
}

bool invariance_congruence(const PerturbedMonomial& pm) {
  const std::uint64_t shifted = pm.r >= 2 ? 0 : (choose2_mod4(pm.s) << pm.r) & 3U;
  const std::uint64_t u1 = pm.u.eval(1, 1);
  return (pm.s % 4 + shifted + 2 * u1) % 4 == 3;
}

Truncated2Adic expansion_g(const PerturbedMonomial& pm, Truncated2Adic x) {
  const unsigned k = x.precision();
  const unsigned r = pm.r;
  if (k + r + 1 > Truncated2Adic::kMaxPrecision) {
    throw Error(ErrorCode::PrecisionExceeded,
                "expansion at precision " + std::to_string(k) + " needs f at precision " +
                    std::to_string(k + r + 1));
  }
  if (pm.s % 2 == 0) {
    throw Error(ErrorCode::NotInvariant, "x^s with even s does not preserve S_{2^-r}(1)");
  }
  const std::uint64_t mask = low_mask(k);
  const std::uint64_t xv = x.residue();
  std::uint64_t acc = pm.u.eval((1 + pow2(r) + (xv << (r + 1))) & mask, k);
  acc += (pm.s - 1) / 2 + pm.s * xv;

  const std::uint64_t odd = 1 + 2 * xv;
  mp::cpp_int c = pm.s;  // C(s, 1)
  for (std::uint64_t j = 2; j <= pm.s; ++j) {
    const std::uint64_t shift = static_cast<std::uint64_t>(r) * (j - 1) - 1;
    if (shift >= k) break;  // this and every later term vanish mod 2^k
    c = c * (pm.s - j + 1) / j;
    acc += low_word(c) * pow2(static_cast<unsigned>(shift)) * pow_word(odd, j);
  }
  return {acc & mask, k};
}

std::optional<Verdict> monomial_larin_cross_check(const PerturbedMonomial& pm) {
  if (!pm.u.is_polynomial()) return std::nullopt;
  const CompatibleMap f = pm.map();
  if (!check_invariance(f, pm.sphere())) return std::nullopt;
  return larin_polynomial(conjugate(f, pm.sphere()));
}

}  // namespace tadic
