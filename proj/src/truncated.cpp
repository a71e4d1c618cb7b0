#include "tadic/truncated.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "tadic/error.hpp"

namespace tadic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EvenDivisor: return "EvenDivisor";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::WrongProvenance: return "WrongProvenance";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::NonConstantExponent: return "NonConstantExponent";
    case ErrorCode::NonConstantInvArgument: return "NonConstantInvArgument";
    case ErrorCode::EvenInvConstant: return "EvenInvConstant";
  }
  return "Unknown";
}

Truncated2Adic::Truncated2Adic(std::uint64_t value, unsigned precision)
    : residue_(value & low_mask(precision)), precision_(precision) {
  if (precision == 0 || precision > kMaxPrecision) {
    throw Error(ErrorCode::InvalidParameter,
                "precision must lie in [1, 64], got " + std::to_string(precision));
  }
}

Truncated2Adic Truncated2Adic::from_signed(std::int64_t value, unsigned precision) {
  return {static_cast<std::uint64_t>(value), precision};
}

Truncated2Adic operator+(Truncated2Adic x, Truncated2Adic y) {
  return {x.residue_ + y.residue_, std::min(x.precision_, y.precision_)};
}

Truncated2Adic operator-(Truncated2Adic x, Truncated2Adic y) {
  return {x.residue_ - y.residue_, std::min(x.precision_, y.precision_)};
}

Truncated2Adic operator*(Truncated2Adic x, Truncated2Adic y) {
  return {x.residue_ * y.residue_, std::min(x.precision_, y.precision_)};
}

Truncated2Adic operator-(Truncated2Adic x) {
  return {std::uint64_t{0} - x.residue_, x.precision_};
}

std::ostream& operator<<(std::ostream& os, const Truncated2Adic& x) {
  return os << x.residue() << "@K=" << x.precision();
}

std::uint64_t pow_word(std::uint64_t base, std::uint64_t e) noexcept {
  std::uint64_t result = 1;
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Truncated2Adic pow(Truncated2Adic x, std::uint64_t e) {
  return {pow_word(x.residue(), e), x.precision()};
}

Valuation val2(Truncated2Adic x) {
  if (x.is_zero()) return {Valuation::Kind::AtLeast, x.precision()};
  return {Valuation::Kind::Exact,
          static_cast<unsigned>(__builtin_ctzll(x.residue()))};
}

std::uint64_t inv_odd_word(std::uint64_t c) noexcept {
  // c*c = 1 mod 8, so c is its own inverse to 3 bits; each Newton step
  // doubles the number of correct bits.
  std::uint64_t y = c;
  for (int i = 0; i < 5; ++i) y *= 2 - c * y;
  return y;
}

Truncated2Adic inv_odd(Truncated2Adic c) {
  if (!c.is_odd()) {
    throw Error(ErrorCode::EvenDivisor,
                "cannot invert even residue " + std::to_string(c.residue()));
  }
  return {inv_odd_word(c.residue()), c.precision()};
}

Truncated2Adic reduce(Truncated2Adic x, unsigned k) {
  if (k > x.precision()) {
    throw Error(ErrorCode::PrecisionExceeded,
                "cannot reduce a value known mod 2^" + std::to_string(x.precision()) +
                    " to mod 2^" + std::to_string(k));
  }
  return {x.residue(), k};
}

Truncated2Adic divide_pow2(Truncated2Adic x, unsigned e) {
  if (e >= x.precision()) {
    throw Error(ErrorCode::PrecisionExceeded,
                "dividing by 2^" + std::to_string(e) + " leaves no known bits at precision " +
                    std::to_string(x.precision()));
  }
  if ((x.residue() & low_mask(e)) != 0) {
    throw Error(ErrorCode::NotDivisible,
                std::to_string(x.residue()) + " is not divisible by 2^" + std::to_string(e));
  }
  return {x.residue() >> e, x.precision() - e};
}

}  // namespace tadic
