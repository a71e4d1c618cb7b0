#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>

namespace tadic {

/// A 2-adic integer known modulo 2^precision.
///
/// All arithmetic is carried out modulo 2^precision; mixing operands of
/// different precision yields the smaller one, so a result never claims more
/// known bits than its inputs had. Precision ranges over [1, 64].
class Truncated2Adic {
 public:
  static constexpr unsigned kMaxPrecision = 64;

  /// Reduces `value` mod 2^precision. Throws InvalidParameter if precision is
  /// outside [1, 64].
  Truncated2Adic(std::uint64_t value, unsigned precision);

  /// Two's-complement embedding: -1 becomes 2^precision - 1.
  static Truncated2Adic from_signed(std::int64_t value, unsigned precision);

  std::uint64_t residue() const noexcept { return residue_; }
  unsigned precision() const noexcept { return precision_; }
  bool is_zero() const noexcept { return residue_ == 0; }
  bool is_odd() const noexcept { return (residue_ & 1U) != 0; }

  friend Truncated2Adic operator+(Truncated2Adic x, Truncated2Adic y);
  friend Truncated2Adic operator-(Truncated2Adic x, Truncated2Adic y);
  friend Truncated2Adic operator*(Truncated2Adic x, Truncated2Adic y);
  friend Truncated2Adic operator-(Truncated2Adic x);

  friend bool operator==(const Truncated2Adic&, const Truncated2Adic&) = default;

 private:
  std::uint64_t residue_;
  unsigned precision_;
};

std::ostream& operator<<(std::ostream& os, const Truncated2Adic& x);

/// Mask with the low `bits` bits set; bits = 64 gives all ones.
constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// 2^e as a 64-bit word (0 once e >= 64, i.e. zero in every supported ring).
constexpr std::uint64_t pow2(unsigned e) noexcept {
  return e >= 64 ? 0 : std::uint64_t{1} << e;
}

/// x^e mod 2^precision by repeated squaring; x^0 = 1.
Truncated2Adic pow(Truncated2Adic x, std::uint64_t e);

/// Raw word version of `pow` used by evaluators: base^e mod 2^64.
std::uint64_t pow_word(std::uint64_t base, std::uint64_t e) noexcept;

/// 2-adic valuation of a truncated value. A zero residue only tells us that
/// the valuation is at least the precision.
struct Valuation {
  enum class Kind { Exact, AtLeast };
  Kind kind;
  unsigned value;

  bool exact() const noexcept { return kind == Kind::Exact; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

Valuation val2(Truncated2Adic x);

/// Inverse of a 2-adic unit (odd residue). Throws EvenDivisor otherwise.
Truncated2Adic inv_odd(Truncated2Adic c);

/// Word version: inverse of an odd word modulo 2^64.
std::uint64_t inv_odd_word(std::uint64_t c) noexcept;

/// Image under the reduction map mod 2^k. Throws PrecisionExceeded when k
/// exceeds x.precision().
Truncated2Adic reduce(Truncated2Adic x, unsigned k);

/// Exact division by 2^e of a value known to be divisible by it. The result
/// loses e bits of precision. Throws NotDivisible if the low e bits are not
/// all zero and PrecisionExceeded if e >= precision.
Truncated2Adic divide_pow2(Truncated2Adic x, unsigned e);

}  // namespace tadic
