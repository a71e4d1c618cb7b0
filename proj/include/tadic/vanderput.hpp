#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tadic/compatible_map.hpp"
#include "tadic/truncated.hpp"

namespace tadic {

/// Number of base-2 digits of m, minus one; 0 for m = 0.
unsigned floor_log2(std::uint64_t m) noexcept;

/// Characteristic function of the ball m + 2^(floor_log2(m)+1) Z_2.
/// Throws PrecisionExceeded if x does not carry enough bits to decide.
bool chi(std::uint64_t m, Truncated2Adic x);

/// Van der Put coefficient B_m of f at the given precision:
///   B_m = f(m) - f(m - 2^floor_log2(m))  for m >= 2,
///   B_m = f(m)                           for m in {0, 1}.
/// m must be representable at `precision` (m < 2^precision).
Truncated2Adic vdp_B(const CompatibleMap& f, std::uint64_t m, unsigned precision);

/// Normalized coefficient b_m = B_m / 2^floor_log2(m), known to precision
/// `precision - floor_log2(m)`. Returns nullopt (indeterminate) when B_m is
/// zero at the working precision. Throws NotDivisible when the division is
/// inexact, which means f is not 1-Lipschitz.
std::optional<Truncated2Adic> vdp_b(const CompatibleMap& f, std::uint64_t m, unsigned precision);

struct VdpEntry {
  std::uint64_t m;
  unsigned log2;
  Truncated2Adic B;
  /// B / 2^log2; always exact at its own precision. When `indeterminate`
  /// is set, its residue is zero and only the bound |b|_2 <= 2^-precision
  /// is known.
  Truncated2Adic b;
  bool indeterminate;

  /// b mod 2^bits. Throws PrecisionExceeded if b is not known that far.
  std::uint64_t b_mod(unsigned bits) const;
};

struct LipschitzViolation {
  std::uint64_t m;
  Truncated2Adic B;  // B_m, not divisible by 2^floor_log2(m)
};

/// Coefficient pair (B_m, b_m), or the divisibility failure that shows f is
/// not 1-Lipschitz.
std::variant<VdpEntry, LipschitzViolation> try_vdp_entry(const CompatibleMap& f, std::uint64_t m,
                                                         unsigned precision);

/// Coefficients over an index range [first, last). Immutable snapshot.
class VdpSpectrum {
 public:
  /// All m < 2^level.
  static VdpSpectrum compute(const CompatibleMap& f, unsigned level, unsigned precision);
  /// Indices [first, last) only.
  static VdpSpectrum compute_range(const CompatibleMap& f, std::uint64_t first,
                                   std::uint64_t last, unsigned precision);
  /// Non-throwing variant: stops at the first index violating divisibility.
  static std::variant<VdpSpectrum, LipschitzViolation> try_compute_range(
      const CompatibleMap& f, std::uint64_t first, std::uint64_t last, unsigned precision);

  std::uint64_t first() const noexcept { return first_; }
  std::uint64_t last() const noexcept { return last_; }
  unsigned precision() const noexcept { return precision_; }
  const std::vector<VdpEntry>& entries() const noexcept { return entries_; }
  /// Entry for index m; throws InvalidParameter outside the range.
  const VdpEntry& at(std::uint64_t m) const;

 private:
  VdpSpectrum(std::uint64_t first, std::uint64_t last, unsigned precision)
      : first_(first), last_(last), precision_(precision) {}

  std::uint64_t first_;
  std::uint64_t last_;
  unsigned precision_;
  std::vector<VdpEntry> entries_;
};

/// Partial van der Put sum  sum_{m < 2^level} B_m chi(m, x)  at the
/// spectrum's precision. The spectrum must cover [0, 2^level) and x < 2^level.
Truncated2Adic reconstruct(const VdpSpectrum& spectrum, unsigned level, std::uint64_t x);

/// Convenience overload computing the needed spectrum itself.
Truncated2Adic reconstruct(const CompatibleMap& f, std::uint64_t x, unsigned level,
                           unsigned precision);

}  // namespace tadic
