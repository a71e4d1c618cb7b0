#include "tadic/vanderput.hpp"

#include <string>

#include "tadic/error.hpp"

namespace tadic {

unsigned floor_log2(std::uint64_t m) noexcept {
  return m == 0 ? 0 : 63U - static_cast<unsigned>(__builtin_clzll(m));
}

bool chi(std::uint64_t m, Truncated2Adic x) {
  const unsigned bits = floor_log2(m) + 1;
  if (x.precision() < bits) {
    throw Error(ErrorCode::PrecisionExceeded,
                "chi(" + std::to_string(m) + ", .) needs " + std::to_string(bits) +
                    " known bits, argument has " + std::to_string(x.precision()));
  }
  return ((x.residue() ^ m) & low_mask(bits)) == 0;
}

namespace {

void require_index(std::uint64_t m, unsigned precision) {
  if (precision < floor_log2(m) + 1 || precision > Truncated2Adic::kMaxPrecision) {
    throw Error(ErrorCode::PrecisionExceeded,
                "index " + std::to_string(m) + " is not representable at precision " +
                    std::to_string(precision));
  }
}

}  // namespace

Truncated2Adic vdp_B(const CompatibleMap& f, std::uint64_t m, unsigned precision) {
  require_index(m, precision);
  const Truncated2Adic fm = f(Truncated2Adic(m, precision));
  if (m < 2) return fm;
  const std::uint64_t prefix = m - (std::uint64_t{1} << floor_log2(m));
  return fm - f(Truncated2Adic(prefix, precision));
}

std::variant<VdpEntry, LipschitzViolation> try_vdp_entry(const CompatibleMap& f, std::uint64_t m,
                                                         unsigned precision) {
  const Truncated2Adic B = vdp_B(f, m, precision);
  const unsigned n = floor_log2(m);
  if (B.is_zero()) return VdpEntry{m, n, B, Truncated2Adic(0, precision - n), true};
  if ((B.residue() & low_mask(n)) != 0) return LipschitzViolation{m, B};
  return VdpEntry{m, n, B, divide_pow2(B, n), false};
}

namespace {

VdpEntry make_entry(const CompatibleMap& f, std::uint64_t m, unsigned precision) {
  auto result = try_vdp_entry(f, m, precision);
  if (auto* v = std::get_if<LipschitzViolation>(&result)) {
    throw Error(ErrorCode::NotDivisible,
                "B_" + std::to_string(m) + " = " + std::to_string(v->B.residue()) +
                    " is not divisible by 2^" + std::to_string(floor_log2(m)) +
                    ": map is not 1-Lipschitz");
  }
  return std::get<VdpEntry>(result);
}

}  // namespace

std::optional<Truncated2Adic> vdp_b(const CompatibleMap& f, std::uint64_t m, unsigned precision) {
  const VdpEntry e = make_entry(f, m, precision);
  if (e.indeterminate) return std::nullopt;
  return e.b;
}

std::uint64_t VdpEntry::b_mod(unsigned bits) const {
  if (bits > b.precision()) {
    throw Error(ErrorCode::PrecisionExceeded,
                "b_" + std::to_string(m) + " is only known mod 2^" + std::to_string(b.precision()));
  }
  return b.residue() & low_mask(bits);
}

VdpSpectrum VdpSpectrum::compute(const CompatibleMap& f, unsigned level, unsigned precision) {
  if (level > 40) throw Error(ErrorCode::InvalidParameter, "spectrum level too large");
  return compute_range(f, 0, std::uint64_t{1} << level, precision);
}

VdpSpectrum VdpSpectrum::compute_range(const CompatibleMap& f, std::uint64_t first,
                                       std::uint64_t last, unsigned precision) {
  if (last > first) require_index(last - 1, precision);
  VdpSpectrum s(first, last, precision);
  s.entries_.reserve(last > first ? last - first : 0);
  for (std::uint64_t m = first; m < last; ++m) s.entries_.push_back(make_entry(f, m, precision));
  return s;
}

std::variant<VdpSpectrum, LipschitzViolation> VdpSpectrum::try_compute_range(
    const CompatibleMap& f, std::uint64_t first, std::uint64_t last, unsigned precision) {
  if (last > first) require_index(last - 1, precision);
  VdpSpectrum s(first, last, precision);
  s.entries_.reserve(last > first ? last - first : 0);
  for (std::uint64_t m = first; m < last; ++m) {
    auto entry = try_vdp_entry(f, m, precision);
    if (auto* v = std::get_if<LipschitzViolation>(&entry)) return *v;
    s.entries_.push_back(std::get<VdpEntry>(entry));
  }
  return s;
}

const VdpEntry& VdpSpectrum::at(std::uint64_t m) const {
  if (m < first_ || m >= last_) {
    throw Error(ErrorCode::InvalidParameter,
                "index " + std::to_string(m) + " outside spectrum range");
  }
  return entries_[m - first_];
}

Truncated2Adic reconstruct(const VdpSpectrum& spectrum, unsigned level, std::uint64_t x) {
  if (level == 0 || level > 63 || x >> level != 0) {
    throw Error(ErrorCode::InvalidParameter, "reconstruct needs 1 <= level and x < 2^level");
  }
  if (spectrum.first() != 0 || spectrum.last() < (std::uint64_t{1} << level)) {
    throw Error(ErrorCode::InvalidParameter, "spectrum does not cover [0, 2^level)");
  }
  const unsigned precision = spectrum.precision();
  const Truncated2Adic point(x, level);
  Truncated2Adic sum(0, precision);
  const auto add = [&](std::uint64_t m) {
    if (chi(m, point)) sum = sum + spectrum.at(m).B;
  };
  add(0);
  add(1);
  // For m >= 2, chi(m, x) = 1 forces m = x mod 2^(floor_log2(m)+1), so each
  // digit count contributes at most one candidate; all other terms vanish.
  for (unsigned bits = 2; bits <= level; ++bits) {
    const std::uint64_t m = x & low_mask(bits);
    if (floor_log2(m) + 1 == bits) add(m);
  }
  return sum;
}

Truncated2Adic reconstruct(const CompatibleMap& f, std::uint64_t x, unsigned level,
                           unsigned precision) {
  return reconstruct(VdpSpectrum::compute(f, level, precision), level, x);
}

}  // namespace tadic
