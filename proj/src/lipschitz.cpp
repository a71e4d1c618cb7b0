#include "tadic/lipschitz.hpp"

#include <algorithm>
#include <string>

#include "tadic/error.hpp"
#include "tadic/vanderput.hpp"

namespace tadic {

std::optional<LipschitzViolation> check_compatibility(const CompatibleMap& f, unsigned level) {
  if (level < 1 || level > 40) {
    throw Error(ErrorCode::InvalidParameter, "compatibility level must lie in [1, 40]");
  }
  const unsigned precision = std::min(level + 2, f.max_precision());
  const std::uint64_t bound = std::uint64_t{1} << level;
  for (std::uint64_t m = 1; m < bound; ++m) {
    const unsigned n = floor_log2(m);
    if (n + 1 > precision) {
      throw Error(ErrorCode::PrecisionExceeded,
                  "map " + f.describe() + " cannot be evaluated at the precision needed for index " +
                      std::to_string(m));
    }
    const Truncated2Adic B = vdp_B(f, m, precision);
    if ((B.residue() & low_mask(n)) != 0) return LipschitzViolation{m, B};
  }
  return std::nullopt;
}

}  // namespace tadic
