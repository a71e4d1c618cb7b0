#pragma once

#include <cstdint>
#include <optional>

#include "tadic/compatible_map.hpp"
#include "tadic/vanderput.hpp"

namespace tadic {

/// Bounded 1-Lipschitz test through van der Put coefficients: scans
/// 1 <= m < 2^level in ascending order and returns the first m whose B_m is
/// not divisible by 2^floor_log2(m), or nullopt if there is none.
///
/// Works at precision min(level + 2, f.max_precision()). A witness found at
/// lower precision is still conclusive; running out of precision before the
/// scan completes throws PrecisionExceeded.
std::optional<LipschitzViolation> check_compatibility(const CompatibleMap& f, unsigned level);

}  // namespace tadic
