#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tadic/map_expr.hpp"
#include "tadic/sphere_spec.hpp"
#include "tadic/truncated.hpp"

namespace tadic {

namespace provenance {
struct Dsl;
struct Affine;
struct Polynomial;
struct PerturbedMonomial;
struct Conjugated;
struct Table;
}  // namespace provenance

using Provenance =
    std::variant<provenance::Dsl, provenance::Affine, provenance::Polynomial,
                 provenance::PerturbedMonomial, provenance::Conjugated, provenance::Table>;

/// A 1-Lipschitz (compatible) self-map of Z_2, evaluable mod 2^k for any
/// k up to max_precision(). The output mod 2^k depends only on the input
/// mod 2^k. Immutable and cheap to copy.
class CompatibleMap {
 public:
  explicit CompatibleMap(Provenance provenance);

  /// f(x) at x's precision. Throws PrecisionExceeded above max_precision().
  Truncated2Adic operator()(Truncated2Adic x) const;
  /// f(x) mod 2^k on raw residues.
  std::uint64_t eval(std::uint64_t x, unsigned k) const;

  unsigned max_precision() const noexcept;
  const Provenance& provenance() const noexcept;

  /// Polynomial over Z_2 (needed by the mod-8 polynomial decision).
  bool is_polynomial() const noexcept;

  /// Human readable description, e.g. "x**5 + 4" or "affine(1, 5)".
  std::string describe() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

namespace provenance {
struct Dsl {
  MapExpr expr;
};
/// x -> c0 + c1 x
struct Affine {
  std::int64_t c0;
  std::int64_t c1;
};
/// coeffs[i] is the coefficient of x^i.
struct Polynomial {
  std::vector<std::uint64_t> coeffs;
};
/// x -> x^s + 2^(r+1) u(x)
struct PerturbedMonomial {
  std::uint64_t s;
  unsigned r;
  CompatibleMap u;
};
/// x -> (inner(b + 2^(r+1) x) - b) / 2^(r+1), b the sphere's base point.
/// Only constructed through conjugate(), which checks invariance.
struct Conjugated {
  CompatibleMap inner;
  SphereSpec sphere;
};
/// Explicit values mod 2^k_max; no evaluation beyond k_max.
struct Table {
  unsigned k_max;
  std::vector<std::uint64_t> values;
};
}  // namespace provenance

CompatibleMap map_from_expr(MapExpr expr);
/// parse_map + map_from_expr.
CompatibleMap map_from_text(std::string_view text);
CompatibleMap affine(std::int64_t c0, std::int64_t c1);
CompatibleMap polynomial(std::vector<std::uint64_t> coeffs);
/// Throws InvalidParameter when s = 0 or r = 0.
CompatibleMap perturbed_monomial(std::uint64_t s, unsigned r, CompatibleMap u);
/// values.size() must be 2^k_max with 1 <= k_max <= 20. The table need not
/// be compatible; that is what check_compatibility is for.
CompatibleMap table_map(unsigned k_max, std::vector<std::uint64_t> values);

}  // namespace tadic
