#include "tadic/compatible_map.hpp"

#include <sstream>

#include "tadic/error.hpp"

namespace tadic {

struct CompatibleMap::Impl {
  Provenance provenance;
  unsigned max_precision;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

unsigned compute_max_precision(const Provenance& p) {
  return std::visit(
      overloaded{
          [](const provenance::Table& t) { return t.k_max; },
          [](const provenance::Conjugated& c) {
            const unsigned inner = c.inner.max_precision();
            const unsigned shift = c.sphere.r() + 1;
            return inner > shift ? inner - shift : 0U;
          },
          [](const provenance::PerturbedMonomial& pm) { return pm.u.max_precision(); },
          [](const auto&) { return Truncated2Adic::kMaxPrecision; },
      },
      p);
}

std::uint64_t horner(const std::vector<std::uint64_t>& coeffs, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

CompatibleMap::CompatibleMap(Provenance provenance) {
  const unsigned max_precision = compute_max_precision(provenance);
  impl_ = std::make_shared<const Impl>(Impl{std::move(provenance), max_precision});
}

unsigned CompatibleMap::max_precision() const noexcept { return impl_->max_precision; }
const Provenance& CompatibleMap::provenance() const noexcept { return impl_->provenance; }

std::uint64_t CompatibleMap::eval(std::uint64_t x, unsigned k) const {
  if (k == 0 || k > impl_->max_precision) {
    throw Error(ErrorCode::PrecisionExceeded,
                "map " + describe() + " supports precision at most " +
                    std::to_string(impl_->max_precision) + ", requested " + std::to_string(k));
  }
  const std::uint64_t mask = low_mask(k);
  x &= mask;
  return std::visit(
      overloaded{
          [&](const provenance::Dsl& d) { return d.expr.evaluate(x, k); },
          [&](const provenance::Affine& a) {
            return (static_cast<std::uint64_t>(a.c0) + static_cast<std::uint64_t>(a.c1) * x) & mask;
          },
          [&](const provenance::Polynomial& p) { return horner(p.coeffs, x) & mask; },
          [&](const provenance::PerturbedMonomial& pm) {
            return (pow_word(x, pm.s) + pow2(pm.r + 1) * pm.u.eval(x, k)) & mask;
          },
          [&](const provenance::Conjugated& c) {
            const unsigned shift = c.sphere.r() + 1;
            const std::uint64_t base = c.sphere.base_point();
            const std::uint64_t y = c.inner.eval(base + (x << shift), k + shift);
            // Invariance guarantees y = base mod 2^shift.
            return ((y - base) & low_mask(k + shift)) >> shift;
          },
          [&](const provenance::Table& t) { return t.values[x] & mask; },
      },
      impl_->provenance);
}

Truncated2Adic CompatibleMap::operator()(Truncated2Adic x) const {
  return {eval(x.residue(), x.precision()), x.precision()};
}

bool CompatibleMap::is_polynomial() const noexcept {
  return std::visit(
      overloaded{
          [](const provenance::Dsl& d) { return d.expr.is_polynomial(); },
          [](const provenance::Affine&) { return true; },
          [](const provenance::Polynomial&) { return true; },
          [](const provenance::PerturbedMonomial& pm) { return pm.u.is_polynomial(); },
          // An affine change of variables keeps polynomials polynomial, and
          // invariance makes the constant term integral.
          [](const provenance::Conjugated& c) { return c.inner.is_polynomial(); },
          [](const provenance::Table&) { return false; },
      },
      impl_->provenance);
}

std::string CompatibleMap::describe() const {
  return std::visit(
      overloaded{
          [](const provenance::Dsl& d) { return to_string(d.expr); },
          [](const provenance::Affine& a) {
            return "affine(" + std::to_string(a.c0) + ", " + std::to_string(a.c1) + ")";
          },
          [](const provenance::Polynomial& p) {
            std::ostringstream os;
            os << "polynomial([";
            for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << (i ? ", " : "") << p.coeffs[i];
            os << "])";
            return os.str();
          },
          [](const provenance::PerturbedMonomial& pm) {
            return "perturbed_monomial(s=" + std::to_string(pm.s) + ", r=" + std::to_string(pm.r) +
                   ", u=" + pm.u.describe() + ")";
          },
          [](const provenance::Conjugated& c) {
            return "conjugate(" + c.inner.describe() + ", r=" + std::to_string(c.sphere.r()) +
                   ", a=" + std::to_string(c.sphere.a()) + ")";
          },
          [](const provenance::Table& t) {
            return "table(k_max=" + std::to_string(t.k_max) + ")";
          },
      },
      impl_->provenance);
}

CompatibleMap map_from_expr(MapExpr expr) { return CompatibleMap(provenance::Dsl{std::move(expr)}); }

CompatibleMap map_from_text(std::string_view text) { return map_from_expr(parse_map(text)); }

CompatibleMap affine(std::int64_t c0, std::int64_t c1) {
  return CompatibleMap(provenance::Affine{c0, c1});
}

CompatibleMap polynomial(std::vector<std::uint64_t> coeffs) {
  return CompatibleMap(provenance::Polynomial{std::move(coeffs)});
}

CompatibleMap perturbed_monomial(std::uint64_t s, unsigned r, CompatibleMap u) {
  if (s == 0 || r == 0) {
    throw Error(ErrorCode::InvalidParameter, "perturbed monomial needs s >= 1 and r >= 1");
  }
  return CompatibleMap(provenance::PerturbedMonomial{s, r, std::move(u)});
}

CompatibleMap table_map(unsigned k_max, std::vector<std::uint64_t> values) {
  if (k_max < 1 || k_max > 20) {
    throw Error(ErrorCode::InvalidParameter, "table k_max must lie in [1, 20]");
  }
  if (values.size() != (std::size_t{1} << k_max)) {
    throw Error(ErrorCode::InvalidParameter,
                "table needs exactly 2^k_max values, got " + std::to_string(values.size()));
  }
  for (auto& v : values) v &= low_mask(k_max);
  return CompatibleMap(provenance::Table{k_max, std::move(values)});
}

}  // namespace tadic
