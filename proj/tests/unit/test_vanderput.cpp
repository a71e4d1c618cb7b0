#include <doctest.h>

#include "corpus.hpp"
#include "tadic/error.hpp"
#include "tadic/vanderput.hpp"

using namespace tadic;

namespace {

// Full sum over every m < 2^level, with B_m and chi taken from the definitions.
std::uint64_t brute_force_sum(const CompatibleMap& f, std::uint64_t x, unsigned level) {
  const unsigned k = 32;
  std::uint64_t total = 0;
  for (std::uint64_t m = 0; m < (1ULL << level); ++m) {
    unsigned n = 0;
    while ((m >> (n + 1)) != 0) ++n;
    const std::uint64_t B = m < 2 ? f.eval(m, k) : f.eval(m, k) - f.eval(m - (1ULL << n), k);
    if (((x - m) & ((2ULL << n) - 1)) == 0) total += B;
  }
  return total & low_mask(k);
}

}  // namespace

TEST_CASE("floor_log2") {
  CHECK(floor_log2(0) == 0);
  CHECK(floor_log2(1) == 0);
  CHECK(floor_log2(6) == 2);
  CHECK(floor_log2(~0ULL) == 63);
}

TEST_CASE("chi") {
  CHECK(chi(0, Truncated2Adic(2, 3)));
  CHECK_FALSE(chi(2, Truncated2Adic(4, 3)));
  CHECK(chi(5, Truncated2Adic(13, 4)));
  CHECK_THROWS_AS(chi(5, Truncated2Adic(13, 2)), Error);
}

TEST_CASE("chi selects one index per set digit") {
  for (unsigned n = 1; n <= 8; ++n) {
    for (std::uint64_t x = 0; x < 512; ++x) {
      int hits = 0;
      for (std::uint64_t m = 1ULL << (n - 1); m < (1ULL << n); ++m) hits += chi(m, Truncated2Adic(x, 10)) ? 1 : 0;
      CHECK(hits == static_cast<int>((x >> (n - 1)) & 1));
    }
  }
}

TEST_CASE("coefficients of x + 1 and x") {
  const auto f = map_from_text("x + 1");
  CHECK(vdp_B(f, 0, 8).residue() == 1);
  CHECK(vdp_B(f, 1, 8).residue() == 2);
  CHECK(vdp_B(f, 5, 8).residue() == 4);
  CHECK(vdp_b(f, 5, 8)->residue() == 1);
  CHECK(vdp_b(f, 5, 8)->precision() == 6);
  CHECK(vdp_b(f, 1, 8)->residue() == 2);
  const auto id = map_from_text("x");
  for (std::uint64_t m = 2; m < 64; ++m) CHECK(vdp_B(id, m, 10).residue() == (1ULL << floor_log2(m)));
  CHECK_FALSE(vdp_b(id, 0, 8).has_value());
}

TEST_CASE("non-compatible table") {
  const auto t = table_map(2, {0, 1, 1, 0});
  try {
    vdp_b(t, 2, 2);
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDivisible);
  }
  const auto r = try_vdp_entry(t, 2, 2);
  REQUIRE(std::holds_alternative<LipschitzViolation>(r));
  CHECK(std::get<LipschitzViolation>(r).m == 2);
}

TEST_CASE("reconstruction examples") {
  CHECK(reconstruct(map_from_text("x + 1"), 5, 3, 16).residue() == 6);
  CHECK(reconstruct(map_from_text("x"), 0, 1, 16).residue() == 0);
  const auto f = map_from_text("x xor 5");
  CHECK(reconstruct(f, 3, 4, 16).residue() == 6);
  CHECK(brute_force_sum(f, 3, 4) == 6);
}

TEST_CASE("reconstruction agrees with the full sum") {
  const auto corpus = tadic::testing::build_corpus(5, 20);
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    const auto& f = corpus[i].map;
    const auto spectrum = VdpSpectrum::compute(f, 6, 32);
    for (std::uint64_t x = 0; x < 64; ++x) {
      const auto lhs = reconstruct(spectrum, 6, x).residue();
      CHECK(lhs == brute_force_sum(f, x, 6));
      CHECK(lhs == f.eval(x, 32));
    }
  }
}

TEST_CASE("spectrum invariants") {
  const auto f = map_from_text("x**3 + (x xor 6)");
  const auto s = VdpSpectrum::compute(f, 8, 20);
  CHECK(s.entries().size() == 256);
  for (const auto& e : s.entries()) {
    const unsigned n = e.log2;
    CHECK(e.b.precision() == 20 - n);
    CHECK(((e.b.residue() << n) & low_mask(20)) == e.B.residue());
    CHECK(e.indeterminate == e.B.is_zero());
  }
  CHECK_THROWS_AS(s.at(256), Error);
  const auto part = VdpSpectrum::compute_range(f, 16, 32, 20);
  CHECK(part.at(20).B == s.at(20).B);
}
