#include <doctest.h>

#include <numeric>

#include "corpus.hpp"
#include "tadic/error.hpp"
#include "tadic/ergodicity.hpp"

using namespace tadic;

namespace {

std::vector<std::uint64_t> lengths(const CycleStructure& cs) {
  std::vector<std::uint64_t> out;
  for (const auto& c : cs.cycles) out.push_back(c.length);
  return out;
}

const ConditionViolation& violation_of(const Verdict& v) {
  REQUIRE(std::holds_alternative<ConditionViolation>(v.witness));
  return std::get<ConditionViolation>(v.witness);
}

}  // namespace

TEST_CASE("cycle structure") {
  CHECK(lengths(cycle_structure(map_from_text("x"), 2)) == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(lengths(cycle_structure(affine(1, 5), 3)) == std::vector<std::uint64_t>{8});
  const auto sq = cycle_structure(map_from_text("x**2"), 2);
  CHECK_FALSE(sq.bijective());
  REQUIRE(sq.collision);
  CHECK(*sq.collision == std::pair<std::uint64_t, std::uint64_t>{0, 2});
  CHECK_THROWS_AS(cycle_structure(affine(1, 1), 21), Error);
}

TEST_CASE("oracle transitivity") {
  const auto inc = map_from_text("x + 1");
  for (unsigned k = 1; k <= 14; ++k) CHECK(oracle_is_transitive(inc, k));
  CHECK(oracle_is_bijective(map_from_text("x"), 1));
  CHECK_FALSE(oracle_is_transitive(map_from_text("x"), 1));
  CHECK_FALSE(oracle_is_transitive(affine(1, 3), 2));
  CHECK(first_nontransitive_level(affine(1, 3), 12) == 2u);
  const auto ev = cycle_evidence(affine(1, 3), 2);
  CHECK(ev.cycle_length == 2);
  CHECK(ev.cycle == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("cycle structure invariants over the corpus") {
  const auto corpus = tadic::testing::build_corpus(9, 30);
  for (const auto& entry : corpus) {
    for (unsigned k = 1; k <= 6; ++k) {
      const auto cs = cycle_structure(entry.map, k);
      if (cs.bijective()) {
        const auto ls = lengths(cs);
        CHECK(std::accumulate(ls.begin(), ls.end(), std::uint64_t{0}) == (1ULL << k));
      }
      if (cs.transitive()) CHECK(oracle_is_bijective(entry.map, k));
    }
  }
}

TEST_CASE("coefficient criterion examples") {
  const auto v = vdp_ergodicity_criterion(map_from_text("x + 1"), 10);
  CHECK(v.kind == VerdictKind::VerifiedUpToLevel);
  CHECK(v.level == 10);

  const auto id = vdp_ergodicity_criterion(map_from_text("x"), 10);
  CHECK(id.kind == VerdictKind::DecidedNotErgodic);
  CHECK(violation_of(id).condition == 1);

  const auto a13 = vdp_ergodicity_criterion(affine(1, 3), 10);
  CHECK(a13.kind == VerdictKind::DecidedNotErgodic);
  const auto& w = violation_of(a13);
  CHECK(w.condition == 2);
  CHECK(w.observed == 1);  // 1 + 4 = 5
  CHECK(w.operands[1].second == 4);

  CHECK(vdp_ergodicity_criterion(affine(1, 5), 8).kind == VerdictKind::VerifiedUpToLevel);
  // x + 2 keeps parity
  CHECK(violation_of(vdp_ergodicity_criterion(map_from_text("x + 2"), 6)).condition == 1);
}

TEST_CASE("criterion reports non-compatible tables") {
  // x + 1 mod 32 with f(2) moved to 4, so B_2 = 3 is odd
  std::vector<std::uint64_t> values(32);
  for (std::uint64_t i = 0; i < 32; ++i) values[i] = (i + 1) % 32;
  values[2] = 4;
  const auto v = vdp_ergodicity_criterion(table_map(5, values), 2);
  CHECK(v.kind == VerdictKind::NotOneLipschitz);
  CHECK(violation_of(v).operands[0].second == 2);
  // level 10 needs precision 13, beyond the table
  CHECK_THROWS_AS(vdp_ergodicity_criterion(table_map(5, values), 10), Error);
}

TEST_CASE("alternate condition 2") {
  CHECK(alternate_condition2(map_from_text("x + 1")));
  CHECK(alternate_condition2(affine(1, 5)));
  CHECK_FALSE(alternate_condition2(affine(1, 3)));
  try {
    alternate_condition2(map_from_text("x"));
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("mod-8 polynomial decision") {
  CHECK(larin_polynomial(affine(1, 5)).kind == VerdictKind::DecidedErgodic);
  const auto sq = larin_polynomial(polynomial({0, 0, 1}));
  CHECK(sq.kind == VerdictKind::DecidedNotErgodic);
  REQUIRE(std::holds_alternative<CycleEvidence>(sq.witness));
  CHECK(larin_polynomial(affine(2, 1)).kind == VerdictKind::DecidedNotErgodic);
  CHECK(larin_polynomial(affine(2, 1)).level == 1);
  try {
    larin_polynomial(map_from_text("x xor 1"));
    FAIL("expected WrongProvenance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongProvenance);
  }
}

TEST_CASE("measure preservation") {
  CHECK(check_measure_preserving(map_from_text("x"), 12).kind == VerdictKind::VerifiedUpToLevel);
  const auto sq = check_measure_preserving(map_from_text("x**2"), 2);
  CHECK(sq.kind == VerdictKind::DecidedNotMeasurePreserving);
  REQUIRE(std::holds_alternative<CycleEvidence>(sq.witness));
  const auto& ev = std::get<CycleEvidence>(sq.witness);
  REQUIRE(ev.collision);
  CHECK(*ev.collision == std::pair<std::uint64_t, std::uint64_t>{0, 2});
  CHECK(check_measure_preserving(map_from_text("x xor 5"), 12).kind ==
        VerdictKind::VerifiedUpToLevel);
  CHECK_THROWS_AS(check_measure_preserving(map_from_text("x"), 21), Error);
}

TEST_CASE("oracle verdicts") {
  const auto v = oracle_ergodic(affine(1, 3), 12);
  CHECK(v.kind == VerdictKind::DecidedNotErgodic);
  CHECK(v.level == 2);
  CHECK(oracle_ergodic(map_from_text("x + 1"), 12).kind == VerdictKind::VerifiedUpToLevel);
}
