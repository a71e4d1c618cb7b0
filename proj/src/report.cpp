#include "tadic/report.hpp"

namespace tadic {

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::DecidedErgodic: return "DecidedErgodic";
    case VerdictKind::DecidedNotErgodic: return "DecidedNotErgodic";
    case VerdictKind::DecidedNotMeasurePreserving: return "DecidedNotMeasurePreserving";
    case VerdictKind::VerifiedUpToLevel: return "VerifiedUpToLevel";
    case VerdictKind::Inconclusive: return "Inconclusive";
    case VerdictKind::NotInvariant: return "NotInvariant";
    case VerdictKind::NotOneLipschitz: return "NotOneLipschitz";
  }
  return "Unknown";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Criterion: return "criterion";
    case Method::Oracle: return "oracle";
    case Method::Larin: return "larin";
    case Method::Monomial: return "monomial";
    case Method::Compatibility: return "compatibility";
  }
  return "unknown";
}

namespace {

Json condition_json(const ConditionViolation& v) {
  Json operands = Json::object();
  for (const auto& [name, value] : v.operands) operands[name] = value;
  return Json{{"type", "condition"},
              {"condition", v.condition},
              {"level", v.level},
              {"relation", v.relation},
              {"operands", std::move(operands)},
              {"observed", v.observed},
              {"modulus", v.modulus}};
}

Json cycle_json(const CycleEvidence& ev) {
  Json j{{"type", "cycle"}, {"modulus_exponent", ev.modulus_exp}};
  if (ev.collision) {
    j["collision"] = {ev.collision->first, ev.collision->second};
  } else {
    j["cycle_length"] = ev.cycle_length;
    j["cycle"] = ev.cycle;
    j["cycle_truncated"] = ev.cycle_truncated;
  }
  return j;
}

}  // namespace

Json to_json(const Witness& witness) {
  if (const auto* c = std::get_if<ConditionViolation>(&witness)) return condition_json(*c);
  if (const auto* e = std::get_if<CycleEvidence>(&witness)) return cycle_json(*e);
  return nullptr;
}

Json to_json(const Verdict& verdict) {
  return Json{{"kind", to_string(verdict.kind)},
              {"method", to_string(verdict.method)},
              {"level", verdict.level},
              {"reason", verdict.reason},
              {"witness", to_json(verdict.witness)}};
}

Json to_json(const CycleStructure& cs) {
  Json j{{"modulus_exponent", cs.k}, {"bijective", cs.bijective()},
         {"transitive", cs.transitive()}};
  if (cs.collision) {
    j["collision"] = {cs.collision->first, cs.collision->second};
  } else {
    Json cycles = Json::array();
    for (const auto& c : cs.cycles) cycles.push_back({{"length", c.length}, {"representative", c.representative}});
    j["cycles"] = std::move(cycles);
  }
  return j;
}

}  // namespace tadic
