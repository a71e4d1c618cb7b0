#pragma once

#include <json.hpp>

#include "tadic/ergodicity.hpp"
#include "tadic/verdict.hpp"

namespace tadic {

using Json = nlohmann::ordered_json;

Json to_json(const Witness& witness);
Json to_json(const Verdict& verdict);
Json to_json(const CycleStructure& cs);

}  // namespace tadic
