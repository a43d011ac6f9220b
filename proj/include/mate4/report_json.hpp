#pragma once

#include <string>

#include <json.hpp>

#include "mate4/mates.hpp"

namespace mate4 {

nlohmann::ordered_json to_json(const ConditionReport& r);
std::string verdict_name(Verdict v);

}  // namespace mate4
