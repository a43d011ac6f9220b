#include "mate4/report_json.hpp"

namespace mate4 {

std::string verdict_name(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

nlohmann::ordered_json to_json(const ConditionReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(r.verdict);
  j["residual_sup"] = r.residual_sup;
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = d;
  return j;
}

}  // namespace mate4
