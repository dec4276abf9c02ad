#include "cfdyn/map_io.hpp"

#include <json.hpp>

namespace cfdyn {

std::string map_to_json(const CFMap& map, int indent) {
  nlohmann::json doc;
  doc["N"] = map.modulus();
  doc["domain"] = {map.domain().lo(), map.domain().hi()};
  auto branches = nlohmann::json::array();
  for (const auto& br : map.branches()) {
    branches.push_back({{"lo", br.domain.lo()}, {"hi", br.domain.hi()}, {"eps", br.epsilon}, {"d", br.digit}});
  }
  doc["branches"] = std::move(branches);
  return doc.dump(indent);
}

CFMap map_from_json(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    int N = doc.at("N").get<int>();
    const auto& dom = doc.at("domain");
    if (!dom.is_array() || dom.size() != 2) throw MapError("map JSON: domain must be [a, b]");
    std::vector<Branch> branches;
    for (const auto& b : doc.at("branches")) {
      branches.push_back({Interval(b.at("lo").get<double>(), b.at("hi").get<double>()), b.at("eps").get<int>(),
                          b.at("d").get<int>()});
    }
    return CFMap(N, Interval(dom[0].get<double>(), dom[1].get<double>()), std::move(branches));
  } catch (const nlohmann::json::exception& e) {
    throw MapError(std::string("map JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw MapError(e.what());
  }
}

}  // namespace cfdyn
