#include "measurelab/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlab {

const Datum& ScenarioReport::get(const std::string& name) const {
  for (const auto& d : computed) {
    if (d.name == name) return d.value;
  }
  throw std::out_of_range("no computed value named '" + name + "'");
}

const Verdict& ScenarioReport::verdict_for(const std::string& claim) const {
  for (const auto& v : verdicts) {
    if (v.claim == claim) return v;
  }
  throw std::out_of_range("no verdict for claim '" + claim + "'");
}

bool ScenarioReport::all_verdicts_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

}  // namespace mlab
