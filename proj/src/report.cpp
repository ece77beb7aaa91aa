#include "relproj/report.hpp"

#include <algorithm>

namespace relproj {

void CheckReport::absorb(const CheckReport& other) {
  checked += other.checked;
  for (const auto& v : other.violations) violations.push_back(other.name + ": " + v);
  for (const auto& n : other.notes) notes.push_back(other.name + ": " + n);
}

std::string CheckReport::summary() const {
  std::string s = name + ": " + (passed() ? "pass" : "FAIL") + " (" + std::to_string(checked - std::min(checked, violations.size())) +
                  "/" + std::to_string(checked) + ")";
  if (!violations.empty()) s += " first witness: " + violations.front();
  return s;
}

}  // namespace relproj
