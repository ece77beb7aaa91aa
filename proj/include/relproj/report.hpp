#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace relproj {

/// Outcome of an exhaustive or sampled verification: how many cases were examined
/// and a witness line for each one that failed.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  /// Free-form facts worth recording next to the verdict (seeds, dimensions, certificates).
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }

  void fail(std::string witness) { violations.push_back(std::move(witness)); }
  void note(std::string line) { notes.push_back(std::move(line)); }

  /// Appends another report's counts and findings, prefixing witnesses with its name.
  void absorb(const CheckReport& other);

  std::string summary() const;
};

}  // namespace relproj
