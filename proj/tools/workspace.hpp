#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relproj/proj.hpp"

namespace relproj::cli {

using json = nlohmann::json;

/// Rejects floating literals; accepts "p/q" strings and JSON integers.
Q rational_from(const json& j, const std::string& path);
Vec vector_from(const json& j, const std::string& path);
Matrix matrix_from(const json& j, const std::string& path);
json to_json(const Q& q);
json to_json(const Vec& v);
json to_json(const Matrix& m);

/// A parsed input document. Definitions may reference each other by name, name builtins
/// ("octonion", "Q", "Q^3", "Q[eps]", "super", "plain"), or be written inline.
class Workspace {
 public:
  Workspace() = default;
  /// { "objects": {...}, "tasks": [...] }; a document without "objects" holds no named objects.
  explicit Workspace(json document);

  const json& document() const { return doc_; }
  const json& tasks() const;
  /// The named definition, or the input itself when it is not a name.
  const json& definition(const json& ref, const std::string& path) const;

  CategoryPtr category(const json& ref, const std::string& path);
  AlgebraPtr algebra(const json& ref, const std::string& path);
  AlgebraMap morphism(const json& ref, const std::string& path);
  ModulePtr module(const json& ref, const std::string& path);
  /// A map given by "images" (one per source basis vector) or "matrix" (target rows).
  GradedMap linear_map(const json& def, const GradedSpace& source, const GradedSpace& target, const std::string& path);
  ModuleMap module_map(const json& ref, const std::string& path);
  Covering covering(const json& ref, const std::string& path);
  DescentDatum descent(const json& ref, const std::string& path);
  /// Degree-e element: a rational (multiple of the unit) or coordinates on the degree-e component.
  Vec scalar(const AlgebraPtr& A, const json& j, const std::string& path);
  std::vector<Vec> coordinates(const AlgebraPtr& A, const json& j, const std::string& path);

  struct PointInput {
    AlgebraPtr algebra;
    std::size_t n = 0;
    std::optional<PointCheck> sub;   // mono form or chart form
    std::optional<QuotCheck> quot;   // epi form
  };
  PointInput point(const json& ref, const std::string& path);

 private:
  GradedSpace carrier(const CategoryPtr& cat, const json& j, const std::string& path);
  Element degree(const CategoryPtr& cat, const json& j, const std::string& path);

  json doc_ = json::object();
  std::set<std::string> resolving_;
};

}  // namespace relproj::cli
