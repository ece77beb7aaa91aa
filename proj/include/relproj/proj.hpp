#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relproj/descent.hpp"

namespace relproj {

/// An A-point of P^n: a line L with a split monomorphism x : L -> A^{n+1}.
struct ProjPoint {
  AlgebraPtr algebra;
  std::size_t n = 0;
  ModulePtr line;
  ModuleSum free;  // A^{n+1}
  ModuleMap mono;
  ModuleMap retraction;
  LineCertificate cert;
};

/// The quotient form: a line L with an epimorphism A^{n+1} -> L.
struct QuotPoint {
  AlgebraPtr algebra;
  std::size_t n = 0;
  ModulePtr line;
  ModuleSum free;
  ModuleMap epi;
  LineCertificate cert;
};

/// Chart index i and the n coordinates pi_j x~(1), j != i ascending, with x~ = x (pi_i x)^-1.
struct ChartCoords {
  std::size_t index = 0;
  std::vector<Vec> coords;

  bool operator==(const ChartCoords& other) const { return index == other.index && coords == other.coords; }
};

struct PointCheck {
  std::optional<ProjPoint> point;
  std::string failure;  // empty on success
};
struct QuotCheck {
  std::optional<QuotPoint> point;
  std::string failure;
};

/// Mono check, line-object certificate, retraction. Throws InputError when x does not end in A^{n+1}.
PointCheck verify_point(const AlgebraPtr& A, std::size_t n, const ModulePtr& L, const ModuleMap& x);
/// Epi check and line-object certificate.
QuotCheck verify_quot_point(const AlgebraPtr& A, std::size_t n, const ModulePtr& L, const ModuleMap& q);

/// pi_i o x is an isomorphism.
bool chart_membership(const ProjPoint& p, std::size_t i);
ChartCoords chart_coordinates(const ProjPoint& p, std::size_t i);
/// L = A, pi_i x = id, pi_j x = multiplication by the coordinates; retraction pi_i.
ProjPoint point_from_chart(const AlgebraPtr& A, std::size_t n, std::size_t i, const std::vector<Vec>& coords);
/// Coordinates of the same point in chart j.
ChartCoords transition(const AlgebraPtr& A, std::size_t n, std::size_t i, std::size_t j, const std::vector<Vec>& coords);

/// lambda : L1 -> L2 with x2 o lambda = x1, when it exists and is invertible.
std::optional<ModuleMap> connecting_iso(const ProjPoint& p1, const ProjPoint& p2);
bool points_equal(const ProjPoint& p1, const ProjPoint& p2);
/// lambda : L1 -> L2 with lambda o q1 = q2, when it exists and is invertible.
std::optional<ModuleMap> connecting_iso(const QuotPoint& q1, const QuotPoint& q2);
bool quotients_equal(const QuotPoint& q1, const QuotPoint& q2);

/// q o lambda_i : A -> L is an epimorphism (then an isomorphism).
bool quot_chart_membership(const QuotPoint& q, std::size_t i);
/// c_j = (q lambda_i)^-1 q lambda_j (1), j != i ascending.
ChartCoords quot_chart_coordinates(const QuotPoint& q, std::size_t i);

/// (A^{n+1} -> L) to (L^v -> A^{n+1}), h -> (h(q e_j))_j, with the retraction dual to a section of q.
ProjPoint dualize_point(const QuotPoint& q);
/// (L -> A^{n+1}) to (A^{n+1} -> L^v), a -> (y -> sum_j m(a_j, pi_j x(y))).
QuotPoint dualize_point_inv(const ProjPoint& p);

/// B (x)_A L -> B^{n+1} along u, re-verified.
ProjPoint base_change_point(const AlgebraMap& u, const ProjPoint& p);

struct SheafResult {
  std::optional<ProjPoint> point;
  std::string diagnosis;  // why no point was produced
  std::optional<GlueResult> glued;
  bool product_line = false;  // prod L_i is a line over prod A_i
  bool counit = false;        // the glued point restricts to every local point
  CheckReport report{"sheaf condition"};
};
/// Glues local points that agree on overlaps. Throws InputError on a cocycle violation.
SheafResult sheaf_condition_instance(const Covering& cov, const std::vector<ProjPoint>& locals);

/// Over a field object every point lies in some chart.
CheckReport field_cover_check(const AlgebraPtr& K, std::size_t n, const std::vector<ProjPoint>& points);

}  // namespace relproj
