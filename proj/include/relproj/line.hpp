#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relproj/module.hpp"

namespace relproj {

/// Witness that L is invertible: the dual L^v = hom_A(L, A), the evaluation
/// eps : L (x)_A L^v -> A (an isomorphism) and the coevaluation delta : A -> L^v (x)_A L,
/// with both triangle identities checked exactly.
struct LineCertificate {
  ModulePtr line;
  HomModule dual;
  TensorOver line_dual;  // L (x)_A L^v
  TensorOver dual_line;  // L^v (x)_A L
  ModuleMap eval;        // L (x)_A L^v -> A
  ModuleMap coeval;      // A -> L^v (x)_A L
  bool triangles = false;
};

/// Invertibility certificate, or nothing when the evaluation is not an isomorphism.
std::optional<LineCertificate> find_inverse(const ModulePtr& L);

/// The degree-e element s of A with rho(s, -) = sigma_{L,L} on L (x)_A L.
struct Signature {
  Vec value;         // in A, degree e
  Vec via_dual;      // the same computation for L^v
  bool consistent = false;  // value == via_dual and value^2 = 1
};
Signature signature(const LineCertificate& cert);

struct LineVerdict {
  bool invertible = false;
  bool line = false;
  std::optional<LineCertificate> certificate;
  std::optional<Signature> sig;
  CheckReport report{"line object"};
};
LineVerdict is_line_object(const ModulePtr& L);

/// An epimorphism p : A -> L onto a line object is an isomorphism; the inverse is produced.
struct EpiVerdict {
  bool iso = false;
  std::optional<ModuleMap> inverse;
  std::string witness;
};
EpiVerdict epi_from_unit_is_iso(const ModuleMap& p, const LineCertificate& cert);

/// B = A_1 x ... x A_k with the projections (each a localization at its idempotent).
struct ProductAlgebra {
  AlgebraPtr algebra;
  std::vector<AlgebraMap> projections;
  std::vector<Vec> idempotents;
  DirectSum sum;
};
ProductAlgebra product_algebra(const std::vector<AlgebraPtr>& factors);

/// J = L_1 x ... x L_k over the product algebra, with its line verdict.
struct ProductLine {
  ModulePtr module;
  LineVerdict verdict;
};
ProductLine product_line(const ProductAlgebra& B, const std::vector<ModulePtr>& lines);

}  // namespace relproj
