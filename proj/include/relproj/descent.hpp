#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relproj/line.hpp"

namespace relproj {

/// A_1 (x)_A A_2 as an algebra, with the maps from both factors.
struct AlgebraTensor {
  AlgebraPtr algebra;
  AlgebraMap from_left;
  AlgebraMap from_right;
  TensorOver tensor;  // of A_1 and A_2 regarded as A-modules
};
AlgebraTensor algebra_tensor_over(const AlgebraMap& u1, const AlgebraMap& u2);

/// The algebra map A_1 (x)_A A_2 -> C induced by v1 : A_1 -> C and v2 : A_2 -> C.
AlgebraMap induced_from_tensor(const AlgebraTensor& T, const AlgebraMap& v1, const AlgebraMap& v2);

/// A finite family of algebra maps u_i : A -> A_i with its pairwise overlaps A_ij, i < j.
struct Covering {
  AlgebraPtr base;
  std::vector<AlgebraMap> legs;
  std::map<std::pair<std::size_t, std::size_t>, AlgebraTensor> overlaps;

  static Covering make(AlgebraPtr base, std::vector<AlgebraMap> legs);
  const AlgebraTensor& overlap(std::size_t i, std::size_t j) const { return overlaps.at({i, j}); }
};

enum class Verdict { Certified, NotRefuted, Refuted };
std::string to_string(Verdict v);

struct CoveringReport {
  Verdict flat = Verdict::NotRefuted;
  Verdict jointly_conservative = Verdict::NotRefuted;
  Verdict finite_presentation = Verdict::Certified;
  /// Partition of unity for the inverted elements when every leg is a localization.
  std::optional<std::vector<ElementEndo>> partition;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  CheckReport report{"covering"};

  bool is_covering() const {
    return flat != Verdict::Refuted && jointly_conservative != Verdict::Refuted &&
           finite_presentation != Verdict::Refuted;
  }
};
CoveringReport verify_covering(const Covering& cov, std::size_t samples = 8, std::uint64_t seed = 1);

/// u in U_I(B): the ideal B u(I) is all of B.
bool membership_U_I(const AlgebraMap& u, const Ideal& I);

/// Local modules L_i over A_i with transition isomorphisms theta_ij : L_i|A_ij -> L_j|A_ij (i < j).
struct DescentDatum {
  Covering covering;
  std::vector<ModulePtr> locals;
  /// restricted.at({i,j}).first = A_ij (x)_{A_i} L_i, .second = A_ij (x)_{A_j} L_j.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<BaseChange, BaseChange>> restricted;
  std::map<std::pair<std::size_t, std::size_t>, ModuleMap> transitions;
};

/// Builds the restricted modules; transitions are then supplied per overlap.
DescentDatum make_datum(const Covering& cov, std::vector<ModulePtr> locals);
/// Canonical identification A_ij (x) (A_i (x) M) = A_ij (x) (A_j (x) M) for locals obtained by restriction.
DescentDatum restriction_datum(const Covering& cov, const ModulePtr& M);

/// theta_jk o theta_ij = theta_ik after restriction to A_i (x)_A A_j (x)_A A_k.
CheckReport check_cocycle(const DescentDatum& d);

struct GlueResult {
  ModulePtr module;            // over the base
  ModuleMap inclusion;         // into the sum of the locals restricted to the base
  std::vector<ModuleMap> comparisons;  // A_i (x)_A L -> L_i
  bool comparisons_iso = false;
  CheckReport report{"glue"};
};
/// Equalizer of prod L_i => prod L_i|A_ij. Throws InputError on a cocycle violation.
GlueResult glue(const DescentDatum& d);

}  // namespace relproj
