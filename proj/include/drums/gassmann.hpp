#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "drums/exact_linalg.hpp"
#include "drums/perm.hpp"

namespace drums {

/// The group of invertible 3x3 matrices over F_2, represented by its
/// permutation action on the 7 nonzero vectors of F_2^3 (point v encoded as
/// the 3-bit integer v+1). The parallel action on the 7 two-dimensional
/// subspaces ("planes", encoded by their normal functional u+1) is kept
/// aligned with the element order of the point group.
struct Sl3F2 {
  PermGroup group;                            // point action, canonical order
  std::vector<Perm> plane_perms;              // plane action, aligned by index
  std::vector<std::array<uint8_t, 3>> mats;   // column bitmasks, aligned

  Subgroup point_stabilizer(int point) const;
  Subgroup plane_stabilizer(int plane) const;

  /// True iff point lies on the plane (normal functional evaluates to 0).
  static bool incident(int point, int plane) {
    return __builtin_parity((unsigned)((point + 1) & (plane + 1))) == 0;
  }
};

Sl3F2 sl3_f2();

/// Rational intertwiner between two coset representations:
/// T * rho_H(g) = rho_K(g) * T for every group element. T is invertible and
/// exact; `normalized` carries the exact unitary rescaling when one exists in
/// a quadratic extension (it always does for the transitive actions used
/// here).
struct Intertwiner {
  RatMat t;
  Orthogonalized normalized;
};

/// Throws std::runtime_error if no invertible intertwiner exists (i.e. the
/// representations are not equivalent, contradicting almost conjugacy).
Intertwiner intertwiner(const PermGroup& g, const CosetAction& h_action,
                        const CosetAction& k_action);

/// Checks T * rho_H(e) = rho_K(e) * T exactly for every group element.
bool verify_intertwiner(const PermGroup& g, const CosetAction& h_action,
                        const CosetAction& k_action, const RatMat& t);

/// Full certification report for a subgroup pair: orders, class data,
/// almost-conjugacy and conjugacy verdicts, and the intertwiner with
/// rational entries as numerator/denominator pairs.
nlohmann::ordered_json gassmann_report(const PermGroup& g, const Subgroup& h,
                                       const Subgroup& k);

}  // namespace drums
