#pragma once

#include "drums/analysis.hpp"
#include "drums/gassmann.hpp"
#include "drums/mesh.hpp"
#include "drums/unfolding.hpp"

namespace drums {

/// Everything the pipeline derives from the group once: the Gassmann pair,
/// both coset actions, and the canonical drums for a base triangle.
struct Workspace {
  Sl3F2 sl3;
  Subgroup h, k;
  CosetAction h_action, k_action;
  BaseTriangle base;
  DrumPair drums;
};

Workspace make_workspace(const BaseTriangle& base);

/// Single free triangle (all edges boundary).
PlanarDomain single_triangle_domain(const BaseTriangle& base);

/// Two copies glued along edge 0; the right-isosceles base yields the unit
/// square.
PlanarDomain glued_pair_domain(const BaseTriangle& base);

/// refine + assemble + solve in one call.
Spectrum domain_spectrum(const PlanarDomain& domain, int level, const BCSpec& bc,
                         const SolveOptions& opt);

}  // namespace drums
