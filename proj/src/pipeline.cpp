#include "drums/pipeline.hpp"

namespace drums {

Workspace make_workspace(const BaseTriangle& base) {
  Workspace ws;
  ws.sl3 = sl3_f2();
  ws.h = ws.sl3.point_stabilizer(0);
  ws.k = ws.sl3.plane_stabilizer(0);
  ws.h_action = coset_action(ws.sl3.group, ws.h);
  ws.k_action = coset_action(ws.sl3.group, ws.k);
  ws.base = base;
  ws.drums = canonical_drums(ws.sl3.group, ws.h_action, ws.k_action, base);
  return ws;
}

PlanarDomain single_triangle_domain(const BaseTriangle& base) {
  PlanarDomain dom = unfold(GluingDiagram::single(), base, 0);
  if (!check_embedding(dom)) throw std::logic_error("single triangle failed embedding");
  return dom;
}

PlanarDomain glued_pair_domain(const BaseTriangle& base) {
  GluingDiagram d;
  d.n = 2;
  d.partner[0] = {1, 0};
  d.partner[1] = {-1, -1};
  d.partner[2] = {-1, -1};
  PlanarDomain dom = unfold(d, base, 0);
  if (!check_embedding(dom)) throw std::logic_error("glued pair failed embedding");
  return dom;
}

Spectrum domain_spectrum(const PlanarDomain& domain, int level, const BCSpec& bc,
                         const SolveOptions& opt) {
  Mesh mesh = refine(domain, level);
  AssembledSystem sys = assemble(mesh, bc);
  Spectrum s = solve_lowest(sys, opt);
  s.level = level;
  s.bc = bc.name();
  return s;
}

}  // namespace drums
