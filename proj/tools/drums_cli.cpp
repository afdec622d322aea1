// Command-line front end: derives the Gassmann pair, builds the two drums,
// computes spectra, and runs the isospectrality / transplantation checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "drums/pipeline.hpp"
#include "drums/transplant.hpp"

using namespace drums;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string out_dir = "out";
  std::string base_spec;
  std::string bc_name = "dirichlet";
  std::string mixed_map;
  std::vector<int> levels;
  int count = 10;
  double tol = 1e-8;
  uint64_t seed = 1234;
  double threshold = 1e-3;
};

BaseTriangle parse_base(const std::string& spec) {
  if (spec.empty()) return BaseTriangle::right_isosceles();
  std::vector<Rational> vals;
  std::string cur;
  for (char ch : spec + ",") {
    if (ch == ',') {
      if (!cur.empty()) vals.push_back(Rational::parse(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (vals.size() != 6)
    throw CLI::ValidationError("--base", "expected six comma-separated rationals");
  BaseTriangle base{{Vec2r{vals[0], vals[1]}, Vec2r{vals[2], vals[3]},
                     Vec2r{vals[4], vals[5]}}};
  if (!base.nondegenerate())
    throw CLI::ValidationError("--base", "degenerate base triangle");
  return base;
}

BCSpec parse_bc(const CommonOpts& o) {
  if (o.bc_name == "dirichlet") return BCSpec::dirichlet();
  if (o.bc_name == "neumann") return BCSpec::neumann();
  if (o.bc_name != "mixed")
    throw CLI::ValidationError("--bc", "expected dirichlet, neumann or mixed");
  std::map<int, BCKind> map;
  std::string cur;
  for (char ch : o.mixed_map + ",") {
    if (ch != ',') {
      cur += ch;
      continue;
    }
    if (cur.empty()) continue;
    auto eq = cur.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--mixed-map", "expected color=bc entries");
    int color = std::stoi(cur.substr(0, eq));
    std::string kind = cur.substr(eq + 1);
    if (kind == "dirichlet")
      map[color] = BCKind::Dirichlet;
    else if (kind == "neumann")
      map[color] = BCKind::Neumann;
    else
      throw CLI::ValidationError("--mixed-map", "bc must be dirichlet or neumann");
    cur.clear();
  }
  return BCSpec::mixed(std::move(map));
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path);
  f << contents;
  if (!f) throw std::runtime_error("failed to write " + path.string());
}

void write_json(const fs::path& path, const ordered_json& j) {
  write_file(path, j.dump(2) + "\n");
}

ordered_json diagram_json(const GluingDiagram& d) {
  ordered_json matchings = ordered_json::array();
  for (int c = 0; c < 3; ++c) matchings.push_back(d.partner[c]);
  auto open = d.open_counts();
  return {{"nodes", d.n},
          {"matchings", matchings},
          {"open_counts", {open[0], open[1], open[2]}},
          {"tree", d.is_tree()}};
}

int cmd_gassmann_check(const CommonOpts& o) {
  auto sl3 = sl3_f2();
  auto h = sl3.point_stabilizer(0);
  auto k = sl3.plane_stabilizer(0);
  auto report = gassmann_report(sl3.group, h, k);
  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / "gassmann.json", report);

  const bool ok = report["almost_conjugate"] == true && report["conjugate"] == false &&
                  report["intertwiner_verified_all_elements"] == true;
  std::cout << "group order " << report["group_order"] << ", subgroups of index "
            << report["subgroup_h"]["index"] << "\n"
            << "almost conjugate: " << report["almost_conjugate"]
            << ", conjugate: " << report["conjugate"] << "\n";
  return ok ? 0 : 1;
}

int cmd_derive_diagrams(const CommonOpts& o) {
  auto ws = make_workspace(parse_base(o.base_spec));
  auto first = derive_diagrams(ws.sl3.group, ws.h_action, ws.k_action);

  ordered_json j;
  j["first_tree_triple"] = first.involutions;
  j["first_tree_scanned"] = first.triples_scanned;
  j["canonical_triple"] = ws.drums.derivation.involutions;
  j["canonical_scanned"] = ws.drums.derivation.triples_scanned;
  ordered_json perms = ordered_json::array();
  for (const auto& p : ws.drums.derivation.involution_perms) perms.push_back(p.images());
  j["canonical_involution_images"] = perms;
  j["diagram1"] = diagram_json(ws.drums.derivation.d1);
  j["diagram2"] = diagram_json(ws.drums.derivation.d2);
  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / "diagrams.json", j);
  std::cout << "canonical involution triple: (" << ws.drums.derivation.involutions[0]
            << ", " << ws.drums.derivation.involutions[1] << ", "
            << ws.drums.derivation.involutions[2] << ")\n";
  return 0;
}

int cmd_build_domains(const CommonOpts& o) {
  auto ws = make_workspace(parse_base(o.base_spec));
  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / "drum1.json", ws.drums.drum1.to_json());
  write_json(fs::path(o.out_dir) / "drum2.json", ws.drums.drum2.to_json());
  SvgOptions svg;
  svg.node_labels = true;
  write_file(fs::path(o.out_dir) / "drum1.svg", to_svg(ws.drums.drum1, svg));
  write_file(fs::path(o.out_dir) / "drum2.svg", to_svg(ws.drums.drum2, svg));

  const bool distinct =
      boundary_signature(ws.drums.drum1) != boundary_signature(ws.drums.drum2);
  const bool equal_area = ws.drums.drum1.area2() == ws.drums.drum2.area2();
  std::cout << "embedded: " << ws.drums.drum1.embedded << " " << ws.drums.drum2.embedded
            << ", equal areas: " << equal_area << ", nonisometric: " << distinct << "\n";
  return (ws.drums.drum1.embedded && ws.drums.drum2.embedded && distinct && equal_area)
             ? 0
             : 1;
}

int cmd_spectrum(const CommonOpts& o, const std::string& domain_name) {
  auto base = parse_base(o.base_spec);
  BCSpec bc = parse_bc(o);
  const int level = o.levels.empty() ? 5 : o.levels.front();

  std::vector<std::pair<std::string, PlanarDomain>> domains;
  if (domain_name == "square" || domain_name == "triangle") {
    domains.emplace_back(domain_name, domain_name == "square"
                                          ? glued_pair_domain(base)
                                          : single_triangle_domain(base));
  } else {
    auto ws = make_workspace(base);
    if (domain_name == "drum1" || domain_name == "both")
      domains.emplace_back("drum1", ws.drums.drum1);
    if (domain_name == "drum2" || domain_name == "both")
      domains.emplace_back("drum2", ws.drums.drum2);
    if (domains.empty())
      throw CLI::ValidationError("--domain",
                                 "expected drum1, drum2, both, square or triangle");
  }

  fs::create_directories(o.out_dir);
  SolveOptions opt;
  opt.k = o.count;
  opt.tol = o.tol;
  opt.seed = o.seed;
  for (auto& [name, dom] : domains) {
    Mesh mesh = refine(dom, level);
    auto sys = assemble(mesh, bc);
    auto spectrum = solve_lowest(sys, opt);
    spectrum.level = level;
    spectrum.bc = bc.name();

    std::string stem = "spectrum_" + name + "_" + bc.name() + "_L" + std::to_string(level);
    std::ofstream csv(fs::path(o.out_dir) / (stem + ".csv"));
    write_spectrum_csv(spectrum, csv);
    std::ofstream mtxt(fs::path(o.out_dir) / ("mesh_" + name + "_L" +
                                              std::to_string(level) + ".txt"));
    write_mesh_text(mesh, mtxt);
    std::cout << name << " L=" << level << " " << bc.name() << ": lambda[0.."
              << o.count - 1 << "] in [" << spectrum.lambda.front() << ", "
              << spectrum.lambda.back() << "]\n";
  }
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  auto ws = make_workspace(parse_base(o.base_spec));
  BCSpec bc = parse_bc(o);
  std::vector<int> levels = o.levels.empty() ? std::vector<int>{5, 6, 7} : o.levels;
  const bool skip_zero = bc.mode == BCSpec::Mode::Neumann;

  SolveOptions opt;
  opt.k = o.count + (skip_zero ? 1 : 0);
  opt.tol = o.tol;
  opt.seed = o.seed;

  ordered_json j;
  j["bc"] = bc.name();
  j["levels"] = levels;
  j["count"] = o.count;
  ordered_json raw = ordered_json::array();

  std::vector<std::vector<double>> lam1, lam2;
  for (int level : levels) {
    auto s1 = domain_spectrum(ws.drums.drum1, level, bc, opt);
    auto s2 = domain_spectrum(ws.drums.drum2, level, bc, opt);
    auto cmp = compare_spectra(s1, s2, o.count, skip_zero);
    raw.push_back({{"level", level},
                   {"max_rel_diff", cmp.max_rel_diff},
                   {"rel_diff", cmp.rel_diff}});
    const int off = skip_zero ? 1 : 0;
    lam1.emplace_back(s1.lambda.begin() + off, s1.lambda.end());
    lam2.emplace_back(s2.lambda.begin() + off, s2.lambda.end());
  }
  j["raw"] = raw;

  double verdict_diff;
  if (levels.size() >= 3) {
    const size_t n = levels.size();
    auto e1 = extrapolate(lam1[n - 3], lam1[n - 2], lam1[n - 1]);
    auto e2 = extrapolate(lam2[n - 3], lam2[n - 2], lam2[n - 1]);
    std::vector<double> v1, v2;
    ordered_json ext = ordered_json::array();
    for (int i = 0; i < o.count; ++i) {
      v1.push_back(e1[i].limit);
      v2.push_back(e2[i].limit);
      ext.push_back({{"index", i},
                     {"limit1", e1[i].limit},
                     {"limit2", e2[i].limit},
                     {"order1", e1[i].order},
                     {"order2", e2[i].order},
                     {"flagged", e1[i].flagged || e2[i].flagged}});
    }
    auto cmp = compare_values(v1, v2);
    j["extrapolated"] = ext;
    j["extrapolated_max_rel_diff"] = cmp.max_rel_diff;
    verdict_diff = cmp.max_rel_diff;
  } else {
    verdict_diff = raw.back()["max_rel_diff"];
  }
  j["threshold"] = o.threshold;
  j["isospectral_within_threshold"] = verdict_diff <= o.threshold;

  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / ("compare_" + bc.name() + ".json"), j);
  std::cout << bc.name() << " max rel diff " << verdict_diff << " (threshold "
            << o.threshold << ")\n";
  return verdict_diff <= o.threshold ? 0 : 1;
}

int cmd_transplant_verify(const CommonOpts& o, double rq_threshold) {
  auto ws = make_workspace(parse_base(o.base_spec));
  BCSpec bc = parse_bc(o);
  std::vector<int> levels = o.levels.empty() ? std::vector<int>{4, 5, 6} : o.levels;

  auto plain = intertwiner(ws.sl3.group, ws.h_action, ws.k_action);
  auto tp = build_transplantation(plain, ws.drums.derivation, ws.h_action, ws.k_action,
                                  reflection_signs(bc));

  ordered_json j;
  j["bc"] = bc.name();
  j["signs"] = tp.signs;
  j["involutions"] = tp.involutions;
  j["plain_intertwiner_exact_all_elements"] =
      verify_intertwiner(ws.sl3.group, ws.h_action, ws.k_action, plain.t);
  j["exact_unitary"] = tp.exact_unitary;
  {
    ordered_json rows = ordered_json::array();
    for (int y = 0; y < tp.t.rows(); ++y) {
      ordered_json row = ordered_json::array();
      for (int x = 0; x < tp.t.cols(); ++x)
        row.push_back({tp.t(y, x).num(), tp.t(y, x).den()});
      rows.push_back(row);
    }
    j["transplantation"] = rows;
  }

  bool ok = j["plain_intertwiner_exact_all_elements"] == true;
  SolveOptions opt;
  opt.k = o.count;
  opt.tol = o.tol;
  opt.seed = o.seed;

  ordered_json by_level = ordered_json::array();
  for (int level : levels) {
    Mesh m1 = refine(ws.drums.drum1, level);
    Mesh m2 = refine(ws.drums.drum2, level);
    auto sys1 = assemble(m1, bc);
    auto sys2 = assemble(m2, bc);
    auto s1 = solve_lowest(sys1, opt);
    auto ref_mass = reference_mass(ws.base, level);

    ordered_json rows = ordered_json::array();
    for (int i = 0; i < o.count; ++i) {
      Piecewise f = to_piecewise(m1, sys1, s1.vectors.col(i));
      Piecewise g = apply(tp, f);
      const double norm_drift =
          std::abs(piecewise_norm(g, ref_mass) / piecewise_norm(f, ref_mass) - 1.0);
      Gathered gathered = to_global(m2, g);
      auto w = verify_eigen(m2, sys2, gathered, s1.lambda[i]);
      rows.push_back({{"index", i},
                      {"lambda", s1.lambda[i]},
                      {"residual", w.residual},
                      {"rayleigh_gap", w.rayleigh_gap},
                      {"boundary_trace", w.boundary_trace},
                      {"continuity_defect", w.continuity_defect},
                      {"norm_drift", norm_drift}});
      ok = ok && w.rayleigh_gap <= rq_threshold && norm_drift <= 1e-12;
    }
    by_level.push_back({{"level", level}, {"eigenfunctions", rows}});
  }
  j["by_level"] = by_level;
  j["rq_threshold"] = rq_threshold;
  j["verified"] = ok;

  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / ("transplant_" + bc.name() + ".json"), j);
  std::cout << "transplantation " << bc.name() << " verified: " << (ok ? "yes" : "no")
            << "\n";
  return ok ? 0 : 1;
}

int cmd_weyl(const CommonOpts& o) {
  auto ws = make_workspace(parse_base(o.base_spec));
  BCSpec bc = parse_bc(o);
  const int level = o.levels.empty() ? 6 : o.levels.front();
  const bool skip_zero = bc.mode == BCSpec::Mode::Neumann;

  SolveOptions opt;
  opt.k = o.count + (skip_zero ? 1 : 0);
  opt.tol = o.tol;
  opt.seed = o.seed;

  const double area = (ws.drums.drum1.area2() * Rational(1, 2)).to_double();
  auto s1 = domain_spectrum(ws.drums.drum1, level, bc, opt);
  auto s2 = domain_spectrum(ws.drums.drum2, level, bc, opt);
  auto f1 = weyl_fit(s1.lambda, area, 0.0);
  auto f2 = weyl_fit(s2.lambda, area, 0.0);

  ordered_json j;
  j["bc"] = bc.name();
  j["level"] = level;
  j["count"] = o.count;
  j["expected_slope"] = f1.slope_expected;
  j["drum1"] = {{"slope", f1.slope}, {"boundary_coef", f1.boundary_coef},
                {"used", f1.count}};
  j["drum2"] = {{"slope", f2.slope}, {"boundary_coef", f2.boundary_coef},
                {"used", f2.count}};
  const double dev1 = std::abs(f1.slope / f1.slope_expected - 1.0);
  const double dev2 = std::abs(f2.slope / f2.slope_expected - 1.0);
  const double match = std::abs(f1.slope / f2.slope - 1.0);
  j["slope_rel_dev"] = {dev1, dev2};
  j["slope_match_rel"] = match;
  const bool ok = dev1 <= 0.10 && dev2 <= 0.10 && match <= 0.01;
  j["verified"] = ok;

  fs::create_directories(o.out_dir);
  write_json(fs::path(o.out_dir) / ("weyl_" + bc.name() + ".json"), j);
  std::cout << "weyl slopes " << f1.slope << " / " << f2.slope << " (expected "
            << f1.slope_expected << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isospectral drum construction and verification"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string domain_name = "both";
  double rq_threshold = 1e-2;

  auto add_common = [&](CLI::App* cmd, bool with_bc = true) {
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--base", o.base_spec,
                    "base triangle as six rationals x0,y0,x1,y1,x2,y2");
    cmd->add_option("--levels", o.levels, "refinement level(s)")->delimiter(',');
    cmd->add_option("--count", o.count, "number of eigenvalues");
    cmd->add_option("--tol", o.tol, "eigensolver relative residual tolerance");
    cmd->add_option("--seed", o.seed, "starting-vector seed");
    if (with_bc) {
      cmd->add_option("--bc", o.bc_name, "boundary condition")
          ->check(CLI::IsMember({"dirichlet", "neumann", "mixed"}));
      cmd->add_option("--mixed-map", o.mixed_map,
                      "per-color assignment, e.g. 0=dirichlet,1=neumann,2=dirichlet");
    }
  };

  auto* c_gassmann = app.add_subcommand("gassmann-check",
                                        "certify the almost-conjugate pair exactly");
  add_common(c_gassmann, false);
  auto* c_derive = app.add_subcommand("derive-diagrams",
                                      "derive the gluing diagrams from the group");
  add_common(c_derive, false);
  auto* c_build = app.add_subcommand("build-domains", "unfold and certify the drums");
  add_common(c_build, false);
  auto* c_spectrum = app.add_subcommand("spectrum", "compute Laplace eigenvalues");
  add_common(c_spectrum);
  c_spectrum->add_option("--domain", domain_name,
                         "drum1, drum2, both, square or triangle");
  auto* c_compare = app.add_subcommand("compare", "compare the two drum spectra");
  add_common(c_compare);
  c_compare->add_option("--threshold", o.threshold, "max relative difference allowed");
  auto* c_transplant = app.add_subcommand("transplant-verify",
                                          "transplant eigenfunctions and verify");
  add_common(c_transplant);
  c_transplant->add_option("--rq-threshold", rq_threshold,
                           "Rayleigh-quotient gap allowed");
  auto* c_weyl = app.add_subcommand("weyl", "fit the eigenvalue counting function");
  add_common(c_weyl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_gassmann->parsed()) return cmd_gassmann_check(o);
    if (c_derive->parsed()) return cmd_derive_diagrams(o);
    if (c_build->parsed()) return cmd_build_domains(o);
    if (c_spectrum->parsed()) return cmd_spectrum(o, domain_name);
    if (c_compare->parsed()) return cmd_compare(o);
    if (c_transplant->parsed()) return cmd_transplant_verify(o, rq_threshold);
    if (c_weyl->parsed()) return cmd_weyl(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
