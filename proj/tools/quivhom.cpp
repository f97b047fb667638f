// quivhom: bound quiver algebras and their homology theories.
//
// Subcommands:
//   hh <doc>      Hochschild (co)homology dimensions
//   mv <doc>      Mayer-Vietoris sequences (hh | hc | sh)
//   hc <doc>      cyclic (co)homology, Connes sequence, grid checks
//   pi1 <doc>     fundamental group presentation, Van Kampen, H^1
//   orient <doc>  orientation witness search
//
// Exit codes: 0 success, 2 validation error, 3 budget exceeded,
// 4 a theorem-level verdict failed.

#include "quivhom/cyclic.hpp"
#include "quivhom/pi1.hpp"
#include "quivhom/report.hpp"
#include "quivhom/simplicial.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace quivhom;

namespace {

struct Common {
  std::string doc_path;
  bool json = false;
};

void add_dims_section(Report& rep, const std::string& title,
                      const std::vector<std::pair<std::string, std::vector<long>>>& rows,
                      int N) {
  ReportSection sec;
  sec.title = title;
  sec.columns = {"group"};
  for (int n = 0; n <= N; ++n) sec.columns.push_back("n=" + std::to_string(n));
  for (auto& [name, dims] : rows) {
    std::vector<std::string> cells{name};
    for (long d : dims) cells.push_back(std::to_string(d));
    sec.rows.push_back(cells);
  }
  rep.sections.push_back(sec);
}

int emit(const Report& rep, const Common& common) {
  if (common.json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.all_verdicts_hold() ? 0 : 4;
}

template <class K>
OrientationWitness resolve_witness(const Algebra<K>& a, const QuiverDoc& doc,
                                   bool auto_orient) {
  if (doc.orientation) return witness_from_doc(a, doc);
  if (!auto_orient)
    throw validation_error("document carries no orientation; pass --auto-orient to search");
  for (auto& w : find_orientations(a))
    if (w.kind == WitnessKind::full) return w;
  throw validation_error("no full orientation witness found");
}

template <class K>
int cmd_hh_impl(const Common& common, const QuiverDoc& doc, const Algebra<K>& a, int N,
                const std::string& coefficients, const std::string& variant, bool dump,
                bool literal_e) {
  BlockE e = BlockE::vertex_span(a.quiver);
  if (literal_e) {
    if (!doc.orientation)
      throw validation_error("--literal-e needs an orientation in the document");
    auto w = witness_from_doc(a, doc);
    e = BlockE::from_parts(a.quiver, {w.e1p, w.e, w.e2p});
  }
  auto r = regular_bimodule(a);
  Bimodule<K> m = coefficients == "dual" ? dual_bimodule(a, r) : r;

  Report rep;
  rep.command = "hh";
  rep.input_digest = fnv1a_digest(doc.raw);
  rep.field("dim", std::to_string(a.dim()));
  rep.field("field", doc.field.rational ? "Q" : "F" + std::to_string(doc.field.p));
  rep.field("subalgebra", literal_e ? "span of the witness idempotents" : "vertex span");
  rep.field("coefficients", coefficients == "dual" ? "D(R)" : "R");
  rep.field("variant", variant);
  rep.field("degree", std::to_string(N));
  std::vector<long> dims = variant == "homology" ? hochschild_homology_dims(a, e, m, N)
                                                 : hochschild_cohomology_dims(a, e, m, N);
  add_dims_section(rep, variant == "homology" ? "Hochschild homology" : "Hochschild cohomology",
                   {{"dim", dims}}, N);
  if (dump) {
    if (variant == "homology") {
      auto md = bar_chain_model(a, e, m, N + 1);
      std::cout << dump_complex(md.complex);
    } else {
      auto md = bar_cochain_model(a, e, m, N + 1);
      std::cout << dump_complex(flip(md.complex));
    }
  }
  return emit(rep, common);
}

int cmd_hh(const Common& common, int N, const std::string& coefficients,
           const std::string& variant, bool dump, bool literal_e) {
  auto doc = load_quiver_doc(common.doc_path);
  if (doc.field.rational) {
    auto a = algebra_from_doc<Rat>(doc, Rat(1));
    return cmd_hh_impl(common, doc, a, N, coefficients, variant, dump, literal_e);
  }
  auto a = algebra_from_doc<Fp>(doc, Fp(1, doc.field.p));
  return cmd_hh_impl(common, doc, a, N, coefficients, variant, dump, literal_e);
}

template <class K>
int cmd_mv_impl(const Common& common, const QuiverDoc& doc, const Algebra<K>& a,
                const std::string& theory, int N, const std::string& variant,
                bool auto_orient) {
  auto w = resolve_witness(a, doc, auto_orient);
  Report rep;
  rep.command = "mv";
  rep.input_digest = fnv1a_digest(doc.raw);
  rep.field("theory", theory);
  rep.field("witness", w.str());
  rep.field("degree", std::to_string(N));
  Variant var = variant == "homology" ? Variant::homology : Variant::cohomology;
  rep.field("variant", variant);
  if (theory == "hh" || theory == "hc") {
    MvReport mv = theory == "hh" ? mv_hochschild(a, w, regular_bimodule(a), N, var)
                                 : mv_cyclic(a, w, N, var);
    add_dims_section(rep, "Mayer-Vietoris columns",
                     {{"C", mv.dim_c}, {"A1+A2", mv.dim_a12}, {"R", mv.dim_r}}, N);
    rep.verdict("short exact sequence per degree", mv.ses_ok);
    rep.verdict("long exact sequence", mv.les_exact);
  } else if (theory == "sh") {
    auto mv = mv_simplicial(a, w, N);
    ReportSection sec;
    sec.title = "simplicial homology (integer coefficients)";
    sec.columns = {"group"};
    for (int n = 0; n <= N; ++n) sec.columns.push_back("n=" + std::to_string(n));
    auto row = [&](const std::string& name, const std::vector<AbelianGroup>& gs) {
      std::vector<std::string> cells{name};
      for (auto& g : gs) cells.push_back(g.str());
      sec.rows.push_back(cells);
    };
    row("C", mv.sh_c);
    row("A1", mv.sh_a1);
    row("A2", mv.sh_a2);
    row("R", mv.sh_r);
    rep.sections.push_back(sec);
    rep.verdict("split short exact sequence over Z", mv.ses_exact_over_z);
    rep.verdict("bases glue (B_R = B_1 u B_2, B_C = B_1 n B_2)", mv.bases_glue);
    for (auto& [f, ok] : mv.les_exact) rep.verdict("homology LES exact over " + f, ok);
    for (auto& [g, ok] : mv.coles_exact) rep.verdict("cohomology LES exact for G = " + g, ok);
  } else {
    throw validation_error("unknown theory: " + theory);
  }
  return emit(rep, common);
}

int cmd_mv(const Common& common, const std::string& theory, int N, const std::string& variant,
           bool auto_orient) {
  auto doc = load_quiver_doc(common.doc_path);
  if (doc.field.rational) {
    auto a = algebra_from_doc<Rat>(doc, Rat(1));
    return cmd_mv_impl(common, doc, a, theory, N, variant, auto_orient);
  }
  auto a = algebra_from_doc<Fp>(doc, Fp(1, doc.field.p));
  return cmd_mv_impl(common, doc, a, theory, N, variant, auto_orient);
}

template <class K>
int cmd_hc_impl(const Common& common, const QuiverDoc& doc, const Algebra<K>& a, int N,
                bool connes, bool grid, const std::string& variant, bool auto_orient) {
  auto e = BlockE::vertex_span(a.quiver);
  Report rep;
  rep.command = "hc";
  rep.input_digest = fnv1a_digest(doc.raw);
  rep.field("degree", std::to_string(N));
  rep.field("variant", variant);
  std::vector<long> dims = variant == "homology" ? cyclic_homology_dims(a, e, N)
                                                 : cyclic_cohomology_dims(a, e, N);
  add_dims_section(rep, variant == "homology" ? "cyclic homology" : "cyclic cohomology",
                   {{"HC", dims}}, N);
  if (connes) {
    auto cr = variant == "homology" ? connes_check(a, e, N) : connes_check_coh(a, e, N);
    add_dims_section(rep, "Hochschild groups in the Connes sequence", {{"H", cr.hh}}, N);
    rep.verdict("column identification (Killing)", cr.identification_ok);
    rep.verdict("Connes sequence exact", cr.exact());
  }
  if (grid) {
    auto w = resolve_witness(a, doc, auto_orient);
    rep.field("witness", w.str());
    auto gr = connes_mv_grid(a, w, N,
                             variant == "homology" ? Variant::homology : Variant::cohomology);
    rep.field("grid squares checked", std::to_string(gr.squares.size()));
    rep.field("anticommuting double-connecting squares", std::to_string(gr.anticommuting));
    rep.verdict("grid short exact sequences", gr.ses_ok);
    rep.verdict("grid rows exact", gr.rows_exact);
    rep.verdict("grid columns exact", gr.cols_exact);
    rep.verdict("grid identifications", gr.identification_ok);
    rep.verdict("grid squares commute", gr.squares_ok);
  }
  return emit(rep, common);
}

int cmd_hc(const Common& common, int N, bool connes, bool grid, const std::string& variant,
           bool auto_orient) {
  auto doc = load_quiver_doc(common.doc_path);
  if (doc.field.rational) {
    auto a = algebra_from_doc<Rat>(doc, Rat(1));
    return cmd_hc_impl(common, doc, a, N, connes, grid, variant, auto_orient);
  }
  auto a = algebra_from_doc<Fp>(doc, Fp(1, doc.field.p));
  return cmd_hc_impl(common, doc, a, N, connes, grid, variant, auto_orient);
}

template <class K>
int cmd_pi1_impl(const Common& common, const QuiverDoc& doc, const Algebra<K>& a, bool vk,
                 bool h1, bool core) {
  Report rep;
  rep.command = "pi1";
  rep.input_digest = fnv1a_digest(doc.raw);
  auto describe = [&](const Algebra<K>& alg, const std::string& label) {
    auto rels = minimal_relations(alg);
    auto pres = pi1_presentation(alg, rels);
    auto ab = abelianization(pres);
    ReportSection sec;
    sec.title = "fundamental group of " + label;
    sec.columns = {"item", "value"};
    int fund = 0;
    for (auto& r : rels)
      if (r.fundamental) ++fund;
    sec.rows.push_back({"generators", std::to_string(pres.generators.size())});
    sec.rows.push_back({"fundamental minimal relations", std::to_string(fund)});
    sec.rows.push_back({"presentation", pres.str()});
    sec.rows.push_back({"abelianization", ab.str()});
    sec.rows.push_back({"provably trivial", tietze_trivial(pres) ? "yes" : "no"});
    rep.sections.push_back(sec);
  };
  if (core) {
    auto w = witness_from_doc(a, doc);
    if (w.e.empty()) throw validation_error("the witness has an empty core");
    auto c = corner_algebra(a, w.e);
    if (!c.algebra.quiver.connected())
      throw validation_error("core is disconnected; inspect its components instead");
    describe(c.algebra, "the core C");
  } else {
    describe(a, "R");
  }
  if (vk) {
    auto w = witness_from_doc(a, doc);
    auto vrep = vk_check(a, w);
    rep.field("vk components m", std::to_string(vrep.m));
    if (!vrep.applicable) {
      rep.field("vk", "inapplicable: " + vrep.reason);
      rep.verdict("van Kampen hypothesis", false);
    } else {
      rep.field("vk lhs", vrep.lhs.str());
      rep.field("vk rhs", vrep.rhs.str());
      if (vrep.lhs_trivial && vrep.rhs_trivial) rep.field("vk groups", "both sides trivial");
      rep.verdict("van Kampen abelianizations match", vrep.abelianizations_match);
    }
  }
  if (h1) {
    long d = h1_schurian(a, doc.field.rational ? 0 : (long)doc.field.p);
    rep.field("dim H^1 via Hom(pi_1, k+)", std::to_string(d));
  }
  return emit(rep, common);
}

int cmd_pi1(const Common& common, bool vk, bool h1, bool core) {
  auto doc = load_quiver_doc(common.doc_path);
  if (doc.field.rational) {
    auto a = algebra_from_doc<Rat>(doc, Rat(1));
    return cmd_pi1_impl(common, doc, a, vk, h1, core);
  }
  auto a = algebra_from_doc<Fp>(doc, Fp(1, doc.field.p));
  return cmd_pi1_impl(common, doc, a, vk, h1, core);
}

int cmd_orient(const Common& common) {
  auto doc = load_quiver_doc(common.doc_path);
  auto a = rational_algebra_from_doc(doc);
  Report rep;
  rep.command = "orient";
  rep.input_digest = fnv1a_digest(doc.raw);
  auto ws = find_orientations(a);
  int full = 0, full_nonempty = 0, glued = 0;
  ReportSection sec;
  sec.title = "witnesses";
  sec.columns = {"witness"};
  for (auto& w : ws) {
    if (w.kind == WitnessKind::full) {
      ++full;
      if (!w.e1p.empty() && !w.e.empty() && !w.e2p.empty()) ++full_nonempty;
    } else {
      ++glued;
    }
    sec.rows.push_back({w.str()});
  }
  rep.field("full witnesses", std::to_string(full));
  rep.field("full witnesses with all parts nonempty", std::to_string(full_nonempty));
  rep.field("glued-only witnesses", std::to_string(glued));
  if (full_nonempty == 0) rep.field("note", "no full witness with all three parts nonempty");
  rep.sections.push_back(sec);
  return emit(rep, common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology theories for bound quiver algebras"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("doc", common.doc_path, "quiver description document (JSON)")->required();
    sub->add_flag("--json", common.json, "emit the machine-readable report block");
  };

  int N = 3;
  std::string coefficients = "self", variant = "cohomology", theory = "hh";
  bool dump = false, connes = false, grid = false, vk = false, h1 = false, core = false,
       auto_orient = false, literal_e = false;

  auto* hh = app.add_subcommand("hh", "Hochschild (co)homology dimensions");
  add_common(hh);
  hh->add_option("--degree", N, "top degree N");
  hh->add_option("--coefficients", coefficients, "self | dual")
      ->check(CLI::IsMember({"self", "dual"}));
  hh->add_option("--variant", variant, "homology | cohomology")
      ->check(CLI::IsMember({"homology", "cohomology"}));
  hh->add_flag("--dump-complex", dump, "print the (co)chain complex as COO triplets");
  hh->add_flag("--literal-e", literal_e,
               "use the witness idempotent span instead of the vertex span");

  auto* mv = app.add_subcommand("mv", "Mayer-Vietoris long exact sequences");
  add_common(mv);
  mv->add_option("--theory", theory, "hh | hc | sh")->check(CLI::IsMember({"hh", "hc", "sh"}));
  mv->add_option("--degree", N, "top degree N");
  mv->add_option("--variant", variant, "homology | cohomology")
      ->check(CLI::IsMember({"homology", "cohomology"}));
  mv->add_flag("--auto-orient", auto_orient, "search for a witness if the document has none");

  auto* hc = app.add_subcommand("hc", "cyclic (co)homology");
  add_common(hc);
  hc->add_option("--degree", N, "top degree N");
  hc->add_option("--variant", variant, "homology | cohomology")
      ->check(CLI::IsMember({"homology", "cohomology"}));
  hc->add_flag("--connes", connes, "verify the Connes exact sequence");
  hc->add_flag("--grid", grid, "verify the Connes / Mayer-Vietoris grid");
  hc->add_flag("--auto-orient", auto_orient, "search for a witness if the document has none");

  auto* pi = app.add_subcommand("pi1", "fundamental group of the bound quiver");
  add_common(pi);
  pi->add_flag("--vk", vk, "verify the gluing formula at the abelianization level");
  pi->add_flag("--h1", h1, "dim H^1 via Hom(pi_1, k+) (schurian algebras)");
  pi->add_flag("--core", core, "present the fundamental group of the core C");

  auto* orient = app.add_subcommand("orient", "search orientation witnesses");
  add_common(orient);

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (hh->parsed()) code = cmd_hh(common, N, coefficients, variant, dump, literal_e);
    else if (mv->parsed()) code = cmd_mv(common, theory, N, variant, auto_orient);
    else if (hc->parsed()) code = cmd_hc(common, N, connes, grid, variant, auto_orient);
    else if (pi->parsed()) code = cmd_pi1(common, vk, h1, core);
    else if (orient->parsed()) code = cmd_orient(common);
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed: " << elapsed.count() << "s\n";
  return code;
}
