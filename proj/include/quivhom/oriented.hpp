#pragma once

// Orientation witnesses and the Mayer-Vietoris machinery for Hochschild
// (co)homology. A witness splits the vertices into e'_1, e, e'_2; writing
// e_i = e'_i + e, the corners are A_1 = e_1 R e_1, A_2 = e_2 R e_2 and
// C = e R e. Condition (2) is e'_1 R e'_2 = e'_2 R e'_1 = 0, and the three
// orientation conditions are
//   (3) e R e'_1 = e R e'_2 = 0
//   (4) e'_1 R e = e'_2 R e = 0
//   (5) e'_1 R e = e R e'_2 = 0.
// A `full` witness satisfies (2) at the bimodule level plus one of (3)-(5)
// and feeds the Hochschild/cyclic sequences. A `glued` witness only needs
// (2) at the arrow level (no arrows joining the e'-parts, corners convex);
// that is what the fundamental-group gluing uses.

#include "quivhom/doc.hpp"
#include "quivhom/hochschild.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>

namespace quivhom {

enum class WitnessKind { full, glued };

struct OrientationWitness {
  IdempotentSet e1p, e, e2p;
  IdempotentSet e1, e2;  // e'_i together with e
  bool cond2_bimodule = false;
  bool cond2_arrows = false;
  std::vector<int> satisfied;  // subset of {3,4,5}
  int condition = 0;           // first satisfied, 0 if none
  WitnessKind kind = WitnessKind::glued;

  std::string str() const {
    auto set = [](const IdempotentSet& s) {
      std::string out = "{";
      for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
      return out + "}";
    };
    std::string out = "e1'=" + set(e1p) + " e=" + set(e) + " e2'=" + set(e2p);
    if (kind == WitnessKind::full) {
      out += " [full, conditions";
      for (int c : satisfied) out += " (" + std::to_string(c) + ")";
      out += "]";
    } else {
      out += " [glued]";
    }
    return out;
  }
};

namespace detail {

template <class K>
bool corner_zero(const Algebra<K>& a, const IdempotentSet& s, const IdempotentSet& t) {
  std::vector<bool> in_s(a.quiver.n_vertices(), false), in_t(a.quiver.n_vertices(), false);
  for (int v : s) in_s[v] = true;
  for (int v : t) in_t[v] = true;
  for (const auto& p : a.basis)
    if (in_s[p.src] && in_t[p.tgt]) return false;
  return true;
}

template <class K>
bool convex_in(const Algebra<K>& a, const IdempotentSet& s) {
  if (s.empty()) return true;
  std::vector<bool> in_s(a.quiver.n_vertices(), false);
  for (int v : s) in_s[v] = true;
  for (const auto& p : a.basis) {
    if (!in_s[p.src] || !in_s[p.tgt]) continue;
    int at = p.src;
    for (int ai : p.arrows) {
      at = a.quiver.arrows[ai].tgt;
      if (!in_s[at]) return false;
    }
  }
  return true;
}

inline IdempotentSet set_union(const IdempotentSet& a, const IdempotentSet& b) {
  IdempotentSet u = a;
  u.insert(u.end(), b.begin(), b.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

}  // namespace detail

template <class K>
OrientationWitness verify_orientation(const Algebra<K>& a, IdempotentSet e1p, IdempotentSet e,
                                      IdempotentSet e2p) {
  std::sort(e1p.begin(), e1p.end());
  std::sort(e.begin(), e.end());
  std::sort(e2p.begin(), e2p.end());
  std::vector<int> seen(a.quiver.n_vertices(), 0);
  for (int v : e1p) ++seen.at(v);
  for (int v : e) ++seen.at(v);
  for (int v : e2p) ++seen.at(v);
  for (int v = 0; v < a.quiver.n_vertices(); ++v)
    if (seen[v] != 1)
      throw validation_error("witness vertex sets must be disjoint and cover the quiver");

  OrientationWitness w;
  w.e1p = e1p;
  w.e = e;
  w.e2p = e2p;
  w.e1 = detail::set_union(e1p, e);
  w.e2 = detail::set_union(e2p, e);

  w.cond2_bimodule = detail::corner_zero(a, e1p, e2p) && detail::corner_zero(a, e2p, e1p);
  w.cond2_arrows = true;
  {
    std::vector<int> part(a.quiver.n_vertices(), 1);
    for (int v : e1p) part[v] = 0;
    for (int v : e2p) part[v] = 2;
    for (const auto& ar : a.quiver.arrows) {
      int ps = part[ar.src], pt = part[ar.tgt];
      if ((ps == 0 && pt == 2) || (ps == 2 && pt == 0)) w.cond2_arrows = false;
    }
  }
  if (!w.cond2_arrows)
    throw validation_error("condition (2) fails: arrows join the two outer parts");

  bool c3 = detail::corner_zero(a, e, e1p) && detail::corner_zero(a, e, e2p);
  bool c4 = detail::corner_zero(a, e1p, e) && detail::corner_zero(a, e2p, e);
  bool c5 = detail::corner_zero(a, e1p, e) && detail::corner_zero(a, e, e2p);
  if (c3) w.satisfied.push_back(3);
  if (c4) w.satisfied.push_back(4);
  if (c5) w.satisfied.push_back(5);
  w.condition = w.satisfied.empty() ? 0 : w.satisfied.front();

  if (!detail::convex_in(a, w.e1) || !detail::convex_in(a, w.e2) || !detail::convex_in(a, w.e))
    throw validation_error("witness corners are not convex");

  w.kind = (w.cond2_bimodule && w.condition != 0) ? WitnessKind::full : WitnessKind::glued;
  return w;
}

template <class K>
OrientationWitness witness_from_doc(const Algebra<K>& a, const QuiverDoc& doc) {
  if (!doc.orientation) throw validation_error("document carries no orientation");
  return verify_orientation(a, vertex_set(doc.quiver, doc.orientation->e1),
                            vertex_set(doc.quiver, doc.orientation->e),
                            vertex_set(doc.quiver, doc.orientation->e2));
}

// exhaustive search over vertex 3-colorings; returns all witnesses that pass
// the glued-level checks, full ones first
template <class K>
std::vector<OrientationWitness> find_orientations(const Algebra<K>& a,
                                                  long budget = 1L << 22) {
  int nv = a.quiver.n_vertices();
  long total = 1;
  for (int i = 0; i < nv; ++i) {
    total *= 3;
    if (total > budget) throw budget_error("orientation search space exceeds budget");
  }
  std::vector<OrientationWitness> out;
  for (long code = 0; code < total; ++code) {
    long c = code;
    IdempotentSet e1p, e, e2p;
    for (int v = 0; v < nv; ++v) {
      int part = (int)(c % 3);
      c /= 3;
      (part == 0 ? e1p : part == 1 ? e : e2p).push_back(v);
    }
    try {
      out.push_back(verify_orientation(a, e1p, e, e2p));
    } catch (const validation_error&) {
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return (x.kind == WitnessKind::full) > (y.kind == WitnessKind::full);
  });
  return out;
}

// ---- center, core algebras ---------------------------------------------------

template <class K>
std::vector<Element<K>> center_basis(const Algebra<K>& a) {
  int n = a.dim();
  // kernel of omega -> (omega p - p omega)_p over all basis p
  SparseMat<K> sys(n * n, n, a.one());
  for (int p = 0; p < n; ++p)
    for (int w = 0; w < n; ++w) {
      for (auto& [idx, c] : a.mult(w, p)) sys.add(p * n + idx, w, c);
      for (auto& [idx, c] : a.mult(p, w)) sys.add(p * n + idx, w, field<K>::neg(c));
    }
  auto ker = kernel_basis(sys);
  std::vector<Element<K>> out;
  for (int j = 0; j < ker.cols(); ++j) {
    Element<K> e;
    for (int i = 0; i < n; ++i) {
      K v = ker.get(i, j);
      if (!field<K>::is_zero(v)) elem_add(e, a.basis[i], v);
    }
    out.push_back(std::move(e));
  }
  // central elements decompose as lambda 1 + sum of diagonal radical terms
  // (holds verbatim for connected algebras)
  if (a.connected()) {
    for (const auto& e : out) {
      std::optional<K> lambda;
      for (auto& [p, c] : e) {
        if (p.src != p.tgt) throw std::logic_error("center: off-diagonal support");
        if (p.length() == 0) {
          if (lambda && !(*lambda == c))
            throw std::logic_error("center: stationary coefficients differ on a connected quiver");
          lambda = c;
        }
      }
    }
  }
  return out;
}

struct CoreVerdict {
  bool acyclic = false;
  std::vector<long> cohomology;  // degrees 0..N
  int checked_to = 0;            // verdict is "core up to degree N"
  bool core = false;
};

template <class K>
CoreVerdict is_core(const Algebra<K>& c_alg, int N) {
  CoreVerdict v;
  v.checked_to = N;
  v.acyclic = c_alg.quiver.acyclic();
  auto e = BlockE::vertex_span(c_alg.quiver);
  auto r = regular_bimodule(c_alg);
  v.cohomology = hochschild_cohomology_dims(c_alg, e, r, N);
  v.core = v.acyclic;
  for (int n = 1; n <= N; ++n)
    if (v.cohomology[n] != 0) v.core = false;
  return v;
}

// ---- Mayer-Vietoris for Hochschild (co)homology ------------------------------

enum class Variant { homology, cohomology };

struct MvReport {
  std::vector<long> dim_c, dim_a12, dim_r;  // homology dims per degree
  bool ses_ok = false;
  std::string ses_failure;
  bool les_exact = false;
  std::vector<long> connecting_rank;
  LesReport les;
  std::string str(const std::string& theory) const {
    std::ostringstream os;
    os << theory << " Mayer-Vietoris: SES " << (ses_ok ? "ok" : ("FAILED " + ses_failure))
       << ", LES " << (les_exact ? "exact" : "NOT EXACT") << "\n";
    os << "  n:      ";
    for (size_t n = 0; n < dim_r.size(); ++n) os << n << "\t";
    os << "\n  C:      ";
    for (auto d : dim_c) os << d << "\t";
    os << "\n  A1+A2:  ";
    for (auto d : dim_a12) os << d << "\t";
    os << "\n  R:      ";
    for (auto d : dim_r) os << d << "\t";
    os << "\n";
    return os.str();
  }
};

namespace detail {

// data shared by the Hochschild MV builders: corners with parent index maps
template <class K>
struct MvCorners {
  Corner<K> a1, a2;
  std::optional<Corner<K>> c;  // absent when e is empty
  CornerBimodule<K> m1, m2;
  std::optional<CornerBimodule<K>> mc;
  std::vector<int> parent_basis_to_a1, parent_basis_to_a2;  // -1 when outside
  std::vector<int> parent_mod_to_a1, parent_mod_to_a2;

  MvCorners(const Algebra<K>& a, const Bimodule<K>& m, const OrientationWitness& w) {
    a1 = corner_algebra(a, w.e1);
    a2 = corner_algebra(a, w.e2);
    m1 = corner_bimodule(a, m, a1);
    m2 = corner_bimodule(a, m, a2);
    if (!w.e.empty()) {
      c = corner_algebra(a, w.e);
      mc = corner_bimodule(a, m, *c);
    }
    parent_basis_to_a1.assign(a.dim(), -1);
    parent_basis_to_a2.assign(a.dim(), -1);
    for (int i = 0; i < a1.algebra.dim(); ++i) parent_basis_to_a1[a1.basis_to_parent[i]] = i;
    for (int i = 0; i < a2.algebra.dim(); ++i) parent_basis_to_a2[a2.basis_to_parent[i]] = i;
    parent_mod_to_a1.assign(m.dim, -1);
    parent_mod_to_a2.assign(m.dim, -1);
    for (int i = 0; i < m1.module.dim; ++i) parent_mod_to_a1[m1.to_parent[i]] = i;
    for (int i = 0; i < m2.module.dim; ++i) parent_mod_to_a2[m2.to_parent[i]] = i;
  }
};

// translate a corner (chain, mu) basis pair into another model's index
template <class K, class Model>
int translate_pair(const Model& src_model, int degree, int pair_idx,
                   const std::vector<int>& basis_map, const std::vector<int>& mod_map,
                   const Model& dst_model) {
  auto [ci, mu] = src_model.basis[degree][pair_idx];
  const auto& chain = src_model.levels.chains[degree][ci];
  std::vector<int> tchain;
  tchain.reserve(chain.size());
  for (int b : chain) {
    int t = basis_map[b];
    if (t < 0) return -1;
    tchain.push_back(t);
  }
  int tci = dst_model.levels.find(degree, tchain);
  if (tci < 0) return -1;
  int tmu = mod_map[mu];
  if (tmu < 0) return -1;
  return dst_model.find(degree, tci, tmu);
}

template <class K>
ChainComplex<K> direct_sum(const ChainComplex<K>& x, const ChainComplex<K>& y) {
  ChainComplex<K> out;
  out.one = x.one;
  int top = std::min(x.top(), y.top());
  out.dims.resize(top + 1);
  out.d.resize(top + 1, SparseMat<K>(0, 0, x.one));
  for (int n = 0; n <= top; ++n) out.dims[n] = x.dims[n] + y.dims[n];
  out.d[0] = SparseMat<K>(0, (int)out.dims[0], x.one);
  for (int n = 1; n <= top; ++n) {
    SparseMat<K> m((int)out.dims[n - 1], (int)out.dims[n], x.one);
    m.paste_block(x.d[n], 0, 0);
    m.paste_block(y.d[n], (int)x.dims[n - 1], (int)x.dims[n]);
    out.d[n] = std::move(m);
  }
  return out;
}

template <class K>
CochainComplex<K> direct_sum_co(const CochainComplex<K>& x, const CochainComplex<K>& y) {
  CochainComplex<K> out;
  out.one = x.one;
  int top = std::min(x.top(), y.top());
  out.dims.resize(top + 1);
  out.delta.resize(top, SparseMat<K>(0, 0, x.one));
  for (int n = 0; n <= top; ++n) out.dims[n] = x.dims[n] + y.dims[n];
  for (int n = 0; n < top; ++n) {
    SparseMat<K> m((int)out.dims[n + 1], (int)out.dims[n], x.one);
    m.paste_block(x.delta[n], 0, 0);
    m.paste_block(y.delta[n], (int)x.dims[n + 1], (int)x.dims[n]);
    out.delta[n] = std::move(m);
  }
  return out;
}

template <class K>
ChainComplex<K> zero_complex(int top, K one) {
  ChainComplex<K> out;
  out.one = one;
  out.dims.assign(top + 1, 0);
  out.d.assign(top + 1, SparseMat<K>(0, 0, one));
  return out;
}

template <class K>
CochainComplex<K> zero_cocomplex(int top, K one) {
  CochainComplex<K> out;
  out.one = one;
  out.dims.assign(top + 1, 0);
  out.delta.assign(top, SparseMat<K>(0, 0, one));
  return out;
}

}  // namespace detail

// Mayer-Vietoris report for Hochschild (co)homology with coefficients in M.
// Chain level (homology):
//   0 -> eMe (x) C-chains --alpha--> (+)_i e_iMe_i (x) A_i-chains --beta--> M (x) R-chains -> 0
// with alpha the inclusion into both summands and beta = ((-1)^i inclusion).
// Cochain level (cohomology):
//   0 -> Hom(R-chains, M) --alpha--> (+)_i Hom(A_i-chains, e_iMe_i) --beta--> Hom(C-chains, eMe) -> 0
// with alpha the restrictions and beta = ((-1)^i restriction).
template <class K>
MvReport mv_hochschild(const Algebra<K>& a, const OrientationWitness& w, const Bimodule<K>& m,
                       int N, Variant variant) {
  if (w.kind != WitnessKind::full)
    throw validation_error(
        "witness satisfies only condition (2); the Hochschild Mayer-Vietoris sequence needs one "
        "of the conditions (3)-(5)");
  detail::MvCorners<K> cs(a, m, w);
  int top = N + 1;
  auto e_r = BlockE::vertex_span(a.quiver);
  auto e_1 = BlockE::vertex_span(cs.a1.algebra.quiver);
  auto e_2 = BlockE::vertex_span(cs.a2.algebra.quiver);

  MvReport rep;
  if (variant == Variant::homology) {
    auto md_r = bar_chain_model(a, e_r, m, top);
    auto md_1 = bar_chain_model(cs.a1.algebra, e_1, cs.m1.module, top);
    auto md_2 = bar_chain_model(cs.a2.algebra, e_2, cs.m2.module, top);
    std::optional<BarChainModel<K>> md_c;
    if (cs.c) md_c = bar_chain_model(cs.c->algebra, BlockE::vertex_span(cs.c->algebra.quiver),
                                     cs.mc->module, top);
    ChainComplex<K> cplx_c = md_c ? md_c->complex : detail::zero_complex(top, a.one());
    auto cplx_a = detail::direct_sum(md_1.complex, md_2.complex);

    ChainMap<K> alpha, beta;
    for (int n = 0; n <= top; ++n) {
      SparseMat<K> al((int)cplx_a.dims[n], (int)cplx_c.dims[n], a.one());
      if (md_c) {
        // C-basis maps into both corner models (through the parent indices)
        std::vector<int> c_to_parent_mod = cs.mc->to_parent;
        std::vector<int> cmod_to_1(cs.mc->module.dim), cmod_to_2(cs.mc->module.dim);
        for (int i = 0; i < cs.mc->module.dim; ++i) {
          cmod_to_1[i] = cs.parent_mod_to_a1[c_to_parent_mod[i]];
          cmod_to_2[i] = cs.parent_mod_to_a2[c_to_parent_mod[i]];
        }
        std::vector<int> cb_to_1(cs.c->algebra.dim()), cb_to_2(cs.c->algebra.dim());
        for (int i = 0; i < cs.c->algebra.dim(); ++i) {
          cb_to_1[i] = cs.parent_basis_to_a1[cs.c->basis_to_parent[i]];
          cb_to_2[i] = cs.parent_basis_to_a2[cs.c->basis_to_parent[i]];
        }
        for (int col = 0; col < (int)md_c->basis[n].size(); ++col) {
          int r1 = detail::translate_pair<K>(*md_c, n, col, cb_to_1, cmod_to_1, md_1);
          int r2 = detail::translate_pair<K>(*md_c, n, col, cb_to_2, cmod_to_2, md_2);
          if (r1 < 0 || r2 < 0) throw std::logic_error("mv: C chain missing in a corner");
          al.add(r1, col, a.one());
          al.add(r2 + (int)md_1.complex.dims[n], col, a.one());
        }
      }
      alpha.f.push_back(std::move(al));

      SparseMat<K> be((int)md_r.complex.dims[n], (int)cplx_a.dims[n], a.one());
      std::vector<int> id_mod(m.dim);
      for (int i = 0; i < m.dim; ++i) id_mod[i] = i;
      std::vector<int> a1_to_parent_b = cs.a1.basis_to_parent;
      std::vector<int> a2_to_parent_b = cs.a2.basis_to_parent;
      for (int col = 0; col < (int)md_1.basis[n].size(); ++col) {
        int r = detail::translate_pair<K>(md_1, n, col, a1_to_parent_b, cs.m1.to_parent, md_r);
        if (r < 0) throw std::logic_error("mv: A1 chain missing in R");
        be.add(r, col, field<K>::neg(a.one()));  // (-1)^1
      }
      for (int col = 0; col < (int)md_2.basis[n].size(); ++col) {
        int r = detail::translate_pair<K>(md_2, n, col, a2_to_parent_b, cs.m2.to_parent, md_r);
        if (r < 0) throw std::logic_error("mv: A2 chain missing in R");
        be.add(r, col + (int)md_1.complex.dims[n], a.one());  // (-1)^2
      }
      beta.f.push_back(std::move(be));
    }
    rep.les = les_from_ses(cplx_c, cplx_a, md_r.complex, alpha, beta, N);
    rep.dim_c = rep.les.dim_a;
    rep.dim_a12 = rep.les.dim_b;
    rep.dim_r = rep.les.dim_c;
  } else {
    auto md_r = bar_cochain_model(a, e_r, m, top);
    auto md_1 = bar_cochain_model(cs.a1.algebra, e_1, cs.m1.module, top);
    auto md_2 = bar_cochain_model(cs.a2.algebra, e_2, cs.m2.module, top);
    std::optional<BarCochainModel<K>> md_c;
    if (cs.c) md_c = bar_cochain_model(cs.c->algebra, BlockE::vertex_span(cs.c->algebra.quiver),
                                       cs.mc->module, top);
    CochainComplex<K> cplx_c = md_c ? md_c->complex : detail::zero_cocomplex(top, a.one());
    auto cplx_a = detail::direct_sum_co(md_1.complex, md_2.complex);

    // restriction matrices are the transposed inclusions of basis pairs
    ChainMap<K> alpha, beta;  // on the flipped chain complexes (degree reversed)
    std::vector<SparseMat<K>> al_n, be_n;
    for (int n = 0; n <= top; ++n) {
      SparseMat<K> al((int)cplx_a.dims[n], (int)md_r.complex.dims[n], a.one());
      for (int row = 0; row < (int)md_1.basis[n].size(); ++row) {
        int cidx = detail::translate_pair<K>(md_1, n, row, cs.a1.basis_to_parent, cs.m1.to_parent,
                                             md_r);
        if (cidx < 0) throw std::logic_error("mv: A1 cochain basis missing in R");
        al.add(row, cidx, a.one());
      }
      for (int row = 0; row < (int)md_2.basis[n].size(); ++row) {
        int cidx = detail::translate_pair<K>(md_2, n, row, cs.a2.basis_to_parent, cs.m2.to_parent,
                                             md_r);
        if (cidx < 0) throw std::logic_error("mv: A2 cochain basis missing in R");
        al.add(row + (int)md_1.complex.dims[n], cidx, a.one());
      }
      al_n.push_back(std::move(al));

      SparseMat<K> be((int)cplx_c.dims[n], (int)cplx_a.dims[n], a.one());
      if (md_c) {
        std::vector<int> cb_to_1(cs.c->algebra.dim()), cb_to_2(cs.c->algebra.dim());
        for (int i = 0; i < cs.c->algebra.dim(); ++i) {
          cb_to_1[i] = cs.parent_basis_to_a1[cs.c->basis_to_parent[i]];
          cb_to_2[i] = cs.parent_basis_to_a2[cs.c->basis_to_parent[i]];
        }
        std::vector<int> cmod_to_1(cs.mc->module.dim), cmod_to_2(cs.mc->module.dim);
        for (int i = 0; i < cs.mc->module.dim; ++i) {
          cmod_to_1[i] = cs.parent_mod_to_a1[cs.mc->to_parent[i]];
          cmod_to_2[i] = cs.parent_mod_to_a2[cs.mc->to_parent[i]];
        }
        for (int row = 0; row < (int)md_c->basis[n].size(); ++row) {
          int c1 = detail::translate_pair<K>(*md_c, n, row, cb_to_1, cmod_to_1, md_1);
          int c2 = detail::translate_pair<K>(*md_c, n, row, cb_to_2, cmod_to_2, md_2);
          if (c1 < 0 || c2 < 0) throw std::logic_error("mv: C cochain missing in a corner");
          be.add(row, c1, field<K>::neg(a.one()));                          // (-1)^1
          be.add(row, c2 + (int)md_1.complex.dims[n], a.one());             // (-1)^2
        }
      }
      be_n.push_back(std::move(be));
    }
    // flip to chain complexes (degree k <-> cohomological degree top - k);
    // one zero degree of padding makes homology at k = top (i.e. H^0) reliable
    auto fa = zero_padded(flip(md_r.complex), top + 1);
    auto fb = zero_padded(flip(cplx_a), top + 1);
    auto fc = zero_padded(flip(cplx_c), top + 1);
    for (int n = 0; n <= top; ++n) {
      alpha.f.push_back(al_n[top - n]);
      beta.f.push_back(be_n[top - n]);
    }
    alpha.f.push_back(SparseMat<K>(0, 0, a.one()));
    beta.f.push_back(SparseMat<K>(0, 0, a.one()));
    auto les = les_from_ses(fa, fb, fc, alpha, beta, top);
    rep.les = les;
    // read the dimensions back in cohomological degrees 0..N
    rep.dim_r.assign(N + 1, 0);
    rep.dim_a12.assign(N + 1, 0);
    rep.dim_c.assign(N + 1, 0);
    for (int k = 0; k <= N; ++k) {
      rep.dim_r[k] = les.dim_a[top - k];
      rep.dim_a12[k] = les.dim_b[top - k];
      rep.dim_c[k] = les.dim_c[top - k];
    }
  }
  rep.ses_ok = rep.les.ses_ok;
  rep.ses_failure = rep.les.ses_failure;
  rep.les_exact = rep.les.exact;
  rep.connecting_rank = rep.les.connecting_rank;
  return rep;
}

// ---- the core-algebra dimension identities -----------------------------------

struct HochartReport {
  bool core_precondition = false;
  CoreVerdict core;
  std::vector<long> h_r, h_a1, h_a2, h_c;
  bool id_h0 = false, id_h1 = false, id_higher = false;
  bool all_ok() const { return core_precondition && id_h0 && id_h1 && id_higher; }
};

template <class K>
HochartReport hochart_check(const Algebra<K>& a, const OrientationWitness& w, int N) {
  if (!a.connected())
    throw validation_error("the H^0 identity requires a connected algebra");
  if (w.e.empty()) throw validation_error("core identities need a nonempty core");
  HochartReport rep;
  auto c = corner_algebra(a, w.e);
  rep.core = is_core(c.algebra, N);
  rep.core_precondition = rep.core.core;
  if (!rep.core_precondition) return rep;

  auto a1 = corner_algebra(a, w.e1);
  auto a2 = corner_algebra(a, w.e2);
  auto dims = [N](const Algebra<K>& x) {
    return hochschild_cohomology_dims(x, BlockE::vertex_span(x.quiver), regular_bimodule(x), N);
  };
  rep.h_r = dims(a);
  rep.h_a1 = dims(a1.algebra);
  rep.h_a2 = dims(a2.algebra);
  rep.h_c = rep.core.cohomology;
  rep.id_h0 = rep.h_r[0] == rep.h_a1[0] + rep.h_a2[0] - 1;
  rep.id_h1 = N >= 1 && rep.h_r[1] == rep.h_a1[1] + rep.h_a2[1] + rep.h_c[0] - 1;
  rep.id_higher = true;
  for (int i = 2; i <= N; ++i)
    if (rep.h_r[i] != rep.h_a1[i] + rep.h_a2[i]) rep.id_higher = false;
  return rep;
}

// ---- compatibility of the restriction maps with cup, o_i and bracket --------

struct GerstenhaberReport {
  int samples = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

namespace detail {

// restrict an R-cochain to a corner model (values live in e_i R e_i)
template <class K>
Cochain<K> restrict_cochain(const Algebra<K>& a, const Cochain<K>& f,
                            const BarCochainModel<K>& md_r, const Corner<K>& corner,
                            const BarCochainModel<K>& md_c,
                            const std::vector<int>& parent_basis_to_corner) {
  Cochain<K> out = zero_cochain(md_c.levels, f.degree);
  for (int ci = 0; ci < md_c.levels.chain_count(f.degree); ++ci) {
    const auto& chain = md_c.levels.chains[f.degree][ci];
    std::vector<int> pchain;
    for (int b : chain) pchain.push_back(corner.basis_to_parent[b]);
    int pci = md_r.levels.find(f.degree, pchain);
    if (pci < 0) throw std::logic_error("restriction: corner chain missing upstairs");
    for (auto& [mu, c] : f.val[pci]) {
      int cm = parent_basis_to_corner[mu];
      if (cm < 0) {
        // degree 0 holds the values of all blocks at once; blocks outside the
        // corner drop out of the restriction
        if (f.degree == 0) continue;
        throw std::logic_error("restriction: value escapes the corner (not E^e-linear?)");
      }
      out.val[ci].emplace_back(cm, c);
    }
  }
  return out;
}

}  // namespace detail

// For seeded random cochains f, g the restrictions r_i to A_i and to C must
// satisfy r(f cup g) = r(f) cup r(g) and r(f o_j g) = r(f) o_j r(g) (hence
// bracket compatibility). The (-1)^i signs in the exact sequence are
// bookkeeping on top of these restriction maps.
template <class K>
GerstenhaberReport gerstenhaber_compat_check(const Algebra<K>& a, const OrientationWitness& w,
                                             int samples, int N, uint64_t seed = 20240811) {
  if (w.kind != WitnessKind::full)
    throw validation_error("gerstenhaber check needs a full orientation witness");
  GerstenhaberReport rep;
  auto m = regular_bimodule(a);
  detail::MvCorners<K> cs(a, m, w);
  int top = N + 1;
  auto md_r = bar_cochain_model(a, BlockE::vertex_span(a.quiver), m, top);

  struct Side {
    const Corner<K>* corner;
    BarCochainModel<K> model;
    std::vector<int> pmap;
  };
  std::vector<Side> sides;
  sides.push_back({&cs.a1,
                   bar_cochain_model(cs.a1.algebra, BlockE::vertex_span(cs.a1.algebra.quiver),
                                     cs.m1.module, top),
                   cs.parent_basis_to_a1});
  sides.push_back({&cs.a2,
                   bar_cochain_model(cs.a2.algebra, BlockE::vertex_span(cs.a2.algebra.quiver),
                                     cs.m2.module, top),
                   cs.parent_basis_to_a2});
  std::vector<int> parent_to_c;
  if (cs.c) {
    parent_to_c.assign(a.dim(), -1);
    for (int i = 0; i < cs.c->algebra.dim(); ++i) parent_to_c[cs.c->basis_to_parent[i]] = i;
    sides.push_back({&*cs.c,
                     bar_cochain_model(cs.c->algebra, BlockE::vertex_span(cs.c->algebra.quiver),
                                       cs.mc->module, top),
                     parent_to_c});
  }

  std::mt19937_64 rng(seed);
  auto e_r = BlockE::vertex_span(a.quiver);
  for (int s = 0; s < samples; ++s) {
    int n = (int)(rng() % (N + 1));
    int mm = (int)(rng() % (N + 1));
    if (n + mm > top) { n = std::min(n, 1); mm = std::min(mm, 1); }
    auto f = random_cochain(md_r, a, n, rng);
    auto g = random_cochain(md_r, a, mm, rng);
    ++rep.samples;
    for (auto& side : sides) {
      auto e_s = BlockE::vertex_span(side.corner->algebra.quiver);
      auto rf = detail::restrict_cochain(a, f, md_r, *side.corner, side.model, side.pmap);
      auto rg = detail::restrict_cochain(a, g, md_r, *side.corner, side.model, side.pmap);
      auto fail = [&](const std::string& what) {
        ++rep.failures;
        if (rep.first_failure.empty())
          rep.first_failure = what + " at sample " + std::to_string(s);
      };
      // cup
      auto lhs = detail::restrict_cochain(a, cup(a, e_r, md_r.levels, f, g), md_r, *side.corner,
                                          side.model, side.pmap);
      auto rhs = cup(side.corner->algebra, e_s, side.model.levels, rf, rg);
      if (!(lhs == rhs)) fail("cup compatibility");
      // insertions and bracket
      if (n >= 1) {
        for (int j = 1; j <= n; ++j) {
          auto l2 = detail::restrict_cochain(a, circ_i(a, e_r, md_r.levels, f, g, j), md_r,
                                             *side.corner, side.model, side.pmap);
          auto r2 = circ_i(side.corner->algebra, e_s, side.model.levels, rf, rg, j);
          if (!(l2 == r2)) fail("o_" + std::to_string(j) + " compatibility");
        }
      }
      auto lb = detail::restrict_cochain(a, bracket(a, e_r, md_r.levels, f, g), md_r,
                                         *side.corner, side.model, side.pmap);
      auto rb = bracket(side.corner->algebra, e_s, side.model.levels, rf, rg);
      if (!(lb == rb)) fail("bracket compatibility");
    }
  }
  return rep;
}

}  // namespace quivhom
