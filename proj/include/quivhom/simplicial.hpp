#pragma once

// Simplicial (co)homology of an algebra with a semi-normed basis: SC_0 is
// free on the vertices, SC_1 on the whole basis, and SC_n (n >= 2) on
// n-tuples of non-stationary basis elements with nonvanishing product. The
// differential is
//   d_n(s_1,...,s_n) = (s_2,...,s_n)
//                      + sum_j (-1)^j (s_1,...,b(s_j, s_{j+1}),...,s_n)
//                      + (-1)^n (s_1,...,s_{n-1}),      d_1(s) = tgt - src.
// Everything is over Z; homology comes from Smith normal form.

#include "quivhom/oriented.hpp"

#include <optional>
#include <set>

namespace quivhom {

struct SimplicialModel {
  std::vector<std::vector<std::vector<int>>> tuples;  // [n]; n = 0 holds {v}
  std::vector<std::map<std::vector<int>, int>> index;
  IntChainComplex complex;

  int find(int n, const std::vector<int>& t) const {
    auto it = index[n].find(t);
    return it == index[n].end() ? -1 : it->second;
  }
};

template <class K>
SimplicialModel simplicial_complex(const Algebra<K>& a, const SemiNormedBasis<K>& table,
                                   int top) {
  SimplicialModel md;
  md.tuples.resize(top + 1);
  md.index.resize(top + 1);
  for (int v = 0; v < a.quiver.n_vertices(); ++v) {
    md.index[0][{v}] = v;
    md.tuples[0].push_back({v});
  }
  if (top >= 1) {
    for (int b = 0; b < a.dim(); ++b) {
      md.index[1][{b}] = b;
      md.tuples[1].push_back({b});
    }
  }
  // tuples with nonzero product and no stationary factor; the running
  // product index tracks s_1 ... s_k as a basis element
  std::vector<std::pair<std::vector<int>, int>> frontier;
  for (int b = 0; b < a.dim(); ++b)
    if (a.basis[b].length() > 0) frontier.push_back({{b}, b});
  for (int n = 2; n <= top; ++n) {
    std::vector<std::pair<std::vector<int>, int>> next;
    for (auto& [t, prod] : frontier) {
      for (int b = 0; b < a.dim(); ++b) {
        if (a.basis[b].length() == 0) continue;
        int np = table.at(prod, b);
        if (np < 0) continue;
        auto ext = t;
        ext.push_back(b);
        next.push_back({ext, np});
      }
    }
    for (auto& [t, prod] : next) {
      md.index[n][t] = (int)md.tuples[n].size();
      md.tuples[n].push_back(t);
    }
    frontier = std::move(next);
  }

  md.complex.dims.resize(top + 1);
  for (int n = 0; n <= top; ++n) md.complex.dims[n] = (long)md.tuples[n].size();
  md.complex.d.resize(top + 1, SparseMat<Int>(0, 0, Int(1)));
  md.complex.d[0] = SparseMat<Int>(0, (int)md.complex.dims[0], Int(1));
  if (top >= 1) {
    SparseMat<Int> d1((int)md.complex.dims[0], (int)md.complex.dims[1], Int(1));
    for (int b = 0; b < a.dim(); ++b) {
      d1.add(a.tgt_of(b), b, Int(1));
      d1.add(a.src_of(b), b, Int(-1));
    }
    md.complex.d[1] = std::move(d1);
  }
  for (int n = 2; n <= top; ++n) {
    SparseMat<Int> dn((int)md.complex.dims[n - 1], (int)md.complex.dims[n], Int(1));
    for (int col = 0; col < (int)md.tuples[n].size(); ++col) {
      const auto& t = md.tuples[n][col];
      {
        std::vector<int> head(t.begin() + 1, t.end());
        int row = md.find(n - 1, head);
        if (row < 0) throw std::logic_error("simplicial: truncated tuple missing");
        dn.add(row, col, Int(1));
      }
      for (int j = 1; j <= n - 1; ++j) {
        int b = table.at(t[j - 1], t[j]);
        if (b < 0) throw std::logic_error("simplicial: inner product vanished unexpectedly");
        std::vector<int> mid;
        mid.reserve(n - 1);
        mid.insert(mid.end(), t.begin(), t.begin() + (j - 1));
        mid.push_back(b);
        mid.insert(mid.end(), t.begin() + (j + 1), t.end());
        int row = md.find(n - 1, mid);
        if (row < 0) throw std::logic_error("simplicial: contracted tuple missing");
        dn.add(row, col, (j % 2) ? Int(-1) : Int(1));
      }
      {
        std::vector<int> tail(t.begin(), t.end() - 1);
        int row = md.find(n - 1, tail);
        if (row < 0) throw std::logic_error("simplicial: truncated tuple missing");
        dn.add(row, col, (n % 2) ? Int(-1) : Int(1));
      }
    }
    md.complex.d[n] = std::move(dn);
  }
  md.complex.validate();
  return md;
}

template <class K>
SimplicialModel simplicial_model_of(const Algebra<K>& a, int top) {
  std::string why;
  auto table = semi_normed_basis(a, &why);
  if (!table)
    throw validation_error("basis is not semi-normed: " + why);
  return simplicial_complex(a, *table, top);
}

template <class K>
std::vector<AbelianGroup> simplicial_homology(const Algebra<K>& a, int N) {
  auto md = simplicial_model_of(a, N + 1);
  std::vector<AbelianGroup> out;
  for (int n = 0; n <= N; ++n) out.push_back(md.complex.homology(n));
  return out;
}

// ---- cohomology via universal coefficients -----------------------------------

struct CoefficientSpec {
  enum Kind { integers, mod_m, field_char } kind = integers;
  long m = 0;  // modulus for mod_m
  long p = 0;  // characteristic for field_char (0 = characteristic zero)
  std::string str() const {
    if (kind == integers) return "Z";
    if (kind == mod_m) return "Z/" + std::to_string(m);
    return p ? "k+ (char " + std::to_string(p) + ")" : "k+ (char 0)";
  }
};

struct CohomologyGroup {
  bool is_field_dim = false;
  long field_dim = 0;
  AbelianGroup group;
  std::string str() const {
    return is_field_dim ? "dim " + std::to_string(field_dim) : group.str();
  }
};

// H^n(C; G) = Hom(H_n, G) (+) Ext^1(H_{n-1}, G), from the SNF data
inline CohomologyGroup cohomology_from_uct(const AbelianGroup& hn,
                                           const AbelianGroup& hn_minus_1,
                                           const CoefficientSpec& g) {
  CohomologyGroup out;
  if (g.kind == CoefficientSpec::integers) {
    out.group.rank = hn.rank;
    out.group.torsion = hn_minus_1.torsion;  // Ext(Z/d, Z) = Z/d
    return out;
  }
  if (g.kind == CoefficientSpec::mod_m) {
    Int m(g.m);
    for (long i = 0; i < hn.rank; ++i) out.group.torsion.push_back(m);
    for (auto& d : hn.torsion) out.group.torsion.push_back(gcd(d, m));
    for (auto& d : hn_minus_1.torsion) out.group.torsion.push_back(gcd(d, m));
    std::sort(out.group.torsion.begin(), out.group.torsion.end());
    return out;
  }
  out.is_field_dim = true;
  out.field_dim = hn.rank;
  if (g.p) {
    Int p(g.p);
    for (auto& d : hn.torsion)
      if (d % p == 0) ++out.field_dim;
    for (auto& d : hn_minus_1.torsion)
      if (d % p == 0) ++out.field_dim;
  }
  return out;
}

template <class K>
std::vector<CohomologyGroup> simplicial_cohomology(const Algebra<K>& a,
                                                   const CoefficientSpec& g, int N) {
  if (g.kind == CoefficientSpec::mod_m && g.m < 2)
    throw validation_error("modulus must be at least 2");
  auto md = simplicial_model_of(a, N + 1);
  std::vector<CohomologyGroup> out;
  AbelianGroup prev;  // H_{-1} = 0
  for (int n = 0; n <= N; ++n) {
    auto hn = md.complex.homology(n);
    out.push_back(cohomology_from_uct(hn, prev, g));
    prev = hn;
  }
  return out;
}

// ---- Mayer-Vietoris -----------------------------------------------------------

struct SimpMvReport {
  bool ses_exact_over_z = false;  // per-degree: split short exact sequence
  std::string ses_failure;
  bool bases_glue = false;        // B_R = B_1 u B_2 and B_C = B_1 n B_2
  std::vector<AbelianGroup> sh_c, sh_a1, sh_a2, sh_r;
  // homology LES checked over Q and F_2, F_3, F_5
  std::vector<std::pair<std::string, bool>> les_exact;
  // cohomology LES for the requested coefficient groups
  std::vector<std::pair<std::string, bool>> coles_exact;
  bool all_exact() const {
    bool ok = ses_exact_over_z && bases_glue;
    for (auto& [f, e] : les_exact) ok = ok && e;
    for (auto& [f, e] : coles_exact) ok = ok && e;
    return ok;
  }
};

template <class K>
SimpMvReport mv_simplicial(const Algebra<K>& a, const OrientationWitness& w, int N,
                           const std::vector<CoefficientSpec>& gs = {
                               {CoefficientSpec::integers, 0, 0},
                               {CoefficientSpec::field_char, 0, 0}}) {
  if (!w.cond2_bimodule)
    throw validation_error(
        "simplicial Mayer-Vietoris needs condition (2) at the bimodule level: no surviving "
        "paths may join the outer parts");
  SimpMvReport rep;
  int top = N + 1;
  auto a1 = corner_algebra(a, w.e1);
  auto a2 = corner_algebra(a, w.e2);
  std::optional<Corner<K>> c;
  if (!w.e.empty()) c = corner_algebra(a, w.e);

  auto md_r = simplicial_model_of(a, top);
  auto md_1 = simplicial_model_of(a1.algebra, top);
  auto md_2 = simplicial_model_of(a2.algebra, top);
  std::optional<SimplicialModel> md_c;
  if (c) md_c = simplicial_model_of(c->algebra, top);

  // the semi-normed bases glue: B_R = B_1 u B_2, B_C = B_1 n B_2
  {
    std::set<int> b1(a1.basis_to_parent.begin(), a1.basis_to_parent.end());
    std::set<int> b2(a2.basis_to_parent.begin(), a2.basis_to_parent.end());
    std::set<int> uni = b1;
    uni.insert(b2.begin(), b2.end());
    std::set<int> inter;
    for (int x : b1)
      if (b2.count(x)) inter.insert(x);
    std::set<int> bc;
    if (c) bc.insert(c->basis_to_parent.begin(), c->basis_to_parent.end());
    rep.bases_glue = ((long)uni.size() == a.dim()) && (inter == bc);
  }

  // chain maps: i = (incl, incl), p = difference of the two inclusions
  auto translate = [&](const SimplicialModel& src, const SimplicialModel& dst,
                       const Corner<K>& corner, int n, int col) {
    std::vector<int> t;
    if (n == 0) {
      t = {corner.vertex_to_parent[src.tuples[0][col][0]]};
    } else {
      for (int b : src.tuples[n][col]) t.push_back(corner.basis_to_parent[b]);
    }
    int row = dst.find(n, t);
    if (row < 0) throw std::logic_error("simplicial mv: corner tuple missing in parent");
    return row;
  };
  // C -> A_i needs parent-to-corner composition
  std::vector<int> p_to_1b(a.dim(), -1), p_to_2b(a.dim(), -1);
  for (int i = 0; i < a1.algebra.dim(); ++i) p_to_1b[a1.basis_to_parent[i]] = i;
  for (int i = 0; i < a2.algebra.dim(); ++i) p_to_2b[a2.basis_to_parent[i]] = i;
  std::vector<int> p_to_1v(a.quiver.n_vertices(), -1), p_to_2v(a.quiver.n_vertices(), -1);
  for (int i = 0; i < (int)a1.vertex_to_parent.size(); ++i) p_to_1v[a1.vertex_to_parent[i]] = i;
  for (int i = 0; i < (int)a2.vertex_to_parent.size(); ++i) p_to_2v[a2.vertex_to_parent[i]] = i;

  std::vector<SparseMat<Int>> imat, pmat;
  std::vector<long> dim_sum;
  for (int n = 0; n <= top; ++n) {
    long d1 = md_1.complex.dims[n], d2 = md_2.complex.dims[n];
    dim_sum.push_back(d1 + d2);
    SparseMat<Int> im((int)(d1 + d2), md_c ? (int)md_c->complex.dims[n] : 0, Int(1));
    if (md_c) {
      for (int col = 0; col < (int)md_c->complex.dims[n]; ++col) {
        // translate C tuple to parent, then down into each corner
        std::vector<int> pt;
        if (n == 0) pt = {c->vertex_to_parent[md_c->tuples[0][col][0]]};
        else
          for (int b : md_c->tuples[n][col]) pt.push_back(c->basis_to_parent[b]);
        std::vector<int> t1, t2;
        if (n == 0) {
          t1 = {p_to_1v[pt[0]]};
          t2 = {p_to_2v[pt[0]]};
        } else {
          for (int b : pt) {
            t1.push_back(p_to_1b[b]);
            t2.push_back(p_to_2b[b]);
          }
        }
        int r1 = md_1.find(n, t1), r2 = md_2.find(n, t2);
        if (r1 < 0 || r2 < 0) throw std::logic_error("simplicial mv: C tuple missing in corner");
        im.add(r1, col, Int(1));
        im.add((int)d1 + r2, col, Int(1));
      }
    }
    imat.push_back(std::move(im));
    SparseMat<Int> pm((int)md_r.complex.dims[n], (int)(d1 + d2), Int(1));
    for (int col = 0; col < (int)d1; ++col)
      pm.add(translate(md_1, md_r, a1, n, col), col, Int(1));
    for (int col = 0; col < (int)d2; ++col)
      pm.add(translate(md_2, md_r, a2, n, col), (int)d1 + col, Int(-1));
    pmat.push_back(std::move(pm));
  }

  // per-degree split exactness over Z: injective with unit invariant factors,
  // surjective with unit invariant factors, matching ranks
  rep.ses_exact_over_z = true;
  for (int n = 0; n <= top && rep.ses_exact_over_z; ++n) {
    auto fail = [&](const std::string& what) {
      rep.ses_exact_over_z = false;
      rep.ses_failure = "degree " + std::to_string(n) + ": " + what;
    };
    if (!(pmat[n] * imat[n]).is_zero()) { fail("composite nonzero"); continue; }
    auto si = smith_normal_form(imat[n]);
    if (si.rank() != imat[n].cols() || !si.torsion().empty()) { fail("inclusion not split"); continue; }
    auto sp = smith_normal_form(pmat[n]);
    if (sp.rank() != pmat[n].rows() || !sp.torsion().empty()) { fail("projection not onto"); continue; }
    if (si.rank() + sp.rank() != (int)dim_sum[n]) { fail("kernel differs from image"); continue; }
  }

  // homology groups of the four complexes
  for (int n = 0; n <= N; ++n) {
    rep.sh_r.push_back(md_r.complex.homology(n));
    rep.sh_a1.push_back(md_1.complex.homology(n));
    rep.sh_a2.push_back(md_2.complex.homology(n));
    rep.sh_c.push_back(md_c ? md_c->complex.homology(n) : AbelianGroup{});
  }

  // LES exactness over Q and the sample primes; the cohomology sequence is
  // the LES of the dual SES (exact because the SES splits degreewise)
  auto check_les = [&](auto base_change) {
    auto cr = base_change(md_r.complex);
    using S = std::decay_t<decltype(cr.one)>;
    ChainComplex<S> ca = md_c ? base_change(md_c->complex) : detail::zero_complex(top, cr.one);
    auto cb = detail::direct_sum(base_change(md_1.complex), base_change(md_2.complex));
    ChainMap<S> i, p;
    for (int n = 0; n <= top; ++n) {
      SparseMat<S> im((int)cb.dims[n], (int)ca.dims[n], cr.one);
      for (int r = 0; r < imat[n].rows(); ++r)
        for (auto& [cc, v] : imat[n].row(r))
          im.add(r, cc, field<S>::from_int((long)v.get_si(), cr.one));
      SparseMat<S> pm((int)cr.dims[n], (int)cb.dims[n], cr.one);
      for (int r = 0; r < pmat[n].rows(); ++r)
        for (auto& [cc, v] : pmat[n].row(r))
          pm.add(r, cc, field<S>::from_int((long)v.get_si(), cr.one));
      i.f.push_back(std::move(im));
      p.f.push_back(std::move(pm));
    }
    auto les = les_from_ses(ca, cb, cr, i, p, N);
    auto fa = zero_padded(flip(dualize(cr)), top + 1);
    auto fb = zero_padded(flip(dualize(cb)), top + 1);
    auto fc = zero_padded(flip(dualize(ca)), top + 1);
    ChainMap<S> di, dp;
    for (int n = 0; n <= top; ++n) {
      di.f.push_back(p.f[top - n].transpose());
      dp.f.push_back(i.f[top - n].transpose());
    }
    di.f.push_back(SparseMat<S>(0, 0, cr.one));
    dp.f.push_back(SparseMat<S>(0, 0, cr.one));
    auto coles = les_from_ses(fa, fb, fc, di, dp, top);
    return std::make_pair(les.ses_ok && les.exact, coles.ses_ok && coles.exact);
  };

  std::map<std::string, std::pair<bool, bool>> by_field;
  auto run_field = [&](const std::string& label, long p) {
    if (by_field.count(label)) return;
    if (p == 0) {
      by_field[label] = check_les([](const IntChainComplex& x) { return x.over_rat(); });
    } else {
      by_field[label] =
          check_les([p](const IntChainComplex& x) { return x.over_fp((uint64_t)p); });
    }
  };
  run_field("Q", 0);
  for (long pr : {2L, 3L, 5L}) run_field("F" + std::to_string(pr), pr);
  rep.les_exact = {{"Q", by_field["Q"].first},
                   {"F2", by_field["F2"].first},
                   {"F3", by_field["F3"].first},
                   {"F5", by_field["F5"].first}};

  for (auto& g : gs) {
    bool ok = true;
    if (g.kind == CoefficientSpec::integers) {
      for (auto& [label, pr] : by_field) ok = ok && pr.second;
    } else if (g.kind == CoefficientSpec::field_char && g.p == 0) {
      ok = by_field["Q"].second;
    } else if (g.kind == CoefficientSpec::field_char) {
      run_field("F" + std::to_string(g.p), g.p);
      ok = by_field["F" + std::to_string(g.p)].second;
    } else {
      // Z/m: check at the prime factors of m
      long m = g.m;
      for (long pr = 2; pr <= m; ++pr)
        if (m % pr == 0) {
          run_field("F" + std::to_string(pr), pr);
          ok = ok && by_field["F" + std::to_string(pr)].second;
          while (m % pr == 0) m /= pr;
        }
    }
    rep.coles_exact.push_back({g.str(), ok});
  }
  return rep;
}

}  // namespace quivhom
