#pragma once

// Minimal and fundamental relations, fundamental groups of bound quivers via
// spanning-tree presentations, abelianization, the Van Kampen gluing check
// for glued witnesses, and H^1 of schurian algebras through Hom(pi_1, k+).

#include "quivhom/oriented.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

namespace quivhom {

template <class K>
struct MinimalRelation {
  int src = -1, tgt = -1;
  std::vector<Path> paths;
  std::vector<K> coeffs;
  bool fundamental = false;
};

namespace detail {

template <class K>
std::vector<Path> paths_between(const Algebra<K>& a, int x, int y, int maxlen) {
  std::vector<Path> out, frontier{Path::stationary(x)};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier)
      for (int ai = 0; ai < a.quiver.n_arrows(); ++ai) {
        if (a.quiver.arrows[ai].src != p.tgt) continue;
        Path ext = p;
        ext.arrows.push_back(ai);
        ext.tgt = a.quiver.arrows[ai].tgt;
        next.push_back(ext);
      }
    for (const auto& p : next)
      if (p.tgt == y && p.length() >= 2) out.push_back(p);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

// Minimal relations: for each vertex pair, the circuits of the linear matroid
// of the normal-form map on parallel paths; a circuit's dependency vector is
// a relation with minimal support. Fundamental means it is not u*w or w*u for
// a nontrivial path u and a minimal relation w, detected by stripping common
// prefixes/suffixes and testing membership in the ideal.
template <class K>
std::vector<MinimalRelation<K>> minimal_relations(const Algebra<K>& a,
                                                  long circuit_budget = 1L << 16) {
  std::vector<MinimalRelation<K>> out;
  int nv = a.quiver.n_vertices();
  for (int x = 0; x < nv; ++x)
    for (int y = 0; y < nv; ++y) {
      auto paths = detail::paths_between(a, x, y, a.nil_bound - 1);
      int np = (int)paths.size();
      if (np < 2) continue;
      if ((1L << std::min(np, 62)) > circuit_budget)
        throw budget_error("too many parallel paths for circuit enumeration");
      // normal forms as columns
      SparseMat<K> nf(a.dim(), np, a.one());
      for (int j = 0; j < np; ++j) {
        auto v = a.to_vector(a.rs.normal_form_path(paths[j], a.quiver, a.one()));
        for (auto& [i, cf] : v) nf.add(i, j, cf);
      }
      auto cols_rank = [&](const std::vector<int>& cols) {
        SparseMat<K> sub(a.dim(), (int)cols.size(), a.one());
        for (int j = 0; j < (int)cols.size(); ++j)
          for (int r = 0; r < a.dim(); ++r) {
            K v = nf.get(r, cols[j]);
            if (!field<K>::is_zero(v)) sub.add(r, j, v);
          }
        return rank(sub);
      };
      // subsets by increasing size
      for (long mask = 1; mask < (1L << np); ++mask) {
        std::vector<int> cols;
        for (int j = 0; j < np; ++j)
          if (mask & (1L << j)) cols.push_back(j);
        if (cols.size() < 2) continue;
        int rk = cols_rank(cols);
        if (rk != (int)cols.size() - 1) continue;
        bool circuit = true;
        for (size_t drop = 0; drop < cols.size() && circuit; ++drop) {
          std::vector<int> sub;
          for (size_t j = 0; j < cols.size(); ++j)
            if (j != drop) sub.push_back(cols[j]);
          if (cols_rank(sub) != (int)sub.size()) circuit = false;
        }
        if (!circuit) continue;
        // dependency vector
        SparseMat<K> sub(a.dim(), (int)cols.size(), a.one());
        for (int j = 0; j < (int)cols.size(); ++j)
          for (int r = 0; r < a.dim(); ++r) {
            K v = nf.get(r, cols[j]);
            if (!field<K>::is_zero(v)) sub.add(r, j, v);
          }
        auto ker = kernel_basis(sub);
        if (ker.cols() != 1) continue;
        MinimalRelation<K> rel;
        rel.src = x;
        rel.tgt = y;
        for (int j = 0; j < (int)cols.size(); ++j) {
          rel.paths.push_back(paths[cols[j]]);
          rel.coeffs.push_back(ker.get(j, 0));
        }
        // fundamental: no common prefix/suffix strip lands in the ideal
        rel.fundamental = true;
        int minlen = rel.paths[0].length();
        for (auto& p : rel.paths) minlen = std::min(minlen, p.length());
        for (int strip = 1; strip < minlen && rel.fundamental; ++strip) {
          // common prefix of length `strip`?
          bool common = true;
          for (auto& p : rel.paths)
            for (int j = 0; j < strip && common; ++j)
              if (p.arrows[j] != rel.paths[0].arrows[j]) common = false;
          if (common) {
            Element<K> sum;
            for (size_t t = 0; t < rel.paths.size(); ++t) {
              Path q;
              q.src = a.quiver.arrows[rel.paths[t].arrows[strip - 1]].tgt;
              q.tgt = rel.paths[t].tgt;
              q.arrows.assign(rel.paths[t].arrows.begin() + strip, rel.paths[t].arrows.end());
              elem_add(sum, q, rel.coeffs[t]);
            }
            if (a.rs.normal_form(sum, a.quiver).empty()) rel.fundamental = false;
          }
          // common suffix of length `strip`?
          common = true;
          for (auto& p : rel.paths)
            for (int j = 0; j < strip && common; ++j)
              if (p.arrows[p.length() - strip + j] != rel.paths[0].arrows[rel.paths[0].length() - strip + j])
                common = false;
          if (common && rel.fundamental) {
            Element<K> sum;
            for (size_t t = 0; t < rel.paths.size(); ++t) {
              Path q;
              q.src = rel.paths[t].src;
              q.tgt = a.quiver.arrows[rel.paths[t].arrows[rel.paths[t].length() - strip]].src;
              q.arrows.assign(rel.paths[t].arrows.begin(), rel.paths[t].arrows.end() - strip);
              elem_add(sum, q, rel.coeffs[t]);
            }
            if (a.rs.normal_form(sum, a.quiver).empty()) rel.fundamental = false;
          }
        }
        out.push_back(std::move(rel));
      }
    }
  return out;
}

// ---- spanning trees and presentations -----------------------------------------

struct GroupPresentation {
  std::vector<std::string> generators;              // names of non-tree arrows
  std::vector<std::vector<std::pair<int, int>>> relators;  // (generator, +-1) words
  std::string str() const {
    std::ostringstream os;
    os << "< ";
    for (size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i];
    os << " | ";
    for (size_t r = 0; r < relators.size(); ++r) {
      if (r) os << ", ";
      if (relators[r].empty()) os << "1";
      for (auto& [g, e] : relators[r]) os << generators[g] << (e > 0 ? "" : "^-") << " ";
    }
    os << ">";
    return os.str();
  }
};

namespace detail {

// BFS spanning tree from the lexicographically least vertex id; arrows are
// traversed in declaration order, in both directions
inline std::vector<int> bfs_tree(const Quiver& q) {
  if (!q.connected()) throw validation_error("quiver is not connected; compute per component");
  int start = 0;
  for (int v = 1; v < q.n_vertices(); ++v)
    if (q.vertices[v] < q.vertices[start]) start = v;
  std::vector<int> tree;
  std::vector<bool> seen(q.n_vertices(), false);
  std::vector<int> queue{start};
  seen[start] = true;
  for (size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    for (int ai = 0; ai < q.n_arrows(); ++ai) {
      int o = -1;
      if (q.arrows[ai].src == v) o = q.arrows[ai].tgt;
      else if (q.arrows[ai].tgt == v) o = q.arrows[ai].src;
      if (o >= 0 && !seen[o]) {
        seen[o] = true;
        tree.push_back(ai);
        queue.push_back(o);
      }
    }
  }
  return tree;
}

inline std::vector<std::pair<int, int>> word_reduce(std::vector<std::pair<int, int>> w) {
  std::vector<std::pair<int, int>> out;
  for (auto& l : w) {
    if (!out.empty() && out.back().first == l.first && out.back().second == -l.second)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

// image of a (forward) path in the free group on the non-tree arrows
inline std::vector<std::pair<int, int>> path_word(const Path& p,
                                                  const std::vector<int>& gen_of_arrow) {
  std::vector<std::pair<int, int>> w;
  for (int ai : p.arrows)
    if (gen_of_arrow[ai] >= 0) w.push_back({gen_of_arrow[ai], 1});
  return w;
}

}  // namespace detail

// presentation of pi_1(Q, I) from a spanning tree: generators are the
// non-tree arrows; each fundamental minimal relation contributes the words
// equating its paths
template <class K>
GroupPresentation pi1_presentation(const Algebra<K>& a,
                                   const std::vector<MinimalRelation<K>>& rels,
                                   const std::vector<int>* forced_tree = nullptr) {
  const Quiver& q = a.quiver;
  std::vector<int> tree = forced_tree ? *forced_tree : detail::bfs_tree(q);
  std::vector<bool> in_tree(q.n_arrows(), false);
  for (int ai : tree) in_tree[ai] = true;
  GroupPresentation pres;
  std::vector<int> gen_of_arrow(q.n_arrows(), -1);
  for (int ai = 0; ai < q.n_arrows(); ++ai)
    if (!in_tree[ai]) {
      gen_of_arrow[ai] = (int)pres.generators.size();
      pres.generators.push_back(q.arrows[ai].name);
    }
  int chi = q.n_arrows() - q.n_vertices() + 1;
  if ((int)pres.generators.size() != chi)
    throw std::logic_error("generator count differs from chi(Q)");
  for (const auto& rel : rels) {
    if (!rel.fundamental) continue;
    auto w0 = detail::path_word(rel.paths[0], gen_of_arrow);
    for (size_t j = 1; j < rel.paths.size(); ++j) {
      auto wj = detail::path_word(rel.paths[j], gen_of_arrow);
      std::vector<std::pair<int, int>> relator = wj;
      for (auto it = w0.rbegin(); it != w0.rend(); ++it) relator.push_back({it->first, -it->second});
      relator = detail::word_reduce(relator);
      if (!relator.empty()) pres.relators.push_back(relator);
    }
  }
  return pres;
}

template <class K>
GroupPresentation pi1_presentation(const Algebra<K>& a) {
  return pi1_presentation(a, minimal_relations(a));
}

// (rank, invariant factors) of the abelianization via Smith normal form
inline AbelianGroup abelianization(const GroupPresentation& p) {
  SparseMat<Int> m((int)p.relators.size(), (int)p.generators.size(), Int(1));
  for (int r = 0; r < (int)p.relators.size(); ++r)
    for (auto& [g, e] : p.relators[r]) m.add(r, g, Int(e));
  auto snf = smith_normal_form(m);
  AbelianGroup out;
  out.rank = (long)p.generators.size() - snf.rank();
  out.torsion = snf.torsion();
  return out;
}

// bounded Tietze simplification; true means the group is provably trivial
inline bool tietze_trivial(GroupPresentation p, int rounds = 32) {
  for (int round = 0; round < rounds; ++round) {
    // normalize relators
    for (auto& r : p.relators) r = detail::word_reduce(r);
    p.relators.erase(std::remove_if(p.relators.begin(), p.relators.end(),
                                    [](const auto& r) { return r.empty(); }),
                     p.relators.end());
    if (p.generators.empty()) return true;
    // a length-one relator kills its generator
    int killed = -1;
    for (auto& r : p.relators)
      if (r.size() == 1) { killed = r[0].first; break; }
    // a length-two relator g h^e identifies generators
    int sub_from = -1, sub_to = -1, sub_exp = 0;
    if (killed < 0) {
      for (auto& r : p.relators)
        if (r.size() == 2 && r[0].first != r[1].first) {
          // g = h^{-e2/e1}, both exponents are +-1 after reduction
          sub_from = r[0].first;
          sub_to = r[1].first;
          sub_exp = -r[0].second * r[1].second;
          break;
        }
    }
    if (killed < 0 && sub_from < 0) break;
    std::vector<std::vector<std::pair<int, int>>> nrel;
    for (auto& r : p.relators) {
      std::vector<std::pair<int, int>> w;
      for (auto& [g, e] : r) {
        if (g == killed) continue;
        if (g == sub_from) {
          w.push_back({sub_to, e * sub_exp});
        } else {
          w.push_back({g, e});
        }
      }
      nrel.push_back(detail::word_reduce(w));
    }
    // drop the killed/substituted generator, reindex
    int drop = killed >= 0 ? killed : sub_from;
    std::vector<std::string> ngens;
    std::vector<int> remap(p.generators.size(), -1);
    for (int g = 0; g < (int)p.generators.size(); ++g)
      if (g != drop) {
        remap[g] = (int)ngens.size();
        ngens.push_back(p.generators[g]);
      }
    for (auto& r : nrel)
      for (auto& [g, e] : r) g = remap[g];
    p.generators = std::move(ngens);
    p.relators = std::move(nrel);
  }
  for (auto& r : p.relators) r = detail::word_reduce(r);
  p.relators.erase(std::remove_if(p.relators.begin(), p.relators.end(),
                                  [](const auto& r) { return r.empty(); }),
                   p.relators.end());
  return p.generators.empty();
}

// ---- Van Kampen gluing ----------------------------------------------------------

struct VkReport {
  bool applicable = false;
  std::string reason;
  int m = 0;  // components of Q_C
  AbelianGroup lhs, rhs;
  bool abelianizations_match = false;
  bool lhs_trivial = false, rhs_trivial = false;
  bool ok() const { return applicable && abelianizations_match; }
};

// Compares pi_1(Q_R, I_R) with the quotient of
// pi_1(A_1) * pi_1(A_2) * L_{m-1} by the images of the pi_1(C_j), at the
// level of abelianizations (with spanning trees chosen so that
// T_1 n T_2 = T_C). The hypothesis: every fundamental minimal relation has
// all its paths inside Q_C, or none of its paths meets an arrow of Q_C.
template <class K>
VkReport vk_check(const Algebra<K>& a, const OrientationWitness& w) {
  VkReport rep;
  if (!a.connected()) {
    rep.reason = "quiver is not connected";
    return rep;
  }
  auto rels = minimal_relations(a);
  // the gluing hypothesis on fundamental minimal relations
  std::vector<bool> arrow_in_c(a.quiver.n_arrows(), false);
  std::vector<bool> vert_in_c(a.quiver.n_vertices(), false);
  for (int v : w.e) vert_in_c[v] = true;
  for (int ai = 0; ai < a.quiver.n_arrows(); ++ai)
    arrow_in_c[ai] = vert_in_c[a.quiver.arrows[ai].src] && vert_in_c[a.quiver.arrows[ai].tgt];
  for (const auto& rel : rels) {
    if (!rel.fundamental) continue;
    bool all_inside = true, none_touch = true;
    for (const auto& p : rel.paths)
      for (int ai : p.arrows) {
        if (!arrow_in_c[ai]) all_inside = false;
        if (arrow_in_c[ai]) none_touch = false;
      }
    if (!all_inside && !none_touch) {
      rep.reason = "a fundamental minimal relation mixes arrows from the core and outside";
      return rep;
    }
  }

  auto a1 = corner_algebra(a, w.e1);
  auto a2 = corner_algebra(a, w.e2);
  if (!a1.algebra.quiver.connected() || !a2.algebra.quiver.connected()) {
    rep.reason = "a corner quiver is not connected";
    return rep;
  }
  rep.applicable = true;

  std::optional<Corner<K>> c;
  if (!w.e.empty()) c = corner_algebra(a, w.e);
  rep.m = c ? c->algebra.quiver.n_components() : 0;

  // left side
  auto lhs_pres = pi1_presentation(a, rels);
  rep.lhs = abelianization(lhs_pres);
  rep.lhs_trivial = tietze_trivial(lhs_pres);

  // trees: T_C = BFS forest of Q_C; extend to T_i with non-core arrows only,
  // so that T_1 n T_2 = T_C
  auto build_tree = [&](const Corner<K>& corner) {
    // union-find over corner vertices, seeded with the core forest
    const Quiver& q = corner.algebra.quiver;
    std::vector<int> parent(q.n_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    std::vector<int> tree;
    std::vector<bool> core_arrow(q.n_arrows(), false);
    for (int ai = 0; ai < q.n_arrows(); ++ai) {
      int ps = corner.vertex_to_parent[q.arrows[ai].src];
      int pt = corner.vertex_to_parent[q.arrows[ai].tgt];
      core_arrow[ai] = vert_in_c[ps] && vert_in_c[pt];
    }
    // the core forest first (in declaration order this is a forest of Q_C)
    for (int ai = 0; ai < q.n_arrows(); ++ai) {
      if (!core_arrow[ai]) continue;
      int x = find(q.arrows[ai].src), y = find(q.arrows[ai].tgt);
      if (x != y) { parent[x] = y; tree.push_back(ai); }
    }
    std::vector<int> core_tree = tree;
    for (int ai = 0; ai < q.n_arrows(); ++ai) {
      if (core_arrow[ai]) continue;
      int x = find(q.arrows[ai].src), y = find(q.arrows[ai].tgt);
      if (x != y) { parent[x] = y; tree.push_back(ai); }
    }
    return std::make_pair(tree, core_tree);
  };
  auto [t1, t1_core] = build_tree(a1);
  auto [t2, t2_core] = build_tree(a2);
  (void)t1_core;
  (void)t2_core;

  auto pres1 = pi1_presentation(a1.algebra, minimal_relations(a1.algebra), &t1);
  auto pres2 = pi1_presentation(a2.algebra, minimal_relations(a2.algebra), &t2);
  rep.rhs_trivial = tietze_trivial(pres1) && tietze_trivial(pres2) && rep.m <= 1;

  // abelianized right-hand side: generators of both corners plus m-1 free
  // letters, with corner relators and one gluing row per non-tree core arrow
  std::vector<std::string> gen1 = pres1.generators, gen2 = pres2.generators;
  int n1 = (int)gen1.size(), n2 = (int)gen2.size();
  int extra = std::max(rep.m - 1, 0);
  int total_gens = n1 + n2 + extra;
  std::vector<std::vector<std::pair<int, int>>> rows;
  for (auto& r : pres1.relators) rows.push_back(r);
  for (auto& r : pres2.relators) {
    auto shifted = r;
    for (auto& [g, e] : shifted) g += n1;
    rows.push_back(shifted);
  }
  // gluing: a non-tree arrow of Q_C is a generator on both sides
  {
    std::map<std::string, int> idx1, idx2;
    for (int g = 0; g < n1; ++g) idx1[gen1[g]] = g;
    for (int g = 0; g < n2; ++g) idx2[gen2[g]] = g;
    for (int ai = 0; ai < a.quiver.n_arrows(); ++ai) {
      if (!arrow_in_c[ai]) continue;
      const std::string& name = a.quiver.arrows[ai].name;
      bool nontree1 = idx1.count(name) > 0, nontree2 = idx2.count(name) > 0;
      if (nontree1 != nontree2)
        throw std::logic_error("core arrow is tree on one side only (T_1 n T_2 != T_C)");
      if (nontree1) rows.push_back({{idx1[name], 1}, {n1 + idx2[name], -1}});
    }
  }
  SparseMat<Int> m((int)rows.size(), total_gens, Int(1));
  for (int r = 0; r < (int)rows.size(); ++r)
    for (auto& [g, e] : rows[r]) m.add(r, g, Int(e));
  auto snf = smith_normal_form(m);
  rep.rhs.rank = total_gens - snf.rank();
  rep.rhs.torsion = snf.torsion();
  rep.abelianizations_match = rep.lhs == rep.rhs;
  return rep;
}

// ---- H^1 for schurian algebras ---------------------------------------------------

// dim Hom(pi_1(Q, I), k+): the free rank plus, in characteristic p, the
// number of torsion factors divisible by p
template <class K>
long h1_schurian(const Algebra<K>& a, long characteristic) {
  if (!a.schurian()) throw validation_error("algebra is not schurian");
  if (!a.connected()) throw validation_error("quiver is not connected");
  auto ab = abelianization(pi1_presentation(a));
  long dim = ab.rank;
  if (characteristic) {
    Int p(characteristic);
    for (auto& d : ab.torsion)
      if (d % p == 0) ++dim;
  }
  return dim;
}

}  // namespace quivhom
