#pragma once

// Bound quiver algebras: ordered basis of irreducible paths, multiplication
// structure constants, corner algebras e_S A e_S on convex vertex subsets,
// and the semi-normed basis witness.

#include "quivhom/rewrite.hpp"
#include "quivhom/sparse.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quivhom {

using IdempotentSet = std::vector<int>;  // sorted vertex indices

template <class K>
class Algebra {
 public:
  Quiver quiver;
  ReductionSystem<K> rs;
  std::vector<Path> basis;  // stationary paths first, then degree-lex
  int nil_bound = 1;
  K one_scalar{};  // unit of the coefficient field

  Algebra() = default;
  Algebra(Quiver q, ReductionSystem<K> r, K one) : quiver(std::move(q)), rs(std::move(r)), one_scalar(one) {
    nil_bound = rs.nil_bound;
    enumerate_basis();
    build_tables();
    check_structure();
  }

  int dim() const { return (int)basis.size(); }
  const K& one() const { return one_scalar; }
  K zero() const { return field<K>::zero(one_scalar); }

  int src_of(int b) const { return basis[b].src; }
  int tgt_of(int b) const { return basis[b].tgt; }
  int eps_index(int v) const { return eps_index_[v]; }

  int basis_index(const Path& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }

  // structure constants: product of basis elements i*j as a sparse vector
  const SparseVec<K>& mult(int i, int j) const { return mult_[i * dim() + j]; }

  SparseVec<K> product(const SparseVec<K>& a, const SparseVec<K>& b) const {
    SparseVec<K> out;
    for (auto& [i, ci] : a)
      for (auto& [j, cj] : b) svec_add_scaled(out, mult(i, j), ci * cj);
    return out;
  }

  SparseVec<K> to_vector(const Element<K>& e) const {
    Element<K> nf = rs.normal_form(e, quiver);
    SparseVec<K> v;
    for (auto& [p, c] : nf) {
      int i = basis_index(p);
      if (i < 0) throw std::logic_error("normal form outside basis");
      v.emplace_back(i, c);
    }
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Element<K> to_element(const SparseVec<K>& v) const {
    Element<K> e;
    for (auto& [i, c] : v) elem_add(e, basis[i], c);
    return e;
  }

  bool connected() const { return quiver.connected(); }

  // dim eps_x A eps_y for all vertex pairs
  int hom_dim(int x, int y) const { return hom_dim_[x * quiver.n_vertices() + y]; }

  bool schurian() const {
    for (int x = 0; x < quiver.n_vertices(); ++x)
      for (int y = 0; y < quiver.n_vertices(); ++y)
        if (hom_dim(x, y) > 1) return false;
    return true;
  }

 private:
  std::map<Path, int, PathLess> index_;
  std::vector<int> eps_index_;
  std::vector<SparseVec<K>> mult_;
  std::vector<int> hom_dim_;

  void enumerate_basis() {
    basis.clear();
    eps_index_.assign(quiver.n_vertices(), -1);
    for (int v = 0; v < quiver.n_vertices(); ++v) {
      eps_index_[v] = (int)basis.size();
      basis.push_back(Path::stationary(v));
    }
    std::vector<Path> frontier = basis;
    for (int len = 1; len < nil_bound; ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        for (int ai = 0; ai < quiver.n_arrows(); ++ai) {
          if (quiver.arrows[ai].src != p.tgt) continue;
          Path ext = p;
          ext.arrows.push_back(ai);
          ext.tgt = quiver.arrows[ai].tgt;
          if (!rs.reducible(ext)) next.push_back(ext);
        }
      }
      std::sort(next.begin(), next.end(), [](const Path& a, const Path& b) {
        return PathLess()(a, b);
      });
      basis.insert(basis.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    for (int i = 0; i < (int)basis.size(); ++i) index_[basis[i]] = i;
  }

  void build_tables() {
    int n = dim();
    mult_.assign((size_t)n * n, {});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (basis[i].tgt != basis[j].src) continue;
        Element<K> e;
        elem_add(e, basis[i].concat(basis[j]), one_scalar);
        mult_[(size_t)i * n + j] = to_vector(e);
      }
    }
    int nv = quiver.n_vertices();
    hom_dim_.assign(nv * nv, 0);
    for (const auto& p : basis) ++hom_dim_[p.src * nv + p.tgt];
  }

  void check_structure() {
    int n = dim();
    // eps_x pairwise orthogonal idempotents summing to 1
    for (int v = 0; v < quiver.n_vertices(); ++v)
      for (int w = 0; w < quiver.n_vertices(); ++w) {
        const auto& pr = mult(eps_index_[v], eps_index_[w]);
        if (v == w) {
          if (pr.size() != 1 || pr[0].first != eps_index_[v] || !(pr[0].second == one_scalar))
            throw std::logic_error("stationary path is not idempotent");
        } else if (!pr.empty()) {
          throw std::logic_error("stationary paths not orthogonal");
        }
      }
    // associativity of the structure constants on all basis triples
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (basis[i].tgt != basis[j].src) continue;
        const auto& ij = mult(i, j);
        for (int k = 0; k < n; ++k) {
          if (basis[j].tgt != basis[k].src) continue;
          SparseVec<K> left;
          for (auto& [b, c] : ij) svec_add_scaled(left, mult(b, k), c);
          SparseVec<K> right;
          for (auto& [b, c] : mult(j, k)) svec_add_scaled(right, mult(i, b), c);
          if (left != right)
            throw std::logic_error("structure constants not associative (rewriting not confluent?)");
        }
      }
  }
};

// ---- corner algebras ---------------------------------------------------------

template <class K>
struct Corner {
  Algebra<K> algebra;
  IdempotentSet vertices;            // in the parent
  std::vector<int> vertex_to_parent; // corner vertex -> parent vertex
  std::vector<int> basis_to_parent;  // corner basis -> parent basis
};

// e_S A e_S for a convex vertex set S, as a bound quiver algebra on the full
// subquiver. Throws if S is not convex in A.
template <class K>
Corner<K> corner_algebra(const Algebra<K>& a, const IdempotentSet& s) {
  if (s.empty()) throw validation_error("corner on empty vertex set");
  std::vector<bool> in_s(a.quiver.n_vertices(), false);
  for (int v : s) in_s.at(v) = true;

  // convexity: every basis path with both endpoints in S stays inside S
  for (const auto& p : a.basis) {
    if (!in_s[p.src] || !in_s[p.tgt]) continue;
    int at = p.src;
    for (int ai : p.arrows) {
      at = a.quiver.arrows[ai].tgt;
      if (!in_s[at])
        throw validation_error("vertex set not convex: basis path leaves the set");
    }
  }

  Corner<K> c;
  c.vertices = s;
  Quiver sub;
  std::vector<int> vmap(a.quiver.n_vertices(), -1);
  for (int v : s) {
    vmap[v] = (int)sub.vertices.size();
    c.vertex_to_parent.push_back(v);
    sub.vertices.push_back(a.quiver.vertices[v]);
  }
  std::vector<int> amap(a.quiver.n_arrows(), -1);
  for (int ai = 0; ai < a.quiver.n_arrows(); ++ai) {
    const auto& ar = a.quiver.arrows[ai];
    if (in_s[ar.src] && in_s[ar.tgt]) {
      amap[ai] = (int)sub.arrows.size();
      sub.arrows.push_back({ar.name, vmap[ar.src], vmap[ar.tgt]});
    }
  }

  // the restricted rewriting system presents I_S = I ∩ kQ_S
  auto restrict_path = [&](const Path& p) {
    Path q{vmap[p.src], vmap[p.tgt], {}};
    for (int ai : p.arrows) q.arrows.push_back(amap[ai]);
    return q;
  };
  ReductionSystem<K> rrs;
  for (const auto& r : a.rs.rules) {
    bool inside = in_s[r.lead.src] && in_s[r.lead.tgt];
    if (inside) {
      int at = r.lead.src;
      for (int ai : r.lead.arrows) {
        at = a.quiver.arrows[ai].tgt;
        if (!in_s[at]) { inside = false; break; }
      }
    }
    if (!inside) continue;
    Rule<K> rr;
    rr.lead = restrict_path(r.lead);
    for (auto& [p, cf] : r.rhs) elem_add(rr.rhs, restrict_path(p), cf);
    rrs.rules.push_back(rr);
  }
  // recompute the nilpotency bound on the subquiver
  {
    std::vector<Path> frontier;
    for (int v = 0; v < sub.n_vertices(); ++v) frontier.push_back(Path::stationary(v));
    int m = -1;
    for (int len = 1; len <= a.nil_bound + 1; ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier)
        for (int ai = 0; ai < sub.n_arrows(); ++ai) {
          if (sub.arrows[ai].src != p.tgt) continue;
          Path ext = p;
          ext.arrows.push_back(ai);
          ext.tgt = sub.arrows[ai].tgt;
          if (!rrs.reducible(ext)) next.push_back(ext);
        }
      if (next.empty()) { m = len; break; }
      frontier = std::move(next);
    }
    rrs.nil_bound = (m < 0) ? a.nil_bound : m;
  }

  c.algebra = Algebra<K>(sub, rrs, a.one());

  // the corner basis must be exactly the filtered parent basis
  std::map<Path, int, PathLess> parent_filtered;
  for (int i = 0; i < a.dim(); ++i) {
    const auto& p = a.basis[i];
    if (in_s[p.src] && in_s[p.tgt]) parent_filtered[restrict_path(p)] = i;
  }
  if ((int)parent_filtered.size() != c.algebra.dim())
    throw std::logic_error("corner basis mismatch with filtered parent basis");
  c.basis_to_parent.resize(c.algebra.dim());
  for (int i = 0; i < c.algebra.dim(); ++i) {
    auto it = parent_filtered.find(c.algebra.basis[i]);
    if (it == parent_filtered.end())
      throw std::logic_error("corner basis element missing in parent");
    c.basis_to_parent[i] = it->second;
  }
  return c;
}

// ---- semi-normed basis -------------------------------------------------------

template <class K>
struct SemiNormedBasis {
  // product table on basis pairs: -1 when the product vanishes
  std::vector<int> prod;      // b(sigma, sigma')
  std::vector<K> lambda;      // sigma sigma' = lambda * b(sigma, sigma')
  int n = 0;
  int at(int i, int j) const { return prod[(size_t)i * n + j]; }
  const K& coeff(int i, int j) const { return lambda[(size_t)i * n + j]; }
};

// Verifies that the irreducible-path basis is semi-normed: every product of
// two basis elements is zero or a scalar times a single basis element.
template <class K>
std::optional<SemiNormedBasis<K>> semi_normed_basis(const Algebra<K>& a,
                                                    std::string* why = nullptr) {
  SemiNormedBasis<K> t;
  int n = a.dim();
  t.n = n;
  t.prod.assign((size_t)n * n, -1);
  t.lambda.assign((size_t)n * n, a.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& pr = a.mult(i, j);
      if (pr.empty()) continue;
      if (pr.size() > 1) {
        if (why)
          *why = "product " + path_str(a.quiver, a.basis[i]) + " * " +
                 path_str(a.quiver, a.basis[j]) + " has " +
                 std::to_string(pr.size()) + " basis terms";
        return std::nullopt;
      }
      t.prod[(size_t)i * n + j] = pr[0].first;
      t.lambda[(size_t)i * n + j] = pr[0].second;
    }
  return t;
}

}  // namespace quivhom
