#pragma once

// Finite-dimensional bimodules over a bound quiver algebra, presented by
// left/right action structure constants on a basis that is homogeneous for
// the vertex idempotents: basis element mu with type (x, y) satisfies
// eps_x . mu . eps_y = mu. Instances: the regular bimodule R, its dual D(R)
// with (a.phi.b)(m) = phi(b m a), and corner truncations e M e.

#include "quivhom/algebra.hpp"

#include <string>
#include <vector>

namespace quivhom {

template <class K>
struct Bimodule {
  int dim = 0;
  std::vector<std::pair<int, int>> type;           // (x, y) per basis element
  std::vector<std::vector<SparseVec<K>>> left;     // left[a][m]  = a . m
  std::vector<std::vector<SparseVec<K>>> right;    // right[a][m] = m . a
  std::vector<std::string> labels;
  K one{};

  SparseVec<K> act_left(const SparseVec<K>& a, int m) const {
    SparseVec<K> out;
    for (auto& [ai, c] : a) svec_add_scaled(out, left[ai][m], c);
    return out;
  }
  SparseVec<K> act_right(int m, const SparseVec<K>& a) const {
    SparseVec<K> out;
    for (auto& [ai, c] : a) svec_add_scaled(out, right[ai][m], c);
    return out;
  }
};

namespace detail {

template <class K>
void check_bimodule(const Algebra<K>& a, const Bimodule<K>& m) {
  int n = a.dim();
  // unit acts as identity
  for (int j = 0; j < m.dim; ++j) {
    SparseVec<K> l, r;
    for (int v = 0; v < a.quiver.n_vertices(); ++v) {
      svec_add_scaled(l, m.left[a.eps_index(v)][j], a.one());
      svec_add_scaled(r, m.right[a.eps_index(v)][j], a.one());
    }
    SparseVec<K> unit{{j, a.one()}};
    if (l != unit || r != unit) throw std::logic_error("bimodule: unit does not act as identity");
  }
  // associativity and commuting actions on basis triples
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ij = a.mult(i, j);
      for (int x = 0; x < m.dim; ++x) {
        // (a b) . x = a . (b . x)
        SparseVec<K> lhs;
        for (auto& [b, c] : ij) svec_add_scaled(lhs, m.left[b][x], c);
        SparseVec<K> rhs;
        for (auto& [y, c] : m.left[j][x]) svec_add_scaled(rhs, m.left[i][y], c);
        if (lhs != rhs) throw std::logic_error("bimodule: left action not associative");
        // x . (a b) = (x . a) . b
        SparseVec<K> lhs2;
        for (auto& [b, c] : ij) svec_add_scaled(lhs2, m.right[b][x], c);
        SparseVec<K> rhs2;
        for (auto& [y, c] : m.right[i][x]) svec_add_scaled(rhs2, m.right[j][y], c);
        if (lhs2 != rhs2) throw std::logic_error("bimodule: right action not associative");
        // (a . x) . b = a . (x . b)
        SparseVec<K> lhs3;
        for (auto& [y, c] : m.left[i][x]) svec_add_scaled(lhs3, m.right[j][y], c);
        SparseVec<K> rhs3;
        for (auto& [y, c] : m.right[j][x]) svec_add_scaled(rhs3, m.left[i][y], c);
        if (lhs3 != rhs3) throw std::logic_error("bimodule: actions do not commute");
      }
    }
}

}  // namespace detail

template <class K>
Bimodule<K> regular_bimodule(const Algebra<K>& a) {
  Bimodule<K> m;
  m.dim = a.dim();
  m.one = a.one();
  for (int i = 0; i < a.dim(); ++i) {
    m.type.emplace_back(a.src_of(i), a.tgt_of(i));
    m.labels.push_back(path_str(a.quiver, a.basis[i]));
  }
  m.left.assign(a.dim(), {});
  m.right.assign(a.dim(), {});
  for (int i = 0; i < a.dim(); ++i) {
    m.left[i].resize(a.dim());
    m.right[i].resize(a.dim());
    for (int j = 0; j < a.dim(); ++j) {
      m.left[i][j] = a.mult(i, j);
      m.right[i][j] = a.mult(j, i);
    }
  }
  return m;
}

// D(M) = Hom_k(M, k) with (a . phi . b)(m) = phi(b m a); on the dual basis the
// left action of a is the transpose of the right action of a on M, and dually.
template <class K>
Bimodule<K> dual_bimodule(const Algebra<K>& a, const Bimodule<K>& m) {
  Bimodule<K> d;
  d.dim = m.dim;
  d.one = m.one;
  for (int j = 0; j < m.dim; ++j) {
    d.type.emplace_back(m.type[j].second, m.type[j].first);
    d.labels.push_back("D(" + m.labels[j] + ")");
  }
  d.left.assign(a.dim(), std::vector<SparseVec<K>>(m.dim));
  d.right.assign(a.dim(), std::vector<SparseVec<K>>(m.dim));
  for (int ai = 0; ai < a.dim(); ++ai) {
    for (int x = 0; x < m.dim; ++x) {
      // (a . mu*)(m) = mu*(m . a): coefficient of mu in m.a
      for (auto& [mu, c] : m.right[ai][x]) d.left[ai][mu].emplace_back(x, c);
      // (mu* . a)(m) = mu*(a . m)
      for (auto& [mu, c] : m.left[ai][x]) d.right[ai][mu].emplace_back(x, c);
    }
    for (int mu = 0; mu < m.dim; ++mu) {
      auto cmp = [](const auto& p, const auto& q) { return p.first < q.first; };
      std::sort(d.left[ai][mu].begin(), d.left[ai][mu].end(), cmp);
      std::sort(d.right[ai][mu].begin(), d.right[ai][mu].end(), cmp);
    }
  }
  return d;
}

// e_S M e_S as a bimodule over a corner algebra; keeps the parent indices.
template <class K>
struct CornerBimodule {
  Bimodule<K> module;
  std::vector<int> to_parent;
};

template <class K>
CornerBimodule<K> corner_bimodule(const Algebra<K>& a, const Bimodule<K>& m,
                                  const Corner<K>& corner) {
  std::vector<bool> in_s(a.quiver.n_vertices(), false);
  for (int v : corner.vertices) in_s[v] = true;
  std::vector<int> vmap(a.quiver.n_vertices(), -1);
  for (int i = 0; i < (int)corner.vertex_to_parent.size(); ++i)
    vmap[corner.vertex_to_parent[i]] = i;

  CornerBimodule<K> out;
  std::vector<int> from_parent(m.dim, -1);
  for (int j = 0; j < m.dim; ++j) {
    auto [x, y] = m.type[j];
    if (in_s[x] && in_s[y]) {
      from_parent[j] = (int)out.to_parent.size();
      out.to_parent.push_back(j);
      out.module.type.emplace_back(vmap[x], vmap[y]);
      out.module.labels.push_back(m.labels[j]);
    }
  }
  out.module.dim = (int)out.to_parent.size();
  out.module.one = m.one;
  int cdim = corner.algebra.dim();
  out.module.left.assign(cdim, std::vector<SparseVec<K>>(out.module.dim));
  out.module.right.assign(cdim, std::vector<SparseVec<K>>(out.module.dim));
  for (int ci = 0; ci < cdim; ++ci) {
    int pi = corner.basis_to_parent[ci];
    for (int j = 0; j < out.module.dim; ++j) {
      for (auto& [mu, c] : m.left[pi][out.to_parent[j]]) {
        if (from_parent[mu] < 0) throw std::logic_error("corner bimodule: action leaves the corner");
        out.module.left[ci][j].emplace_back(from_parent[mu], c);
      }
      for (auto& [mu, c] : m.right[pi][out.to_parent[j]]) {
        if (from_parent[mu] < 0) throw std::logic_error("corner bimodule: action leaves the corner");
        out.module.right[ci][j].emplace_back(from_parent[mu], c);
      }
    }
  }
  return out;
}

template <class K>
void validate_bimodule(const Algebra<K>& a, const Bimodule<K>& m) {
  detail::check_bimodule(a, m);
}

}  // namespace quivhom
