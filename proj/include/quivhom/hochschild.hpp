#pragma once

// E-relative bar complexes of a bound quiver algebra and Hochschild
// (co)homology with bimodule coefficients, together with the cochain-level
// cup product, the insertion compositions f o_i g and the bracket.
//
// E is the span of a set of orthogonal idempotents given by a partition of
// the vertices into blocks; the default is the full vertex span (one block
// per vertex). Tensor factors chain at block level:
//   M (x)_{E^e} R^{(x)_E n}  has basis (mu; p1,...,pn) with
//   block t(p_i) = block s(p_{i+1}), block s(mu) = block t(p_n),
//   block t(mu) = block s(p_1);
//   Hom_{E^e}(R^{(x)_E n}, M) has basis (chain, mu) with matching outer
//   blocks, realizing f(e x e') = e f(x) e'.

#include "quivhom/bimodule.hpp"
#include "quivhom/complex.hpp"

#include <cstdlib>
#include <map>
#include <random>
#include <vector>

namespace quivhom {

struct BlockE {
  std::vector<int> of_vertex;
  int n_blocks = 0;

  static BlockE vertex_span(const Quiver& q) {
    BlockE e;
    e.n_blocks = q.n_vertices();
    e.of_vertex.resize(q.n_vertices());
    for (int v = 0; v < q.n_vertices(); ++v) e.of_vertex[v] = v;
    return e;
  }
  // blocks from a partition of the vertices (e.g. e'_1, e, e'_2); empty parts
  // are dropped
  static BlockE from_parts(const Quiver& q, const std::vector<IdempotentSet>& parts) {
    BlockE e;
    e.of_vertex.assign(q.n_vertices(), -1);
    for (const auto& part : parts) {
      if (part.empty()) continue;
      for (int v : part) {
        if (e.of_vertex.at(v) != -1) throw validation_error("vertex blocks overlap");
        e.of_vertex[v] = e.n_blocks;
      }
      ++e.n_blocks;
    }
    for (int v = 0; v < q.n_vertices(); ++v)
      if (e.of_vertex[v] < 0) throw validation_error("vertex blocks do not cover the quiver");
    return e;
  }
};

inline long hochschild_budget_cells() {
  if (const char* env = std::getenv("QUIVHOM_BUDGET_MB")) {
    long mb = std::atol(env);
    if (mb > 0) return mb * 20000L;
  }
  return 512L * 20000L;
}

// block-composable chains of algebra basis elements, degrees 0..top
template <class K>
struct TensorLevels {
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::map<std::vector<int>, int>> index;

  int chain_count(int n) const { return (int)chains[n].size(); }
  int find(int n, const std::vector<int>& c) const {
    auto it = index[n].find(c);
    return it == index[n].end() ? -1 : it->second;
  }
};

template <class K>
long estimate_chain_cells(const Algebra<K>& a, const BlockE& e, int top) {
  int nb = e.n_blocks;
  std::vector<std::vector<long>> d(nb, std::vector<long>(nb, 0));
  for (int i = 0; i < a.dim(); ++i)
    ++d[e.of_vertex[a.src_of(i)]][e.of_vertex[a.tgt_of(i)]];
  std::vector<std::vector<long>> pw(nb, std::vector<long>(nb, 0));
  for (int i = 0; i < nb; ++i) pw[i][i] = 1;
  long total = 1;
  for (int n = 1; n <= top; ++n) {
    std::vector<std::vector<long>> nx(nb, std::vector<long>(nb, 0));
    for (int i = 0; i < nb; ++i)
      for (int k = 0; k < nb; ++k)
        if (pw[i][k])
          for (int j = 0; j < nb; ++j) nx[i][j] += pw[i][k] * d[k][j];
    pw = std::move(nx);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) total += pw[i][j];
    if (total > hochschild_budget_cells())
      throw budget_error("relative tensor space too large: ~" + std::to_string(total) +
                         " chains through degree " + std::to_string(n));
  }
  return total;
}

template <class K>
TensorLevels<K> tensor_levels(const Algebra<K>& a, const BlockE& e, int top) {
  estimate_chain_cells(a, e, top);
  TensorLevels<K> lv;
  lv.chains.resize(top + 1);
  lv.index.resize(top + 1);
  lv.chains[0] = {{}};
  lv.index[0][{}] = 0;
  for (int n = 1; n <= top; ++n) {
    for (const auto& c : lv.chains[n - 1]) {
      int last_block = c.empty() ? -1 : e.of_vertex[a.tgt_of(c.back())];
      for (int b = 0; b < a.dim(); ++b) {
        if (!c.empty() && e.of_vertex[a.src_of(b)] != last_block) continue;
        auto ext = c;
        ext.push_back(b);
        lv.index[n][ext] = (int)lv.chains[n].size();
        lv.chains[n].push_back(std::move(ext));
      }
    }
  }
  return lv;
}

// ---- chain model: M (x)_{E^e} R^{(x)_E n} ------------------------------------

template <class K>
struct BarChainModel {
  TensorLevels<K> levels;
  std::vector<std::vector<std::pair<int, int>>> basis;        // [n] -> (chain, mu)
  std::vector<std::map<std::pair<int, int>, int>> index;
  ChainComplex<K> complex;

  int find(int n, int chain, int mu) const {
    auto it = index[n].find({chain, mu});
    return it == index[n].end() ? -1 : it->second;
  }
};

template <class K>
BarChainModel<K> bar_chain_model(const Algebra<K>& a, const BlockE& e, const Bimodule<K>& m,
                                 int top) {
  BarChainModel<K> md;
  md.levels = tensor_levels(a, e, top);
  md.basis.resize(top + 1);
  md.index.resize(top + 1);
  auto blk = [&](int v) { return e.of_vertex[v]; };
  for (int n = 0; n <= top; ++n) {
    for (int ci = 0; ci < md.levels.chain_count(n); ++ci) {
      const auto& c = md.levels.chains[n][ci];
      for (int mu = 0; mu < m.dim; ++mu) {
        auto [x, y] = m.type[mu];
        bool ok = c.empty()
                      ? blk(x) == blk(y)
                      : (blk(x) == blk(a.tgt_of(c.back())) && blk(y) == blk(a.src_of(c.front())));
        if (!ok) continue;
        md.index[n][{ci, mu}] = (int)md.basis[n].size();
        md.basis[n].push_back({ci, mu});
      }
    }
  }
  md.complex.one = a.one();
  md.complex.dims.resize(top + 1);
  for (int n = 0; n <= top; ++n) md.complex.dims[n] = (long)md.basis[n].size();
  md.complex.d.resize(top + 1, SparseMat<K>(0, 0, a.one()));
  md.complex.d[0] = SparseMat<K>(0, (int)md.complex.dims[0], a.one());
  for (int n = 1; n <= top; ++n) {
    SparseMat<K> dd((int)md.complex.dims[n - 1], (int)md.complex.dims[n], a.one());
    for (int col = 0; col < (int)md.basis[n].size(); ++col) {
      auto [ci, mu] = md.basis[n][col];
      const auto& c = md.levels.chains[n][ci];
      // mu . p1 (x) p2 ... pn
      {
        std::vector<int> rest(c.begin() + 1, c.end());
        int rci = md.levels.find(n - 1, rest);
        for (auto& [mu2, coef] : m.right[c[0]][mu]) {
          int row = md.find(n - 1, rci, mu2);
          if (row < 0) throw std::logic_error("bar chain: wrap condition violated");
          dd.add(row, col, coef);
        }
      }
      // internal multiplications, sign (-1)^i
      for (int i = 1; i <= n - 1; ++i) {
        K sign = (i % 2) ? field<K>::neg(a.one()) : a.one();
        for (auto& [w, coef] : a.mult(c[i - 1], c[i])) {
          std::vector<int> repl;
          repl.reserve(n - 1);
          repl.insert(repl.end(), c.begin(), c.begin() + (i - 1));
          repl.push_back(w);
          repl.insert(repl.end(), c.begin() + (i + 1), c.end());
          int rci = md.levels.find(n - 1, repl);
          int row = md.find(n - 1, rci, mu);
          if (row < 0) throw std::logic_error("bar chain: contraction fell outside basis");
          dd.add(row, col, sign * coef);
        }
      }
      // (-1)^n pn . mu
      {
        K sign = (n % 2) ? field<K>::neg(a.one()) : a.one();
        std::vector<int> rest(c.begin(), c.end() - 1);
        int rci = md.levels.find(n - 1, rest);
        for (auto& [mu2, coef] : m.left[c[n - 1]][mu]) {
          int row = md.find(n - 1, rci, mu2);
          if (row < 0) throw std::logic_error("bar chain: wrap condition violated");
          dd.add(row, col, sign * coef);
        }
      }
    }
    md.complex.d[n] = std::move(dd);
  }
  md.complex.validate();
  return md;
}

// ---- cochain model: Hom_{E^e}(R^{(x)_E n}, M) --------------------------------

template <class K>
struct BarCochainModel {
  TensorLevels<K> levels;
  std::vector<std::vector<std::pair<int, int>>> basis;  // [n] -> (chain, mu)
  std::vector<std::map<std::pair<int, int>, int>> index;
  CochainComplex<K> complex;

  int find(int n, int chain, int mu) const {
    auto it = index[n].find({chain, mu});
    return it == index[n].end() ? -1 : it->second;
  }
};

template <class K>
BarCochainModel<K> bar_cochain_model(const Algebra<K>& a, const BlockE& e, const Bimodule<K>& m,
                                     int top) {
  BarCochainModel<K> md;
  md.levels = tensor_levels(a, e, top);
  md.basis.resize(top + 1);
  md.index.resize(top + 1);
  auto blk = [&](int v) { return e.of_vertex[v]; };
  for (int n = 0; n <= top; ++n) {
    for (int ci = 0; ci < md.levels.chain_count(n); ++ci) {
      const auto& c = md.levels.chains[n][ci];
      for (int mu = 0; mu < m.dim; ++mu) {
        auto [x, y] = m.type[mu];
        bool ok = c.empty()
                      ? blk(x) == blk(y)
                      : (blk(x) == blk(a.src_of(c.front())) && blk(y) == blk(a.tgt_of(c.back())));
        if (!ok) continue;
        md.index[n][{ci, mu}] = (int)md.basis[n].size();
        md.basis[n].push_back({ci, mu});
      }
    }
  }
  md.complex.one = a.one();
  md.complex.dims.resize(top + 1);
  for (int n = 0; n <= top; ++n) md.complex.dims[n] = (long)md.basis[n].size();
  md.complex.delta.resize(top, SparseMat<K>(0, 0, a.one()));
  for (int n = 0; n + 1 <= top; ++n) {
    SparseMat<K> dd((int)md.complex.dims[n + 1], (int)md.complex.dims[n], a.one());
    for (int rci = 0; rci < md.levels.chain_count(n + 1); ++rci) {
      const auto& c = md.levels.chains[n + 1][rci];
      // x1 . f(x2 ... x_{n+1})
      {
        std::vector<int> tail(c.begin() + 1, c.end());
        int tci = md.levels.find(n, tail);
        for (auto& [tcol, colidx] : md.index[n]) {
          if (tcol.first != tci) continue;
          for (auto& [mu2, coef] : m.left[c[0]][tcol.second]) {
            int row = md.find(n + 1, rci, mu2);
            if (row >= 0) dd.add(row, colidx, coef);
          }
        }
      }
      // (-1)^i f(... x_i x_{i+1} ...)
      for (int i = 1; i <= n; ++i) {
        K sign = (i % 2) ? field<K>::neg(a.one()) : a.one();
        for (auto& [w, coef] : a.mult(c[i - 1], c[i])) {
          std::vector<int> repl;
          repl.reserve(n);
          repl.insert(repl.end(), c.begin(), c.begin() + (i - 1));
          repl.push_back(w);
          repl.insert(repl.end(), c.begin() + (i + 1), c.end());
          int cci = md.levels.find(n, repl);
          if (cci < 0) throw std::logic_error("bar cochain: contraction missing");
          for (int mu = 0; mu < m.dim; ++mu) {
            int colidx = md.find(n, cci, mu);
            if (colidx < 0) continue;
            int row = md.find(n + 1, rci, mu);
            if (row < 0) throw std::logic_error("bar cochain: type mismatch");
            dd.add(row, colidx, sign * coef);
          }
        }
      }
      // (-1)^{n+1} f(x1 ... xn) . x_{n+1}
      {
        K sign = ((n + 1) % 2) ? field<K>::neg(a.one()) : a.one();
        std::vector<int> head(c.begin(), c.end() - 1);
        int hci = md.levels.find(n, head);
        for (auto& [hcol, colidx] : md.index[n]) {
          if (hcol.first != hci) continue;
          for (auto& [mu2, coef] : m.right[c[n]][hcol.second]) {
            int row = md.find(n + 1, rci, mu2);
            if (row >= 0) dd.add(row, colidx, sign * coef);
          }
        }
      }
    }
    md.complex.delta[n] = std::move(dd);
  }
  md.complex.validate();
  return md;
}

// dimension vectors for 0..N (complexes built one degree beyond N)
template <class K>
std::vector<long> hochschild_homology_dims(const Algebra<K>& a, const BlockE& e,
                                           const Bimodule<K>& m, int N) {
  auto md = bar_chain_model(a, e, m, N + 1);
  return md.complex.homology_dims(N);
}

template <class K>
std::vector<long> hochschild_cohomology_dims(const Algebra<K>& a, const BlockE& e,
                                             const Bimodule<K>& m, int N) {
  auto md = bar_cochain_model(a, e, m, N + 1);
  return md.complex.cohomology_dims(N);
}

// ---- cochain operations (coefficients in the regular bimodule) --------------

// values over the algebra basis, indexed by chain at the cochain's degree;
// degree 0 has the single empty chain whose value is the block-diagonal part
template <class K>
struct Cochain {
  int degree = 0;
  std::vector<SparseVec<K>> val;

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree == b.degree && a.val == b.val;
  }
};

template <class K>
Cochain<K> zero_cochain(const TensorLevels<K>& lv, int degree) {
  Cochain<K> f;
  f.degree = degree;
  f.val.assign(lv.chain_count(degree), {});
  return f;
}

template <class K>
Cochain<K> cochain_from_flat(const BarCochainModel<K>& md, int degree, const std::vector<K>& flat) {
  Cochain<K> f = zero_cochain(md.levels, degree);
  for (int i = 0; i < (int)md.basis[degree].size(); ++i) {
    if (field<K>::is_zero(flat[i])) continue;
    auto [ci, mu] = md.basis[degree][i];
    f.val[ci].emplace_back(mu, flat[i]);
  }
  for (auto& v : f.val)
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return f;
}

template <class K>
std::vector<K> cochain_to_flat(const BarCochainModel<K>& md, const Cochain<K>& f, const K& one) {
  std::vector<K> flat(md.basis[f.degree].size(), field<K>::zero(one));
  for (int ci = 0; ci < (int)f.val.size(); ++ci)
    for (auto& [mu, c] : f.val[ci]) {
      int idx = md.find(f.degree, ci, mu);
      if (idx < 0) throw std::logic_error("cochain violates the E^e block constraint");
      flat[idx] = c;
    }
  return flat;
}

template <class K>
Cochain<K> coboundary(const BarCochainModel<K>& md, const Algebra<K>& a, const Cochain<K>& f) {
  auto flat = cochain_to_flat(md, f, a.one());
  auto img = md.complex.delta[f.degree].apply(flat);
  return cochain_from_flat(md, f.degree + 1, img);
}

namespace detail {

// value of f on the subchain [from, from+len) of chain c; for a degree-0
// cochain this is the block-diagonal value at the junction block
template <class K>
SparseVec<K> eval_sub(const Algebra<K>& a, const BlockE& e, const TensorLevels<K>& lv,
                      const Cochain<K>& f, const std::vector<int>& c, int from, int len) {
  if (len > 0) {
    std::vector<int> sub(c.begin() + from, c.begin() + from + len);
    int ci = lv.find(len, sub);
    if (ci < 0) return {};
    return f.val[ci];
  }
  int block;
  if (c.empty()) throw std::logic_error("degree-0 insertion into empty chain");
  if (from == 0) block = e.of_vertex[a.src_of(c[0])];
  else block = e.of_vertex[a.tgt_of(c[from - 1])];
  SparseVec<K> out;
  for (auto& [mu, coef] : f.val[0]) {
    if (e.of_vertex[a.src_of(mu)] == block && e.of_vertex[a.tgt_of(mu)] == block)
      out.emplace_back(mu, coef);
  }
  return out;
}

}  // namespace detail

// (f cup g)(r1 ... r_{n+m}) = f(r1 ... rn) g(r_{n+1} ... r_{n+m})
template <class K>
Cochain<K> cup(const Algebra<K>& a, const BlockE& e, const TensorLevels<K>& lv,
               const Cochain<K>& f, const Cochain<K>& g) {
  int n = f.degree, m = g.degree;
  Cochain<K> out = zero_cochain(lv, n + m);
  if (n + m == 0) {
    // both degree 0: blockwise product of the diagonal values
    out.val[0] = a.product(f.val[0], g.val[0]);
    return out;
  }
  for (int ci = 0; ci < lv.chain_count(n + m); ++ci) {
    const auto& c = lv.chains[n + m][ci];
    auto fv = detail::eval_sub(a, e, lv, f, c, 0, n);
    if (fv.empty()) continue;
    auto gv = detail::eval_sub(a, e, lv, g, c, n, m);
    if (gv.empty()) continue;
    out.val[ci] = a.product(fv, gv);
  }
  return out;
}

// (f o_i g)(r1 ... r_{n+m-1}) = f(r1 ... g(r_i ... r_{i+m-1}) ... ), 1 <= i <= n
template <class K>
Cochain<K> circ_i(const Algebra<K>& a, const BlockE& e, const TensorLevels<K>& lv,
                  const Cochain<K>& f, const Cochain<K>& g, int i) {
  int n = f.degree, m = g.degree;
  int deg = n + m - 1;
  Cochain<K> out = zero_cochain(lv, deg);
  if (deg == 0) {
    // n = 1, m = 0: value sum_B f(g(e_B)) on the diagonal of each block
    for (auto& [w, coef] : g.val[0]) {
      if (e.of_vertex[a.src_of(w)] != e.of_vertex[a.tgt_of(w)]) continue;
      std::vector<int> one_chain{w};
      int ci = lv.find(1, one_chain);
      if (ci < 0) continue;
      svec_add_scaled(out.val[0], f.val[ci], coef);
    }
    return out;
  }
  for (int ci = 0; ci < lv.chain_count(deg); ++ci) {
    const auto& c = lv.chains[deg][ci];
    auto gv = detail::eval_sub(a, e, lv, g, c, i - 1, m);
    for (auto& [w, coef] : gv) {
      std::vector<int> repl;
      repl.reserve(n);
      repl.insert(repl.end(), c.begin(), c.begin() + (i - 1));
      repl.push_back(w);
      repl.insert(repl.end(), c.begin() + (i - 1) + m, c.end());
      int rci = lv.find(n, repl);
      if (rci < 0) continue;
      svec_add_scaled(out.val[ci], f.val[rci], coef);
    }
  }
  return out;
}

// f o g = sum_i (-1)^{(i-1)(m-1)} f o_i g, zero when n = 0
template <class K>
Cochain<K> circ(const Algebra<K>& a, const BlockE& e, const TensorLevels<K>& lv,
                const Cochain<K>& f, const Cochain<K>& g) {
  int n = f.degree, m = g.degree;
  if (n == 0) return zero_cochain(lv, std::max(n + m - 1, 0));
  Cochain<K> out = zero_cochain(lv, n + m - 1);
  for (int i = 1; i <= n; ++i) {
    auto term = circ_i(a, e, lv, f, g, i);
    K sign = (((i - 1) * (m - 1)) % 2) ? field<K>::neg(a.one()) : a.one();
    for (int ci = 0; ci < (int)out.val.size(); ++ci)
      svec_add_scaled(out.val[ci], term.val[ci], sign);
  }
  return out;
}

// [f, g] = f o g - (-1)^{(n-1)(m-1)} g o f
template <class K>
Cochain<K> bracket(const Algebra<K>& a, const BlockE& e, const TensorLevels<K>& lv,
                   const Cochain<K>& f, const Cochain<K>& g) {
  int n = f.degree, m = g.degree;
  auto fg = circ(a, e, lv, f, g);
  auto gf = circ(a, e, lv, g, f);
  K sign = (((n - 1) * (m - 1)) % 2) ? a.one() : field<K>::neg(a.one());
  Cochain<K> out = fg;
  for (int ci = 0; ci < (int)out.val.size(); ++ci) svec_add_scaled(out.val[ci], gf.val[ci], sign);
  return out;
}

template <class K>
bool cochain_is_zero(const Cochain<K>& f) {
  for (auto& v : f.val)
    if (!v.empty()) return false;
  return true;
}

template <class K>
Cochain<K> random_cochain(const BarCochainModel<K>& md, const Algebra<K>& a, int degree,
                          std::mt19937_64& rng) {
  std::vector<K> flat(md.basis[degree].size(), a.zero());
  for (auto& x : flat) {
    long v = (long)(rng() % 5) - 2;
    x = field<K>::from_int(v, a.one());
  }
  return cochain_from_flat(md, degree, flat);
}

template <class K>
Cochain<K> random_cocycle(const BarCochainModel<K>& md, const Algebra<K>& a, int degree,
                          std::mt19937_64& rng) {
  auto ker = kernel_basis(md.complex.delta[degree]);
  std::vector<K> flat(md.basis[degree].size(), a.zero());
  for (int j = 0; j < ker.cols(); ++j) {
    long v = (long)(rng() % 5) - 2;
    if (!v) continue;
    K c = field<K>::from_int(v, a.one());
    auto col = ker.column_vec(j);
    for (int i = 0; i < (int)flat.size(); ++i) flat[i] += col[i] * c;
  }
  return cochain_from_flat(md, degree, flat);
}

}  // namespace quivhom
