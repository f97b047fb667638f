#pragma once

// Sparse exact linear algebra: matrices over a field K (rank, kernel bases,
// deterministic solving) and Smith normal form over Z. Pivot selection favors
// sparse rows; all tie-breaking is by (row, col) so results are reproducible.

#include "quivhom/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <type_traits>
#include <vector>

namespace quivhom {

template <class K>
using SparseVec = std::vector<std::pair<int, K>>;  // sorted by index, no zeros

template <class K>
void svec_add_scaled(SparseVec<K>& dst, const SparseVec<K>& src,
                     const std::type_identity_t<K>& c) {
  if (field<K>::is_zero(c)) return;
  SparseVec<K> out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      K v = src[j].second * c;
      if (!field<K>::is_zero(v)) out.emplace_back(src[j].first, v);
      ++j;
    } else {
      K v = dst[i].second + src[j].second * c;
      if (!field<K>::is_zero(v)) out.emplace_back(dst[i].first, v);
      ++i; ++j;
    }
  }
  dst = std::move(out);
}

template <class K>
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols, K one) : rows_(rows), cols_(cols), one_(one), row_(rows) {}

  static SparseMat identity(int n, K one) {
    SparseMat m(n, n, one);
    for (int i = 0; i < n; ++i) m.row_[i].emplace_back(i, one);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const K& one() const { return one_; }
  const SparseVec<K>& row(int r) const { return row_[r]; }

  void add(int r, int c, const K& v) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    if (field<K>::is_zero(v)) return;
    auto& rw = row_[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != rw.end() && it->first == c) {
      it->second += v;
      if (field<K>::is_zero(it->second)) rw.erase(it);
    } else {
      rw.insert(it, {c, v});
    }
  }
  void set(int r, int c, const K& v) {
    auto& rw = row_[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != rw.end() && it->first == c) rw.erase(it);
    if (!field<K>::is_zero(v)) add(r, c, v);
  }
  K get(int r, int c) const {
    const auto& rw = row_[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != rw.end() && it->first == c) return it->second;
    return field<K>::zero(one_);
  }
  long nnz() const {
    long n = 0;
    for (auto& r : row_) n += (long)r.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  SparseMat transpose() const {
    SparseMat t(cols_, rows_, one_);
    for (int r = 0; r < rows_; ++r)
      for (auto& [c, v] : row_[r]) t.row_[c].emplace_back(r, v);
    return t;
  }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    assert(a.cols_ == b.rows_);
    SparseMat out(a.rows_, b.cols_, a.one_);
    for (int r = 0; r < a.rows_; ++r) {
      SparseVec<K> acc;
      for (auto& [k, v] : a.row_[r]) svec_add_scaled(acc, b.row_[k], v);
      out.row_[r] = std::move(acc);
    }
    return out;
  }
  friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    SparseMat out = a;
    for (int r = 0; r < b.rows_; ++r) svec_add_scaled(out.row_[r], b.row_[r], a.one_);
    return out;
  }
  friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
    SparseMat out = a;
    for (int r = 0; r < b.rows_; ++r)
      svec_add_scaled(out.row_[r], b.row_[r], field<K>::neg(a.one_));
    return out;
  }
  SparseMat scaled(const K& c) const {
    SparseMat out(rows_, cols_, one_);
    if (field<K>::is_zero(c)) return out;
    for (int r = 0; r < rows_; ++r) {
      for (auto& [cidx, v] : row_[r]) {
        K w = v * c;
        if (!field<K>::is_zero(w)) out.row_[r].emplace_back(cidx, w);
      }
    }
    return out;
  }
  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ == b.row_;
  }

  std::vector<K> apply(const std::vector<K>& x) const {
    assert((int)x.size() == cols_);
    std::vector<K> y(rows_, field<K>::zero(one_));
    for (int r = 0; r < rows_; ++r)
      for (auto& [c, v] : row_[r]) y[r] += v * x[c];
    return y;
  }

  // columns of `cols` become a block starting at column offset
  void paste_block(const SparseMat& block, int row_off, int col_off) {
    for (int r = 0; r < block.rows_; ++r)
      for (auto& [c, v] : block.row_[r]) add(row_off + r, col_off + c, v);
  }

  SparseMat column(int c) const {
    SparseMat out(rows_, 1, one_);
    for (int r = 0; r < rows_; ++r) {
      K v = get(r, c);
      if (!field<K>::is_zero(v)) out.row_[r].emplace_back(0, v);
    }
    return out;
  }
  std::vector<K> column_vec(int c) const {
    std::vector<K> v(rows_, field<K>::zero(one_));
    for (int r = 0; r < rows_; ++r) v[r] = get(r, c);
    return v;
  }

 private:
  int rows_ = 0, cols_ = 0;
  K one_{};
  std::vector<SparseVec<K>> row_;
};

// Row echelon engine. Processes columns left to right; among candidate rows
// picks the sparsest (tie: smallest original row index). Keeps the applied
// row operations so fixed systems can be solved repeatedly.
template <class K>
class Echelon {
 public:
  // track_ops records the row operations so fixed systems can be solved
  // repeatedly; plain rank/kernel queries skip that work
  explicit Echelon(const SparseMat<K>& a, bool track_ops = true)
      : one_(a.one()), cols_(a.cols()), track_(track_ops) {
    int n = a.rows();
    rows_.reserve(n);
    if (track_) ops_.reserve(n);
    for (int r = 0; r < n; ++r) {
      rows_.push_back(a.row(r));
      if (track_) ops_.push_back({{r, field<K>::one(one_)}});
    }
    eliminate();
  }

  int rank() const { return (int)pivots_.size(); }
  const std::vector<std::pair<int, int>>& pivots() const { return pivots_; }  // (echelon row, col)

  // first solution of A x = b (free variables zero), if consistent
  std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
    if (!track_) throw std::logic_error("echelon built without operation tracking");
    // transform b by the recorded row operations
    int n = (int)rows_.size();
    std::vector<K> c(n, field<K>::zero(one_));
    for (int r = 0; r < n; ++r)
      for (auto& [j, v] : ops_[r]) c[r] += v * b[j];
    // rows beyond rank must vanish
    for (int r = rank(); r < n; ++r)
      if (!field<K>::is_zero(c[r])) return std::nullopt;
    std::vector<K> x(cols_, field<K>::zero(one_));
    for (int r = rank() - 1; r >= 0; --r) {
      int pc = pivots_[r].second;
      K val = c[r];
      for (auto& [col, v] : rows_[r])
        if (col != pc) val -= v * x[col];
      x[pc] = val * pivinv_[r];
    }
    return x;
  }

  bool in_column_span(const std::vector<K>& b) const { return solve(b).has_value(); }

  // columns spanning the kernel; one column per free variable, in column order
  SparseMat<K> kernel() const {
    std::vector<int> pivcol(cols_, -1);
    for (int r = 0; r < rank(); ++r) pivcol[pivots_[r].second] = r;
    std::vector<int> freecols;
    for (int c = 0; c < cols_; ++c)
      if (pivcol[c] < 0) freecols.push_back(c);
    SparseMat<K> ker(cols_, (int)freecols.size(), one_);
    for (int fi = 0; fi < (int)freecols.size(); ++fi) {
      int fc = freecols[fi];
      // back-substitute x[fc] = 1
      std::vector<K> x(cols_, field<K>::zero(one_));
      x[fc] = field<K>::one(one_);
      for (int r = rank() - 1; r >= 0; --r) {
        int pc = pivots_[r].second;
        K val = field<K>::zero(one_);
        for (auto& [col, v] : rows_[r])
          if (col != pc) val -= v * x[col];
        x[pc] = val * pivinv_[r];
      }
      for (int c = 0; c < cols_; ++c)
        if (!field<K>::is_zero(x[c])) ker.add(c, fi, x[c]);
    }
    return ker;
  }

 private:
  void eliminate() {
    int n = (int)rows_.size();
    std::vector<bool> used(n, false);
    for (int col = 0; col < cols_ && (int)pivots_.size() < n; ++col) {
      int best = -1;
      size_t best_nnz = 0;
      for (int r = 0; r < n; ++r) {
        if (used[r]) continue;
        const K* v = entry(r, col);
        if (!v) continue;
        if (best < 0 || rows_[r].size() < best_nnz) { best = r; best_nnz = rows_[r].size(); }
      }
      if (best < 0) continue;
      used[best] = true;
      K piv = *entry(best, col);
      K pinv = field<K>::inv(piv);
      for (int r = 0; r < n; ++r) {
        if (used[r] || r == best) continue;
        const K* v = entry(r, col);
        if (!v) continue;
        K fac = field<K>::neg(*v * pinv);
        svec_add_scaled(rows_[r], rows_[best], fac);
        if (track_) svec_add_scaled(ops_[r], ops_[best], fac);
      }
      pivots_.emplace_back(best, col);
      pivinv_.push_back(pinv);
    }
    // reorder: pivot rows first (in pivot order), the rest after
    std::vector<SparseVec<K>> nrows; nrows.reserve(n);
    std::vector<SparseVec<K>> nops; nops.reserve(n);
    std::vector<bool> placed(n, false);
    for (auto& pr : pivots_) placed[pr.first] = true;
    for (int i = 0; i < (int)pivots_.size(); ++i) {
      nrows.push_back(std::move(rows_[pivots_[i].first]));
      if (track_) nops.push_back(std::move(ops_[pivots_[i].first]));
      pivots_[i].first = i;
    }
    for (int r = 0; r < n; ++r) {
      if (!placed[r]) {
        nrows.push_back(std::move(rows_[r]));
        if (track_) nops.push_back(std::move(ops_[r]));
      }
    }
    rows_ = std::move(nrows);
    ops_ = std::move(nops);
  }

  const K* entry(int r, int col) const {
    const auto& rw = rows_[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != rw.end() && it->first == col) return &it->second;
    return nullptr;
  }

  K one_;
  int cols_;
  bool track_ = true;
  std::vector<SparseVec<K>> rows_;
  std::vector<SparseVec<K>> ops_;  // ops_[r] = row r of the transform U with E = U A
  std::vector<std::pair<int, int>> pivots_;
  std::vector<K> pivinv_;
};

template <class K>
int rank(const SparseMat<K>& a) {
  return Echelon<K>(a, false).rank();
}

template <class K>
SparseMat<K> kernel_basis(const SparseMat<K>& a) {
  return Echelon<K>(a, false).kernel();
}

// ---- Smith normal form over Z ----------------------------------------------

struct SnfResult {
  std::vector<Int> factors;  // d1 | d2 | ... | dr, all positive
  int rank() const { return (int)factors.size(); }
  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (auto& d : factors)
      if (d > 1) t.push_back(d);
    return t;
  }
};

inline SnfResult smith_normal_form(const SparseMat<Int>& m) {
  int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols, Int(0)));
  for (int r = 0; r < rows; ++r)
    for (auto& [c, v] : m.row(r)) a[r][c] = v;

  auto nonzero_in = [&](int t, int& br, int& bc) {
    bool found = false;
    Int best;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c) {
        if (a[r][c] == 0) continue;
        Int v = abs(a[r][c]);
        if (!found || v < best) { found = true; best = v; br = r; bc = c; }
      }
    return found;
  };

  SnfResult out;
  int t = 0;
  while (t < rows && t < cols) {
    int br, bc;
    if (!nonzero_in(t, br, bc)) break;
    std::swap(a[t], a[br]);
    for (int r = 0; r < rows; ++r) std::swap(a[r][t], a[r][bc]);
    bool again = true;
    while (again) {
      again = false;
      // clear column t
      for (int r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (int c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) { std::swap(a[t], a[r]); again = true; }
      }
      // clear row t
      for (int c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (int r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (int r = t; r < rows; ++r) std::swap(a[r][t], a[r][c]);
          again = true;
        }
      }
      if (again) continue;
      // pivot must divide the rest of the block
      for (int r = t + 1; r < rows && !again; ++r)
        for (int c = t + 1; c < cols && !again; ++c)
          if (a[r][c] % a[t][t] != 0) {
            for (int cc = t; cc < cols; ++cc) a[t][cc] += a[r][cc];
            again = true;
          }
    }
    if (a[t][t] < 0) a[t][t] = -a[t][t];
    out.factors.push_back(a[t][t]);
    ++t;
  }
  return out;
}

inline SparseMat<Rat> to_rat(const SparseMat<Int>& m) {
  SparseMat<Rat> out(m.rows(), m.cols(), Rat(1));
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) out.add(r, c, Rat(v));
  return out;
}

inline SparseMat<Fp> to_fp(const SparseMat<Int>& m, uint64_t p) {
  SparseMat<Fp> out(m.rows(), m.cols(), Fp(1, p));
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) out.add(r, c, int_to_fp(v, p));
  return out;
}

}  // namespace quivhom
