#pragma once

// Chain complexes over a field, cochain duals, integer complexes (Smith
// normal form homology), first-quadrant bicomplexes with total complexes,
// and the long-exact-sequence machinery: verified short exact sequences of
// complexes, induced maps on homology, and connecting maps computed by
// explicit lift-and-chase with deterministic preimage selection.

#include "quivhom/sparse.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace quivhom {

// d[n] : C_n -> C_{n-1} for 1 <= n <= top(); homology reliable up to top()-1
template <class K>
struct ChainComplex {
  std::vector<long> dims;
  std::vector<SparseMat<K>> d;  // d[0] is a placeholder 0 x dims[0] matrix
  K one{};

  int top() const { return (int)dims.size() - 1; }

  void validate() const {
    for (int n = 1; n <= top(); ++n) {
      if (d[n].rows() != dims[n - 1] || d[n].cols() != dims[n])
        throw std::logic_error("chain complex: differential shape mismatch");
      if (n >= 2 && !(d[n - 1] * d[n]).is_zero())
        throw std::logic_error("chain complex: d*d != 0 at degree " + std::to_string(n));
    }
  }

  long homology_dim(int n) const {
    if (n < 0 || n > top() - 1)
      throw std::out_of_range("homology degree outside the represented range; extend the complex");
    long ker = (n == 0) ? dims[0] : dims[n] - rank(d[n]);
    return ker - rank(d[n + 1]);
  }

  std::vector<long> homology_dims(int n_max) const {
    std::vector<long> h;
    for (int n = 0; n <= n_max; ++n) h.push_back(homology_dim(n));
    return h;
  }

  long euler_char_spaces() const {
    long x = 0;
    for (int n = 0; n <= top(); ++n) x += (n % 2 ? -1 : 1) * dims[n];
    return x;
  }
};

template <class K>
ChainComplex<K> zero_padded(const ChainComplex<K>& c, int new_top) {
  ChainComplex<K> out = c;
  while (out.top() < new_top) {
    int n = out.top() + 1;
    out.dims.push_back(0);
    out.d.push_back(SparseMat<K>(out.dims[n - 1], 0, c.one));
  }
  return out;
}

// delta[n] : C^n -> C^{n+1} for 0 <= n < top(); cohomology reliable up to top()-1
template <class K>
struct CochainComplex {
  std::vector<long> dims;
  std::vector<SparseMat<K>> delta;  // delta[n] for n in 0..top()-1
  K one{};

  int top() const { return (int)dims.size() - 1; }

  void validate() const {
    for (int n = 0; n + 1 <= top(); ++n) {
      if (delta[n].rows() != dims[n + 1] || delta[n].cols() != dims[n])
        throw std::logic_error("cochain complex: differential shape mismatch");
      if (n + 2 <= top() && !(delta[n + 1] * delta[n]).is_zero())
        throw std::logic_error("cochain complex: delta*delta != 0");
    }
  }

  long cohomology_dim(int n) const {
    if (n < 0 || n > top() - 1)
      throw std::out_of_range("cohomology degree outside the represented range");
    long ker = dims[n] - rank(delta[n]);
    long im = (n == 0) ? 0 : rank(delta[n - 1]);
    return ker - im;
  }

  std::vector<long> cohomology_dims(int n_max) const {
    std::vector<long> h;
    for (int n = 0; n <= n_max; ++n) h.push_back(cohomology_dim(n));
    return h;
  }
};

// Hom_k(-, k): transposed differentials, same total degree range
template <class K>
CochainComplex<K> dualize(const ChainComplex<K>& c) {
  CochainComplex<K> out;
  out.one = c.one;
  out.dims = c.dims;
  out.delta.clear();
  for (int n = 0; n + 1 <= c.top(); ++n) out.delta.push_back(c.d[n + 1].transpose());
  return out;
}

// a cochain complex read backwards is a chain complex: C_n := C^{T-n}
template <class K>
ChainComplex<K> flip(const CochainComplex<K>& c) {
  ChainComplex<K> out;
  out.one = c.one;
  int t = c.top();
  out.dims.resize(t + 1);
  out.d.resize(t + 1, SparseMat<K>(0, 0, c.one));
  for (int n = 0; n <= t; ++n) out.dims[n] = c.dims[t - n];
  out.d[0] = SparseMat<K>(0, out.dims[0], c.one);
  for (int n = 1; n <= t; ++n) out.d[n] = c.delta[t - n];
  return out;
}

// ---- integer chain complexes ----------------------------------------------

struct AbelianGroup {
  long rank = 0;
  std::vector<Int> torsion;  // divisibility chain, entries > 1
  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
      os << "Z";
      if (rank > 1) os << "^" << rank;
      first = false;
    }
    for (auto& t : torsion) {
      if (!first) os << " + ";
      os << "Z/" << t.get_str();
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

struct IntChainComplex {
  std::vector<long> dims;
  std::vector<SparseMat<Int>> d;

  int top() const { return (int)dims.size() - 1; }

  void validate() const {
    for (int n = 2; n <= top(); ++n)
      if (!(d[n - 1] * d[n]).is_zero())
        throw std::logic_error("integer complex: d*d != 0");
  }

  // H_n = Z^{dim - rank d_n - rank d_{n+1}} + torsion(d_{n+1})
  AbelianGroup homology(int n) const {
    if (n < 0 || n > top() - 1)
      throw std::out_of_range("homology degree outside the represented range");
    auto s_in = smith_normal_form(d[n + 1]);
    long rk_out = (n == 0) ? 0 : smith_normal_form(d[n]).rank();
    AbelianGroup g;
    g.rank = dims[n] - rk_out - s_in.rank();
    g.torsion = s_in.torsion();
    return g;
  }

  ChainComplex<Rat> over_rat() const {
    ChainComplex<Rat> c;
    c.one = Rat(1);
    c.dims = dims;
    for (auto& m : d) c.d.push_back(to_rat(m));
    return c;
  }
  ChainComplex<Fp> over_fp(uint64_t p) const {
    ChainComplex<Fp> c;
    c.one = Fp(1, p);
    c.dims = dims;
    for (auto& m : d) c.d.push_back(to_fp(m, p));
    return c;
  }
};

// ---- bicomplexes ------------------------------------------------------------

// first quadrant, 0 <= p <= pmax, 0 <= q <= qmax;
// dh[p][q] : (p,q) -> (p-1,q), dv[p][q] : (p,q) -> (p,q-1),
// with dv dv = dh dh = dv dh + dh dv = 0
template <class K>
struct Bicomplex {
  int pmax = 0, qmax = 0;
  std::vector<std::vector<long>> dims;
  std::vector<std::vector<SparseMat<K>>> dh, dv;
  K one{};

  void validate() const {
    for (int p = 0; p <= pmax; ++p)
      for (int q = 0; q <= qmax; ++q) {
        if (p >= 2 && !(dh[p - 1][q] * dh[p][q]).is_zero())
          throw std::logic_error("bicomplex: dh*dh != 0");
        if (q >= 2 && !(dv[p][q - 1] * dv[p][q]).is_zero())
          throw std::logic_error("bicomplex: dv*dv != 0");
        if (p >= 1 && q >= 1) {
          auto anti = dv[p - 1][q] * dh[p][q] + dh[p][q - 1] * dv[p][q];
          if (!anti.is_zero()) throw std::logic_error("bicomplex: dv dh + dh dv != 0");
        }
      }
  }

  // antidiagonal cells at total degree n, ordered by ascending p
  std::vector<std::pair<int, int>> cells(int n) const {
    std::vector<std::pair<int, int>> cs;
    for (int p = std::max(0, n - qmax); p <= std::min(n, pmax); ++p) cs.push_back({p, n - p});
    return cs;
  }

  // (Tot C)_n = ⊕_{p+q=n} C_{p,q}, blocks ordered by ascending p; d = dh + dv
  ChainComplex<K> total(int top) const {
    if (top > pmax + qmax)
      throw std::out_of_range("insufficient truncation for requested total degree");
    auto cells = [&](int n) { return this->cells(n); };
    ChainComplex<K> out;
    out.one = one;
    out.dims.resize(top + 1);
    out.d.resize(top + 1, SparseMat<K>(0, 0, one));
    std::vector<std::vector<long>> offs(top + 1);
    for (int n = 0; n <= top; ++n) {
      long off = 0;
      for (auto [p, q] : cells(n)) {
        offs[n].push_back(off);
        off += dims[p][q];
      }
      out.dims[n] = off;
    }
    out.d[0] = SparseMat<K>(0, out.dims[0], one);
    for (int n = 1; n <= top; ++n) {
      SparseMat<K> m((int)out.dims[n - 1], (int)out.dims[n], one);
      auto src_cells = cells(n), dst_cells = cells(n - 1);
      auto dst_off = [&](int p, int q) -> long {
        for (size_t i = 0; i < dst_cells.size(); ++i)
          if (dst_cells[i] == std::make_pair(p, q)) return offs[n - 1][i];
        return -1;
      };
      for (size_t i = 0; i < src_cells.size(); ++i) {
        auto [p, q] = src_cells[i];
        long so = offs[n][i];
        if (p >= 1) {
          long off = dst_off(p - 1, q);
          if (off >= 0) m.paste_block(dh[p][q], (int)off, (int)so);
        }
        if (q >= 1) {
          long off = dst_off(p, q - 1);
          if (off >= 0) m.paste_block(dv[p][q], (int)off, (int)so);
        }
      }
      out.d[n] = std::move(m);
    }
    return out;
  }
};

// ---- homology spaces and induced maps ---------------------------------------

// Representatives of H_n = ker(d_out) / im(d_in), with class coordinates via
// deterministic solves against [image generators | chosen representatives].
template <class K>
class HomologySpace {
 public:
  // d_out: C_n -> C_{n-1} (empty allowed), d_in: C_{n+1} -> C_n
  HomologySpace(long dim_n, const SparseMat<K>& d_out, const SparseMat<K>& d_in, K one)
      : one_(one), space_dim_(dim_n) {
    SparseMat<K> ker = d_out.rows() == 0 && d_out.cols() == (int)dim_n
                           ? SparseMat<K>::identity((int)dim_n, one)
                           : kernel_basis(d_out);
    // columns of [d_in | ker]: image first, then kernel columns that extend it
    SparseMat<K> comb((int)dim_n, d_in.cols() + ker.cols(), one);
    comb.paste_block(d_in, 0, 0);
    comb.paste_block(ker, 0, d_in.cols());
    Echelon<K> ech(comb);
    std::vector<bool> pivot_col(comb.cols(), false);
    for (auto& [r, c] : ech.pivots()) pivot_col[c] = true;
    long im_rank = 0;
    for (int c = 0; c < d_in.cols(); ++c)
      if (pivot_col[c]) ++im_rank;
    for (int c = 0; c < ker.cols(); ++c)
      if (pivot_col[d_in.cols() + c]) rep_cols_.push_back(c);
    reps_ = SparseMat<K>((int)dim_n, (int)rep_cols_.size(), one);
    for (size_t i = 0; i < rep_cols_.size(); ++i)
      reps_.paste_block(ker.column(rep_cols_[i]), 0, (int)i);
    // the solver for class coordinates: [im gens | reps]
    basis_ = SparseMat<K>((int)dim_n, d_in.cols() + (int)rep_cols_.size(), one);
    basis_.paste_block(d_in, 0, 0);
    basis_.paste_block(reps_, 0, d_in.cols());
    solver_ = std::make_shared<Echelon<K>>(basis_);
    n_im_cols_ = d_in.cols();
    (void)im_rank;
  }

  long dim() const { return (long)rep_cols_.size(); }
  long space_dim() const { return space_dim_; }
  const SparseMat<K>& reps() const { return reps_; }

  // class coordinates of a cycle
  std::vector<K> coords(const std::vector<K>& cycle) const {
    auto x = solver_->solve(cycle);
    if (!x) throw std::logic_error("vector is not a cycle modulo boundaries");
    std::vector<K> out(dim(), field<K>::zero(one_));
    for (long i = 0; i < dim(); ++i) out[i] = (*x)[n_im_cols_ + i];
    return out;
  }

 private:
  K one_;
  long space_dim_ = 0;
  std::vector<int> rep_cols_;
  SparseMat<K> reps_;
  SparseMat<K> basis_;
  std::shared_ptr<Echelon<K>> solver_;
  long n_im_cols_ = 0;
};

template <class K>
HomologySpace<K> homology_space(const ChainComplex<K>& c, int n) {
  if (n < 0 || n > c.top() - 1) throw std::out_of_range("homology space degree out of range");
  SparseMat<K> d_out = (n == 0) ? SparseMat<K>(0, (int)c.dims[0], c.one) : c.d[n];
  return HomologySpace<K>(c.dims[n], d_out, c.d[n + 1], c.one);
}

// matrix of the induced map on homology, in representative coordinates
template <class K>
SparseMat<K> induced_map(const HomologySpace<K>& src, const HomologySpace<K>& dst,
                         const SparseMat<K>& chain_map) {
  SparseMat<K> out((int)dst.dim(), (int)src.dim(), chain_map.one());
  for (long j = 0; j < src.dim(); ++j) {
    auto v = chain_map.apply(src.reps().column_vec((int)j));
    auto cls = dst.coords(v);
    for (long i = 0; i < dst.dim(); ++i) out.add((int)i, (int)j, cls[i]);
  }
  return out;
}

// ---- short exact sequences of complexes and their LES -----------------------

template <class K>
struct ChainMap {
  std::vector<SparseMat<K>> f;  // f[n] for 0..top
};

struct SesFailure {
  int degree = -1;
  std::string what;
};

template <class K>
std::optional<SesFailure> verify_ses(const ChainComplex<K>& a, const ChainComplex<K>& b,
                                     const ChainComplex<K>& c, const ChainMap<K>& i,
                                     const ChainMap<K>& p) {
  int top = std::min({a.top(), b.top(), c.top()});
  for (int n = 0; n <= top; ++n) {
    if (rank(i.f[n]) != (int)a.dims[n]) return SesFailure{n, "inclusion not injective"};
    if (rank(p.f[n]) != (int)c.dims[n]) return SesFailure{n, "projection not surjective"};
    if (!(p.f[n] * i.f[n]).is_zero()) return SesFailure{n, "composite p∘i nonzero"};
    if (rank(i.f[n]) + rank(p.f[n]) != (int)b.dims[n])
      return SesFailure{n, "kernel of p differs from image of i"};
    // chain map squares
    if (n >= 1) {
      if (!(b.d[n] * i.f[n] - i.f[n - 1] * a.d[n]).is_zero())
        return SesFailure{n, "inclusion does not commute with differentials"};
      if (!(c.d[n] * p.f[n] - p.f[n - 1] * b.d[n]).is_zero())
        return SesFailure{n, "projection does not commute with differentials"};
    }
  }
  return std::nullopt;
}

struct LesPosition {
  int degree;
  std::string at;  // "A", "B" or "C"
  long dim_in, dim_here, dim_out;
  long rank_in, rank_out;
  bool exact;
};

struct LesReport {
  std::vector<long> dim_a, dim_b, dim_c;  // homology dims per degree 0..n_max
  std::vector<long> connecting_rank;      // rank of H_n(C) -> H_{n-1}(A), index n
  std::vector<LesPosition> positions;
  bool ses_ok = true;
  std::string ses_failure;
  bool exact = true;
};

// Homology spaces, induced maps and connecting maps of a verified SES of
// complexes; the coordinates are deterministic functions of the complexes,
// so maps built from different LesData instances over the same complexes
// compose coherently.
template <class K>
struct LesData {
  std::vector<HomologySpace<K>> ha, hb, hc;
  std::vector<SparseMat<K>> mi, mp;  // induced maps, degrees 0..n_max
  std::vector<SparseMat<K>> del;     // del[n-1] : H_n(C) -> H_{n-1}(A)
  int n_max = 0;

  LesData(const ChainComplex<K>& a, const ChainComplex<K>& b, const ChainComplex<K>& c,
          const ChainMap<K>& i, const ChainMap<K>& p, int nmax)
      : n_max(nmax) {
    for (int n = 0; n <= n_max; ++n) {
      ha.push_back(homology_space(a, n));
      hb.push_back(homology_space(b, n));
      hc.push_back(homology_space(c, n));
    }
    for (int n = 0; n <= n_max; ++n) {
      mi.push_back(induced_map(ha[n], hb[n], i.f[n]));
      mp.push_back(induced_map(hb[n], hc[n], p.f[n]));
    }
    // connecting: lift a C-cycle through p, push down with d, pull back through i
    for (int n = 1; n <= n_max; ++n) {
      Echelon<K> solp(p.f[n]);
      Echelon<K> soli(i.f[n - 1]);
      SparseMat<K> m((int)ha[n - 1].dim(), (int)hc[n].dim(), b.one);
      for (long j = 0; j < hc[n].dim(); ++j) {
        auto z = hc[n].reps().column_vec((int)j);
        auto lift = solp.solve(z);
        if (!lift) throw std::logic_error("snake: projection lift failed");
        auto db = b.d[n].apply(*lift);
        auto back = soli.solve(db);
        if (!back) throw std::logic_error("snake: boundary not in the subcomplex");
        if (n >= 2) {
          auto da = a.d[n - 1].apply(*back);
          for (auto& v : da)
            if (!field<K>::is_zero(v)) throw std::logic_error("snake: chased vector not a cycle");
        }
        auto cls = ha[n - 1].coords(*back);
        for (long r = 0; r < ha[n - 1].dim(); ++r) m.add((int)r, (int)j, cls[r]);
      }
      del.push_back(std::move(m));
    }
  }
};

// 0 -> A -> B -> C -> 0 must hold degreewise; reports homology in degrees
// 0..n_max and checks exactness of the long sequence there.
template <class K>
LesReport les_from_ses(const ChainComplex<K>& a, const ChainComplex<K>& b,
                       const ChainComplex<K>& c, const ChainMap<K>& i, const ChainMap<K>& p,
                       int n_max) {
  LesReport rep;
  if (auto fail = verify_ses(a, b, c, i, p)) {
    rep.ses_ok = false;
    rep.exact = false;
    rep.ses_failure = "degree " + std::to_string(fail->degree) + ": " + fail->what;
    return rep;
  }
  LesData<K> data(a, b, c, i, p, n_max);
  auto& ha = data.ha;
  auto& hb = data.hb;
  auto& hc = data.hc;
  auto& mi = data.mi;
  auto& mp = data.mp;
  auto& del = data.del;
  for (int n = 0; n <= n_max; ++n) {
    rep.dim_a.push_back(ha[n].dim());
    rep.dim_b.push_back(hb[n].dim());
    rep.dim_c.push_back(hc[n].dim());
  }
  rep.connecting_rank.assign(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) rep.connecting_rank[n] = rank(del[n - 1]);

  auto check_exact = [&](int degree, const std::string& at, const SparseMat<K>& fin,
                         const SparseMat<K>& fout, long dim_here) {
    bool composite_zero = (fout * fin).is_zero();
    bool exact = composite_zero && (rank(fin) == dim_here - rank(fout));
    rep.positions.push_back(LesPosition{degree, at, fin.cols(), dim_here, fout.rows(),
                                        rank(fin), rank(fout), exact});
    if (!exact) rep.exact = false;
  };
  for (int n = n_max; n >= 0; --n) {
    // at H_n(B): im i* = ker p*
    check_exact(n, "B", mi[n], mp[n], hb[n].dim());
    // at H_n(C): im p* = ker ∂ (at n = 0 the sequence ends: p* onto)
    if (n >= 1) {
      check_exact(n, "C", mp[n], del[n - 1], hc[n].dim());
    } else {
      bool onto = rank(mp[0]) == hc[0].dim();
      rep.positions.push_back(
          LesPosition{0, "C", mp[0].cols(), hc[0].dim(), 0, rank(mp[0]), 0, onto});
      if (!onto) rep.exact = false;
    }
    // at H_{n-1}(A): im ∂ = ker i*
    if (n >= 1) check_exact(n - 1, "A", del[n - 1], mi[n - 1], ha[n - 1].dim());
  }
  return rep;
}

// exactness of U --fin--> V --fout--> W at V (composite must vanish)
template <class K>
bool exact_at(const SparseMat<K>& fin, const SparseMat<K>& fout) {
  if (fin.rows() != fout.cols()) throw std::logic_error("exact_at: shape mismatch");
  if (!(fout * fin).is_zero()) return false;
  return rank(fin) == fin.rows() - rank(fout);
}

// plain-text dump: degree header + COO triplets (debugging / --dump-complex)
template <class K>
std::string dump_complex(const ChainComplex<K>& c) {
  std::ostringstream os;
  for (int n = 0; n <= c.top(); ++n) {
    os << "degree " << n << " dim " << c.dims[n] << "\n";
    if (n >= 1) {
      os << "d " << n << " rows " << c.d[n].rows() << " cols " << c.d[n].cols() << "\n";
      for (int r = 0; r < c.d[n].rows(); ++r)
        for (auto& [col, v] : c.d[n].row(r))
          os << r << " " << col << " " << field<K>::str(v) << "\n";
    }
  }
  return os.str();
}

}  // namespace quivhom
