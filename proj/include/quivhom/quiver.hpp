#pragma once

// Quivers, paths and linear combinations of paths. Paths compose left to
// right: in a word a1 a2 ... an the arrow a1 is traversed first, so
// tgt(ai) = src(a(i+1)), src(w) = src(a1), tgt(w) = tgt(an).

#include "quivhom/scalar.hpp"

#include <map>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

namespace quivhom {

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// a theorem-level check failed; reported, not a crash
struct finding_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int src = -1, tgt = -1;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int n_vertices() const { return (int)vertices.size(); }
  int n_arrows() const { return (int)arrows.size(); }

  int vertex_index(const std::string& id) const {
    for (int i = 0; i < n_vertices(); ++i)
      if (vertices[i] == id) return i;
    throw validation_error("unknown vertex: " + id);
  }
  int arrow_index(const std::string& name) const {
    for (int i = 0; i < n_arrows(); ++i)
      if (arrows[i].name == name) return i;
    throw validation_error("unknown arrow: " + name);
  }

  void validate() const {
    for (int i = 0; i < n_vertices(); ++i)
      for (int j = i + 1; j < n_vertices(); ++j)
        if (vertices[i] == vertices[j])
          throw validation_error("duplicate vertex id: " + vertices[i]);
    for (int i = 0; i < n_arrows(); ++i) {
      const auto& a = arrows[i];
      if (a.src < 0 || a.src >= n_vertices() || a.tgt < 0 || a.tgt >= n_vertices())
        throw validation_error("arrow endpoints out of range: " + a.name);
      for (int j = i + 1; j < n_arrows(); ++j)
        if (arrows[j].name == a.name)
          throw validation_error("duplicate arrow name: " + a.name);
    }
  }

  // connected components of the underlying (undirected) graph
  std::vector<int> components() const {
    std::vector<int> comp(n_vertices(), -1);
    int nc = 0;
    for (int s = 0; s < n_vertices(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& a : arrows) {
          int o = -1;
          if (a.src == v) o = a.tgt;
          else if (a.tgt == v) o = a.src;
          if (o >= 0 && comp[o] < 0) { comp[o] = nc; stack.push_back(o); }
        }
      }
      ++nc;
    }
    return comp;
  }
  int n_components() const {
    auto c = components();
    int m = 0;
    for (int x : c) m = std::max(m, x + 1);
    return c.empty() ? 0 : m;
  }
  bool connected() const { return n_components() <= 1; }

  bool acyclic() const {
    // DFS over arrow directions
    std::vector<int> state(n_vertices(), 0);
    std::vector<std::vector<int>> out(n_vertices());
    for (const auto& a : arrows) out[a.src].push_back(a.tgt);
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < n_vertices(); ++s) {
      if (state[s]) continue;
      stack.push_back({s, 0});
      state[s] = 1;
      while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < out[v].size()) {
          int w = out[v][i++];
          if (state[w] == 1) return false;
          if (state[w] == 0) { state[w] = 1; stack.push_back({w, 0}); }
        } else {
          state[v] = 2;
          stack.pop_back();
        }
      }
    }
    return true;
  }
};

struct Path {
  int src = -1, tgt = -1;
  std::vector<int> arrows;  // arrow indices, in traversal order

  static Path stationary(int v) { return Path{v, v, {}}; }
  int length() const { return (int)arrows.size(); }

  bool composable_with(const Path& q) const { return tgt == q.src; }
  Path concat(const Path& q) const {
    Path r{src, q.tgt, arrows};
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
  }

  friend bool operator==(const Path& a, const Path& b) {
    return a.src == b.src && a.arrows == b.arrows;
  }
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
};

// degree-lexicographic: by length, then arrow sequence, then source vertex
// (the latter only separates stationary paths)
struct PathLess {
  bool operator()(const Path& a, const Path& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return a.src < b.src;
  }
};

inline std::string path_str(const Quiver& q, const Path& p) {
  if (p.length() == 0) return "e_" + q.vertices[p.src];
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += q.arrows[p.arrows[i]].name;
  }
  return s;
}

template <class K>
using Element = std::map<Path, K, PathLess>;  // no zero coefficients stored

template <class K>
void elem_add(Element<K>& dst, const Path& p, const std::type_identity_t<K>& c) {
  if (field<K>::is_zero(c)) return;
  auto it = dst.find(p);
  if (it == dst.end()) {
    dst.emplace(p, c);
  } else {
    it->second += c;
    if (field<K>::is_zero(it->second)) dst.erase(it);
  }
}

template <class K>
void elem_add_scaled(Element<K>& dst, const Element<K>& src,
                     const std::type_identity_t<K>& c) {
  for (auto& [p, v] : src) elem_add(dst, p, v * c);
}

// true when all terms are paths from one common source to one common target
template <class K>
bool elem_homogeneous(const Element<K>& e) {
  if (e.empty()) return true;
  int s = e.begin()->first.src, t = e.begin()->first.tgt;
  for (auto& [p, v] : e)
    if (p.src != s || p.tgt != t) return false;
  return true;
}

}  // namespace quivhom
