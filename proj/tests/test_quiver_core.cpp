#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quivhom/doc.hpp"

#include <random>
#include <set>

using namespace quivhom;

namespace {

QuiverDoc corpus(const std::string& name) {
  return load_quiver_doc(std::string(QUIVHOM_CORPUS_DIR) + "/" + name + ".json");
}

// oracle: explore every one-step reduction (any rule, any position, any term)
// and confirm a single normal form is reachable
struct ConfluenceOracle {
  const Quiver& qv;
  const ReductionSystem<Rat>& rs;
  std::set<std::string> normal_forms;
  int states = 0;

  static std::string key(const Element<Rat>& e) {
    std::string s;
    for (auto& [p, c] : e) {
      s += std::to_string(p.src) + ":";
      for (int a : p.arrows) s += std::to_string(a) + ",";
      s += "=" + c.get_str() + ";";
    }
    return s;
  }

  void explore(const Element<Rat>& e, std::set<std::string>& seen) {
    if (++states > 20000) throw std::runtime_error("oracle state cap");
    auto k = key(e);
    if (seen.count(k)) return;
    seen.insert(k);
    bool any = false;
    for (auto& [p, c] : e) {
      for (size_t ri = 0; ri < rs.rules.size(); ++ri) {
        const auto& rule = rs.rules[ri];
        int n = p.length(), m = rule.lead.length();
        for (int pos = 0; pos + m <= n; ++pos) {
          bool match = true;
          for (int j = 0; j < m; ++j)
            if (p.arrows[pos + j] != rule.lead.arrows[j]) { match = false; break; }
          if (!match) continue;
          any = true;
          Element<Rat> next = e;
          next.erase(p);
          Path prefix{p.src, pos ? qv.arrows[p.arrows[pos - 1]].tgt : p.src, {}};
          prefix.arrows.assign(p.arrows.begin(), p.arrows.begin() + pos);
          Path suffix{rule.lead.tgt, p.tgt, {}};
          suffix.arrows.assign(p.arrows.begin() + pos + m, p.arrows.end());
          for (auto& [w, cw] : rule.rhs)
            elem_add(next, prefix.concat(w).concat(suffix), cw * c);
          explore(next, seen);
        }
      }
    }
    if (!any) normal_forms.insert(k);
  }
};

void check_confluent_paths(const Algebra<Rat>& a) {
  // every path of length <= nil_bound has a unique normal form under any
  // reduction order
  std::vector<Path> all;
  for (int v = 0; v < a.quiver.n_vertices(); ++v) all.push_back(Path::stationary(v));
  size_t lo = 0;
  for (int len = 1; len <= a.nil_bound; ++len) {
    size_t hi = all.size();
    for (size_t i = lo; i < hi; ++i)
      for (int ai = 0; ai < a.quiver.n_arrows(); ++ai) {
        if (a.quiver.arrows[ai].src != all[i].tgt) continue;
        Path ext = all[i];
        ext.arrows.push_back(ai);
        ext.tgt = a.quiver.arrows[ai].tgt;
        all.push_back(ext);
      }
    lo = hi;
  }
  for (const auto& p : all) {
    ConfluenceOracle oracle{a.quiver, a.rs, {}, 0};
    Element<Rat> e;
    elem_add(e, p, Rat(1));
    std::set<std::string> seen;
    oracle.explore(e, seen);
    CHECK(oracle.normal_forms.size() == 1);
  }
}

}  // namespace

TEST_CASE("two_cycle parses and builds: dim 4, monomial confluent system") {
  auto doc = corpus("two_cycle");
  CHECK(doc.quiver.n_vertices() == 2);
  CHECK(doc.quiver.n_arrows() == 2);
  CHECK(doc.relations.size() == 2);
  auto a = rational_algebra_from_doc(doc);
  CHECK(a.rs.rules.size() == 2);
  CHECK(a.nil_bound == 2);
  CHECK(a.dim() == 4);
  // basis: e_1, e_2, alpha, beta
  std::set<std::string> names;
  for (auto& p : a.basis) names.insert(path_str(a.quiver, p));
  CHECK(names == std::set<std::string>{"e_1", "e_2", "alpha", "beta"});
  check_confluent_paths(a);
}

TEST_CASE("point and looped_line documents") {
  auto pt = rational_algebra_from_doc(corpus("point"));
  CHECK(pt.dim() == 1);
  auto ll = corpus("looped_line");
  CHECK(ll.quiver.n_vertices() == 4);
  CHECK(ll.quiver.n_arrows() == 5);
  CHECK(ll.relations.size() == 5);
  auto a = rational_algebra_from_doc(ll);
  CHECK(a.dim() == 10);  // 4 vertices + 5 arrows + gamma*delta
  check_confluent_paths(a);
}

TEST_CASE("double_fan: dim 15, corner of dim 7") {
  auto a = rational_algebra_from_doc(corpus("double_fan"));
  CHECK(a.dim() == 15);
  CHECK(a.nil_bound == 2);
  IdempotentSet s{a.quiver.vertex_index("1"), a.quiver.vertex_index("2"),
                  a.quiver.vertex_index("3"), a.quiver.vertex_index("4")};
  std::sort(s.begin(), s.end());
  auto c = corner_algebra(a, s);
  CHECK(c.algebra.dim() == 7);
  // full vertex set gives the algebra back
  IdempotentSet all;
  for (int v = 0; v < a.quiver.n_vertices(); ++v) all.push_back(v);
  CHECK(corner_algebra(a, all).algebra.dim() == a.dim());
}

TEST_CASE("four_cycle corner on {2,4} is semisimple of dim 2") {
  auto a = rational_algebra_from_doc(corpus("four_cycle"));
  CHECK(a.dim() == 8);
  IdempotentSet s{a.quiver.vertex_index("2"), a.quiver.vertex_index("4")};
  std::sort(s.begin(), s.end());
  auto c = corner_algebra(a, s);
  CHECK(c.algebra.dim() == 2);
  CHECK(c.algebra.quiver.n_arrows() == 0);
}

TEST_CASE("glued_pair completion is confluent with two rules") {
  auto a = rational_algebra_from_doc(corpus("glued_pair"));
  CHECK(a.rs.rules.size() == 2);
  CHECK(a.nil_bound == 3);
  CHECK(a.dim() == 10);
  check_confluent_paths(a);
  // every path has a unique normal form; reduce along all rule orders is the
  // oracle above, and the product table must be semi-normed here
  CHECK(semi_normed_basis(a).has_value());
}

TEST_CASE("double_diamond completion handles binomial relations") {
  auto a = rational_algebra_from_doc(corpus("double_diamond"));
  CHECK(a.nil_bound >= 3);
  check_confluent_paths(a);
  // the commutativity square collapses parallel length-2 paths
  int v4 = a.quiver.vertex_index("4"), v1 = a.quiver.vertex_index("1");
  CHECK(a.hom_dim(v4, v1) == 1);
  int v6 = a.quiver.vertex_index("6"), v3 = a.quiver.vertex_index("3");
  CHECK(a.hom_dim(v6, v3) == 1);  // the stray path d1*g*b2 survives
  CHECK(a.schurian());
}

TEST_CASE("semi-normed basis verdicts") {
  // monomial algebras always succeed with lambda = 1
  auto mono = rational_algebra_from_doc(corpus("double_fan"));
  auto t = semi_normed_basis(mono);
  REQUIRE(t.has_value());
  for (int i = 0; i < mono.dim(); ++i)
    for (int j = 0; j < mono.dim(); ++j)
      if (t->at(i, j) >= 0) CHECK(t->coeff(i, j) == Rat(1));
  // a relation forcing a two-term normal form fails
  auto bad = rational_algebra_from_doc(corpus("nonsemi"));
  std::string why;
  CHECK(!semi_normed_basis(bad, &why).has_value());
  CHECK(why.find("2 basis terms") != std::string::npos);
}

TEST_CASE("normal form idempotence on random elements") {
  auto a = rational_algebra_from_doc(corpus("double_diamond"));
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Element<Rat> e;
    for (int k = 0; k < 4; ++k) {
      const Path& p = a.basis[rng() % a.dim()];
      // also include reducible words by concatenating basis paths
      elem_add(e, p, Rat((long)(rng() % 5) - 2));
      const Path& q = a.basis[rng() % a.dim()];
      if (p.tgt == q.src) elem_add(e, p.concat(q), Rat((long)(rng() % 5) - 2));
    }
    auto nf = a.rs.normal_form(e, a.quiver);
    CHECK(a.rs.normal_form(nf, a.quiver) == nf);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_quiver_doc("{"), validation_error);
  // relation with a length-1 path
  std::string bad = R"({"vertices":["1","2"],
    "arrows":[{"name":"a","src":"1","tgt":"2"}],
    "relations":[[{"coeff":"1","path":["a"]}]]})";
  CHECK_THROWS_AS(rational_algebra_from_doc(parse_quiver_doc(bad)), validation_error);
  // non-parallel paths in one relation
  std::string mixed = R"({"vertices":["1","2","3"],
    "arrows":[{"name":"a","src":"1","tgt":"2"},{"name":"b","src":"2","tgt":"3"},
              {"name":"c","src":"2","tgt":"2"}],
    "relations":[[{"coeff":"1","path":["a","b"]},{"coeff":"1","path":["a","c"]}]]})";
  CHECK_THROWS_AS(rational_algebra_from_doc(parse_quiver_doc(mixed)), validation_error);
  // unknown arrow name
  std::string unk = R"({"vertices":["1"],"arrows":[],
    "relations":[[{"coeff":"1","path":["zz","zz"]}]]})";
  CHECK_THROWS_AS(rational_algebra_from_doc(parse_quiver_doc(unk)), validation_error);
  // cycle without relations is not admissible at any cap
  std::string cyc = R"({"vertices":["1"],
    "arrows":[{"name":"x","src":"1","tgt":"1"}],"relations":[]})";
  CHECK_THROWS_AS(rational_algebra_from_doc(parse_quiver_doc(cyc)), budget_error);
}

TEST_CASE("prime field documents") {
  auto doc = corpus("two_cycle");
  auto a = algebra_from_doc<Fp>(doc, Fp(1, 5));
  CHECK(a.dim() == 4);
}

TEST_CASE("corner on a non-convex vertex set is rejected") {
  // the surviving path gamma*delta runs 3 -> 2 -> 1, so {1, 3} is not
  // convex: a basis path with endpoints inside passes through vertex 2
  auto a = rational_algebra_from_doc(corpus("looped_line"));
  IdempotentSet bad{a.quiver.vertex_index("1"), a.quiver.vertex_index("3")};
  std::sort(bad.begin(), bad.end());
  CHECK_THROWS_AS(corner_algebra(a, bad), validation_error);
}
