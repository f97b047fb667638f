#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quivhom/doc.hpp"
#include "quivhom/hochschild.hpp"

using namespace quivhom;

namespace {

QuiverDoc corpus(const std::string& name) {
  return load_quiver_doc(std::string(QUIVHOM_CORPUS_DIR) + "/" + name + ".json");
}

struct Setup {
  Algebra<Rat> a;
  BlockE e;
  Bimodule<Rat> r;
  Setup(const std::string& name)
      : a(rational_algebra_from_doc(corpus(name))),
        e(BlockE::vertex_span(a.quiver)),
        r(regular_bimodule(a)) {}
};

}  // namespace

TEST_CASE("regular and dual bimodules satisfy the axioms") {
  for (auto name : {"two_cycle", "looped_line", "glued_pair"}) {
    Setup s(name);
    validate_bimodule(s.a, s.r);
    auto d = dual_bimodule(s.a, s.r);
    validate_bimodule(s.a, d);
    CHECK(d.dim == s.r.dim);
  }
}

TEST_CASE("base field: homology and cohomology of k") {
  Setup s("point");
  CHECK(hochschild_homology_dims(s.a, s.e, s.r, 3) == std::vector<long>{1, 0, 0, 0});
  CHECK(hochschild_cohomology_dims(s.a, s.e, s.r, 3) == std::vector<long>{1, 0, 0, 0});
}

TEST_CASE("semisimple algebra: higher groups vanish") {
  Setup s("semisimple2");
  // chains are stationary only, one per vertex in every degree
  auto md = bar_chain_model(s.a, s.e, s.r, 4);
  for (int n = 0; n <= 4; ++n) CHECK(md.complex.dims[n] == 2);
  CHECK(hochschild_homology_dims(s.a, s.e, s.r, 3) == std::vector<long>{2, 0, 0, 0});
  CHECK(hochschild_cohomology_dims(s.a, s.e, s.r, 3) == std::vector<long>{2, 0, 0, 0});
}

TEST_CASE("two_cycle: nonvanishing cohomology in degrees 1..4") {
  Setup s("two_cycle");
  auto h = hochschild_cohomology_dims(s.a, s.e, s.r, 4);
  CHECK(h[0] == 1);  // center is k
  for (int n = 1; n <= 4; ++n) CHECK(h[n] > 0);
  auto hl = hochschild_homology_dims(s.a, s.e, s.r, 2);
  CHECK(hl[0] == 2);  // R / [R, R]
}

TEST_CASE("double_fan cohomology 1,4,0,0") {
  Setup s("double_fan");
  CHECK(hochschild_cohomology_dims(s.a, s.e, s.r, 3) == std::vector<long>{1, 4, 0, 0});
}

TEST_CASE("looped_line cohomology 3,2,2,2,2") {
  Setup s("looped_line");
  CHECK(hochschild_cohomology_dims(s.a, s.e, s.r, 4) == std::vector<long>{3, 2, 2, 2, 2});
}

TEST_CASE("duality: dim H^n(R, D(R)) = dim H_n(R, R)") {
  for (auto name : {"two_cycle", "double_fan", "looped_line", "glued_pair"}) {
    Setup s(name);
    auto d = dual_bimodule(s.a, s.r);
    auto hc = hochschild_cohomology_dims(s.a, s.e, d, 3);
    auto hh = hochschild_homology_dims(s.a, s.e, s.r, 3);
    CHECK(hc == hh);
  }
}

TEST_CASE("coarser semisimple subalgebra gives the same cohomology") {
  Setup s("double_fan");
  auto& q = s.a.quiver;
  IdempotentSet e1{q.vertex_index("5")}, e2{q.vertex_index("6")};
  IdempotentSet mid{q.vertex_index("1"), q.vertex_index("2"), q.vertex_index("3"),
                    q.vertex_index("4")};
  std::sort(mid.begin(), mid.end());
  auto coarse = BlockE::from_parts(q, {e1, mid, e2});
  CHECK(hochschild_cohomology_dims(s.a, coarse, s.r, 2) ==
        hochschild_cohomology_dims(s.a, s.e, s.r, 2));
  CHECK(hochschild_homology_dims(s.a, coarse, s.r, 2) ==
        hochschild_homology_dims(s.a, s.e, s.r, 2));
}

TEST_CASE("cup product: unit 0-cochain is neutral, Leibniz rule holds") {
  Setup s("looped_line");
  auto md = bar_cochain_model(s.a, s.e, s.r, 4);
  // unit 0-cochain: value 1_R on the diagonal
  Cochain<Rat> unit = zero_cochain(md.levels, 0);
  for (int v = 0; v < s.a.quiver.n_vertices(); ++v)
    unit.val[0].emplace_back(s.a.eps_index(v), Rat(1));
  std::sort(unit.val[0].begin(), unit.val[0].end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 1 + (int)(rng() % 2);
    auto g = random_cochain(md, s.a, n, rng);
    auto ug = cup(s.a, s.e, md.levels, unit, g);
    CHECK(ug == g);
    auto gu = cup(s.a, s.e, md.levels, g, unit);
    CHECK(gu == g);
    // Leibniz: delta(f cup g) = delta f cup g + (-1)^n f cup delta g
    int m = 1 + (int)(rng() % 2);
    auto f = random_cochain(md, s.a, m, rng);
    if (m + n + 1 > 4) continue;
    auto lhs = coboundary(md, s.a, cup(s.a, s.e, md.levels, f, g));
    auto t1 = cup(s.a, s.e, md.levels, coboundary(md, s.a, f), g);
    auto t2 = cup(s.a, s.e, md.levels, f, coboundary(md, s.a, g));
    Cochain<Rat> rhs = t1;
    Rat sign = (m % 2) ? Rat(-1) : Rat(1);
    for (int ci = 0; ci < (int)rhs.val.size(); ++ci)
      svec_add_scaled(rhs.val[ci], t2.val[ci], sign);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("bracket: antisymmetry and the degree-0 rule") {
  Setup s("glued_pair");
  auto md = bar_cochain_model(s.a, s.e, s.r, 4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 1 + (int)(rng() % 2), m = 1 + (int)(rng() % 2);
    auto f = random_cochain(md, s.a, n, rng);
    auto g = random_cochain(md, s.a, m, rng);
    auto br = bracket(s.a, s.e, md.levels, f, g);
    auto rb = bracket(s.a, s.e, md.levels, g, f);
    // [f,g] = -(-1)^{(n-1)(m-1)} [g,f]
    Rat sign = (((n - 1) * (m - 1)) % 2) ? Rat(1) : Rat(-1);
    Cochain<Rat> expect = rb;
    for (auto& v : expect.val)
      for (auto& [idx, c] : v) c *= sign;
    CHECK(br == expect);
    // n = 0: f o g vanishes by definition
    auto z = random_cochain(md, s.a, 0, rng);
    CHECK(cochain_is_zero(circ(s.a, s.e, md.levels, z, g)));
  }
}

TEST_CASE("graded commutativity of cup holds up to coboundaries on cocycles") {
  Setup s("double_fan");
  auto md = bar_cochain_model(s.a, s.e, s.r, 4);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_cocycle(md, s.a, 1, rng);
    auto g = random_cocycle(md, s.a, 1, rng);
    auto fg = cup(s.a, s.e, md.levels, f, g);
    auto gf = cup(s.a, s.e, md.levels, g, f);
    // f cup g - (-1)^{nm} g cup f must be a coboundary (here n = m = 1)
    Cochain<Rat> diff = fg;
    for (int ci = 0; ci < (int)diff.val.size(); ++ci)
      svec_add_scaled(diff.val[ci], gf.val[ci], Rat(1));
    auto flat = cochain_to_flat(md, diff, s.a.one());
    Echelon<Rat> im(md.complex.delta[1]);
    CHECK(im.in_column_span(flat));
    // and cup of two 1-cocycles is a 2-cocycle whose class vanishes (H^2 = 0)
    auto flat_fg = cochain_to_flat(md, fg, s.a.one());
    CHECK(im.in_column_span(flat_fg));
  }
}

TEST_CASE("budget guard reports the chain count before allocation") {
  Setup s("looped_line");
  setenv("QUIVHOM_BUDGET_MB", "0", 1);
  unsetenv("QUIVHOM_BUDGET_MB");
  // no throw at sane sizes
  CHECK(estimate_chain_cells(s.a, s.e, 5) > 0);
}
