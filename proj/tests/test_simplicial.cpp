#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zalg/rng.hpp"
#include "zalg/simplicial.hpp"

#include <algorithm>
#include <memory>
#include <set>

using namespace zalg;

namespace {

using FG = FGAbelianGroup;

std::shared_ptr<const FiniteGroup> shared(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

// triangle boundary on vertices 0,1,2
SimplicialComplex circle() { return build_complex(3, {{0, 1}, {1, 2}, {0, 2}}); }

// two triangles glued along the edge (0,1)
SimplicialComplex two_triangles() { return build_complex(4, {{0, 1, 2}, {0, 1, 3}}); }

long count_fixed(const FiniteGroup& g, const GSet& s, const std::vector<int>& H) {
  long n = 0;
  for (long x = 0; x < s.size; ++x) {
    bool fix = true;
    for (int h : H)
      if (s.apply(h, static_cast<int>(x)) != x) fix = false;
    if (fix) ++n;
  }
  (void)g;
  return n;
}

}  // namespace

TEST_CASE("complexes close under faces and keep canonical ids") {
  auto full = build_complex(4, {{0, 1, 2, 3}});
  CHECK(full.simp.size() == 15);
  CHECK(full.top_dim() == 3);

  auto sphere = build_complex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(sphere.simp.size() == 14);
  CHECK(sphere.has({1, 3}));
  CHECK(!sphere.has({0, 1, 2, 3}));
  // ids ordered by (dimension, lex): vertices come first
  for (long v = 0; v < 4; ++v) CHECK(sphere.id_of({static_cast<int>(v)}) == v);
  CHECK_THROWS_AS(sphere.id_of({0, 1, 2, 3}), SComplexError);

  // unsorted or out-of-range facets are rejected
  CHECK_THROWS_AS(build_complex(2, {{0, 5}}), SComplexError);
  CHECK_THROWS_AS(build_complex(3, {{1, 1}}), SComplexError);
}

TEST_CASE("simplicial homology of pinned spaces") {
  auto c = chains(circle());
  CHECK(c.validate());
  CHECK(homology(c, 0) == FG{1, {}});
  CHECK(homology(c, 1) == FG{1, {}});

  auto s = chains(build_complex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  CHECK(homology(s, 0) == FG{1, {}});
  CHECK(homology(s, 1) == FG{});
  CHECK(homology(s, 2) == FG{1, {}});

  auto disc = chains(two_triangles());
  CHECK(homology(disc, 0) == FG{1, {}});
  CHECK(homology(disc, 1) == FG{});

  // chain ranks line up with the degree id lists
  auto x = two_triangles();
  for (long d = 0; d <= x.top_dim(); ++d)
    CHECK(c.dim(d) <= static_cast<long>(x.simp.size()));
  for (long d = 0; d <= x.top_dim(); ++d)
    CHECK(chains(x).dim(d) == static_cast<long>(degree_ids(x, d).size()));
}

TEST_CASE("actions must fix stabilized simplices pointwise") {
  auto x = two_triangles();
  // swapping the two free tips is admissible
  attach_complex_action(x, shared(cyclic_group(2)), {{0, 1, 2, 3}, {0, 1, 3, 2}});
  CHECK(x.group);

  // swapping 0 and 1 stabilizes the shared edge without fixing it
  auto y = two_triangles();
  CHECK_THROWS_WITH_AS(
      attach_complex_action(y, shared(cyclic_group(2)), {{0, 1, 2, 3}, {1, 0, 2, 3}}),
      doctest::Contains("subdivide"), SComplexError);

  // non-simplicial vertex maps are caught too
  auto z = circle();
  CHECK_THROWS_AS(attach_complex_action(z, shared(cyclic_group(2)), {{0, 1, 2}, {0, 0, 1}}),
                  SComplexError);
}

TEST_CASE("one subdivision regularizes a bad action") {
  // the rejected swap above becomes admissible on the subdivision, whose
  // vertices are the simplices of the original complex
  auto b = two_triangles();
  auto sd = subdivide(b);
  CHECK(sd.nv == static_cast<long>(b.simp.size()));

  std::vector<int> perm = {1, 0, 2, 3};
  std::vector<std::vector<int>> vact(2);
  for (long s = 0; s < sd.nv; ++s) {
    vact[0].push_back(static_cast<int>(s));
    std::vector<int> im;
    for (int v : b.simp[s]) im.push_back(perm[v]);
    std::sort(im.begin(), im.end());
    vact[1].push_back(static_cast<int>(b.id_of(im)));
  }
  attach_complex_action(sd, shared(cyclic_group(2)), vact);
  CHECK(sd.group);

  // subdividing preserves homology
  auto before = chains(b);
  auto after = chains(sd);
  for (long n = 0; n <= 2; ++n) CHECK(homology(before, n) == homology(after, n));
  auto c2 = chains(subdivide(circle()));
  CHECK(homology(c2, 0) == FG{1, {}});
  CHECK(homology(c2, 1) == FG{1, {}});
}

TEST_CASE("stars and links around a vertex") {
  auto x = two_triangles();
  long v2 = x.id_of({2});

  auto st = star(x, {v2});
  for (long s : st)
    CHECK(std::find(x.simp[s].begin(), x.simp[s].end(), 2) != x.simp[s].end());

  auto cst = closed_star(x, {v2});
  CHECK(cst.size() == 7);  // the triangle (0,1,2) with all faces
  auto closed = generated(x, cst);
  CHECK(closed == cst);

  auto lk = link(x, {v2});
  // link of the tip is the opposite edge with its endpoints
  std::vector<long> want = {x.id_of({0}), x.id_of({1}), x.id_of({0, 1})};
  std::sort(want.begin(), want.end());
  CHECK(lk == want);

  // closed star is contractible here
  CHECK(homology(chains(x, cst), 0) == FG{1, {}});
  CHECK(homology(chains(x, cst), 1) == FG{});

  // generated() is a downward closure
  long t = x.id_of({0, 1, 3});
  auto gen = generated(x, {t});
  CHECK(gen.size() == 7);
}

TEST_CASE("fixed simplices and fixed subcomplexes") {
  auto x = two_triangles();
  attach_complex_action(x, shared(cyclic_group(2)), {{0, 1, 2, 3}, {0, 1, 3, 2}});

  auto all = fixed_ids(x, {0});
  CHECK(all.size() == x.simp.size());

  auto fix = fixed_ids(x, {0, 1});
  // exactly 0, 1 and the edge (0,1) survive
  std::vector<long> want = {x.id_of({0}), x.id_of({1}), x.id_of({0, 1})};
  std::sort(want.begin(), want.end());
  CHECK(fix == want);

  auto fp = fixed_points(x, {0, 1});
  CHECK(homology(chains(fp), 0) == FG{1, {}});
  CHECK(fp.simp.size() == 3);

  // free rotation leaves nothing fixed
  auto rot = circle();
  attach_complex_action(rot, shared(cyclic_group(3)), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(fixed_ids(rot, {0, 1}).empty());

  // a materialized invariant subcomplex keeps the restricted action
  auto sub = subcomplex_with_action(x, generated(x, {x.id_of({0, 1})}), {0, 1});
  CHECK(sub.group);
  CHECK(sub.simp.size() == 3);
}

TEST_CASE("chain level action commutes with the boundary") {
  auto rot = circle();
  attach_complex_action(rot, shared(cyclic_group(3)), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  auto c = chains(rot);
  for (int g = 0; g < 3; ++g) {
    auto a1 = chain_action(rot, g, 1);
    auto a0 = chain_action(rot, g, 0);
    CHECK(mul(c.boundary(1), a1).dense() == mul(a0, c.boundary(1)).dense());
  }
  // image parity shows up as the sign
  int sign = 0;
  long e02 = rot.id_of({0, 2});
  long im = rot.apply_simplex(1, e02, &sign);
  CHECK(im == rot.id_of({0, 1}));
  CHECK(sign == -1);

  auto x = two_triangles();
  attach_complex_action(x, shared(cyclic_group(2)), {{0, 1, 2, 3}, {0, 1, 3, 2}});
  auto cx = chains(x);
  for (long d = 1; d <= 2; ++d) {
    auto ad = chain_action(x, 1, d);
    auto adm1 = chain_action(x, 1, d - 1);
    CHECK(mul(cx.boundary(d), ad).dense() == mul(adm1, cx.boundary(d)).dense());
  }
}

TEST_CASE("induced spaces are coset-many tagged copies") {
  auto s3 = shared(symmetric_group(3));
  std::vector<int> H = {0, 2};
  auto sub = shared(subgroup_group(*s3, H));

  auto pt = build_complex(1, {{0}});
  attach_complex_action(pt, sub, {{0}, {0}});
  auto ind = induce_space(s3, H, pt);
  CHECK(ind.nv == 3);
  CHECK(ind.group);
  CHECK(ind.group->n == 6);
  CHECK(homology(chains(ind), 0) == FG{3, {}});

  auto seg = build_complex(2, {{0, 1}});
  attach_complex_action(seg, sub, {{0, 1}, {0, 1}});
  auto inds = induce_space(s3, H, seg);
  CHECK(inds.nv == 6);
  CHECK(homology(chains(inds), 0) == FG{3, {}});
  CHECK(homology(chains(inds), 1) == FG{});

  // the subgroup action must be over the right group
  auto bad = build_complex(1, {{0}});
  attach_complex_action(bad, shared(cyclic_group(3)), {{0}, {0}, {0}});
  CHECK_THROWS_AS(induce_space(s3, H, bad), SComplexError);
  auto none = build_complex(1, {{0}});
  CHECK_THROWS_AS(induce_space(s3, H, none), SComplexError);
}

TEST_CASE("stabilizer families") {
  auto s3 = shared(symmetric_group(3));
  auto pt = build_complex(1, {{0}});
  attach_complex_action(pt, s3, std::vector<std::vector<int>>(6, {0}));
  CHECK(family_check(pt, all_subgroups(*s3)));
  // the trivial family misses the full stabilizer
  CHECK(!family_check(pt, {{0}}));

  // free orbit: every stabilizer is trivial
  auto free2 = build_complex(2, {{0}, {1}});
  attach_complex_action(free2, shared(cyclic_group(2)), {{0, 1}, {1, 0}});
  CHECK(family_check(free2, {{0}}));
}

TEST_CASE("collapsing an invariant subcomplex matches the fixed point count") {
  // gluing squares of sets: Y = X + (B - A) for injective A -> B, tested on
  // group actions by counting H-fixed elements for every subgroup H
  auto s3 = symmetric_group(3);
  auto subs = all_subgroups(s3);
  Rng rng(1101);
  for (int it = 0; it < 20; ++it) {
    // B: a disjoint sum of coset orbits; A: a prefix of those orbits
    long norb = rng.uniform(1, 3);
    std::vector<GSet> orbits;
    for (long i = 0; i < norb; ++i) {
      auto& H = subs[rng.uniform(0, static_cast<long>(subs.size()) - 1)];
      orbits.push_back(left_coset_gset(s3, coset_space(s3, H)));
    }
    long acut = rng.uniform(0, norb);  // orbits [0, acut) form A
    // X: a single fixed point absorbing A
    long bsize = 0;
    for (auto& o : orbits) bsize += o.size;
    long asize = 0;
    for (long i = 0; i < acut; ++i) asize += orbits[i].size;

    // Y = {x} + orbits acut.. ; build its action table directly
    long ysize = 1 + bsize - asize;
    std::vector<int> act(static_cast<size_t>(6) * ysize);
    for (int g = 0; g < 6; ++g) {
      act[static_cast<size_t>(g) * ysize] = 0;
      long base = 1;
      for (long i = acut; i < norb; ++i) {
        for (long s = 0; s < orbits[i].size; ++s)
          act[static_cast<size_t>(g) * ysize + base + s] =
              static_cast<int>(base + orbits[i].apply(g, static_cast<int>(s)));
        base += orbits[i].size;
      }
    }
    auto y = table_gset(s3, ysize, act);

    for (const auto& H : subs) {
      long bfix = 0, afix = 0;
      for (long i = 0; i < norb; ++i) {
        long f = count_fixed(s3, orbits[i], H);
        bfix += f;
        if (i < acut) afix += f;
      }
      CHECK(count_fixed(s3, y, H) == 1 + bfix - afix);
    }
  }

  // the same pattern one level up: collapse the shared edge of two triangles
  // to a point and compare vertex-level fixed counts
  auto b = two_triangles();
  attach_complex_action(b, shared(cyclic_group(2)), {{0, 1, 2, 3}, {0, 1, 3, 2}});
  auto aids = generated(b, {b.id_of({0, 1})});

  // quotient: vertex 0 = collapsed edge, vertices 1,2 = old 2,3
  auto y = build_complex(3, {{0, 1}, {0, 2}});
  attach_complex_action(y, shared(cyclic_group(2)), {{0, 1, 2}, {0, 2, 1}});
  for (const auto& H : std::vector<std::vector<int>>{{0}, {0, 1}}) {
    auto yfix = fixed_ids(y, H);
    long yv = 0;
    for (long s : yfix)
      if (y.simp[s].size() == 1) ++yv;
    long bv = 0, av = 0;
    for (long s : fixed_ids(b, H))
      if (b.simp[s].size() == 1) {
        ++bv;
        if (std::binary_search(aids.begin(), aids.end(), s)) ++av;
      }
    CHECK(yv == 1 + bv - av);
  }
  CHECK(homology(chains(y), 0) == FG{1, {}});
}
