#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zalg/groups.hpp"

#include <algorithm>
#include <set>

using namespace zalg;

TEST_CASE("cyclic and symmetric construction") {
  auto c6 = cyclic_group(6);
  CHECK(c6.n == 6);
  validate_group(c6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      CHECK(c6.mul(a, b) == (a + b) % 6);
      CHECK(c6.mul(a, b) == c6.mul(b, a));
    }
  CHECK(c6.mul(2, c6.inv[2]) == c6.id);

  auto s3 = symmetric_group(3);
  CHECK(s3.n == 6);
  validate_group(s3);
  REQUIRE(s3.perms.size() == 6);
  // table composition matches composing the one-line images
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto& pa = s3.perms[a];
      const auto& pb = s3.perms[b];
      const auto& pc = s3.perms[s3.mul(a, b)];
      for (int x = 0; x < 3; ++x) CHECK(pc[x] == pa[pb[x]]);
    }
  CHECK(perm_parity({0, 1, 2}) == 1);
  CHECK(perm_parity({1, 0, 2}) == -1);
  CHECK(perm_parity({1, 2, 0}) == 1);

  CHECK_THROWS_AS(cyclic_group(0), GroupError);
  CHECK_THROWS_AS(cyclic_group(kMaxGroupOrder + 1), GroupError);
}

TEST_CASE("table validation rejects non-groups") {
  // C2 as an explicit table
  auto c2 = table_group({{0, 1}, {1, 0}});
  CHECK(c2.n == 2);
  CHECK(c2.inv[1] == 1);

  // rows must be bijections
  CHECK_THROWS_AS(table_group({{0, 0}, {1, 1}}), GroupError);
  // associativity failure: a latin square that is not a group
  CHECK_THROWS_AS(table_group({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}}),
                  GroupError);
}

TEST_CASE("subgroup lattice of small groups") {
  auto s3 = symmetric_group(3);
  CHECK(subgroup_closure(s3, {3}) == std::vector<int>{0, 3, 4});
  CHECK(subgroup_closure(s3, {1, 2}).size() == 6);
  CHECK(is_subgroup(s3, {0, 1}));
  CHECK(!is_subgroup(s3, {0, 1, 2}));

  auto subs = all_subgroups(s3);
  std::vector<std::vector<int>> want = {{0},       {0, 1},    {0, 2},
                                        {0, 5},    {0, 3, 4}, {0, 1, 2, 3, 4, 5}};
  CHECK(subs == want);

  auto c6 = cyclic_group(6);
  CHECK(all_subgroups(c6).size() == 4);

  // the subgroup as a standalone group keeps the parent's products
  auto c3 = subgroup_group(s3, {0, 3, 4});
  validate_group(c3);
  CHECK(c3.n == 3);
  std::vector<int> h = {0, 3, 4};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(h[c3.mul(a, b)] == s3.mul(h[a], h[b]));
}

TEST_CASE("generator words evaluate back to their element") {
  auto s3 = symmetric_group(3);
  std::vector<int> gens = {1, 2};
  auto words = generator_words(s3, gens);
  REQUIRE(words.size() == 6);
  for (int x = 0; x < 6; ++x) {
    int acc = s3.id;
    for (int w : words[x]) {
      int g = w >= 0 ? gens[w] : s3.inv[gens[~w]];
      acc = s3.mul(acc, g);
    }
    CHECK(acc == x);
  }
  // a proper subgroup's generators cannot reach everything
  CHECK_THROWS_AS(generator_words(s3, {3}), GroupError);
}

TEST_CASE("cosets are pointed and partition the group") {
  auto s3 = symmetric_group(3);
  auto cs = coset_space(s3, {0, 1});
  CHECK(cs.size() == 3);
  CHECK(cs.rep[cs.coset_of[s3.id]] == s3.id);
  std::vector<long> count(cs.size(), 0);
  for (int x = 0; x < 6; ++x) ++count[cs.coset_of[x]];
  for (long c : count) CHECK(c == 2);
  // representatives live in their own coset
  for (long c = 0; c < cs.size(); ++c) CHECK(cs.coset_of[cs.rep[c]] == c);
  // left translation permutes cosets consistently: coset(g x) depends on coset(x)
  for (int g = 0; g < 6; ++g)
    for (int x = 0; x < 6; ++x)
      CHECK(cs.coset_of[s3.mul(g, x)] == cs.coset_of[s3.mul(g, cs.rep[cs.coset_of[x]])]);

  CHECK_THROWS_AS(coset_space(s3, {0, 3}), GroupError);  // not closed
}

TEST_CASE("double cosets satisfy the orbit-size formula") {
  auto s3 = symmetric_group(3);
  std::vector<int> H = {0, 1}, K = {0, 2};
  auto dc = double_cosets(s3, H, K);
  std::set<int> seen;
  for (size_t i = 0; i < dc.classes.size(); ++i) {
    CHECK(std::binary_search(dc.classes[i].begin(), dc.classes[i].end(), dc.theta[i]));
    for (int x : dc.classes[i]) seen.insert(x);
    CHECK(is_subgroup(s3, dc.H_theta[i]));
    CHECK(is_subgroup(s3, dc.K_thetainv[i]));
    CHECK(std::includes(H.begin(), H.end(), dc.H_theta[i].begin(), dc.H_theta[i].end()));
    CHECK(std::includes(K.begin(), K.end(), dc.K_thetainv[i].begin(), dc.K_thetainv[i].end()));
    // |H g K| * |H meet gKg^-1| = |H| * |K|
    CHECK(dc.classes[i].size() * dc.H_theta[i].size() == H.size() * K.size());
    // the two stabilizers are conjugate by theta, so equal in size
    CHECK(dc.H_theta[i].size() == dc.K_thetainv[i].size());
  }
  CHECK(seen.size() == 6);

  // H = K = a transposition subgroup: one small and one large class
  auto dc2 = double_cosets(s3, {0, 1}, {0, 1});
  REQUIRE(dc2.classes.size() == 2);
  CHECK(dc2.classes[0].size() + dc2.classes[1].size() == 6);
}

TEST_CASE("conjugacy classes and centralizers") {
  auto s3 = symmetric_group(3);
  auto cls = conjugacy_classes(s3);
  REQUIRE(cls.size() == 3);
  CHECK(cls[0] == std::vector<int>{0});
  CHECK(cls[1] == std::vector<int>{1, 2, 5});
  CHECK(cls[2] == std::vector<int>{3, 4});

  CHECK(centralizer(s3, 0).size() == 6);
  CHECK(centralizer(s3, 1) == std::vector<int>{0, 1});
  CHECK(centralizer(s3, 3) == std::vector<int>{0, 3, 4});
  // class size * centralizer order = group order
  for (const auto& c : cls) CHECK(c.size() * centralizer(s3, c[0]).size() == 6);

  // partitions of 6 index the classes of S6
  auto s6 = symmetric_group(6);
  CHECK(conjugacy_classes(s6).size() == 11);
}

TEST_CASE("group actions and their transport groupoids") {
  auto s3 = symmetric_group(3);
  auto pt = point_gset(s3);
  CHECK(pt.size == 1);
  validate_gset(s3, pt);

  auto reg = regular_gset(s3);
  CHECK(reg.size == 6);
  validate_gset(s3, reg);
  for (int g = 0; g < 6; ++g) CHECK(reg.apply(g, s3.id) == g);

  auto cs = coset_space(s3, {0, 1});
  auto cos = left_coset_gset(s3, cs);
  CHECK(cos.size == 3);
  validate_gset(s3, cos);
  for (int g = 0; g < 6; ++g)
    for (long s = 0; s < 3; ++s)
      CHECK(cos.apply(g, s) == cs.coset_of[s3.mul(g, cs.rep[s])]);

  // a table that is not an action: identity must act trivially
  CHECK_THROWS_AS(table_gset(s3, 2, std::vector<int>{1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0}),
                  GroupError);

  // transport groupoid of the regular action: exactly one arrow per pair
  auto c3 = cyclic_group(3);
  auto tg = transport_groupoid(c3, regular_gset(c3));
  CHECK(tg.objects == 3);
  CHECK(tg.arrow_count() == 9);
  for (long s = 0; s < 3; ++s)
    for (long t = 0; t < 3; ++t) CHECK(tg.hom[s][t].size() == 1);

  // point orbit: every group element is an endo-arrow
  auto tgp = transport_groupoid(s3, pt);
  CHECK(tgp.arrow_count() == 6);

  // two orbits produce no cross arrows
  std::vector<int> act = {0, 1, 2, 0, 2, 1};  // C2 on {pt} + {swap pair}
  auto two = table_gset(cyclic_group(2), 3, act);
  auto tg2 = transport_groupoid(cyclic_group(2), two);
  CHECK(tg2.hom[0][1].empty());
  CHECK(tg2.hom[1][2].size() == 1);
  CHECK(tg2.arrow_count() == 6);
}
