#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zalg/induction.hpp"

#include <memory>

using namespace zalg;

namespace {

std::shared_ptr<const FiniteGroup> S3() {
  return std::make_shared<const FiniteGroup>(symmetric_group(3));
}

// Z with the trivial action of the given group attached; the comparison
// maps all insist on an explicit action
std::shared_ptr<const BasedRing> Z_with(std::shared_ptr<const FiniteGroup> g) {
  auto r = ring_Z();
  attach_action(r, g, trivial_action(*g, 1));
  return std::make_shared<const BasedRing>(std::move(r));
}

std::shared_ptr<const BasedRing> Z_sub(const FiniteGroup& g, const std::vector<int>& H) {
  return Z_with(std::make_shared<const FiniteGroup>(subgroup_group(g, H)));
}

// Z[C2] with its conjugation action, as a ring for the subgroup {0, x} < S3
std::shared_ptr<const BasedRing> subgroup_group_ring(const FiniteGroup& g,
                                                     const std::vector<int>& H) {
  auto hg = std::make_shared<const FiniteGroup>(subgroup_group(g, H));
  auto r = group_ring(hg);
  attach_action(r, hg, conjugation_action(*hg));
  return std::make_shared<const BasedRing>(std::move(r));
}

}  // namespace

TEST_CASE("induced rings carry a verified translation action") {
  auto g = S3();
  std::vector<int> H = {0, 1};
  auto ind = induce_ring(g, H, Z_sub(*g, H));
  CHECK(ind.carrier->rank() == 3);  // |G/H| * rank(Z)
  CHECK(ind.carrier->acting_group->n == 6);
  ind.carrier->verify_action();

  // xi(s, v) lands in the coset block of s
  for (int s = 0; s < 6; ++s) {
    auto v = ind.xi(s, lc_single(0));
    REQUIRE(v.size() == 1);
    CHECK(v[0].first == ind.idx(ind.cs.coset_of[s], 0));
  }

  // a non-pointed section is rejected, a valid one accepted
  CHECK_THROWS_AS(induce_ring(g, H, Z_sub(*g, H), {1, 2, 3}), RingError);
  std::vector<int> alt;
  for (long c = 0; c < ind.cs.size(); ++c) alt.push_back(ind.cs.rep[c]);
  auto ind2 = induce_ring(g, H, Z_sub(*g, H), alt);
  CHECK(ind2.carrier->rank() == 3);

  // coefficient rings must carry the subgroup action
  auto c3ring = std::make_shared<const BasedRing>(
      group_ring(std::make_shared<const FiniteGroup>(cyclic_group(3))));
  CHECK_THROWS_AS(induce_ring(g, H, c3ring), RingError);
}

TEST_CASE("matrix model of the crossed product over a subgroup") {
  auto g = S3();
  for (auto& H : {std::vector<int>{0, 1}, std::vector<int>{0, 3, 4}}) {
    auto rep = iso_across(g, H, Z_with(g));
    CHECK(rep.pass());
    CHECK(rep.verdict.detail.empty());
    // both sides have rank |G/H| * |G| * rank(A)
    long want = (6 / static_cast<long>(H.size())) * 6;
    CHECK(rep.hom.src->rank() == want);
    CHECK(rep.hom.tgt->rank() == want);
    // confirmed diagrams came back nonempty
    CHECK(!rep.diagram_checks.empty());
  }

  // nontrivial coefficients with a genuine action: Z[S3] under conjugation
  auto zg = std::make_shared<const BasedRing>([&] {
    auto r = group_ring(g);
    attach_action(r, g, conjugation_action(*g));
    return r;
  }());
  auto rep = iso_across(g, {0, 2}, zg);
  CHECK(rep.pass());
  CHECK(rep.hom.src->rank() == 3 * 6 * 6);
}

TEST_CASE("induction followed by crossing matches the matrix ring") {
  auto g = S3();
  // ind along C3 has rank |G/H| = 2, crossing with G gives 12
  auto repc3 = iso_green(g, {0, 3, 4}, Z_sub(*g, {0, 3, 4}));
  CHECK(repc3.pass());
  CHECK(repc3.hom.src->rank() == 12);
  // ind_H(Z[H]) has rank |G/H| * |H| = 6, crossing with G gives 36
  auto repc2 = iso_green(g, {0, 2}, subgroup_group_ring(*g, {0, 2}));
  CHECK(repc2.pass());
  CHECK(repc2.hom.src->rank() == 36);

  // a different pointed section must not change the verdict: take the
  // largest element of every non-identity coset
  auto cs = coset_space(*g, {0, 3, 4});
  std::vector<int> section(cs.size());
  for (int x = 0; x < g->n; ++x) {
    long c = cs.coset_of[x];
    if (c != cs.coset_of[g->id]) section[c] = std::max(section[c], x);
  }
  section[cs.coset_of[g->id]] = g->id;
  auto rep2 = iso_green(g, {0, 3, 4}, Z_sub(*g, {0, 3, 4}), section);
  CHECK(rep2.pass());
}

TEST_CASE("matrix rings over a permuted slot set") {
  auto g = S3();
  auto x = left_coset_gset(*g, coset_space(*g, {0, 1}));
  auto rep = iso_mxg(g, Z_with(g), x);
  CHECK(rep.pass());
  CHECK(rep.hom.src->rank() == 9 * 6);

  auto c2 = std::make_shared<const FiniteGroup>(cyclic_group(2));
  auto rep2 = iso_mxg(c2, Z_with(c2), regular_gset(*c2));
  CHECK(rep2.pass());
}

TEST_CASE("inducing a restricted ring gives functions on cosets") {
  auto g = S3();
  // B = Z[S3] restricted to H along the conjugation action
  auto zg = std::make_shared<const BasedRing>([&] {
    auto r = group_ring(g);
    attach_action(r, g, conjugation_action(*g));
    return r;
  }());
  for (auto& H : {std::vector<int>{0, 1}, std::vector<int>{0, 3, 4}}) {
    auto rep = iso_indtriv(g, H, zg);
    CHECK(rep.pass());
    CHECK(rep.hom.src->rank() == (6 / static_cast<long>(H.size())) * 6);
  }
}

TEST_CASE("compression is a two-sided inverse to induction") {
  auto g = S3();
  std::vector<int> H = {0, 2};

  // first direction: B into the compression of its induced ring
  auto rep1 = iso_indcomp_i(g, H, subgroup_group_ring(*g, H));
  CHECK(rep1.pass());

  // second direction: inducing the compression recovers a proper G-ring
  auto ind = induce_ring(g, H, subgroup_group_ring(*g, H));
  auto po = induced_proper(ind);
  CHECK(po.ps.full);
  auto rep2 = iso_indcomp_ii(g, H, ind.carrier, po.ps);
  CHECK(rep2.pass());
  CHECK(rep2.hom.tgt->rank() == ind.carrier->rank());

  // compress exposes the cut-down lattice
  auto comp = compress(ind.carrier, g, H, po.ps);
  CHECK(comp.ring->rank() == 2);
  CHECK(comp.lattice.rows == ind.carrier->rank());
  CHECK(comp.lattice.cols == comp.ring->rank());
}

TEST_CASE("induced discrete spaces have induced function rings") {
  auto g = S3();
  std::vector<int> H = {0, 2};
  auto sub = std::make_shared<const FiniteGroup>(subgroup_group(*g, H));

  // X: two points swapped by the nontrivial element of H
  auto x = build_complex(2, {{0}, {1}});
  attach_complex_action(x, sub, {{0, 1}, {1, 0}});
  auto rep = iso_indx(g, H, x);
  CHECK(rep.pass());
  CHECK(rep.hom.src->rank() == 6);  // |G x_H X| = |G/H| * |X|

  // trivial H-action on a point
  auto pt = build_complex(1, {{0}});
  attach_complex_action(pt, sub, {{0}, {0}});
  auto reppt = iso_indx(g, H, pt);
  CHECK(reppt.pass());
  CHECK(reppt.hom.src->rank() == 3);
}

TEST_CASE("double coset summands and the full decomposition") {
  auto g = S3();
  std::vector<int> H = {0, 1}, K = {0, 2};
  auto a = subgroup_group_ring(*g, K);

  auto dc = double_cosets(*g, H, K);
  for (long c = 0; c < static_cast<long>(dc.theta.size()); ++c) {
    auto rep = iso_indxtheta(g, H, K, a, dc, c);
    CHECK(rep.pass());
  }
  CHECK_THROWS_AS(iso_indxtheta(g, H, K, a, dc, static_cast<long>(dc.theta.size())),
                  RingError);

  auto dec = decompose_res_ind(g, H, K, a);
  CHECK(dec.pass);
  CHECK(dec.summands.size() == dc.theta.size());
  long total = 0;
  for (long r : dec.ranks) total += r;
  // res_H ind_K^G(A) has rank |G/K| * rank(A)
  CHECK(total == 3 * 2);

  // same game with the three-element subgroup on the other side
  auto dec2 = decompose_res_ind(g, {0, 3, 4}, K, a);
  CHECK(dec2.pass);
}

TEST_CASE("restriction cuts the action down to the subgroup") {
  auto g = S3();
  auto zg = group_ring(g);
  attach_action(zg, g, conjugation_action(*g));
  auto res = restrict_ring(zg, *g, {0, 3, 4});
  CHECK(res.rank() == 6);
  REQUIRE(res.acting_group);
  CHECK(res.acting_group->n == 3);
  res.verify_action();
  // element 1 of the cut-down group is the 3-cycle with id 3
  CHECK(res.act(1, lc_single(1)) == lc_single(static_cast<long>(g->conj(3, 1))));

  auto cs = coset_space(*g, {0, 3, 4});
  auto cc = coset_complex(g, cs);
  CHECK(cc->nv == 2);
  REQUIRE(cc->group);
  CHECK(cc->group->n == 6);
  CHECK(homology(chains(*cc), 0) == FGAbelianGroup{2, {}});
}
