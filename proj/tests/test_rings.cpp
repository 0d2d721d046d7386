#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zalg/rings.hpp"

#include <memory>

using namespace zalg;

namespace {

LinComb one(long i, long c = 1) { return lc_single(i, Int(c)); }

std::shared_ptr<const FiniteGroup> C2() {
  return std::make_shared<const FiniteGroup>(cyclic_group(2));
}

}  // namespace

TEST_CASE("scalar rings and their structure constants") {
  auto z = ring_Z();
  CHECK(z.rank() == 1);
  CHECK(z.is_unital());
  CHECK(z.mul(one(0), one(0)) == one(0));
  z.verify_associative();
  z.verify_unit();

  auto gi = gaussian_ring();
  CHECK(gi.rank() == 2);
  CHECK(gi.mul(one(1), one(1)) == one(0, -1));  // i * i = -1
  CHECK(gi.mul(one(0), one(1)) == one(1));

  auto t3 = truncated_poly(3);
  CHECK(t3.rank() == 2);
  CHECK(!t3.is_unital());
  CHECK(t3.mul(one(0), one(0)) == one(1));       // t * t = t^2
  CHECK(t3.mul(one(0), one(1)).empty());         // t * t^2 = 0
  CHECK(truncated_poly(2).mul(one(0), one(0)).empty());
}

TEST_CASE("group rings multiply by the group table") {
  auto g = std::make_shared<const FiniteGroup>(symmetric_group(3));
  auto r = group_ring(g);
  CHECK(r.rank() == 6);
  CHECK(r.is_unital());
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(r.mul(one(a), one(b)) == one(g->mul(a, b)));
  // z-linear combinations distribute
  auto v = lc_add(one(1), one(3, 2));
  auto w = lc_add(one(0, -1), one(2));
  auto direct = r.mul(v, w);
  auto sum = lc_add(lc_add(r.mul(one(1), w), lc_scale(r.mul(one(3), w), 2)), LinComb{});
  CHECK(direct == sum);
}

TEST_CASE("matrix rings carry a grading and unit") {
  auto m2 = matrix_ring(2, ring_Z());
  CHECK(m2.rank() == 4);
  REQUIRE(m2.is_unital());
  REQUIRE(m2.grading);
  CHECK(m2.grading->objects == 2);
  // e_ij e_kl = [j == k] e_il, with basis order (i, j) row-major
  auto e = [&](long i, long j) { return one(i * 2 + j); };
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j)
      for (long k = 0; k < 2; ++k)
        for (long l = 0; l < 2; ++l) {
          auto p = m2.mul(e(i, j), e(k, l));
          if (j == k)
            CHECK(p == e(i, l));
          else
            CHECK(p.empty());
        }
  m2.verify_unit();
}

TEST_CASE("unitalization, sums, tensors") {
  auto t3 = truncated_poly(3);
  auto u = unitalize(t3);
  CHECK(u.rank() == 3);
  REQUIRE(u.is_unital());
  for (long i = 0; i < 3; ++i) {
    CHECK(u.mul(*u.unit, one(i)) == one(i));
    CHECK(u.mul(one(i), *u.unit) == one(i));
  }

  auto s = direct_sum_ring(ring_Z(), ring_Z());
  CHECK(s.rank() == 2);
  CHECK(s.mul(one(0), one(1)).empty());  // orthogonal summands
  CHECK(s.mul(one(0), one(0)) == one(0));
  REQUIRE(s.is_unital());
  CHECK(*s.unit == lc_add(one(0), one(1)));

  // Z tensor A keeps the structure of A
  auto t = tensor_ring(ring_Z(), gaussian_ring());
  CHECK(t.rank() == 2);
  CHECK(t.mul(one(1), one(1)) == one(0, -1));

  auto big = tensor_ring(gaussian_ring(), gaussian_ring());
  CHECK(big.rank() == 4);
  CHECK(big.is_unital());
}

TEST_CASE("crossed products twist by the action") {
  auto c2 = C2();
  auto a = gaussian_ring();
  attach_action(a, c2, gaussian_conjugation(*c2));
  a.verify_action();
  CHECK(a.act(1, one(1)) == one(1, -1));  // conjugation negates i

  auto cp = crossed_product(a);
  CHECK(cp.rank() == 4);
  // basis (r, g) at index r*|G| + g; (1 x s)(i x e) = s(i) x s = -(i x s)
  CHECK(cp.mul(one(1), one(2)) == one(3, -1));
  // (i x e)(i x e) = -1 x e
  CHECK(cp.mul(one(2), one(2)) == one(0, -1));
  CHECK(cp.is_unital());

  // no action attached: refuse
  CHECK_THROWS_AS(crossed_product(gaussian_ring()), RingError);
}

TEST_CASE("groupoid rings slice products by composability") {
  auto c2g = cyclic_group(2);
  auto reg = regular_gset(c2g);
  auto ar = enumerate_arrows(c2g, reg);
  CHECK(ar.count() == 4);
  for (long k = 0; k < 4; ++k) CHECK(reg.apply(ar.g[k], ar.src[k]) == ar.tgt[k]);

  // the regular action's transport groupoid is a pair groupoid, so its ring
  // is a 2x2 matrix ring in disguise
  auto gr = groupoid_ring(c2g, reg);
  CHECK(gr.rank() == 4);
  CHECK(gr.is_unital());
  REQUIRE(gr.grading);
  long composable = 0, vanishing = 0;
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 4; ++j) {
      auto p = gr.mul(one(i), one(j));
      if (gr.grading->srctgt[i].first == gr.grading->srctgt[j].second) {
        CHECK(p.size() == 1);
        ++composable;
      } else {
        CHECK(p.empty());
        ++vanishing;
      }
    }
  CHECK(composable == 8);
  CHECK(vanishing == 8);

  // nonunital coefficients pass through untouched
  auto t2 = truncated_poly(2);
  auto c2 = C2();
  attach_action(t2, c2, trivial_action(*c2, t2.rank()));
  auto gc = groupoid_crossed(t2, c2g, point_gset(c2g));
  CHECK(gc.rank() == 2);
  CHECK(!gc.is_unital());
  CHECK(gc.mul(one(0), one(1)).empty());  // t * t = 0 survives the twist
}

TEST_CASE("action constructors validate automorphism laws") {
  auto c2 = C2();
  auto s3 = std::make_shared<const FiniteGroup>(symmetric_group(3));

  // conjugation permutes the group basis
  auto zr = group_ring(s3);
  attach_action(zr, s3, conjugation_action(*s3));
  for (int g = 0; g < 6; ++g)
    for (int x = 0; x < 6; ++x) CHECK(zr.act(g, one(x)) == one(s3->conj(g, x)));

  // sign flips are automorphisms only when all products vanish
  auto t2 = truncated_poly(2);
  attach_action(t2, c2, sign_action(*c2, t2.rank()));
  CHECK(t2.act(1, one(0)) == one(0, -1));
  auto z = ring_Z();
  CHECK_THROWS_AS(attach_action(z, c2, sign_action(*c2, 1)), RingError);

  // odd cyclic groups admit no sign character
  auto c3 = std::make_shared<const FiniteGroup>(cyclic_group(3));
  CHECK_THROWS_AS(sign_action(*c3, 1), RingError);
}

TEST_CASE("builder rejects broken tables") {
  // x*x = y, x*y = x, y*_ = 0 is not associative
  RingBuilder b;
  long x = b.add_basis("x");
  long y = b.add_basis("y");
  b.set_product(x, x, one(y));
  b.set_product(x, y, one(x));
  CHECK_THROWS_AS(b.finish(), RingError);

  // claimed unit that is not one
  RingBuilder b2;
  long t = b2.add_basis("t");
  b2.set_product(t, t, LinComb{});
  b2.unit = one(t);
  CHECK_THROWS_AS(b2.finish(), RingError);
}

TEST_CASE("homomorphism checker finds counterexamples") {
  auto c2 = C2();
  auto zc2 = std::make_shared<const BasedRing>(group_ring(c2));
  auto z = std::make_shared<const BasedRing>(ring_Z());

  // augmentation: both basis elements to 1
  RingHom aug{zc2, z, {one(0), one(0)}};
  HomCheckFlags all;
  all.multiplicative = all.unital = true;
  CHECK(check_hom(aug, all).pass);
  HomCheckFlags bij;
  bij.bijective = true;
  auto rb = check_hom(aug, bij);
  CHECK(!rb.pass);
  CHECK(!rb.detail.empty());

  // swapping 1 and the generator is not multiplicative
  RingHom bad{zc2, zc2, {one(1), one(0)}};
  auto rbad = check_hom(bad, all);
  CHECK(!rbad.pass);
  CHECK(!rbad.detail.empty());

  // identity is everything at once, including equivariant
  auto acted = group_ring(c2);
  attach_action(acted, c2, conjugation_action(*c2));
  auto ap = std::make_shared<const BasedRing>(acted);
  RingHom idh{ap, ap, {one(0), one(1)}};
  HomCheckFlags full;
  full.multiplicative = full.unital = full.bijective = full.equivariant = true;
  CHECK(check_hom(idh, full, {0, 1}).pass);
}

TEST_CASE("twisted bimodule and local units") {
  auto c2 = C2();
  auto g = gaussian_ring();
  attach_action(g, c2, gaussian_conjugation(*c2));
  auto gp = std::make_shared<const BasedRing>(g);
  auto tb = twisted_bimodule(gp, 1);
  CHECK(tb.left(one(1), one(1)) == one(0, -1));   // i * i
  CHECK(tb.right(one(0), one(1)) == one(1, -1));  // 1 . i = 1 * s(i)

  // unital rings always produce a witness
  auto m2 = matrix_ring(2, ring_Z());
  auto probe = s_unital_probe(m2, {one(1), one(2)});
  REQUIRE(probe.witness);
  for (auto x : {one(1), one(2)}) {
    CHECK(m2.mul(*probe.witness, x) == x);
    CHECK(m2.mul(x, *probe.witness) == x);
  }

  // t Z[t]/(t^2) has no local units at all
  auto t2 = truncated_poly(2);
  auto p2 = s_unital_probe(t2, {one(0)});
  CHECK(!p2.witness);
  CHECK(!p2.rational_solvable);
}
