#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zalg/polyfun.hpp"
#include "zalg/rng.hpp"

#include <algorithm>
#include <memory>

using namespace zalg;

namespace {

SimplicialComplex circle() { return build_complex(3, {{0, 1}, {1, 2}, {0, 2}}); }

Poly t(int nvars, int i) { return poly_var(nvars, i); }

Poly random_poly(Rng& rng, int nvars, int maxdeg) {
  Poly p = poly_zero(nvars);
  long terms = rng.uniform(1, 4);
  for (long k = 0; k < terms; ++k) {
    std::vector<int> e(nvars, 0);
    int budget = static_cast<int>(rng.uniform(0, maxdeg));
    for (int b = 0; b < budget; ++b) e[rng.uniform(0, nvars - 1)]++;
    p = poly_add(p, poly_from_terms(nvars, {{e, Int(rng.uniform(-3, 3))}}));
  }
  return p;
}

bool contains_id(const std::vector<long>& ids, long s) {
  return std::binary_search(ids.begin(), ids.end(), s);
}

}  // namespace

TEST_CASE("polynomial arithmetic in barycentric variables") {
  auto a = poly_add(t(2, 0), poly_const(2, 1));       // t0 + 1
  auto b = poly_sub(t(2, 0), poly_const(2, 1));       // t0 - 1
  CHECK(poly_mul(a, b) == poly_sub(poly_mul(t(2, 0), t(2, 0)), poly_const(2, 1)));
  CHECK(a.degree() == 1);
  CHECK(poly_zero(2).degree() == -1);
  CHECK(poly_neg(b) == poly_sub(poly_const(2, 1), t(2, 0)));
  CHECK(poly_scale(a, Int(0)).is_zero());

  // bound enforcement: t0^5 * t0^4 leaves degree 8
  Poly p5 = poly_from_terms(1, {{{5}, Int(1)}});
  Poly p4 = poly_from_terms(1, {{{4}, Int(1)}});
  CHECK_THROWS_AS(poly_mul(p5, p4), PolyError);
  CHECK(poly_mul(p5, p4, 9) == poly_from_terms(1, {{{9}, Int(1)}}));

  // substitution with linear forms
  auto sq = poly_mul(t(1, 0), t(1, 0));
  auto sum = poly_add(t(2, 0), t(2, 1));
  auto out = poly_subst(sq, {sum}, 2);
  CHECK(out == poly_mul(sum, sum));

  // exact division
  CHECK(poly_div_var(poly_mul(poly_mul(t(2, 0), t(2, 0)), t(2, 1)), 0) ==
        poly_mul(t(2, 0), t(2, 1)));
  CHECK_THROWS_AS(poly_div_var(a, 0), PolyError);
  auto one_minus = poly_sub(poly_const(1, 1), t(1, 0));
  auto diff_sq = poly_sub(poly_const(1, 1), poly_mul(t(1, 0), t(1, 0)));
  CHECK(poly_div_exact(diff_sq, one_minus) == poly_add(poly_const(1, 1), t(1, 0)));
  CHECK_THROWS_AS(poly_div_exact(t(1, 0), one_minus), PolyError);
}

TEST_CASE("face restriction satisfies the simplicial identities") {
  // edge conventions: face 0 kills the first coordinate, the last face
  // substitutes the eliminated variable
  CHECK(face_restrict(t(1, 0), 1, 0).is_zero());
  CHECK(face_restrict(t(1, 0), 1, 1) == poly_const(0, 1));

  // on a triangle
  CHECK(face_restrict(t(2, 0), 2, 0).is_zero());
  CHECK(face_restrict(t(2, 0), 2, 1) == t(1, 0));
  CHECK(face_restrict(t(2, 0), 2, 2) == t(1, 0));
  CHECK(face_restrict(t(2, 1), 2, 2) == poly_sub(poly_const(1, 1), t(1, 0)));

  // d_j d_k = d_{k-1} d_j for j < k, on random quadratics
  Rng rng(92);
  for (int it = 0; it < 40; ++it) {
    auto p = random_poly(rng, 2, 3);
    for (int k = 1; k <= 2; ++k)
      for (int j = 0; j < k; ++j) {
        auto lhs = face_restrict(face_restrict(p, 2, k), 1, j);
        auto rhs = face_restrict(face_restrict(p, 2, j), 1, k - 1);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("functions assemble from entries and stay compatible") {
  auto x = circle();
  auto zero = pf_zero(x);
  CHECK(pf_is_zero(zero));
  CHECK(support(zero).empty());

  auto one = pf_const(x, 1);
  validate_polyfun(one);
  CHECK(support(one).size() == x.simp.size());

  // the coordinate of vertex 0, built from the two edges at 0
  auto chi0 = pf_from_entries(x, {{{0, 1}, t(1, 0)}, {{0, 2}, t(1, 0)}});
  validate_polyfun(chi0);
  CHECK(chi0.val[x.id_of({0})] == poly_const(0, 1));
  CHECK(chi0.val[x.id_of({1})].is_zero());
  CHECK(chi0.val[x.id_of({1, 2})].is_zero());
  // closed support: both edges at 0 and all their vertices
  CHECK(support(chi0).size() == 5);

  // incompatible entries on a shared face are rejected
  auto y = build_complex(4, {{0, 1, 2}, {0, 1, 3}});
  CHECK_THROWS_AS(pf_from_entries(y, {{{0, 1, 2}, t(2, 0)}, {{0, 1, 3}, poly_zero(2)}}),
                  PolyError);

  // arithmetic is simplexwise
  auto s = pf_add(chi0, chi0);
  CHECK(s.val[x.id_of({0, 1})] == poly_scale(t(1, 0), Int(2)));
  CHECK(pf_eq(pf_sub(s, chi0), chi0));
  auto sq = pf_mul(chi0, chi0);
  validate_polyfun(sq);
  CHECK(sq.val[x.id_of({0, 1})] == poly_mul(t(1, 0), t(1, 0)));
  CHECK(!pf_eq(sq, chi0));
}

TEST_CASE("group elements act by moving supports") {
  auto x = circle();
  attach_complex_action(x, std::make_shared<const FiniteGroup>(cyclic_group(3)),
                        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  auto chi0 = pf_from_entries(x, {{{0, 1}, t(1, 0)}, {{0, 2}, t(1, 0)}});
  auto moved = pf_act(1, chi0);
  validate_polyfun(moved);
  // the rotation 0 -> 1 turns the coordinate of 0 into the coordinate of 1
  CHECK(moved.val[x.id_of({1})] == poly_const(0, 1));
  CHECK(moved.val[x.id_of({0})].is_zero());
  CHECK(moved.val[x.id_of({1, 2})] == t(1, 0));
  CHECK(moved.val[x.id_of({0, 1})] == poly_sub(poly_const(1, 1), t(1, 0)));
  // acting by the identity is the identity
  CHECK(pf_eq(pf_act(0, chi0), chi0));
  // g then g^-1 round-trips
  CHECK(pf_eq(pf_act(2, moved), chi0));
}

TEST_CASE("pullbacks along simplicial maps") {
  auto x = circle();
  auto seg = build_complex(2, {{0, 1}});
  // collapse v2 onto v1
  auto f = make_simplicial_map(x, seg, {0, 1, 1});
  auto psi = pf_from_entries(seg, {{{0, 1}, t(1, 0)}});
  auto back = pullback(f, psi);
  validate_polyfun(back);
  CHECK(back.val[x.id_of({0})] == poly_const(0, 1));
  CHECK(back.val[x.id_of({0, 1})] == t(1, 0));
  CHECK(back.val[x.id_of({0, 2})] == t(1, 0));
  CHECK(back.val[x.id_of({1, 2})].is_zero());

  // maps must send simplices onto simplices
  auto two = build_complex(2, {{0}, {1}});
  CHECK_THROWS_AS(make_simplicial_map(x, two, {0, 1, 0}), PolyError);
}

TEST_CASE("extension fills the star and nothing else") {
  auto x = circle();
  long e01 = x.id_of({0, 1});
  auto yids = generated(x, {e01});
  auto phi = pf_zero(x);
  phi.val[e01] = t(1, 0);
  phi.val[x.id_of({0})] = poly_const(0, 1);

  auto psi = extend(phi, yids);
  validate_polyfun(psi);
  // restriction to Y is untouched
  for (long s : yids) CHECK(psi.val[s] == phi.val[s]);
  // the complement of the closed star of the support is zero
  auto cs = closed_star(x, support(phi));
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s)
    if (!contains_id(cs, s)) CHECK(psi.val[s].is_zero());
  // li = closed star minus star is zero as well
  auto st = star(x, support(phi));
  for (long s : cs)
    if (!contains_id(st, s) && !contains_id(yids, s)) CHECK(psi.val[s].is_zero());

  // extending the zero function gives zero
  auto z = extend(pf_zero(x), yids);
  CHECK(pf_is_zero(z));

  // a face-incompatible phi on Y is rejected
  auto badphi = pf_zero(x);
  badphi.val[e01] = t(1, 0);  // nonzero at vertex 0, but val stays 0 there
  CHECK_THROWS_AS(extend(badphi, yids), PolyError);
}

TEST_CASE("local units for finite families") {
  auto x = circle();
  // f lives around vertex 0
  auto f = pf_from_entries(x, {{{0, 1}, t(1, 0)}, {{0, 2}, t(1, 0)}});
  auto mu = s_unit_witness(x, {f});
  validate_polyfun(mu);
  CHECK(pf_eq(pf_mul(mu, f), f));
  // the witness concentrates near the family's support
  auto cs = closed_star(x, support(f));
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s)
    if (!contains_id(cs, s)) CHECK(mu.val[s].is_zero());

  // two functions at once
  auto g = pf_from_entries(
      x, {{{0, 1}, poly_sub(poly_const(1, 1), t(1, 0))}, {{1, 2}, t(1, 0)}});
  auto mu2 = s_unit_witness(x, {f, g});
  CHECK(pf_eq(pf_mul(mu2, f), f));
  CHECK(pf_eq(pf_mul(mu2, g), g));

  // the zero family is absorbed by the zero witness
  auto mu0 = s_unit_witness(x, {pf_zero(x)});
  CHECK(pf_eq(pf_mul(mu0, pf_zero(x)), pf_zero(x)));

  // the constant 1 demands the constant witness
  auto mu1 = s_unit_witness(x, {pf_const(x, 1)});
  CHECK(pf_eq(pf_mul(mu1, pf_const(x, 1)), pf_const(x, 1)));
}

TEST_CASE("separating functions vanish away from their simplex") {
  auto x = circle();
  long e01 = x.id_of({0, 1});
  auto sep = separating_function(x, e01);
  validate_polyfun(sep);
  CHECK(!sep.val[e01].is_zero());
  auto cs = closed_star(x, {e01});
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s)
    if (!contains_id(cs, s)) CHECK(sep.val[s].is_zero());
  // li of an edge in the circle is its two endpoints
  CHECK(sep.val[x.id_of({0})].is_zero());
  CHECK(sep.val[x.id_of({1})].is_zero());

  // separating a vertex leaves it visibly nonzero there
  auto sv = separating_function(x, x.id_of({2}));
  CHECK(!sv.val[x.id_of({2})].is_zero());
  CHECK(sv.val[x.id_of({0, 1})].is_zero());
}

TEST_CASE("vertex function rings and proper module structures") {
  auto two = build_complex(2, {{0}, {1}});
  auto vr = vertex_function_ring(two);
  CHECK(vr.rank() == 2);
  REQUIRE(vr.is_unital());
  CHECK(vr.mul(lc_single(0), lc_single(0)) == lc_single(0));
  CHECK(vr.mul(lc_single(0), lc_single(1)).empty());

  // with an action the basis gets permuted
  auto twa = build_complex(2, {{0}, {1}});
  attach_complex_action(twa, std::make_shared<const FiniteGroup>(cyclic_group(2)),
                        {{0, 1}, {1, 0}});
  auto vra = vertex_function_ring(twa);
  CHECK(vra.act(1, lc_single(0)) == lc_single(1));

  // positive dimensional complexes contribute their 0-skeleton
  CHECK(vertex_function_ring(circle()).rank() == 3);

  // module structure of Z^X on itself, X two points
  auto a = std::make_shared<const BasedRing>(vr);
  DenseMat m0(2, 2), m1(2, 2);
  m0.at(0, 0) = 1;
  m1.at(1, 1) = 1;
  auto chi = [&](int v) {
    return pf_from_entries(two, {{{v}, poly_const(0, 1)}});
  };
  auto ps = proper_structure(a, two, {{chi(0), m0}, {chi(1), m1}});
  CHECK(ps.full);
  CHECK(ps.act_of(chi(0)) == m0);

  // restricting to one vertex keeps exactly its line
  auto ideal = ps.ideal_basis({two.id_of({0})});
  CHECK(ideal.size() == 1);
  auto sub = ps.submodule({two.id_of({0})});
  CHECK(sub.cols == 1);

  // an action table violating the product relations is refused
  auto pt = build_complex(1, {{0}});
  auto zr = std::make_shared<const BasedRing>(ring_Z());
  DenseMat bad(1, 1);
  bad.at(0, 0) = 2;  // would need (2)^2 = 2 for chi * chi = chi
  CHECK_THROWS(proper_structure(zr, pt, {{pf_const(pt, 1), bad}}));

  // the trivial structure on a point is full
  DenseMat id1(1, 1);
  id1.at(0, 0) = 1;
  auto pps = proper_structure(zr, pt, {{pf_const(pt, 1), id1}});
  CHECK(pps.full);
  CHECK(pps.submodule({pt.id_of({0})}).cols == 1);
}
