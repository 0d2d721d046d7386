#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "zalg/chain.hpp"
#include "zalg/rng.hpp"

using namespace zalg;

namespace {

using FG = FGAbelianGroup;

SparseMat one_by_one(const Int& v) {
  SparseMat m(1, 1);
  m.add(0, 0, v);
  m.normalize();
  return m;
}

// Z -> Z -> Z with d1 = 0, d2 = 2; homology Z, Z/2, 0
ChainComplexZ projective_plane_like() {
  ChainComplexZ c;
  c.set_dim(0, 1);
  c.set_boundary(1, one_by_one(0));
  c.set_boundary(2, one_by_one(2));
  return c;
}

}  // namespace

TEST_CASE("group arithmetic and printing") {
  FG z2{0, {Int(2)}};
  FG z3{0, {Int(3)}};
  CHECK(direct_sum(z2, z3) == FG{0, {Int(6)}});
  FG a{1, {Int(4)}};
  FG b{0, {Int(6)}};
  CHECK(direct_sum(a, b) == FG{1, {Int(2), Int(12)}});
  CHECK(FG{}.is_zero());
  CHECK(FG{}.to_string() == "0");
  CHECK(FG{2, {Int(2), Int(4)}}.to_string() == "Z^2 + Z/2 + Z/4");
}

TEST_CASE("homology of a pinned small complex") {
  auto c = projective_plane_like();
  CHECK(c.validate());
  for (auto e : {Engine::parallel, Engine::serial}) {
    CHECK(homology(c, 0, e) == FG{1, {}});
    CHECK(homology(c, 1, e) == FG{0, {Int(2)}});
    CHECK(homology(c, 2, e) == FG{});
    auto h = homology_range(c, 0, 2, e);
    CHECK(h.at(0) == FG{1, {}});
    CHECK(h.at(1) == FG{0, {Int(2)}});
    CHECK(h.at(2) == FG{});
  }
  // degrees outside the support vanish
  CHECK(homology(c, 5) == FG{});
  CHECK(homology(ChainComplexZ{}, 0) == FG{});
}

TEST_CASE("validation catches broken differentials") {
  ChainComplexZ c;
  c.set_boundary(1, one_by_one(1));
  c.set_boundary(2, one_by_one(1));  // d o d = 1 != 0
  std::string err;
  CHECK(!c.validate(&err));
  CHECK(!err.empty());

  ChainComplexZ d;
  d.set_boundary(1, one_by_one(3));
  d.set_dim(0, 5);  // contradicts the recorded target rank
  CHECK(!d.validate());
}

TEST_CASE("mapping cones and coefficient change") {
  auto c = projective_plane_like();

  // cone of the identity is acyclic
  std::map<long, SparseMat> id;
  for (auto& [n, r] : c.dims) {
    SparseMat m(r, r);
    for (long i = 0; i < r; ++i) m.add(i, i, 1);
    m.normalize();
    id[n] = m;
  }
  auto cone = mapping_cone(c, c, id);
  CHECK(cone.validate());
  for (long n = 0; n <= 3; ++n) CHECK(homology(cone, n).is_zero());

  // scale cone = coefficients in Z/m
  auto mod2 = scale_cone(c, 2);
  CHECK(mod2.validate());
  CHECK(homology(mod2, 0) == FG{0, {Int(2)}});
  CHECK(homology(mod2, 1) == FG{0, {Int(2)}});
  CHECK(homology(mod2, 2) == FG{0, {Int(2)}});

  auto wc = with_coefficients(c, FG{0, {Int(2)}});
  for (long n = 0; n <= 2; ++n) CHECK(homology(wc, n) == homology(mod2, n));

  // rank part of the coefficients just multiplies
  auto w2 = with_coefficients(c, FG{2, {}});
  CHECK(homology(w2, 0) == FG{2, {}});
  CHECK(homology(w2, 1) == FG{0, {Int(2), Int(2)}});
}

TEST_CASE("resolving presented complexes") {
  // single generator with relation 4: Z/4 concentrated in degree 0
  PresentedComplex p;
  p.gens[0] = 1;
  {
    DenseMat r(1, 1);
    r.at(0, 0) = 4;
    p.R[0] = r;
  }
  auto c = resolve(p);
  CHECK(c.validate());
  CHECK(homology(c, 0) == FG{0, {Int(4)}});
  CHECK(homology(c, 1) == FG{});

  // redundant relation columns span the same lattice
  PresentedComplex p2;
  p2.gens[0] = 1;
  {
    DenseMat r(1, 2);
    r.at(0, 0) = 2;
    r.at(0, 1) = 4;
    p2.R[0] = r;
  }
  CHECK(homology(resolve(p2), 0) == FG{0, {Int(2)}});

  // free Z in degree 1 mapping onto Z/2 in degree 0
  PresentedComplex p3;
  p3.gens[0] = 1;
  p3.gens[1] = 1;
  {
    DenseMat r(1, 1);
    r.at(0, 0) = 2;
    p3.R[0] = r;
    DenseMat d(1, 1);
    d.at(0, 0) = 1;
    p3.D[1] = d;
  }
  auto c3 = resolve(p3);
  CHECK(homology(c3, 0) == FG{});
  CHECK(homology(c3, 1) == FG{1, {}});
}

TEST_CASE("direct sums add homology") {
  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    auto a = oracle::random_complex(rng, 3, 4, 3);
    auto b = oracle::random_complex(rng, 3, 4, 3);
    auto s = direct_sum(a, b);
    CHECK(s.validate());
    for (long n = 0; n <= 3; ++n)
      CHECK(homology(s, n) == direct_sum(homology(a, n), homology(b, n)));
  }
}

TEST_CASE("seeded complexes agree with the minor-gcd oracle") {
  Rng rng(515);
  for (int it = 0; it < 25; ++it) {
    auto c = oracle::random_complex(rng, 3, 5, 3);
    REQUIRE(c.validate());
    auto hp = homology_range(c, 0, 3, Engine::parallel);
    auto hs = homology_range(c, 0, 3, Engine::serial);
    FG prev{};
    for (long n = 0; n <= 3; ++n) {
      auto want = oracle::homology_oracle(c, n);
      CHECK(hp.at(n) == want);
      CHECK(hs.at(n) == want);
      // universal coefficients tie the integral answer to mod-p ranks
      for (long p : {2, 3, 5, 7, 11, 13}) CHECK(oracle::mod_p_consistent(c, n, want, prev, p));
      prev = want;
    }
  }
}
