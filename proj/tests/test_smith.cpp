#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "zalg/rng.hpp"
#include "zalg/smith.hpp"

using namespace zalg;

namespace {

DenseMat mk(long rows, long cols, std::initializer_list<long> vals) {
  DenseMat m(rows, cols);
  long i = 0;
  for (long v : vals) m.a[i++] = v;
  return m;
}

DenseMat random_mat(Rng& rng, long rows, long cols, long span) {
  DenseMat m(rows, cols);
  for (auto& v : m.a) v = rng.uniform(-span, span);
  return m;
}

// Bareiss determinant of a square matrix, exact
Int det_bareiss(DenseMat a) {
  REQUIRE(a.rows == a.cols);
  Int prev = 1;
  int sign = 1;
  for (long c = 0; c < a.cols; ++c) {
    long p = -1;
    for (long i = c; i < a.rows; ++i)
      if (a.at(i, c) != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) {
      for (long j = 0; j < a.cols; ++j) std::swap(a.at(c, j), a.at(p, j));
      sign = -sign;
    }
    for (long i = c + 1; i < a.rows; ++i)
      for (long j = c + 1; j < a.cols; ++j)
        a.at(i, j) = divexact(a.at(c, c) * a.at(i, j) - a.at(i, c) * a.at(c, j), prev);
    prev = a.at(c, c);
  }
  return sign * prev;
}

std::vector<Int> dense_factors(const DenseMat& m) {
  auto s = smith_dense(m);
  std::vector<Int> out(s.d.begin(), s.d.begin() + s.rank);
  return out;
}

}  // namespace

TEST_CASE("smith decomposition on pinned matrices") {
  auto m = mk(2, 2, {2, 4, 6, 8});
  auto s = smith_dense(m);
  CHECK(s.rank == 2);
  CHECK(s.d[0] == 2);
  CHECK(s.d[1] == 4);

  // transforms must reproduce the diagonal and be unimodular
  auto uav = mul(mul(s.U, m), s.V);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) CHECK(uav.at(i, j) == (i == j ? s.d[i] : Int(0)));
  CHECK(abs(det_bareiss(s.U)) == 1);
  CHECK(abs(det_bareiss(s.V)) == 1);

  auto z = smith_dense(DenseMat(3, 2));
  CHECK(z.rank == 0);

  // d_i | d_{i+1} on a matrix with mixed torsion
  auto t = mk(3, 3, {2, 0, 0, 0, 6, 0, 0, 0, 10});
  auto st = smith_dense(t);
  CHECK(st.d == std::vector<Int>{2, 2, 30});
}

TEST_CASE("sparse and serial engines match the dense reference") {
  Rng rng(2024);
  for (int it = 0; it < 60; ++it) {
    long r = rng.uniform(1, 6), c = rng.uniform(1, 6);
    auto m = random_mat(rng, r, c, 5);
    auto sm = SparseMat::from_dense(m);
    auto a = smith_sparse(sm);
    auto b = smith_serial(sm);
    auto d = dense_factors(m);
    CHECK(a.rank == b.rank);
    CHECK(a.factors == b.factors);
    CHECK(a.factors == d);
    CHECK(a.rank == oracle::rank_bareiss(m));
    // gcd-of-minors oracle sees the same invariant factor chain
    CHECK(a.factors == oracle::invariant_factors(m));
  }
}

TEST_CASE("overflow fallback keeps engines in agreement") {
  // entries far outside int64 force the arbitrary-precision rerun
  Int big = 1;
  for (int i = 0; i < 40; ++i) big *= 10;
  auto m = mk(2, 3, {1, 2, 3, 4, 5, 6});
  m.at(0, 0) = big;
  m.at(1, 2) = -big - 7;
  auto sp = smith_sparse(SparseMat::from_dense(m));
  auto se = smith_serial(SparseMat::from_dense(m));
  CHECK(sp.rank == se.rank);
  CHECK(sp.factors == se.factors);
  CHECK(sp.factors == dense_factors(m));
}

TEST_CASE("kernel basis is saturated") {
  Rng rng(7);
  for (int it = 0; it < 40; ++it) {
    long r = rng.uniform(1, 5), c = rng.uniform(1, 6);
    auto m = random_mat(rng, r, c, 4);
    auto k = kernel_basis(m);
    CHECK(k.rows == c);
    // A * K = 0
    if (k.cols > 0) {
      auto prod = mul(m, k);
      for (const auto& v : prod.a) CHECK(v == 0);
    }
    // rank-nullity over Q
    CHECK(oracle::rank_bareiss(m) + k.cols == c);
    // saturation: the basis spans a direct summand, so all factors are 1
    if (k.cols > 0) {
      auto s = smith_sparse(SparseMat::from_dense(k));
      CHECK(s.rank == k.cols);
      CHECK(s.nontrivial().empty());
    }
  }
}

TEST_CASE("linear solve distinguishes integral from rational") {
  // 2x = 1 has a rational solution only
  auto m = mk(1, 1, {2});
  auto full = solve_full(m, {Int(1)});
  CHECK(full.rational_solvable);
  CHECK(!full.x);
  CHECK(!solve(m, {Int(1)}));

  // inconsistent system
  auto m2 = mk(2, 1, {1, 1});
  auto r2 = solve_full(m2, {Int(0), Int(1)});
  CHECK(!r2.rational_solvable);

  // planted solutions come back verified
  Rng rng(99);
  for (int it = 0; it < 30; ++it) {
    long r = rng.uniform(1, 5), c = rng.uniform(1, 5);
    auto a = random_mat(rng, r, c, 4);
    std::vector<Int> x0(c);
    for (auto& v : x0) v = rng.uniform(-3, 3);
    std::vector<Int> b(r, Int(0));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) b[i] += a.at(i, j) * x0[j];
    auto x = solve(a, b);
    REQUIRE(x);
    for (long i = 0; i < r; ++i) {
      Int s = 0;
      for (long j = 0; j < c; ++j) s += a.at(i, j) * (*x)[j];
      CHECK(s == b[i]);
    }
  }
}

TEST_CASE("column hnf is canonical for the column span") {
  Rng rng(4711);
  for (int it = 0; it < 40; ++it) {
    long r = rng.uniform(1, 5), c = rng.uniform(1, 5);
    auto m = random_mat(rng, r, c, 4);
    auto h = column_hnf(m);
    // idempotent
    CHECK(column_hnf(h) == h);
    // pivots strictly descend the rows, positive, rows above pivots reduced
    long prev = -1;
    for (long j = 0; j < h.cols; ++j) {
      long p = -1;
      for (long i = 0; i < h.rows; ++i)
        if (h.at(i, j) != 0) { p = i; break; }
      REQUIRE(p >= 0);  // zero columns are dropped
      CHECK(p > prev);
      CHECK(h.at(p, j) > 0);
      for (long j2 = 0; j2 < j; ++j2) {
        CHECK(h.at(p, j2) >= 0);
        CHECK(h.at(p, j2) < h.at(p, j));
      }
      prev = p;
    }
    // doubling the generating set leaves the span, hence the form, unchanged
    DenseMat mm(r, 2 * c);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) {
        mm.at(i, j) = m.at(i, j);
        mm.at(i, c + j) = m.at(i, j);
      }
    CHECK(column_hnf(mm) == h);
  }
}

TEST_CASE("chain normalization of cyclic orders") {
  CHECK(chain_normalize({6, 4}) == std::vector<Int>{2, 12});
  CHECK(chain_normalize({2, 3}) == std::vector<Int>{6});
  CHECK(chain_normalize({1, 1, 1}).empty());
  CHECK(chain_normalize({4}) == std::vector<Int>{4});
  CHECK(chain_normalize({2, 2, 2}) == std::vector<Int>{2, 2, 2});

  Rng rng(13);
  for (int it = 0; it < 30; ++it) {
    std::vector<Int> ds(rng.uniform(1, 5));
    Int prod = 1;
    for (auto& d : ds) {
      d = rng.uniform(1, 12);
      prod *= d;
    }
    auto ch = chain_normalize(ds);
    Int prod2 = 1;
    for (size_t i = 0; i < ch.size(); ++i) {
      CHECK(ch[i] > 1);
      if (i + 1 < ch.size()) CHECK(ch[i + 1] % ch[i] == 0);
      prod2 *= ch[i];
    }
    CHECK(prod == prod2);
  }
}
