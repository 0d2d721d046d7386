#pragma once

// Exact integer linear algebra. Two engines share this header:
//  - a dense, serial, transform-carrying Smith normal form used as the
//    reference implementation and as the general solver for small systems;
//  - a sparse elimination kernel (unit-pivot Schur reduction with a dense
//    tail) that only reports rank + invariant factors, parallelizes its
//    column updates with OpenMP, and runs on int64 until an overflow check
//    trips, after which it reruns on arbitrary precision.
// Invariant factors are unique, so both engines and both scalar types must
// agree bit for bit; tests hold them to that.

#include "zalg/intx.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace zalg {

struct DenseMat {
  long rows = 0, cols = 0;
  std::vector<Int> a;  // row-major
  DenseMat() = default;
  DenseMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Int& at(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(long r, long c) const { return a[static_cast<size_t>(r) * cols + c]; }
  static DenseMat identity(long n);
  bool operator==(const DenseMat&) const = default;
};

DenseMat mul(const DenseMat& x, const DenseMat& y);

// Column-major sparse matrix; each column holds (row, value) sorted by row.
struct SparseMat {
  long rows = 0, cols = 0;
  std::vector<std::vector<std::pair<long, Int>>> col;
  SparseMat() = default;
  SparseMat(long r, long c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}
  void add(long r, long c, const Int& v);  // accumulates duplicates
  void normalize();                        // sort columns, merge, drop zeros
  long nnz() const;
  DenseMat dense() const;
  static SparseMat from_dense(const DenseMat& m);
  bool is_zero() const;
};

SparseMat mul(const SparseMat& x, const SparseMat& y);

// U * A * V = diag(d), U and V unimodular, d positive with d[i] | d[i+1].
struct SmithDecomp {
  DenseMat U, V;
  std::vector<Int> d;  // length min(rows, cols); zeros past rank
  long rank = 0;
};

SmithDecomp smith_dense(DenseMat m);

struct SmithSummary {
  long rank = 0;
  std::vector<Int> factors;  // length == rank, divisibility chain, each >= 1
  std::vector<Int> nontrivial() const;  // the factors > 1
};

SmithSummary smith_sparse(const SparseMat& m);  // parallel kernel
SmithSummary smith_serial(const SparseMat& m);  // dense reference path

struct SolveResult {
  std::optional<std::vector<Int>> x;  // integral solution if one exists
  bool rational_solvable = false;     // solvable over the rationals
};

SolveResult solve_full(const DenseMat& A, const std::vector<Int>& b);
std::optional<std::vector<Int>> solve(const DenseMat& A, const std::vector<Int>& b);

// Saturated kernel: columns form a Z-basis of {x : A x = 0}.
DenseMat kernel_basis(const DenseMat& A);

// Canonical basis of the column span: pivot rows strictly increasing down
// the columns, pivots positive, entries of a pivot row in earlier columns
// reduced into [0, pivot). Zero columns dropped.
DenseMat column_hnf(DenseMat m);

// Invariant-factor chain of a direct sum of cyclic groups Z/ds[i] given in
// any order, by pairwise gcd/lcm normalization. Entries must be >= 1; 1s are
// dropped from the result.
std::vector<Int> chain_normalize(std::vector<Int> ds);

}  // namespace zalg
