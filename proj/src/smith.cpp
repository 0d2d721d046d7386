#include "zalg/smith.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zalg {

DenseMat DenseMat::identity(long n) {
  DenseMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

DenseMat mul(const DenseMat& x, const DenseMat& y) {
  assert(x.cols == y.rows);
  DenseMat r(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (long j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

void SparseMat::add(long r, long c, const Int& v) {
  if (v == 0) return;
  col[c].emplace_back(r, v);
}

void SparseMat::normalize() {
  for (auto& cc : col) {
    std::sort(cc.begin(), cc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<long, Int>> out;
    out.reserve(cc.size());
    for (auto& e : cc) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(e);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    cc = std::move(out);
  }
}

long SparseMat::nnz() const {
  long n = 0;
  for (auto& cc : col) n += static_cast<long>(cc.size());
  return n;
}

DenseMat SparseMat::dense() const {
  DenseMat m(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (auto& [r, v] : col[j]) m.at(r, j) += v;
  return m;
}

SparseMat SparseMat::from_dense(const DenseMat& m) {
  SparseMat s(m.rows, m.cols);
  for (long j = 0; j < m.cols; ++j)
    for (long i = 0; i < m.rows; ++i)
      if (m.at(i, j) != 0) s.col[j].emplace_back(i, m.at(i, j));
  return s;
}

bool SparseMat::is_zero() const {
  for (auto& cc : col)
    if (!cc.empty()) return false;
  return true;
}

SparseMat mul(const SparseMat& x, const SparseMat& y) {
  assert(x.cols == y.rows);
  SparseMat r(x.rows, y.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (long j = 0; j < y.cols; ++j) {
    std::vector<std::pair<long, Int>> acc;
    for (auto& [k, w] : y.col[j])
      for (auto& [i, v] : x.col[k]) acc.emplace_back(i, v * w);
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<long, Int>> out;
    for (auto& e : acc) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(e);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    r.col[j] = std::move(out);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dense Smith form. Classic pivot-improvement algorithm: bring the smallest
// entry to the pivot slot, clear its row and column by division with
// remainder (remainders shrink the pivot, so this terminates), then force
// the pivot to divide the rest of the block before moving on. Transform
// bookkeeping is optional so the sparse kernel's dense tail can skip it.

namespace {

template <bool WithTransforms>
SmithDecomp smith_dense_impl(DenseMat m) {
  SmithDecomp s;
  const long rows = m.rows, cols = m.cols;
  if constexpr (WithTransforms) {
    s.U = DenseMat::identity(rows);
    s.V = DenseMat::identity(cols);
  }
  const long lim = std::min(rows, cols);
  s.d.assign(lim, Int(0));

  auto swap_rows = [&](long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    if constexpr (WithTransforms)
      for (long c = 0; c < rows; ++c) std::swap(s.U.at(i, c), s.U.at(j, c));
  };
  auto swap_cols = [&](long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    if constexpr (WithTransforms)
      for (long r = 0; r < cols; ++r) std::swap(s.V.at(r, i), s.V.at(r, j));
  };
  auto row_sub = [&](long i, long j, const Int& q) {  // row_i -= q * row_j
    if (q == 0) return;
    for (long c = 0; c < cols; ++c)
      if (m.at(j, c) != 0) m.at(i, c) -= q * m.at(j, c);
    if constexpr (WithTransforms)
      for (long c = 0; c < rows; ++c)
        if (s.U.at(j, c) != 0) s.U.at(i, c) -= q * s.U.at(j, c);
  };
  auto col_sub = [&](long i, long j, const Int& q) {  // col_i -= q * col_j
    if (q == 0) return;
    for (long r = 0; r < rows; ++r)
      if (m.at(r, j) != 0) m.at(r, i) -= q * m.at(r, j);
    if constexpr (WithTransforms)
      for (long r = 0; r < cols; ++r)
        if (s.V.at(r, j) != 0) s.V.at(r, i) -= q * s.V.at(r, j);
  };
  auto negate_row = [&](long i) {
    for (long c = 0; c < cols; ++c) m.at(i, c) = -m.at(i, c);
    if constexpr (WithTransforms)
      for (long c = 0; c < rows; ++c) s.U.at(i, c) = -s.U.at(i, c);
  };

  long t = 0;
  for (; t < lim; ++t) {
    // smallest |entry| in the remaining block, ties to smallest (row, col)
    long bi = -1, bj = -1;
    Int best;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j) {
        const Int& v = m.at(i, j);
        if (v == 0) continue;
        Int av = abs(v);
        if (bi < 0 || av < best) {
          best = av;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    while (true) {
      bool restart = false;
      for (long i = t + 1; i < rows && !restart; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);
        row_sub(i, t, q);
        if (m.at(i, t) != 0) {  // remainder is strictly smaller, promote it
          swap_rows(i, t);
          restart = true;
        }
      }
      if (restart) continue;
      for (long j = t + 1; j < cols && !restart; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        col_sub(j, t, q);
        if (m.at(t, j) != 0) {
          swap_cols(j, t);
          restart = true;
        }
      }
      if (restart) continue;
      // pivot must divide every remaining entry for the chain property
      bool fixed = false;
      for (long i = t + 1; i < rows && !fixed; ++i)
        for (long j = t + 1; j < cols && !fixed; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            row_sub(t, i, Int(-1));  // fold row i into row t, then re-clear
            fixed = true;
          }
      if (!fixed) break;
    }
    if (m.at(t, t) < 0) negate_row(t);
    s.d[t] = m.at(t, t);
  }
  s.rank = t;
  return s;
}

}  // namespace

SmithDecomp smith_dense(DenseMat m) { return smith_dense_impl<true>(std::move(m)); }

std::vector<Int> SmithSummary::nontrivial() const {
  std::vector<Int> out;
  for (auto& f : factors)
    if (f > 1) out.push_back(f);
  return out;
}

// ---------------------------------------------------------------------------
// Sparse kernel. Repeated sweeps collect every +-1 entry as a pivot
// candidate, cheapest (Markowitz cost) first. Eliminating a unit pivot at
// (r, c) clears row r from all other columns by column operations; column c
// is then dead weight (clearing it would only touch itself), so the live
// block shrinks by one row and one column per pivot while the Smith form
// just gains a unit factor. Whatever survives with no unit entries goes
// through the dense algorithm above. Column updates are independent of one
// another, which is where OpenMP comes in; pivot choice stays serial, so
// results do not depend on the thread count.

namespace {

template <class T>
struct Scalar;

template <>
struct Scalar<std::int64_t> {
  static std::int64_t from_int(const Int& v) {
    if (!v.fits_slong_p()) throw Int64Overflow();
    return static_cast<std::int64_t>(v.get_si());
  }
  static bool unit(std::int64_t v) { return v == 1 || v == -1; }
  static std::int64_t mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
  static std::int64_t sub(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
};

template <>
struct Scalar<Int> {
  static Int from_int(const Int& v) { return v; }
  static bool unit(const Int& v) { return v == 1 || v == -1; }
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int sub(const Int& a, const Int& b) { return a - b; }
};

template <class T>
struct ColUpdate {
  std::vector<std::pair<long, T>> result;
  std::vector<long> added, removed;
  bool overflow = false;
};

// dst - q * src, merging sorted columns; records created/cancelled rows.
template <class T>
ColUpdate<T> sub_scaled(const std::vector<std::pair<long, T>>& dst,
                        const std::vector<std::pair<long, T>>& src, const T& q) {
  ColUpdate<T> u;
  u.result.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      u.result.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      T v = Scalar<T>::mul(q, src[j].second);
      v = Scalar<T>::sub(T(0), v);
      if (!(v == T(0))) {
        u.result.emplace_back(src[j].first, std::move(v));
        u.added.push_back(src[j].first);
      }
      ++j;
    } else {
      T v = Scalar<T>::sub(dst[i].second, Scalar<T>::mul(q, src[j].second));
      if (v == T(0))
        u.removed.push_back(dst[i].first);
      else
        u.result.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return u;
}

template <class T>
SmithSummary smith_sparse_impl(const SparseMat& input) {
  const long R = input.rows, C = input.cols;
  std::vector<std::vector<std::pair<long, T>>> col(C);
  for (long j = 0; j < C; ++j) {
    col[j].reserve(input.col[j].size());
    for (auto& [r, v] : input.col[j]) col[j].emplace_back(r, Scalar<T>::from_int(v));
  }
  std::vector<char> row_live(R, 1), col_live(C, 1);
  std::vector<long> row_nnz(R, 0);
  std::vector<std::vector<long>> row_cols(R);  // hint index, may hold stale ids
  for (long j = 0; j < C; ++j)
    for (auto& [r, v] : col[j]) {
      ++row_nnz[r];
      row_cols[r].push_back(j);
    }

  long units = 0;
  while (true) {
    struct Cand {
      long cost, r, c;
    };
    std::vector<Cand> cands;
    for (long j = 0; j < C; ++j) {
      if (!col_live[j]) continue;
      const long cn = static_cast<long>(col[j].size()) - 1;
      for (auto& [r, v] : col[j])
        if (Scalar<T>::unit(v)) cands.push_back({(row_nnz[r] - 1) * cn, r, j});
    }
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return std::tie(a.cost, a.r, a.c) < std::tie(b.cost, b.r, b.c);
    });

    bool progress = false;
    for (auto& cd : cands) {
      if (!row_live[cd.r] || !col_live[cd.c]) continue;
      // entry may have changed since the sweep started; re-verify
      auto& pc = col[cd.c];
      auto it = std::lower_bound(pc.begin(), pc.end(), cd.r,
                                 [](const auto& e, long r) { return e.first < r; });
      if (it == pc.end() || it->first != cd.r || !Scalar<T>::unit(it->second)) continue;
      const T pivot = it->second;

      // live columns other than c holding row r
      auto& hint = row_cols[cd.r];
      std::sort(hint.begin(), hint.end());
      hint.erase(std::unique(hint.begin(), hint.end()), hint.end());
      std::vector<std::pair<long, T>> affected;  // (col, entry at row r)
      for (long j : hint) {
        if (j == cd.c || !col_live[j]) continue;
        auto jt = std::lower_bound(col[j].begin(), col[j].end(), cd.r,
                                   [](const auto& e, long r) { return e.first < r; });
        if (jt != col[j].end() && jt->first == cd.r) affected.emplace_back(j, jt->second);
      }

      std::vector<ColUpdate<T>> upd(affected.size());
      bool overflow = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
      for (long k = 0; k < static_cast<long>(affected.size()); ++k) {
        try {
          // q = a / pivot; pivot is +-1 so q = a * pivot
          T q = Scalar<T>::mul(affected[k].second, pivot);
          upd[k] = sub_scaled(col[affected[k].first], pc, q);
        } catch (const Int64Overflow&) {
          upd[k].overflow = true;
#ifdef _OPENMP
#pragma omp atomic write
#endif
          overflow = true;
        }
      }
      if (overflow) throw Int64Overflow();

      for (size_t k = 0; k < affected.size(); ++k) {
        const long j = affected[k].first;
        col[j] = std::move(upd[k].result);
        for (long ar : upd[k].added) {
          ++row_nnz[ar];
          row_cols[ar].push_back(j);
        }
        for (long rr : upd[k].removed) --row_nnz[rr];  // includes row r itself
      }
      // retire the pivot column's remaining entries and the pivot cross
      for (auto& [i, w] : pc)
        if (i != cd.r) --row_nnz[i];
      col_live[cd.c] = 0;
      row_live[cd.r] = 0;
      col[cd.c].clear();
      ++units;
      progress = true;
    }
    if (!progress) break;
  }

  // dense tail: whatever kept no unit entries
  std::vector<long> live_r, live_c;
  for (long i = 0; i < R; ++i)
    if (row_live[i]) live_r.push_back(i);
  for (long j = 0; j < C; ++j)
    if (col_live[j] && !col[j].empty()) live_c.push_back(j);

  SmithSummary out;
  out.rank = units;
  out.factors.assign(units, Int(1));
  if (!live_c.empty()) {
    std::vector<long> rmap(R, -1);
    for (size_t i = 0; i < live_r.size(); ++i) rmap[live_r[i]] = static_cast<long>(i);
    DenseMat tail(static_cast<long>(live_r.size()), static_cast<long>(live_c.size()));
    for (size_t j = 0; j < live_c.size(); ++j)
      for (auto& [r, v] : col[live_c[j]]) {
        assert(rmap[r] >= 0);
        if constexpr (std::is_same_v<T, std::int64_t>)
          tail.at(rmap[r], static_cast<long>(j)) = Int(static_cast<long>(v));
        else
          tail.at(rmap[r], static_cast<long>(j)) = v;
      }
    SmithDecomp td = smith_dense_impl<false>(std::move(tail));
    out.rank += td.rank;
    for (long i = 0; i < td.rank; ++i) out.factors.push_back(td.d[i]);
  }
  return out;
}

}  // namespace

SmithSummary smith_sparse(const SparseMat& m) {
  try {
    return smith_sparse_impl<std::int64_t>(m);
  } catch (const Int64Overflow&) {
    return smith_sparse_impl<Int>(m);
  }
}

SmithSummary smith_serial(const SparseMat& m) {
  SmithDecomp d = smith_dense_impl<false>(m.dense());
  SmithSummary s;
  s.rank = d.rank;
  s.factors.assign(d.d.begin(), d.d.begin() + d.rank);
  return s;
}

// ---------------------------------------------------------------------------

SolveResult solve_full(const DenseMat& A, const std::vector<Int>& b) {
  assert(static_cast<long>(b.size()) == A.rows);
  SmithDecomp s = smith_dense(A);
  SolveResult res;
  // c = U b
  std::vector<Int> c(A.rows, Int(0));
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.rows; ++k)
      if (s.U.at(i, k) != 0) c[i] += s.U.at(i, k) * b[k];
  for (long i = s.rank; i < A.rows; ++i)
    if (c[i] != 0) return res;  // not even rationally solvable
  res.rational_solvable = true;
  std::vector<Int> y(A.cols, Int(0));
  for (long i = 0; i < s.rank; ++i) {
    if (c[i] % s.d[i] != 0) return res;  // rational only
    y[i] = c[i] / s.d[i];
  }
  std::vector<Int> x(A.cols, Int(0));
  for (long i = 0; i < A.cols; ++i)
    for (long k = 0; k < A.cols; ++k)
      if (s.V.at(i, k) != 0) x[i] += s.V.at(i, k) * y[k];
  res.x = std::move(x);
  return res;
}

std::optional<std::vector<Int>> solve(const DenseMat& A, const std::vector<Int>& b) {
  return solve_full(A, b).x;
}

DenseMat kernel_basis(const DenseMat& A) {
  SmithDecomp s = smith_dense(A);
  const long k = A.cols - s.rank;
  DenseMat K(A.cols, k);
  for (long j = 0; j < k; ++j)
    for (long i = 0; i < A.cols; ++i) K.at(i, j) = s.V.at(i, s.rank + j);
  return K;
}

namespace {
Int fdiv(const Int& a, const Int& b) {  // floor division
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
}  // namespace

DenseMat column_hnf(DenseMat m) {
  const long rows = m.rows, cols = m.cols;
  auto col_sub = [&](long i, long j, const Int& q) {
    if (q == 0) return;
    for (long r = 0; r < rows; ++r)
      if (m.at(r, j) != 0) m.at(r, i) -= q * m.at(r, j);
  };
  auto swap_cols = [&](long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows; ++r) std::swap(m.at(r, i), m.at(r, j));
  };
  long pc = 0;
  for (long pr = 0; pr < rows && pc < cols; ++pr) {
    while (true) {
      long bj = -1;
      Int best;
      for (long j = pc; j < cols; ++j) {
        const Int& v = m.at(pr, j);
        if (v == 0) continue;
        Int av = abs(v);
        if (bj < 0 || av < best) {
          best = av;
          bj = j;
        }
      }
      if (bj < 0) break;  // row has no pivot among remaining columns
      swap_cols(pc, bj);
      bool clean = true;
      for (long j = pc + 1; j < cols; ++j) {
        if (m.at(pr, j) == 0) continue;
        Int q = m.at(pr, j) / m.at(pr, pc);
        col_sub(j, pc, q);
        if (m.at(pr, j) != 0) clean = false;  // remainder survives, loop again
      }
      if (clean) {
        if (m.at(pr, pc) < 0)
          for (long r = 0; r < rows; ++r) m.at(r, pc) = -m.at(r, pc);
        for (long j = 0; j < pc; ++j) {
          Int q = fdiv(m.at(pr, j), m.at(pr, pc));
          col_sub(j, pc, q);
        }
        ++pc;
        break;
      }
    }
  }
  DenseMat out(rows, pc);
  for (long j = 0; j < pc; ++j)
    for (long r = 0; r < rows; ++r) out.at(r, j) = m.at(r, j);
  return out;
}

std::vector<Int> chain_normalize(std::vector<Int> ds) {
  for (auto& d : ds) assert(d >= 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < ds.size(); ++i)
      for (size_t j = i + 1; j < ds.size(); ++j) {
        Int g = gcd(ds[i], ds[j]);
        if (g != ds[i]) {
          Int l = divexact(ds[i], g) * ds[j];
          ds[i] = g;
          ds[j] = l;
          changed = true;
        }
      }
  }
  std::vector<Int> out;
  for (auto& d : ds)
    if (d > 1) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zalg
