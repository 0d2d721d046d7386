#include "zalg/chain.hpp"

#include <cassert>
#include <sstream>

namespace zalg {

std::string FGAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (rank == 1) {
    sep();
    os << "Z";
  } else if (rank > 1) {
    sep();
    os << "Z^" << rank;
  }
  for (auto& t : torsion) {
    sep();
    os << "Z/" << t.get_str();
  }
  return os.str();
}

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  FGAbelianGroup s;
  s.rank = a.rank + b.rank;
  std::vector<Int> all = a.torsion;
  all.insert(all.end(), b.torsion.begin(), b.torsion.end());
  s.torsion = chain_normalize(std::move(all));
  return s;
}

long ChainComplexZ::dim(long n) const {
  auto it = dims.find(n);
  return it == dims.end() ? 0 : it->second;
}

SparseMat ChainComplexZ::boundary(long n) const {
  auto it = diff.find(n);
  if (it != diff.end()) return it->second;
  return SparseMat(dim(n - 1), dim(n));
}

void ChainComplexZ::set_dim(long n, long r) {
  if (r != 0) dims[n] = r;
}

void ChainComplexZ::set_boundary(long n, SparseMat m) {
  set_dim(n, m.cols);
  set_dim(n - 1, m.rows);
  if (m.nnz() != 0) diff[n] = std::move(m);
}

long ChainComplexZ::min_degree() const {
  for (auto& [n, r] : dims)
    if (r != 0) return n;
  return 0;
}

long ChainComplexZ::max_degree() const {
  long m = 0;
  bool any = false;
  for (auto& [n, r] : dims)
    if (r != 0) {
      m = n;
      any = true;
    }
  return any ? m : 0;
}

bool ChainComplexZ::validate(std::string* err) const {
  auto fail = [&](const std::string& s) {
    if (err) *err = s;
    return false;
  };
  for (auto& [n, m] : diff) {
    if (m.rows != dim(n - 1) || m.cols != dim(n))
      return fail("boundary shape mismatch at degree " + std::to_string(n));
    for (auto& cc : m.col) {
      long prev = -1;
      for (auto& [r, v] : cc) {
        if (r <= prev || r >= m.rows) return fail("bad sparse column");
        if (v == 0) return fail("explicit zero entry");
        prev = r;
      }
    }
  }
  for (auto& [n, m] : diff) {
    auto up = diff.find(n + 1);
    if (up == diff.end()) continue;
    if (!mul(m, up->second).is_zero())
      return fail("d o d != 0 at degree " + std::to_string(n + 1));
  }
  return true;
}

ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b) {
  ChainComplexZ s;
  std::map<long, char> degs;
  for (auto& [n, r] : a.dims) degs[n] = 1;
  for (auto& [n, r] : b.dims) degs[n] = 1;
  for (auto& [n, _] : degs) s.set_dim(n, a.dim(n) + b.dim(n));
  for (auto& [n, _] : degs) {
    SparseMat da = a.boundary(n), db = b.boundary(n);
    if (da.nnz() == 0 && db.nnz() == 0) continue;
    SparseMat m(a.dim(n - 1) + b.dim(n - 1), a.dim(n) + b.dim(n));
    for (long j = 0; j < da.cols; ++j) m.col[j] = da.col[j];
    for (long j = 0; j < db.cols; ++j) {
      auto& dst = m.col[da.cols + j];
      for (auto& [r, v] : db.col[j]) dst.emplace_back(r + da.rows, v);
    }
    s.diff[n] = std::move(m);
  }
  return s;
}

ChainComplexZ mapping_cone(const ChainComplexZ& A, const ChainComplexZ& B,
                           const std::map<long, SparseMat>& f) {
  ChainComplexZ c;
  std::map<long, char> degs;
  for (auto& [n, r] : A.dims) {
    degs[n] = 1;
    degs[n + 1] = 1;
  }
  for (auto& [n, r] : B.dims) degs[n] = 1;
  for (auto& [n, _] : degs) c.set_dim(n, A.dim(n - 1) + B.dim(n));
  for (auto& [n, _] : degs) {
    const long acols = A.dim(n - 1), bcols = B.dim(n);
    const long arows = A.dim(n - 2), brows = B.dim(n - 1);
    SparseMat m(arows + brows, acols + bcols);
    SparseMat da = A.boundary(n - 1);
    for (long j = 0; j < acols; ++j)
      for (auto& [r, v] : da.col[j]) m.col[j].emplace_back(r, -v);
    auto fit = f.find(n - 1);
    if (fit != f.end()) {
      assert(fit->second.rows == brows && fit->second.cols == acols);
      for (long j = 0; j < acols; ++j)
        for (auto& [r, v] : fit->second.col[j]) m.col[j].emplace_back(arows + r, -v);
    }
    SparseMat db = B.boundary(n);
    for (long j = 0; j < bcols; ++j)
      for (auto& [r, v] : db.col[j]) m.col[acols + j].emplace_back(arows + r, v);
    m.normalize();
    if (m.nnz() != 0) c.diff[n] = std::move(m);
  }
  return c;
}

ChainComplexZ scale_cone(const ChainComplexZ& C, const Int& m) {
  std::map<long, SparseMat> f;
  for (auto& [n, r] : C.dims) {
    SparseMat id(r, r);
    for (long i = 0; i < r; ++i) id.col[i].emplace_back(i, m);
    f[n] = std::move(id);
  }
  return mapping_cone(C, C, f);
}

ChainComplexZ with_coefficients(const ChainComplexZ& C, const FGAbelianGroup& A) {
  ChainComplexZ out;
  for (long i = 0; i < A.rank; ++i) out = direct_sum(out, C);
  for (auto& t : A.torsion) out = direct_sum(out, scale_cone(C, t));
  return out;
}

ChainComplexZ resolve(const PresentedComplex& P) {
  // reduce each relation matrix to a lattice basis, so the inclusion of the
  // relation complex is injective and the cone has the presented homology
  std::map<long, DenseMat> R;
  for (auto& [n, m] : P.R) {
    DenseMat h = column_hnf(m);
    if (h.cols != 0) R[n] = std::move(h);
  }
  ChainComplexZ gens;
  for (auto& [n, g] : P.gens) gens.set_dim(n, g);
  for (auto& [n, d] : P.D) gens.set_boundary(n, SparseMat::from_dense(d));

  ChainComplexZ rel;
  std::map<long, SparseMat> incl;
  for (auto& [n, r] : R) {
    rel.set_dim(n, r.cols);
    incl[n] = SparseMat::from_dense(r);
  }
  // lift the boundary through the relation bases: R_{n-1} E_n = D_n R_n
  for (auto& [n, rn] : R) {
    auto below = R.find(n - 1);
    auto dn = P.D.find(n);
    if (below == R.end() || dn == P.D.end()) continue;
    const DenseMat target = mul(dn->second, rn);
    SmithDecomp sd = smith_dense(below->second);
    DenseMat E(below->second.cols, rn.cols);
    bool nonzero = false;
    for (long j = 0; j < rn.cols; ++j) {
      std::vector<Int> b(target.rows);
      for (long i = 0; i < target.rows; ++i) b[i] = target.at(i, j);
      // solve via the one decomposition: y = d^-1 (U b), x = V y
      std::vector<Int> c(below->second.rows, Int(0));
      for (long i = 0; i < below->second.rows; ++i)
        for (long k = 0; k < below->second.rows; ++k)
          if (sd.U.at(i, k) != 0) c[i] += sd.U.at(i, k) * b[k];
      std::vector<Int> y(below->second.cols, Int(0));
      bool ok = true;
      for (long i = 0; i < below->second.rows; ++i) {
        if (i < sd.rank) {
          assert(c[i] % sd.d[i] == 0 && "boundary does not preserve relations");
          y[i] = c[i] / sd.d[i];
        } else if (c[i] != 0) {
          ok = false;
        }
      }
      assert(ok && "boundary does not preserve relations");
      (void)ok;
      for (long i = 0; i < below->second.cols; ++i) {
        Int xi(0);
        for (long k = 0; k < below->second.cols; ++k)
          if (sd.V.at(i, k) != 0) xi += sd.V.at(i, k) * y[k];
        E.at(i, j) = xi;
        if (xi != 0) nonzero = true;
      }
    }
    if (nonzero) rel.set_boundary(n, SparseMat::from_dense(E));
  }
  return mapping_cone(rel, gens, incl);
}

namespace {
SmithSummary run_engine(const SparseMat& m, Engine e) {
  return e == Engine::parallel ? smith_sparse(m) : smith_serial(m);
}
}  // namespace

FGAbelianGroup homology(const ChainComplexZ& C, long n, Engine e) {
  SmithSummary below = run_engine(C.boundary(n), e);
  SmithSummary above = run_engine(C.boundary(n + 1), e);
  FGAbelianGroup h;
  h.rank = C.dim(n) - below.rank - above.rank;
  assert(h.rank >= 0 && "not a complex");
  h.torsion = above.nontrivial();
  return h;
}

std::map<long, FGAbelianGroup> homology_range(const ChainComplexZ& C, long lo, long hi,
                                              Engine e) {
  std::map<long, SmithSummary> sm;
  for (long n = lo; n <= hi + 1; ++n) sm[n] = run_engine(C.boundary(n), e);
  std::map<long, FGAbelianGroup> out;
  for (long n = lo; n <= hi; ++n) {
    FGAbelianGroup h;
    h.rank = C.dim(n) - sm[n].rank - sm[n + 1].rank;
    assert(h.rank >= 0 && "not a complex");
    h.torsion = sm[n + 1].nontrivial();
    out[n] = std::move(h);
  }
  return out;
}

}  // namespace zalg
