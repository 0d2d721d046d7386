#include "zalg/homology.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace zalg {

namespace {

typedef std::vector<long> Tup;

bool groups_match(const FiniteGroup& a, const FiniteGroup& b) {
  return a.n == b.n && a.id == b.id && a.table == b.table;
}

long pos_sorted(const std::vector<long>& v, long x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return -1;
  return it - v.begin();
}

int pos_sorted_int(const std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x)
    throw HomologyError("element is missing from the sorted list");
  return static_cast<int>(it - v.begin());
}

void check_cap(long count, const char* what) {
  if (count > kTupleCap)
    throw HomologyError(std::string(what) + " exceeds the tuple cap (" +
                        std::to_string(count) + " > " + std::to_string(kTupleCap) + ")");
}

// Boundary of a tuple complex built from adjacent merges. twist >= 0 routes
// the first merge through the group action (coefficients in A_g); wrap adds
// the last face, which multiplies the final slot into the leading one.
SparseMat tuple_boundary(const BasedRing& r, int twist, bool wrap,
                         const TupleSpace& lo, const TupleSpace& hi) {
  const int n = hi.len - 1;
  SparseMat m(lo.size(), hi.size());
  std::atomic<bool> bad{false};
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < hi.size(); ++j) {
    const Tup& x = hi.tuples[j];
    Tup y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      LinComb p;
      if (i == 0 && twist >= 0)
        p = r.mul(lc_single(x[0]), r.act(twist, lc_single(x[1])));
      else
        p.assign(r.prod_begin(x[i], x[i + 1]), r.prod_end(x[i], x[i + 1]));
      for (int k = 0; k < n; ++k) y[k] = x[k < i ? k : k + 1];
      for (const auto& [b, cv] : p) {
        y[i] = b;
        const long id = lo.id_of(y);
        if (id < 0) {
          bad.store(true);
          continue;
        }
        m.add(id, j, (i & 1) ? -cv : cv);
      }
    }
    if (wrap && n >= 1) {
      LinComb p(r.prod_begin(x[n], x[0]), r.prod_end(x[n], x[0]));
      for (int k = 1; k < n; ++k) y[k] = x[k];
      for (const auto& [b, cv] : p) {
        y[0] = b;
        const long id = lo.id_of(y);
        if (id < 0) {
          bad.store(true);
          continue;
        }
        m.add(id, j, (n & 1) ? -cv : cv);
      }
    }
  }
  if (bad.load()) throw HomologyError("a face left the tuple space");
  m.normalize();
  return m;
}

ChainComplexZ tuple_chain(const BasedRing& r, int twist, bool wrap,
                          const std::vector<TupleSpace>& deg) {
  ChainComplexZ c;
  for (size_t n = 0; n < deg.size(); ++n) c.set_dim(static_cast<long>(n), deg[n].size());
  for (size_t n = 1; n < deg.size(); ++n)
    c.set_boundary(static_cast<long>(n), tuple_boundary(r, twist, wrap, deg[n - 1], deg[n]));
  std::string err;
  if (!c.validate(&err)) throw HomologyError("tuple complex: " + err);
  return c;
}

std::vector<FGAbelianGroup> range_vec(const ChainComplexZ& c, long lo, long hi, Engine e) {
  auto m = homology_range(c, lo, hi, e);
  std::vector<FGAbelianGroup> out;
  for (long n = lo; n <= hi; ++n) out.push_back(m.at(n));
  return out;
}

std::string group_list(const std::vector<FGAbelianGroup>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << "H" << i << "=" << v[i].to_string();
  }
  return os.str();
}

}  // namespace

long TupleSpace::id_of(const std::vector<long>& t) const {
  auto it = index.find(t);
  return it == index.end() ? -1 : it->second;
}

TupleSpace full_tuples(long rank, int len) {
  if (rank < 0 || len < 1) throw HomologyError("bad tuple space shape");
  TupleSpace ts;
  ts.rank_base = rank;
  ts.len = len;
  if (rank == 0) return ts;
  long total = 1;
  for (int i = 0; i < len; ++i) {
    total *= rank;
    check_cap(total, "tuple basis");
  }
  ts.tuples.reserve(static_cast<size_t>(total));
  Tup t(static_cast<size_t>(len), 0);
  for (long id = 0; id < total; ++id) {
    ts.tuples.push_back(t);
    ts.index.emplace(t, id);
    for (int i = len - 1; i >= 0; --i) {
      if (++t[i] < rank) break;
      t[i] = 0;
    }
  }
  return ts;
}

TupleSpace nerve_tuples(const BasedRing& a, int len) {
  if (!a.grading) return full_tuples(a.rank(), len);
  if (len < 1) throw HomologyError("bad tuple space shape");
  TupleSpace ts;
  ts.rank_base = a.rank();
  ts.len = len;
  if (a.rank() == 0) return ts;
  const auto& st = a.grading->srctgt;
  std::vector<std::vector<long>> by_tgt(static_cast<size_t>(a.grading->objects));
  for (long i = 0; i < a.rank(); ++i) by_tgt[st[i].second].push_back(i);
  // lexicographic DFS; slot i+1 must end where slot i starts, cyclically
  Tup t(static_cast<size_t>(len));
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == len) {
      if (st[t[len - 1]].first != st[t[0]].second) return;
      check_cap(ts.size() + 1, "nerve tuple basis");
      ts.index.emplace(t, ts.size());
      ts.tuples.push_back(t);
      return;
    }
    if (depth == 0) {
      for (long b = 0; b < a.rank(); ++b) {
        t[0] = b;
        self(self, 1);
      }
    } else {
      for (long b : by_tgt[st[t[depth - 1]].first]) {
        t[depth] = b;
        self(self, depth + 1);
      }
    }
  };
  rec(rec, 0);
  return ts;
}

SparseMat cyclic_t(const TupleSpace& ts) {
  const int n = ts.len - 1;
  const Int s = (n & 1) ? -1 : 1;
  SparseMat m(ts.size(), ts.size());
  for (long j = 0; j < ts.size(); ++j) {
    Tup y(static_cast<size_t>(ts.len));
    y[0] = ts.tuples[j][n];
    for (int i = 0; i < n; ++i) y[i + 1] = ts.tuples[j][i];
    const long id = ts.id_of(y);
    if (id < 0) throw HomologyError("tuple space is not rotation closed");
    m.add(id, j, s);
  }
  m.normalize();
  return m;
}

ChainComplexZ bar_complex(const BasedRing& a, long top) {
  if (top < 0) throw HomologyError("bar complex needs top >= 0");
  std::vector<TupleSpace> deg;
  for (long n = 0; n <= top; ++n) deg.push_back(full_tuples(a.rank(), static_cast<int>(n) + 1));
  return tuple_chain(a, -1, false, deg);
}

BarProbe bar_tor_probe(const BasedRing& a, const FGAbelianGroup& m, long top) {
  BarProbe out;
  out.top = top;
  ChainComplexZ c = with_coefficients(bar_complex(a, top + 1), m);
  out.h = range_vec(c, 0, top, Engine::parallel);
  out.vanishes = true;
  for (const auto& g : out.h) out.vanishes = out.vanishes && g.is_zero();
  std::ostringstream os;
  os << "bar complex of a rank-" << a.rank() << " ring, coefficients " << m.to_string()
     << ", built through degree " << (top + 1) << "; " << group_list(out.h);
  out.detail = os.str();
  return out;
}

// --- Hochschild-type complexes ----------------------------------------------

HochschildComplex hochschild_complex(std::shared_ptr<const BasedRing> a, long top) {
  if (!a) throw HomologyError("null ring");
  if (top < 0) throw HomologyError("need top >= 0");
  HochschildComplex hc;
  hc.ring = a;
  hc.top = top;
  if (a->is_unital()) {
    hc.tuple_ring = a;
    for (long n = 0; n <= top; ++n)
      hc.deg.push_back(full_tuples(a->rank(), static_cast<int>(n) + 1));
  } else {
    // slots over the unitalization; the all-unit tuple spans the image of
    // the base ring's complex and is the last one in lexicographic order
    hc.tuple_ring = std::make_shared<BasedRing>(unitalize(*a));
    hc.via_unitalization = true;
    for (long n = 0; n <= top; ++n) {
      TupleSpace ts = full_tuples(hc.tuple_ring->rank(), static_cast<int>(n) + 1);
      ts.index.erase(ts.tuples.back());
      ts.tuples.pop_back();
      hc.deg.push_back(std::move(ts));
    }
  }
  hc.c = tuple_chain(*hc.tuple_ring, -1, true, hc.deg);
  return hc;
}

HochschildComplex hochschild_twisted(std::shared_ptr<const BasedRing> a, int g, long top) {
  if (!a) throw HomologyError("null ring");
  if (!a->acting_group || g < 0 || g >= a->acting_group->n)
    throw HomologyError("twisted coefficients need a group element acting on the ring");
  if (!a->is_unital()) throw HomologyError("twisted coefficients need a unital ring");
  if (top < 0) throw HomologyError("need top >= 0");
  HochschildComplex hc;
  hc.ring = a;
  hc.tuple_ring = a;
  hc.top = top;
  hc.twist = g;
  for (long n = 0; n <= top; ++n)
    hc.deg.push_back(full_tuples(a->rank(), static_cast<int>(n) + 1));
  hc.c = tuple_chain(*a, g, true, hc.deg);
  return hc;
}

HochschildComplex hochschild_nerve(std::shared_ptr<const BasedRing> a, long top) {
  if (!a) throw HomologyError("null ring");
  if (!a->grading) return hochschild_complex(a, top);
  if (top < 0) throw HomologyError("need top >= 0");
  HochschildComplex hc;
  hc.ring = a;
  hc.tuple_ring = a;
  hc.top = top;
  for (long n = 0; n <= top; ++n) hc.deg.push_back(nerve_tuples(*a, static_cast<int>(n) + 1));
  hc.c = tuple_chain(*a, -1, true, hc.deg);
  return hc;
}

ConjugacyParts split_conjugacy(const HochschildComplex& hc, const FiniteGroup& g,
                               const std::vector<int>& group_of) {
  if (static_cast<long>(group_of.size()) != hc.tuple_ring->rank())
    throw HomologyError("group_of must label every tuple-ring basis element");
  for (int e : group_of)
    if (e < 0 || e >= g.n) throw HomologyError("group_of entry out of range");
  ConjugacyParts out;
  out.top = hc.top;
  out.classes = conjugacy_classes(g);
  const long nc = static_cast<long>(out.classes.size());
  std::vector<int> class_of(static_cast<size_t>(g.n), -1);
  for (long ci = 0; ci < nc; ++ci)
    for (int e : out.classes[ci]) class_of[e] = static_cast<int>(ci);

  // class of a tuple: conjugacy class of the ordered product of components
  std::vector<std::vector<int>> part(hc.deg.size());
  for (size_t n = 0; n < hc.deg.size(); ++n) {
    part[n].resize(static_cast<size_t>(hc.deg[n].size()));
    for (long j = 0; j < hc.deg[n].size(); ++j) {
      int prod = g.id;
      for (long b : hc.deg[n].tuples[j]) prod = g.mul(prod, group_of[b]);
      part[n][j] = class_of[prod];
    }
  }

  out.ranks.assign(static_cast<size_t>(nc), std::vector<long>(hc.deg.size(), 0));
  for (size_t n = 0; n < hc.deg.size(); ++n)
    for (int ci : part[n]) ++out.ranks[ci][n];

  out.closed_under_b = true;
  for (size_t n = 1; n < hc.deg.size(); ++n) {
    const SparseMat& d = hc.c.boundary(static_cast<long>(n));
    for (long j = 0; j < d.cols; ++j)
      for (const auto& [r, v] : d.col[j])
        if (part[n - 1][r] != part[n][j]) out.closed_under_b = false;
  }
  out.closed_under_t = true;
  for (size_t n = 0; n < hc.deg.size(); ++n) {
    const SparseMat t = cyclic_t(hc.deg[n]);
    for (long j = 0; j < t.cols; ++j)
      for (const auto& [r, v] : t.col[j])
        if (part[n][r] != part[n][j]) out.closed_under_t = false;
  }
  out.ranks_additive = true;
  for (size_t n = 0; n < hc.deg.size(); ++n) {
    long sum = 0;
    for (long ci = 0; ci < nc; ++ci) sum += out.ranks[ci][n];
    if (sum != hc.deg[n].size()) out.ranks_additive = false;
  }

  // per-part homology; the split is a direct sum of subcomplexes
  out.h.resize(static_cast<size_t>(nc));
  if (out.closed_under_b && out.top >= 1) {
    for (long ci = 0; ci < nc; ++ci) {
      std::vector<std::vector<long>> keep(hc.deg.size());
      for (size_t n = 0; n < hc.deg.size(); ++n)
        for (long j = 0; j < hc.deg[n].size(); ++j)
          if (part[n][j] == ci) keep[n].push_back(j);
      ChainComplexZ sub;
      for (size_t n = 0; n < keep.size(); ++n)
        sub.set_dim(static_cast<long>(n), static_cast<long>(keep[n].size()));
      for (size_t n = 1; n < keep.size(); ++n) {
        const SparseMat& d = hc.c.boundary(static_cast<long>(n));
        SparseMat s(static_cast<long>(keep[n - 1].size()), static_cast<long>(keep[n].size()));
        for (long j = 0; j < static_cast<long>(keep[n].size()); ++j)
          for (const auto& [r, v] : d.col[keep[n][j]])
            s.add(pos_sorted(keep[n - 1], r), j, v);
        s.normalize();
        sub.set_boundary(static_cast<long>(n), s);
      }
      out.h[ci] = range_vec(sub, 0, out.top - 1, Engine::parallel);
    }
  }

  std::ostringstream os;
  os << nc << " classes; per-class ranks:";
  for (long ci = 0; ci < nc; ++ci) {
    os << " [";
    for (size_t n = 0; n < out.ranks[ci].size(); ++n)
      os << (n ? "," : "") << out.ranks[ci][n];
    os << "]";
  }
  os << "; closed under b: " << (out.closed_under_b ? "yes" : "no")
     << ", under t: " << (out.closed_under_t ? "yes" : "no");
  out.detail = os.str();
  return out;
}

FGAbelianGroup cyclic_hc(std::shared_ptr<const BasedRing> a, long n, Engine e) {
  if (!a) throw HomologyError("null ring");
  if (n < 0) throw HomologyError("need n >= 0");
  const long width = n + 1;  // columns 0..n+1, rows 0..n+1, p + q <= n+1
  std::vector<TupleSpace> row;
  for (long q = 0; q <= width; ++q) row.push_back(full_tuples(a->rank(), static_cast<int>(q) + 1));
  std::vector<SparseMat> b_mat(static_cast<size_t>(width) + 1), bp_mat(b_mat.size()),
      lam(b_mat.size()), nrm(b_mat.size());
  for (long q = 0; q <= width; ++q) {
    if (q >= 1) {
      b_mat[q] = tuple_boundary(*a, -1, true, row[q - 1], row[q]);
      bp_mat[q] = tuple_boundary(*a, -1, false, row[q - 1], row[q]);
    }
    lam[q] = cyclic_t(row[q]);
    // N = sum of the q+1 powers of the signed rotation
    SparseMat acc(row[q].size(), row[q].size());
    for (long j = 0; j < row[q].size(); ++j) {
      Tup cur = row[q].tuples[j];
      Int sgn = 1;
      const Int rot = (q & 1) ? -1 : 1;
      for (long i = 0; i <= q; ++i) {
        acc.add(row[q].id_of(cur), j, sgn);
        std::rotate(cur.begin(), cur.begin() + (cur.size() - 1), cur.end());
        sgn *= rot;
      }
    }
    acc.normalize();
    nrm[q] = acc;
  }

  // total complex of the first-quadrant bicomplex, degrees 0..n+1
  auto rank_of = [&](long m) {
    long t = 0;
    for (long p = 0; p <= m; ++p) t += row[m - p].size();
    return t;
  };
  auto offset_of = [&](long m, long p) {
    long t = 0;
    for (long i = 0; i < p; ++i) t += row[m - i].size();
    return t;
  };
  ChainComplexZ tot;
  for (long m = 0; m <= width; ++m) tot.set_dim(m, rank_of(m));
  for (long m = 1; m <= width; ++m) {
    SparseMat d(rank_of(m - 1), rank_of(m));
    for (long p = 0; p <= m; ++p) {
      const long q = m - p;
      const long co = offset_of(m, p);
      if (q >= 1) {  // vertical: b on even columns, -b' on odd ones
        const SparseMat& v = (p & 1) ? bp_mat[q] : b_mat[q];
        const Int s = (p & 1) ? -1 : 1;
        const long ro = offset_of(m - 1, p);
        for (long j = 0; j < v.cols; ++j)
          for (const auto& [r, val] : v.col[j]) d.add(ro + r, co + j, s * val);
      }
      if (p >= 1) {  // horizontal: 1 - lambda from odd columns, N from even
        const long ro = offset_of(m - 1, p - 1);
        if (p & 1) {
          for (long j = 0; j < row[q].size(); ++j) d.add(ro + j, co + j, 1);
          for (long j = 0; j < row[q].size(); ++j)
            for (const auto& [r, val] : lam[q].col[j]) d.add(ro + r, co + j, -val);
        } else {
          for (long j = 0; j < row[q].size(); ++j)
            for (const auto& [r, val] : nrm[q].col[j]) d.add(ro + r, co + j, val);
        }
      }
    }
    d.normalize();
    tot.set_boundary(m, d);
  }
  std::string err;
  if (!tot.validate(&err)) throw HomologyError("cyclic bicomplex: " + err);
  return homology(tot, n, e);
}

// --- complexes with a group action ------------------------------------------

void EquivariantComplex::validate() const {
  if (!k) throw HomologyError("equivariant complex without a group");
  for (const auto& [deg, dim] : c.dims) {
    if (dim == 0) continue;
    auto it = act.find(deg);
    if (it == act.end()) throw HomologyError("missing action in degree " + std::to_string(deg));
    if (static_cast<long>(it->second.size()) != k->n)
      throw HomologyError("action table has the wrong number of elements");
    for (const auto& m : it->second)
      if (m.rows != dim || m.cols != dim)
        throw HomologyError("action matrix shape mismatch in degree " + std::to_string(deg));
    if (it->second[k->id] != DenseMat::identity(dim))
      throw HomologyError("identity must act trivially");
    for (int x = 0; x < k->n; ++x)
      for (int y = 0; y < k->n; ++y)
        if (mul(it->second[x], it->second[y]) != it->second[k->mul(x, y)])
          throw HomologyError("action is not a homomorphism in degree " + std::to_string(deg));
  }
  for (const auto& [deg, dmat] : c.diff) {
    if (c.dim(deg) == 0 || c.dim(deg - 1) == 0) continue;
    const DenseMat d = dmat.dense();
    for (int x = 0; x < k->n; ++x)
      if (mul(d, act.at(deg)[x]) != mul(act.at(deg - 1)[x], d))
        throw HomologyError("action does not commute with the boundary in degree " +
                            std::to_string(deg));
  }
}

EquivariantComplex fixed_chain_complex(const SimplicialComplex& x,
                                       const std::vector<int>& fix,
                                       const std::vector<int>& zs) {
  if (!x.group) throw HomologyError("the complex carries no group action");
  EquivariantComplex out;
  out.k = std::make_shared<FiniteGroup>(subgroup_group(*x.group, zs));
  const std::vector<long> ids = fixed_ids(x, fix);
  out.c = chains(x, ids);
  std::map<long, std::vector<long>> byd;
  for (long s : ids) byd[static_cast<long>(x.simp[s].size()) - 1].push_back(s);
  for (const auto& [d, list] : byd) {
    const long nd = static_cast<long>(list.size());
    std::vector<DenseMat> mats;
    for (int z : zs) {
      DenseMat m(nd, nd);
      for (long j = 0; j < nd; ++j) {
        int sign = 1;
        const long img = x.apply_simplex(z, list[j], &sign);
        const long r = pos_sorted(list, img);
        if (r < 0)
          throw HomologyError("the listed elements do not preserve the fixed subcomplex");
        m.at(r, j) = sign;
      }
      mats.push_back(std::move(m));
    }
    out.act.emplace(d, std::move(mats));
  }
  out.validate();
  return out;
}

EquivariantComplex equivariant_hochschild(std::shared_ptr<const BasedRing> a, int twist,
                                          long top, const std::vector<int>& zs) {
  if (!a || !a->acting_group) throw HomologyError("need a ring with a group action");
  const FiniteGroup& g = *a->acting_group;
  for (int z : zs)
    if (g.mul(z, twist) != g.mul(twist, z))
      throw HomologyError("the listed elements must centralize the twist");
  HochschildComplex hc = hochschild_twisted(a, twist, top);
  EquivariantComplex out;
  out.k = std::make_shared<FiniteGroup>(subgroup_group(g, zs));
  out.c = hc.c;
  for (long n = 0; n <= top; ++n) {
    const TupleSpace& ts = hc.deg[static_cast<size_t>(n)];
    std::vector<DenseMat> mats;
    for (int z : zs) {
      DenseMat m(ts.size(), ts.size());
#pragma omp parallel for schedule(dynamic, 16)
      for (long j = 0; j < ts.size(); ++j) {
        // diagonal action: tensor the single-slot images together
        std::vector<std::pair<Tup, Int>> acc{{Tup(), Int(1)}};
        for (long b : ts.tuples[j]) {
          const LinComb im = a->act(z, lc_single(b));
          std::vector<std::pair<Tup, Int>> next;
          for (const auto& [t, cv] : acc)
            for (const auto& [bb, cw] : im) {
              Tup u = t;
              u.push_back(bb);
              next.emplace_back(std::move(u), cv * cw);
            }
          acc = std::move(next);
        }
        for (const auto& [t, cv] : acc) m.at(ts.id_of(t), j) += cv;
      }
      mats.push_back(std::move(m));
    }
    out.act.emplace(n, std::move(mats));
  }
  out.validate();
  return out;
}

ChainComplexZ tensor_complex(const ChainComplexZ& a, const ChainComplexZ& b) {
  ChainComplexZ out;
  if (a.dims.empty() || b.dims.empty()) return out;
  const long alo = a.min_degree(), ahi = a.max_degree();
  const long blo = b.min_degree(), bhi = b.max_degree();
  auto rank_of = [&](long n) {
    long t = 0;
    for (long p = alo; p <= ahi; ++p)
      if (n - p >= blo && n - p <= bhi) t += a.dim(p) * b.dim(n - p);
    return t;
  };
  auto offset_of = [&](long n, long p) {
    long t = 0;
    for (long i = alo; i < p; ++i)
      if (n - i >= blo && n - i <= bhi) t += a.dim(i) * b.dim(n - i);
    return t;
  };
  for (long n = alo + blo; n <= ahi + bhi; ++n) out.set_dim(n, rank_of(n));
  for (long n = alo + blo + 1; n <= ahi + bhi; ++n) {
    SparseMat d(rank_of(n - 1), rank_of(n));
    for (long p = alo; p <= ahi; ++p) {
      const long q = n - p;
      if (q < blo || q > bhi) continue;
      const long ra = a.dim(p), rb = b.dim(q);
      if (ra == 0 || rb == 0) continue;
      const long co = offset_of(n, p);
      if (p > alo && a.dim(p - 1) > 0) {
        const SparseMat& da = a.boundary(p);
        const long ro = offset_of(n - 1, p - 1);
        for (long i = 0; i < ra; ++i)
          for (const auto& [r, v] : da.col[i])
            for (long j = 0; j < rb; ++j) d.add(ro + r * rb + j, co + i * rb + j, v);
      }
      if (q > blo && b.dim(q - 1) > 0) {
        const SparseMat& db = b.boundary(q);
        const long ro = offset_of(n - 1, p);
        const Int s = (p & 1) ? -1 : 1;
        const long rbm = b.dim(q - 1);
        for (long i = 0; i < ra; ++i)
          for (long j = 0; j < rb; ++j)
            for (const auto& [r, v] : db.col[j]) d.add(ro + i * rbm + r, co + i * rb + j, s * v);
      }
    }
    d.normalize();
    out.set_boundary(n, d);
  }
  std::string err;
  if (!out.validate(&err)) throw HomologyError("tensor complex: " + err);
  return out;
}

EquivariantComplex tensor_equivariant(const EquivariantComplex& a,
                                      const EquivariantComplex& b) {
  if (!a.k || !b.k || !groups_match(*a.k, *b.k))
    throw HomologyError("tensor factors must carry the same group");
  EquivariantComplex out;
  out.k = a.k;
  out.c = tensor_complex(a.c, b.c);
  if (out.c.dims.empty()) return out;
  const long alo = a.c.min_degree(), ahi = a.c.max_degree();
  const long blo = b.c.min_degree(), bhi = b.c.max_degree();
  for (const auto& [n, dim] : out.c.dims) {
    if (dim == 0) continue;
    std::vector<DenseMat> mats;
    for (int z = 0; z < a.k->n; ++z) {
      DenseMat m(dim, dim);
      long off = 0;
      for (long p = alo; p <= ahi; ++p) {
        const long q = n - p;
        if (q < blo || q > bhi) continue;
        const long ra = a.c.dim(p), rb = b.c.dim(q);
        if (ra == 0 || rb == 0) continue;
        const DenseMat& ma = a.act.at(p)[z];
        const DenseMat& mb = b.act.at(q)[z];
        for (long i = 0; i < ra; ++i)
          for (long i2 = 0; i2 < ra; ++i2) {
            if (ma.at(i2, i) == 0) continue;
            for (long j = 0; j < rb; ++j)
              for (long j2 = 0; j2 < rb; ++j2)
                m.at(off + i2 * rb + j2, off + i * rb + j) = ma.at(i2, i) * mb.at(j2, j);
          }
        off += ra * rb;
      }
      mats.push_back(std::move(m));
    }
    out.act.emplace(n, std::move(mats));
  }
  out.validate();
  return out;
}

std::vector<FGAbelianGroup> group_hyperhomology(const EquivariantComplex& m, long top,
                                                Engine e) {
  if (!m.k) throw HomologyError("equivariant complex without a group");
  if (top < 0) throw HomologyError("need top >= 0");
  std::vector<FGAbelianGroup> zero(static_cast<size_t>(top) + 1);
  if (m.c.dims.empty()) return zero;
  if (m.c.min_degree() < 0) throw HomologyError("hyperhomology needs degrees >= 0");
  const long K = m.k->n;
  const long hi = m.c.max_degree();
  const long width = top + 1;  // bar resolution width; degrees 0..top exact
  auto barrank = [&](long p) {
    long t = 1;
    for (long i = 0; i < p; ++i) t *= K;
    return t;
  };
  auto rank_of = [&](long deg) {
    long t = 0;
    for (long p = 0; p <= std::min(deg, width); ++p) {
      const long q = deg - p;
      if (q <= hi) t += barrank(p) * m.c.dim(q);
    }
    return t;
  };
  auto offset_of = [&](long deg, long p) {
    long t = 0;
    for (long i = 0; i < p; ++i) {
      const long q = deg - i;
      if (q >= 0 && q <= hi) t += barrank(i) * m.c.dim(q);
    }
    return t;
  };
  ChainComplexZ tot;
  for (long deg = 0; deg <= top + 1; ++deg) {
    check_cap(rank_of(deg), "hyperhomology total complex");
    tot.set_dim(deg, rank_of(deg));
  }
  std::vector<long> w;
  for (long deg = 1; deg <= top + 1; ++deg) {
    SparseMat d(rank_of(deg - 1), rank_of(deg));
    for (long p = 0; p <= std::min(deg, width); ++p) {
      const long q = deg - p;
      if (q > hi) continue;
      const long dq = m.c.dim(q);
      if (dq == 0) continue;
      const long co = offset_of(deg, p);
      const long bp = barrank(p);
      for (long wj = 0; wj < bp; ++wj) {
        w.assign(static_cast<size_t>(p), 0);
        long tmp = wj;
        for (long i = p - 1; i >= 0; --i) {
          w[i] = tmp % K;
          tmp /= K;
        }
        if (p >= 1) {  // bar faces land in (p-1, q)
          const long ro = offset_of(deg - 1, p - 1);
          auto encode = [&](const std::vector<long>& v) {
            long id = 0;
            for (long x : v) id = id * K + x;
            return id;
          };
          std::vector<long> y(w.begin() + 1, w.end());
          for (long ic = 0; ic < dq; ++ic)
            d.add(ro + encode(y) * dq + ic, co + wj * dq + ic, 1);
          for (long i = 1; i <= p - 1; ++i) {
            y.assign(w.begin(), w.end());
            y[i - 1] = m.k->mul(static_cast<int>(w[i - 1]), static_cast<int>(w[i]));
            y.erase(y.begin() + i);
            const Int s = (i & 1) ? -1 : 1;
            for (long ic = 0; ic < dq; ++ic)
              d.add(ro + encode(y) * dq + ic, co + wj * dq + ic, s);
          }
          y.assign(w.begin(), w.end() - 1);
          const Int s = (p & 1) ? -1 : 1;
          const DenseMat& az = m.act.at(q)[w[p - 1]];
          const long yo = ro + encode(y) * dq;
          for (long ic = 0; ic < dq; ++ic)
            for (long r = 0; r < dq; ++r)
              if (az.at(r, ic) != 0) d.add(yo + r, co + wj * dq + ic, s * az.at(r, ic));
        }
        if (q >= 1 && m.c.dim(q - 1) > 0) {  // (-1)^p times the inner boundary
          const long ro = offset_of(deg - 1, p) + wj * m.c.dim(q - 1);
          const Int s = (p & 1) ? -1 : 1;
          const SparseMat& dc = m.c.boundary(q);
          for (long ic = 0; ic < dq; ++ic)
            for (const auto& [r, v] : dc.col[ic]) d.add(ro + r, co + wj * dq + ic, s * v);
        }
      }
    }
    d.normalize();
    tot.set_boundary(deg, d);
  }
  std::string err;
  if (!tot.validate(&err)) throw HomologyError("hyperhomology complex: " + err);
  return range_vec(tot, 0, top, e);
}

FGAbelianGroup snf_homology(const ChainComplexZ& c, long n, Engine e) {
  return homology(c, n, e);
}

// --- orbit-category coend ----------------------------------------------------

namespace {

// per-subgroup block data for the coend total complex
struct CoendBlock {
  std::vector<int> H;
  CosetSpace cs;
  std::shared_ptr<BasedRing> ring;  // groupoid crossed product over G/H
  HochschildComplex nerve;          // built through top+1
  std::vector<long> fixed;          // fixed simplex ids, sorted
  std::map<long, std::vector<long>> fix_by_dim;
  ChainComplexZ tensor;             // chains(fixed) (x) nerve.c
};

long block_pos(const CoendBlock& bl, long n, long p, long i_simp, long j_tup) {
  // offset of the (p, q = n-p) summand inside the tensor block at degree n
  long off = 0;
  for (auto& [d, list] : bl.fix_by_dim) {
    if (d >= p) break;
    const long q = n - d;
    if (q >= 0 && q <= bl.nerve.top) off += static_cast<long>(list.size()) * bl.nerve.c.dim(q);
  }
  return off + i_simp * bl.nerve.c.dim(n - p) + j_tup;
}

// Signed identifications e_b = s * e_a; a component whose sign closes up
// inconsistently carries the residual relation 2x = 0.
struct SignedUF {
  std::vector<long> parent;
  std::vector<int> sign;  // relative to the parent
  std::vector<char> torsion;
  explicit SignedUF(long n) : parent(n), sign(n, 1), torsion(n, 0) {
    for (long i = 0; i < n; ++i) parent[i] = i;
  }
  std::pair<long, int> find(long x) {
    std::vector<long> chain;
    long r = x;
    while (parent[r] != r) {
      chain.push_back(r);
      r = parent[r];
    }
    int acc = 1;
    for (long i = static_cast<long>(chain.size()) - 1; i >= 0; --i) {
      acc *= sign[chain[i]];
      parent[chain[i]] = r;
      sign[chain[i]] = acc;
    }
    return {r, chain.empty() ? 1 : sign[x]};
  }
  void relate(long a, long b, int s) {  // impose e_b = s * e_a
    const auto [ra, sa] = find(a);
    const auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sb != s * sa) torsion[ra] = 1;
      return;
    }
    parent[rb] = ra;
    sign[rb] = sb * s * sa;
    if (torsion[rb]) torsion[ra] = 1;
  }
  void halve(long x) {  // impose 2 e_x = 0
    torsion[find(x).first] = 1;
  }
};

}  // namespace

CoendResult equivariant_coend(std::shared_ptr<const FiniteGroup> g,
                              const SimplicialComplex& x,
                              std::shared_ptr<const BasedRing> r, long top) {
  if (!g || !r) throw HomologyError("null input");
  if (!x.group || !groups_match(*x.group, *g))
    throw HomologyError("the complex must carry an action of the given group");
  if (!r->acting_group || !groups_match(*r->acting_group, *g))
    throw HomologyError("the ring must carry an action of the given group");
  if (top < 0) throw HomologyError("need top >= 0");

  CoendResult out;
  out.top = top;
  out.subgroups = all_subgroups(*g);
  const long nb = static_cast<long>(out.subgroups.size());
  const long hi = top + 1;  // internal degree ceiling

  std::vector<CoendBlock> blocks(static_cast<size_t>(nb));
  for (long bi = 0; bi < nb; ++bi) {
    CoendBlock& bl = blocks[bi];
    bl.H = out.subgroups[bi];
    bl.cs = coset_space(*g, bl.H);
    bl.ring = std::make_shared<BasedRing>(
        groupoid_crossed(*r, *g, left_coset_gset(*g, bl.cs)));
    bl.nerve = hochschild_nerve(bl.ring, hi);
    bl.fixed = fixed_ids(x, bl.H);
    for (long s : bl.fixed) bl.fix_by_dim[static_cast<long>(x.simp[s].size()) - 1].push_back(s);
    ChainComplexZ fc = chains(x, bl.fixed);
    bl.tensor = tensor_complex(fc, bl.nerve.c);
  }

  auto block_rank = [&](const CoendBlock& bl, long n) {
    return bl.tensor.dims.count(n) ? bl.tensor.dim(n) : 0;
  };
  std::vector<long> offs(static_cast<size_t>(nb) + 1);
  auto offsets_at = [&](long n) {
    offs[0] = 0;
    for (long bi = 0; bi < nb; ++bi) offs[bi + 1] = offs[bi] + block_rank(blocks[bi], n);
  };

  std::vector<long> total(static_cast<size_t>(hi) + 1);
  std::vector<SignedUF> uf;
  for (long n = 0; n <= hi; ++n) {
    offsets_at(n);
    check_cap(offs[nb], "coend total complex");
    total[n] = offs[nb];
    uf.emplace_back(offs[nb]);
  }

  // identifications (phi^* y) (x) c  ~  y (x) (phi_* c) over every orbit map;
  // each one relates two basis elements up to sign, so the quotient is a
  // signed merge plus 2x = 0 residues where a component's sign closes badly
  long morphisms = 0;
  for (long hbi = 0; hbi < nb; ++hbi) {
    const CoendBlock& BH = blocks[hbi];
    for (long kbi = 0; kbi < nb; ++kbi) {
      const CoendBlock& BK = blocks[kbi];
      for (long c = 0; c < BK.cs.size(); ++c) {
        const int rho = BK.cs.rep[c];
        bool ok = true;
        for (int h : BH.H)
          if (!std::binary_search(BK.H.begin(), BK.H.end(),
                                  g->mul(g->mul(g->inv[rho], h), rho))) {
            ok = false;
            break;
          }
        if (!ok) continue;
        if (hbi == kbi && rho == g->id) continue;  // identity map, empty relation
        ++morphisms;
        // arrow-ring basis map: relabel the source coset of every arrow
        const long nArrH = BH.cs.size() * g->n, nArrK = BK.cs.size() * g->n;
        std::vector<long> phiA(static_cast<size_t>(BH.ring->rank()));
        for (long i = 0; i < BH.ring->rank(); ++i) {
          const long t = i / nArrH, ar = i % nArrH;
          const long src = ar / g->n, e = ar % g->n;
          const long src2 = BK.cs.coset_of[g->mul(BH.cs.rep[src], rho)];
          phiA[i] = t * nArrK + src2 * g->n + e;
        }
        for (long n = 0; n <= hi; ++n) {
          offsets_at(n);
          for (const auto& [p, ylist] : BK.fix_by_dim) {
            const long q = n - p;
            if (q < 0 || q > hi) continue;
            const TupleSpace& tsH = BH.nerve.deg[static_cast<size_t>(q)];
            const TupleSpace& tsK = BK.nerve.deg[static_cast<size_t>(q)];
            for (size_t iy = 0; iy < ylist.size(); ++iy) {
              int sgn = 1;
              const long img = x.apply_simplex(rho, ylist[iy], &sgn);
              const auto hlit = BH.fix_by_dim.find(p);
              const long ih = hlit == BH.fix_by_dim.end() ? -1 : pos_sorted(hlit->second, img);
              if (ih < 0) throw HomologyError("orbit map does not preserve fixed parts");
              for (long j = 0; j < tsH.size(); ++j) {
                Tup t2(tsH.tuples[j].size());
                for (size_t s2 = 0; s2 < t2.size(); ++s2) t2[s2] = phiA[tsH.tuples[j][s2]];
                const long jk = tsK.id_of(t2);
                if (jk < 0) throw HomologyError("pushforward left the nerve");
                const long a = offs[hbi] + block_pos(BH, n, p, ih, j);
                const long b = offs[kbi] + block_pos(BK, n, p, static_cast<long>(iy), jk);
                if (a == b) {
                  if (sgn == -1) uf[n].halve(a);
                } else {
                  uf[n].relate(a, b, sgn);
                }
              }
            }
          }
        }
      }
    }
  }
  // quotient presentation on the merge components
  PresentedComplex P;
  std::vector<std::vector<long>> roots(static_cast<size_t>(hi) + 1);
  std::vector<std::vector<long>> rindex(static_cast<size_t>(hi) + 1);
  for (long n = 0; n <= hi; ++n) {
    rindex[n].assign(static_cast<size_t>(total[n]), -1);
    for (long i = 0; i < total[n]; ++i)
      if (uf[n].find(i).first == i) {
        rindex[n][i] = static_cast<long>(roots[n].size());
        roots[n].push_back(i);
      }
    P.gens[n] = static_cast<long>(roots[n].size());
  }
  for (long n = 0; n <= hi; ++n) {
    // induced boundary, then a well-definedness sweep over every column
    DenseMat D(n >= 1 ? P.gens[n - 1] : 0, P.gens[n]);
    std::vector<std::map<long, Int>> cols(static_cast<size_t>(total[n]));
    if (n >= 1) {
      offsets_at(n);
      for (long bi = 0; bi < nb; ++bi) {
        const CoendBlock& bl = blocks[bi];
        const long rc = block_rank(bl, n);
        if (rc == 0 || block_rank(bl, n - 1) == 0 || !bl.tensor.diff.count(n)) continue;
        const SparseMat& d = bl.tensor.boundary(n);
        long ro = 0;
        for (long b2 = 0; b2 < bi; ++b2) ro += block_rank(blocks[b2], n - 1);
        for (long j = 0; j < rc; ++j)
          for (const auto& [rw, v] : d.col[j]) {
            const auto [rr, rs] = uf[n - 1].find(ro + rw);
            cols[offs[bi] + j][rindex[n - 1][rr]] += v * rs;
          }
      }
      for (long i = 0; i < total[n]; ++i) {
        const auto [r, s] = uf[n].find(i);
        if (r == i) {
          for (const auto& [row, v] : cols[i])
            if (v != 0) D.at(row, rindex[n][i]) = v;
        }
      }
      for (long i = 0; i < total[n]; ++i) {
        const auto [r, s] = uf[n].find(i);
        if (r == i) continue;
        std::map<long, Int> diff = cols[i];
        for (const auto& [row, v] : cols[r]) diff[row] -= v * s;
        for (const auto& [row, v] : diff) {
          if (v == 0) continue;
          if (v % 2 != 0 || !uf[n - 1].torsion[roots[n - 1][row]])
            throw HomologyError("identifications do not commute with the boundary");
        }
      }
    }
    P.D[n] = std::move(D);
    std::vector<long> tors;
    for (long i : roots[n])
      if (uf[n].torsion[i]) tors.push_back(rindex[n][i]);
    DenseMat R(P.gens[n], static_cast<long>(tors.size()));
    for (size_t j = 0; j < tors.size(); ++j) R.at(tors[j], static_cast<long>(j)) = 2;
    P.R[n] = std::move(R);
  }

  ChainComplexZ q = resolve(P);
  out.h = range_vec(q, 0, top, Engine::parallel);
  std::ostringstream os;
  os << nb << " orbit types, " << morphisms << " identifications; block ranks at degree 0:";
  for (long bi = 0; bi < nb; ++bi) os << " " << block_rank(blocks[bi], 0);
  os << "; internal degree ceiling " << hi << ", values exact through " << top << "; "
     << group_list(out.h);
  out.detail = os.str();
  return out;
}

// --- conjugacy-summed comparison ---------------------------------------------

namespace {

// comparison map on the free orbit: degree-n domain generators are
// (z_1..z_n, s, x_0..x_n) with the z's in the centralizer, s a fixed point,
// x's ring basis elements; the image is a composable tuple chain in the
// transport-groupoid ring.
struct AlphaSide {
  const FiniteGroup* g = nullptr;
  const BasedRing* r = nullptr;
  const GSet* S = nullptr;
  int gxi = 0;
  std::vector<int> zs;
  std::vector<int> sg;  // fixed points of gxi in S
  const std::vector<TupleSpace>* nt = nullptr;  // nerve spaces of the arrow ring
  long nArr = 0;

  long arrow_basis(long t, int src, int e) const {
    return t * nArr + static_cast<long>(src) * g->n + e;
  }

  // expand alpha on one generator into arrow-ring tuple coordinates
  std::map<long, Int> apply(const std::vector<int>& w, int s, const Tup& xt) const {
    const int n = static_cast<int>(w.size());
    std::vector<int> zp(static_cast<size_t>(n) + 2, g->id);  // suffix products
    for (int i = n; i >= 1; --i) zp[i] = g->mul(zs[w[i - 1]], zp[i + 1]);
    std::vector<std::pair<Tup, Int>> acc{{Tup(), Int(1)}};
    auto extend = [&](const LinComb& lc, int src, int e) {
      std::vector<std::pair<Tup, Int>> next;
      for (const auto& [t, cv] : acc)
        for (const auto& [b, cw] : lc) {
          Tup u = t;
          u.push_back(arrow_basis(b, src, e));
          next.emplace_back(std::move(u), cv * cw);
        }
      acc = std::move(next);
    };
    extend(lc_single(xt[0]), S->apply(zp[1], s), g->mul(g->inv[zp[1]], gxi));
    for (int i = 1; i <= n; ++i)
      extend(r->act(zp[i], lc_single(xt[i])), S->apply(zp[i + 1], s), zs[w[i - 1]]);
    std::map<long, Int> out;
    const TupleSpace& ts = (*nt)[static_cast<size_t>(n)];
    for (const auto& [t, cv] : acc) {
      const long id = ts.id_of(t);
      if (id < 0) throw HomologyError("comparison image is not composable");
      out[id] += cv;
    }
    return out;
  }
};

void acc_map(std::map<long, Int>& m, const std::map<long, Int>& src, const Int& scale) {
  for (const auto& [k, v] : src) m[k] += v * scale;
}

bool map_zero(const std::map<long, Int>& m) {
  for (const auto& [k, v] : m)
    if (v != 0) return false;
  return true;
}

}  // namespace

ReiluReport verify_reilu(std::shared_ptr<const FiniteGroup> g, const SimplicialComplex& x,
                         std::shared_ptr<const BasedRing> r, long top,
                         std::vector<int> reps) {
  if (!g || !r) throw HomologyError("null input");
  if (!r->is_unital()) throw HomologyError("need a unital coefficient ring");
  if (!r->acting_group || !groups_match(*r->acting_group, *g))
    throw HomologyError("the ring must carry an action of the given group");
  ReiluReport out;
  out.top = top;
  const auto classes = conjugacy_classes(*g);
  if (reps.empty())
    for (const auto& cl : classes) reps.push_back(cl[0]);
  if (reps.size() != classes.size())
    throw HomologyError("need one representative per conjugacy class");
  for (size_t i = 0; i < reps.size(); ++i)
    if (!std::binary_search(classes[i].begin(), classes[i].end(), reps[i]))
      throw HomologyError("representative is not in its class");
  out.reps = reps;

  CoendResult ce = equivariant_coend(g, x, r, top);
  out.lhs = ce.h;

  out.rhs.assign(static_cast<size_t>(top) + 1, FGAbelianGroup{});
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const int gxi = reps[ci];
    const std::vector<int> zs = centralizer(*g, gxi);
    EquivariantComplex fc = fixed_chain_complex(x, {gxi}, zs);
    EquivariantComplex hh = equivariant_hochschild(r, gxi, top + 1, zs);
    std::vector<FGAbelianGroup> part =
        group_hyperhomology(tensor_equivariant(fc, hh), top);
    out.rhs_parts.push_back(part);
    for (long n = 0; n <= top; ++n) out.rhs[n] = direct_sum(out.rhs[n], part[n]);
  }
  out.agree = true;
  for (long n = 0; n <= top; ++n)
    if (out.lhs[n].rank != out.rhs[n].rank || out.lhs[n].torsion != out.rhs[n].torsion)
      out.agree = false;

  // chain-map identity for the comparison on the free orbit
  {
    const GSet S = regular_gset(*g);
    BasedRing A1 = groupoid_crossed(*r, *g, S);
    std::vector<TupleSpace> nt;
    for (long n = 0; n <= top; ++n) nt.push_back(nerve_tuples(A1, static_cast<int>(n) + 1));
    out.alpha_ok = true;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
      AlphaSide al;
      al.g = g.get();
      al.r = r.get();
      al.S = &S;
      al.gxi = reps[ci];
      al.zs = centralizer(*g, al.gxi);
      for (int s = 0; s < S.size; ++s)
        if (S.apply(al.gxi, s) == s) al.sg.push_back(s);
      if (al.sg.empty()) continue;
      al.nt = &nt;
      al.nArr = static_cast<long>(S.size) * g->n;
      const long Z = static_cast<long>(al.zs.size());
      for (long n = 1; n <= top; ++n) {
        long nz = 1;
        for (long i = 0; i < n; ++i) nz *= Z;
        std::vector<int> w(static_cast<size_t>(n));
        TupleSpace xs = full_tuples(r->rank(), static_cast<int>(n) + 1);
        for (long wj = 0; wj < nz; ++wj) {
          long tmp = wj;
          for (long i = n - 1; i >= 0; --i) {
            w[i] = static_cast<int>(tmp % Z);
            tmp /= Z;
          }
          for (int s : al.sg)
            for (long xj = 0; xj < xs.size(); ++xj) {
              const Tup& xt = xs.tuples[xj];
              // boundary downstairs of the image
              std::map<long, Int> lhs;
              {
                const std::map<long, Int> im = al.apply(w, s, xt);
                const TupleSpace& hiS = nt[static_cast<size_t>(n)];
                const TupleSpace& loS = nt[static_cast<size_t>(n - 1)];
                for (const auto& [tid, cv] : im) {
                  const Tup& y = hiS.tuples[tid];
                  Tup z(static_cast<size_t>(n));
                  for (int i = 0; i < static_cast<int>(n); ++i) {
                    LinComb p(A1.prod_begin(y[i], y[i + 1]), A1.prod_end(y[i], y[i + 1]));
                    for (int k = 0; k < static_cast<int>(n); ++k) z[k] = y[k < i ? k : k + 1];
                    for (const auto& [b, cw] : p) {
                      z[i] = b;
                      lhs[loS.id_of(z)] += cv * cw * ((i & 1) ? -1 : 1);
                    }
                  }
                  LinComb p(A1.prod_begin(y[n], y[0]), A1.prod_end(y[n], y[0]));
                  for (int k = 1; k < static_cast<int>(n); ++k) z[k] = y[k];
                  for (const auto& [b, cw] : p) {
                    z[0] = b;
                    lhs[loS.id_of(z)] += cv * cw * ((n & 1) ? -1 : 1);
                  }
                }
              }
              // image of the boundary upstairs
              std::map<long, Int> rhs;
              {
                std::vector<int> w2(w.begin() + 1, w.end());
                Tup x2(xt.begin() + 1, xt.end());
                const LinComb m0 =
                    r->mul(lc_single(xt[0]), r->act(al.gxi, lc_single(xt[1])));
                for (const auto& [b, cv] : m0) {
                  x2[0] = b;
                  acc_map(rhs, al.apply(w2, s, x2), cv);
                }
                for (int i = 1; i <= static_cast<int>(n) - 1; ++i) {
                  w2.assign(w.begin(), w.end());
                  w2[i - 1] = pos_sorted_int(
                      al.zs, g->mul(al.zs[w[i - 1]], al.zs[w[i]]));
                  w2.erase(w2.begin() + i);
                  const LinComb p(r->prod_begin(xt[i], xt[i + 1]),
                                  r->prod_end(xt[i], xt[i + 1]));
                  x2.assign(xt.begin(), xt.end());
                  x2.erase(x2.begin() + i + 1);
                  for (const auto& [b, cv] : p) {
                    x2[i] = b;
                    acc_map(rhs, al.apply(w2, s, x2), cv * ((i & 1) ? -1 : 1));
                  }
                }
                // last face: wrap the ring tuple, then push everything
                // through the dropped centralizer element
                const int zn = al.zs[w[n - 1]];
                w2.assign(w.begin(), w.end() - 1);
                const int s2 = S.apply(zn, s);
                const LinComb head =
                    r->act(zn, r->mul(lc_single(xt[n]), lc_single(xt[0])));
                std::vector<LinComb> rest;
                for (int i = 1; i <= static_cast<int>(n) - 1; ++i)
                  rest.push_back(r->act(zn, lc_single(xt[i])));
                std::vector<std::pair<Tup, Int>> acc{{Tup(), Int(1)}};
                auto expand = [&](const LinComb& lc) {
                  std::vector<std::pair<Tup, Int>> next;
                  for (const auto& [t, cv] : acc)
                    for (const auto& [b, cw] : lc) {
                      Tup u = t;
                      u.push_back(b);
                      next.emplace_back(std::move(u), cv * cw);
                    }
                  acc = std::move(next);
                };
                expand(head);
                for (const auto& lc : rest) expand(lc);
                for (const auto& [t, cv] : acc)
                  acc_map(rhs, al.apply(w2, s2, t), cv * ((n & 1) ? -1 : 1));
              }
              for (const auto& [k, v] : rhs) lhs[k] -= v;
              if (!map_zero(lhs)) out.alpha_ok = false;
              ++out.alpha_pairs;
            }
        }
      }
    }
  }

  std::ostringstream os;
  os << "representatives:";
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    os << " " << (g->labels.empty() ? std::to_string(reps[ci]) : g->labels[reps[ci]]);
  }
  os << "; truncation degree " << top << "; left " << group_list(out.lhs) << "; right "
     << group_list(out.rhs) << "; comparison expanded on " << out.alpha_pairs
     << " generators: " << (out.alpha_ok ? "chain map" : "NOT a chain map");
  out.detail = os.str();
  return out;
}

FGAbelianGroup l_ladder(const BasedRing& a, long n) {
  if (n < -1) throw HomologyError("need n >= -1");
  const long r = a.rank();
  DenseMat B = DenseMat::identity(r);  // lattice basis inside A^{(x)(k+2)}
  long amb = r;
  for (long k = -1; k < n; ++k) {
    const long mk = B.cols;
    const long stride = amb / r;
    // matrix of multiplication A (x) L_k -> L_k in lattice coordinates
    DenseMat M(mk, r * mk);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < mk; ++j) {
        std::vector<Int> w(static_cast<size_t>(amb));
        for (long t = 0; t < amb; ++t) {
          if (B.at(t, j) == 0) continue;
          const long t0 = t / stride, restv = t % stride;
          for (auto it = a.prod_begin(i, t0); it != a.prod_end(i, t0); ++it)
            w[it->first * stride + restv] += it->second * B.at(t, j);
        }
        const auto y = solve(B, w);
        if (!y) throw HomologyError("module multiplication left the lattice");
        for (long q = 0; q < mk; ++q) M.at(q, i * mk + j) = (*y)[q];
      }
    const DenseMat K = kernel_basis(M);
    const long amb2 = r * amb;
    check_cap(amb2, "ladder ambient space");
    DenseMat B2(amb2, K.cols);
    for (long c = 0; c < K.cols; ++c)
      for (long i = 0; i < r; ++i)
        for (long j = 0; j < mk; ++j) {
          const Int& kv = K.at(i * mk + j, c);
          if (kv == 0) continue;
          for (long t = 0; t < amb; ++t)
            if (B.at(t, j) != 0) B2.at(i * amb + t, c) += kv * B.at(t, j);
        }
    B = std::move(B2);
    amb = amb2;
  }
  return FGAbelianGroup{B.cols, {}};
}

}  // namespace zalg
