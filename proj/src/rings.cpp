#include "zalg/rings.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace zalg {

LinComb lc_normalize(LinComb v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  LinComb out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second == 0; }),
            out.end());
  return out;
}

LinComb lc_add(const LinComb& a, const LinComb& b) {
  LinComb v = a;
  v.insert(v.end(), b.begin(), b.end());
  return lc_normalize(std::move(v));
}

LinComb lc_sub(const LinComb& a, const LinComb& b) {
  LinComb v = a;
  for (auto& [i, c] : b) v.emplace_back(i, -c);
  return lc_normalize(std::move(v));
}

LinComb lc_scale(const LinComb& a, const Int& c) {
  if (c == 0) return {};
  LinComb v = a;
  for (auto& e : v) e.second *= c;
  return v;
}

LinComb lc_single(long i, const Int& c) {
  if (c == 0) return {};
  return {{i, c}};
}

std::string lc_to_string(const LinComb& v, const std::vector<std::string>& basis) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, c] : v) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Int ac = abs(c);
    if (ac != 1) os << ac.get_str() << "*";
    os << basis[i];
  }
  return os.str();
}

LinComb BasedRing::mul(const LinComb& a, const LinComb& b) const {
  LinComb acc;
  for (auto& [i, ci] : a)
    for (auto& [j, cj] : b) {
      const Int c = ci * cj;
      for (auto p = prod_begin(i, j); p != prod_end(i, j); ++p)
        acc.emplace_back(p->first, c * p->second);
    }
  return lc_normalize(std::move(acc));
}

LinComb BasedRing::act(int g, const LinComb& v) const {
  if (!acting_group) throw RingError("ring has no group action");
  LinComb acc;
  for (auto& [i, c] : v)
    for (auto& [k, w] : action[g][i]) acc.emplace_back(k, c * w);
  return lc_normalize(std::move(acc));
}

void BasedRing::verify_associative() const {
  const long r = rank();
  long bad = LONG_MAX;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(min : bad)
#endif
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < r; ++j) {
      const LinComb ij(prod_begin(i, j), prod_end(i, j));
      for (long k = 0; k < r; ++k) {
        const LinComb jk(prod_begin(j, k), prod_end(j, k));
        if (mul(ij, lc_single(k)) != mul(lc_single(i), jk)) {
          const long e = (i * r + j) * r + k;
          if (e < bad) bad = e;
        }
      }
    }
  }
  if (bad != LONG_MAX) {
    const long k = bad % r, j = (bad / r) % r, i = bad / (r * r);
    throw RingError("not associative at (" + basis[i] + ", " + basis[j] + ", " +
                    basis[k] + ")");
  }
}

void BasedRing::verify_unit() const {
  if (!unit) return;
  for (long i = 0; i < rank(); ++i) {
    const LinComb e = lc_single(i);
    if (mul(*unit, e) != e || mul(e, *unit) != e)
      throw RingError("claimed unit fails on " + basis[i]);
  }
}

void BasedRing::verify_action() const {
  if (!acting_group) return;
  const FiniteGroup& G = *acting_group;
  if (static_cast<long>(action.size()) != G.n) throw RingError("action table size");
  for (auto& row : action)
    if (static_cast<long>(row.size()) != rank()) throw RingError("action matrix shape");
  for (long i = 0; i < rank(); ++i)
    if (act(G.id, lc_single(i)) != lc_single(i))
      throw RingError("identity does not act trivially");
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) {
      const int gh = G.mul(g, h);
      for (long i = 0; i < rank(); ++i)
        if (act(g, act(h, lc_single(i))) != act(gh, lc_single(i)))
          throw RingError("action is not a group homomorphism at (" + G.labels[g] +
                          ", " + G.labels[h] + ")");
    }
  for (int g = 0; g < G.n; ++g) {
    for (long i = 0; i < rank(); ++i)
      for (long j = 0; j < rank(); ++j) {
        const LinComb ij(prod_begin(i, j), prod_end(i, j));
        if (act(g, ij) != mul(act(g, lc_single(i)), act(g, lc_single(j))))
          throw RingError("element " + G.labels[g] + " does not act by a ring map");
      }
    if (unit && act(g, *unit) != *unit)
      throw RingError("element " + G.labels[g] + " moves the unit");
  }
}

long RingBuilder::add_basis(std::string label) {
  basis.push_back(std::move(label));
  return static_cast<long>(basis.size()) - 1;
}

void RingBuilder::set_product(long i, long j, LinComb v) {
  v = lc_normalize(std::move(v));
  if (!v.empty()) cells.emplace_back(i, j, std::move(v));
}

BasedRing RingBuilder::finish() const {
  const long r = static_cast<long>(basis.size());
  if (r > kBasisCap)
    throw RingError("basis size " + std::to_string(r) + " exceeds cap " +
                    std::to_string(kBasisCap));
  BasedRing out;
  out.basis = basis;
  out.unit = unit;
  out.acting_group = acting_group;
  out.action = action;
  out.grading = grading;

  auto cs = cells;
  std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b));
  });
  out.off.assign(static_cast<size_t>(r) * r + 1, 0);
  size_t cursor = 0;
  for (size_t cell = 0; cell < cs.size(); ++cell) {
    auto& [i, j, v] = cs[cell];
    if (i < 0 || i >= r || j < 0 || j >= r) throw RingError("product index out of range");
    if (cell > 0 && std::get<0>(cs[cell - 1]) == i && std::get<1>(cs[cell - 1]) == j)
      throw RingError("duplicate product cell");
    for (auto& [k, c] : v) {
      if (k < 0 || k >= r) throw RingError("product target out of range");
      if (c == 0) throw RingError("zero coefficient survived normalization");
    }
    const size_t flat = static_cast<size_t>(i) * r + j;
    while (cursor <= flat) out.off[cursor++] = static_cast<long>(out.ent.size());
    out.ent.insert(out.ent.end(), v.begin(), v.end());
  }
  while (cursor <= static_cast<size_t>(r) * r)
    out.off[cursor++] = static_cast<long>(out.ent.size());

  if (out.grading) {
    if (static_cast<long>(out.grading->srctgt.size()) != r)
      throw RingError("grading size mismatch");
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j) {
        auto [sj, tj] = out.grading->srctgt[j];
        auto [si, ti] = out.grading->srctgt[i];
        for (auto p = out.prod_begin(i, j); p != out.prod_end(i, j); ++p) {
          auto [sk, tk] = out.grading->srctgt[p->first];
          if (si != tj || sk != sj || tk != ti)
            throw RingError("product violates arrow grading");
        }
      }
  }
  if (out.unit) {
    out.unit = lc_normalize(*out.unit);
    out.verify_unit();
  }
  out.verify_action();
  if (r <= 128) out.verify_associative();
  return out;
}

// --- constructions ---------------------------------------------------------

BasedRing ring_Z() {
  RingBuilder b;
  b.add_basis("1");
  b.set_product(0, 0, lc_single(0));
  b.unit = lc_single(0);
  return b.finish();
}

BasedRing gaussian_ring() {
  RingBuilder b;
  b.add_basis("1");
  b.add_basis("i");
  b.set_product(0, 0, lc_single(0));
  b.set_product(0, 1, lc_single(1));
  b.set_product(1, 0, lc_single(1));
  b.set_product(1, 1, lc_single(0, Int(-1)));
  b.unit = lc_single(0);
  return b.finish();
}

BasedRing truncated_poly(long k) {
  if (k < 2) throw RingError("truncation exponent must be at least 2");
  RingBuilder b;
  for (long m = 1; m < k; ++m)
    b.add_basis(m == 1 ? "t" : "t^" + std::to_string(m));
  for (long p = 1; p < k; ++p)
    for (long q = 1; q < k; ++q)
      if (p + q < k) b.set_product(p - 1, q - 1, lc_single(p + q - 1));
  return b.finish();
}

BasedRing group_ring(std::shared_ptr<const FiniteGroup> g) {
  RingBuilder b;
  for (auto& l : g->labels) b.add_basis(l);
  for (int x = 0; x < g->n; ++x)
    for (int y = 0; y < g->n; ++y) b.set_product(x, y, lc_single(g->mul(x, y)));
  b.unit = lc_single(g->id);
  if (g->n > 128) {
    // group law gives associativity; the generic exhaustive check is
    // quadratic in order^3 and redundant here
    BasedRing out;
    out.basis = b.basis;
    out.unit = b.unit;
    out.off.assign(static_cast<size_t>(g->n) * g->n + 1, 0);
    out.ent.reserve(static_cast<size_t>(g->n) * g->n);
    for (int x = 0; x < g->n; ++x)
      for (int y = 0; y < g->n; ++y) {
        out.off[static_cast<size_t>(x) * g->n + y] = static_cast<long>(out.ent.size());
        out.ent.emplace_back(g->mul(x, y), Int(1));
      }
    out.off.back() = static_cast<long>(out.ent.size());
    return out;
  }
  return b.finish();
}

BasedRing table_ring(std::vector<std::string> basis,
                     std::vector<std::tuple<long, long, LinComb>> cells,
                     std::optional<LinComb> unit) {
  RingBuilder b;
  b.basis = std::move(basis);
  for (auto& [i, j, v] : cells) b.set_product(i, j, std::move(v));
  b.unit = std::move(unit);
  BasedRing out = b.finish();
  if (out.rank() > 128) out.verify_associative();
  return out;
}

BasedRing matrix_ring(long n, const BasedRing& a) {
  if (n < 1) throw RingError("matrix size must be positive");
  const long ra = a.rank();
  RingBuilder b;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long t = 0; t < ra; ++t)
        b.add_basis("[" + std::to_string(i) + "," + std::to_string(j) + "]" + a.basis[t]);
  auto idx = [&](long i, long j, long t) { return (i * n + j) * ra + t; };
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long l = 0; l < n; ++l)
        for (long s = 0; s < ra; ++s)
          for (long t = 0; t < ra; ++t) {
            LinComb prod;
            for (auto p = a.prod_begin(s, t); p != a.prod_end(s, t); ++p)
              prod.emplace_back(idx(i, l, p->first), p->second);
            b.set_product(idx(i, j, s), idx(j, l, t), std::move(prod));
          }
  if (a.unit) {
    LinComb u;
    for (long i = 0; i < n; ++i)
      for (auto& [t, c] : *a.unit) u.emplace_back(idx(i, i, t), c);
    b.unit = lc_normalize(std::move(u));
  }
  if (!a.grading) {
    ObjectGrading gr;
    gr.objects = n;
    gr.srctgt.resize(static_cast<size_t>(n) * n * ra);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        for (long t = 0; t < ra; ++t)
          gr.srctgt[idx(i, j, t)] = {static_cast<int>(j), static_cast<int>(i)};
    b.grading = std::move(gr);
  }
  if (a.acting_group) {
    b.acting_group = a.acting_group;
    b.action.assign(a.acting_group->n, {});
    for (int g = 0; g < a.acting_group->n; ++g) {
      b.action[g].resize(static_cast<size_t>(n) * n * ra);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          for (long t = 0; t < ra; ++t) {
            LinComb img;
            for (auto& [k, c] : a.action[g][t]) img.emplace_back(idx(i, j, k), c);
            b.action[g][idx(i, j, t)] = lc_normalize(std::move(img));
          }
    }
  }
  return b.finish();
}

BasedRing unitalize(const BasedRing& a) {
  const long ra = a.rank();
  RingBuilder b;
  b.basis = a.basis;
  b.add_basis("1");
  for (long i = 0; i < ra; ++i)
    for (long j = 0; j < ra; ++j)
      b.set_product(i, j, LinComb(a.prod_begin(i, j), a.prod_end(i, j)));
  for (long i = 0; i < ra; ++i) {
    b.set_product(ra, i, lc_single(i));
    b.set_product(i, ra, lc_single(i));
  }
  b.set_product(ra, ra, lc_single(ra));
  b.unit = lc_single(ra);
  if (a.acting_group) {
    b.acting_group = a.acting_group;
    b.action.assign(a.acting_group->n, {});
    for (int g = 0; g < a.acting_group->n; ++g) {
      b.action[g] = a.action[g];
      b.action[g].push_back(lc_single(ra));
    }
  }
  return b.finish();
}

namespace {
bool same_group(const std::shared_ptr<const FiniteGroup>& x,
                const std::shared_ptr<const FiniteGroup>& y) {
  if (!x || !y) return false;
  if (x == y) return true;
  return x->n == y->n && x->table == y->table && x->id == y->id;
}
}  // namespace

BasedRing direct_sum_ring(const BasedRing& a, const BasedRing& b) {
  const long ra = a.rank(), rb = b.rank();
  RingBuilder bd;
  bd.basis = a.basis;
  bd.basis.insert(bd.basis.end(), b.basis.begin(), b.basis.end());
  for (long i = 0; i < ra; ++i)
    for (long j = 0; j < ra; ++j)
      bd.set_product(i, j, LinComb(a.prod_begin(i, j), a.prod_end(i, j)));
  for (long i = 0; i < rb; ++i)
    for (long j = 0; j < rb; ++j) {
      LinComb v;
      for (auto p = b.prod_begin(i, j); p != b.prod_end(i, j); ++p)
        v.emplace_back(ra + p->first, p->second);
      bd.set_product(ra + i, ra + j, std::move(v));
    }
  if (a.unit && b.unit) {
    LinComb u = *a.unit;
    for (auto& [i, c] : *b.unit) u.emplace_back(ra + i, c);
    bd.unit = lc_normalize(std::move(u));
  }
  if (same_group(a.acting_group, b.acting_group)) {
    bd.acting_group = a.acting_group;
    bd.action.assign(a.acting_group->n, {});
    for (int g = 0; g < a.acting_group->n; ++g) {
      bd.action[g] = a.action[g];
      for (long i = 0; i < rb; ++i) {
        LinComb img;
        for (auto& [k, c] : b.action[g][i]) img.emplace_back(ra + k, c);
        bd.action[g].push_back(lc_normalize(std::move(img)));
      }
    }
  }
  return bd.finish();
}

BasedRing tensor_ring(const BasedRing& a, const BasedRing& b) {
  const long ra = a.rank(), rb = b.rank();
  if (ra * rb > kBasisCap) throw RingError("tensor exceeds basis cap");
  RingBuilder bd;
  for (long i = 0; i < ra; ++i)
    for (long j = 0; j < rb; ++j) bd.add_basis("(" + a.basis[i] + "|" + b.basis[j] + ")");
  auto idx = [&](long i, long j) { return i * rb + j; };
  for (long i = 0; i < ra; ++i)
    for (long k = 0; k < ra; ++k) {
      const LinComb pa(a.prod_begin(i, k), a.prod_end(i, k));
      if (pa.empty()) continue;
      for (long j = 0; j < rb; ++j)
        for (long l = 0; l < rb; ++l) {
          LinComb v;
          for (auto& [x, cx] : pa)
            for (auto p = b.prod_begin(j, l); p != b.prod_end(j, l); ++p)
              v.emplace_back(idx(x, p->first), cx * p->second);
          bd.set_product(idx(i, j), idx(k, l), std::move(v));
        }
    }
  if (a.unit && b.unit) {
    LinComb u;
    for (auto& [i, ci] : *a.unit)
      for (auto& [j, cj] : *b.unit) u.emplace_back(idx(i, j), ci * cj);
    bd.unit = lc_normalize(std::move(u));
  }
  // actions: factorwise when only one side acts, diagonal when both share
  // the acting group
  const bool both = same_group(a.acting_group, b.acting_group);
  if (a.acting_group && (both || !b.acting_group)) {
    bd.acting_group = a.acting_group;
    bd.action.assign(a.acting_group->n, {});
    for (int g = 0; g < a.acting_group->n; ++g) {
      bd.action[g].resize(static_cast<size_t>(ra) * rb);
      for (long i = 0; i < ra; ++i)
        for (long j = 0; j < rb; ++j) {
          LinComb img;
          if (both) {
            for (auto& [x, cx] : a.action[g][i])
              for (auto& [y, cy] : b.action[g][j]) img.emplace_back(idx(x, y), cx * cy);
          } else {
            for (auto& [x, cx] : a.action[g][i]) img.emplace_back(idx(x, j), cx);
          }
          bd.action[g][idx(i, j)] = lc_normalize(std::move(img));
        }
    }
  } else if (b.acting_group && !a.acting_group) {
    bd.acting_group = b.acting_group;
    bd.action.assign(b.acting_group->n, {});
    for (int g = 0; g < b.acting_group->n; ++g) {
      bd.action[g].resize(static_cast<size_t>(ra) * rb);
      for (long i = 0; i < ra; ++i)
        for (long j = 0; j < rb; ++j) {
          LinComb img;
          for (auto& [y, cy] : b.action[g][j]) img.emplace_back(idx(i, y), cy);
          bd.action[g][idx(i, j)] = lc_normalize(std::move(img));
        }
    }
  }
  return bd.finish();
}

BasedRing crossed_product(const BasedRing& a) {
  if (!a.acting_group) throw RingError("crossed product needs an action");
  const FiniteGroup& G = *a.acting_group;
  const long ra = a.rank();
  if (ra * G.n > kBasisCap) throw RingError("crossed product exceeds basis cap");
  RingBuilder b;
  for (long i = 0; i < ra; ++i)
    for (int g = 0; g < G.n; ++g) b.add_basis(a.basis[i] + ":" + G.labels[g]);
  auto idx = [&](long i, int g) { return i * G.n + g; };
  for (long i = 0; i < ra; ++i)
    for (int f = 0; f < G.n; ++f)
      for (long j = 0; j < ra; ++j) {
        const LinComb moved = a.act(f, lc_single(j));
        const LinComb prod = a.mul(lc_single(i), moved);
        if (prod.empty()) continue;
        for (int g = 0; g < G.n; ++g) {
          LinComb v;
          const int fg = G.mul(f, g);
          for (auto& [k, c] : prod) v.emplace_back(idx(k, fg), c);
          b.set_product(idx(i, f), idx(j, g), std::move(v));
        }
      }
  if (a.unit) {
    LinComb u;
    for (auto& [i, c] : *a.unit) u.emplace_back(idx(i, G.id), c);
    b.unit = lc_normalize(std::move(u));
  }
  return b.finish();
}

GroupoidArrows enumerate_arrows(const FiniteGroup& g, const GSet& s) {
  GroupoidArrows ar;
  ar.index.assign(static_cast<size_t>(s.size) * g.n, -1);
  for (int x = 0; x < s.size; ++x)
    for (int e = 0; e < g.n; ++e) {
      ar.index[static_cast<size_t>(x) * g.n + e] = ar.count();
      ar.src.push_back(x);
      ar.tgt.push_back(s.apply(e, x));
      ar.g.push_back(e);
    }
  return ar;
}

BasedRing groupoid_crossed(const BasedRing& a, const FiniteGroup& g, const GSet& s) {
  if (!a.acting_group || a.acting_group->n != g.n || a.acting_group->table != g.table)
    throw RingError("groupoid crossed product needs the acting group of the ring");
  const GroupoidArrows ar = enumerate_arrows(g, s);
  const long ra = a.rank(), na = ar.count();
  if (ra * na > kBasisCap) throw RingError("groupoid crossed product exceeds basis cap");
  RingBuilder b;
  for (long i = 0; i < ra; ++i)
    for (long al = 0; al < na; ++al)
      b.add_basis(a.basis[i] + "@[" + std::to_string(ar.src[al]) + "->" +
                  std::to_string(ar.tgt[al]) + ":" + g.labels[ar.g[al]] + "]");
  auto idx = [&](long i, long al) { return i * na + al; };
  for (long i = 0; i < ra; ++i)
    for (long al = 0; al < na; ++al)
      for (long j = 0; j < ra; ++j) {
        const LinComb moved = a.act(ar.g[al], lc_single(j));
        const LinComb prod = a.mul(lc_single(i), moved);
        if (prod.empty()) continue;
        for (long be = 0; be < na; ++be) {
          if (ar.src[al] != ar.tgt[be]) continue;  // arrows do not compose
          const long comp = ar.at(ar.src[be], g.mul(ar.g[al], ar.g[be]), g.n);
          LinComb v;
          for (auto& [k, c] : prod) v.emplace_back(idx(k, comp), c);
          b.set_product(idx(i, al), idx(j, be), std::move(v));
        }
      }
  ObjectGrading gr;
  gr.objects = s.size;
  gr.srctgt.resize(static_cast<size_t>(ra) * na);
  for (long i = 0; i < ra; ++i)
    for (long al = 0; al < na; ++al) gr.srctgt[idx(i, al)] = {ar.src[al], ar.tgt[al]};
  b.grading = std::move(gr);
  if (a.unit) {
    LinComb u;
    for (int x = 0; x < s.size; ++x) {
      const long id_arrow = ar.at(x, g.id, g.n);
      for (auto& [i, c] : *a.unit) u.emplace_back(idx(i, id_arrow), c);
    }
    b.unit = lc_normalize(std::move(u));
  }
  return b.finish();
}

BasedRing groupoid_ring(const FiniteGroup& g, const GSet& s) {
  auto gp = std::make_shared<FiniteGroup>(g);
  BasedRing z = ring_Z();
  attach_action(z, gp, trivial_action(*gp, 1));
  return groupoid_crossed(z, *gp, s);
}

// --- actions ---------------------------------------------------------------

std::vector<std::vector<LinComb>> trivial_action(const FiniteGroup& g, long rank) {
  std::vector<std::vector<LinComb>> m(g.n);
  for (int e = 0; e < g.n; ++e) {
    m[e].reserve(rank);
    for (long i = 0; i < rank; ++i) m[e].push_back(lc_single(i));
  }
  return m;
}

std::vector<std::vector<LinComb>> sign_action(const FiniteGroup& g, long rank) {
  std::vector<int> chi(g.n, 0);
  if (!g.perms.empty()) {
    for (int e = 0; e < g.n; ++e) chi[e] = perm_parity(g.perms[e]);
  } else {
    // cyclic layout: element k is k, addition mod n; odd powers flip sign
    bool cyclic = true;
    for (int a = 0; a < g.n && cyclic; ++a)
      for (int b = 0; b < g.n && cyclic; ++b) cyclic = g.mul(a, b) == (a + b) % g.n;
    if (!cyclic || g.n % 2 != 0)
      throw RingError("sign action undefined for this group");
    for (int e = 0; e < g.n; ++e) chi[e] = e % 2 == 0 ? 1 : -1;
  }
  std::vector<std::vector<LinComb>> m(g.n);
  for (int e = 0; e < g.n; ++e) {
    m[e].reserve(rank);
    for (long i = 0; i < rank; ++i) m[e].push_back(lc_single(i, Int(chi[e])));
  }
  return m;
}

std::vector<std::vector<LinComb>> conjugation_action(const FiniteGroup& g) {
  std::vector<std::vector<LinComb>> m(g.n);
  for (int e = 0; e < g.n; ++e) {
    m[e].reserve(g.n);
    for (int h = 0; h < g.n; ++h) m[e].push_back(lc_single(g.conj(e, h)));
  }
  return m;
}

std::vector<std::vector<LinComb>> gaussian_conjugation(const FiniteGroup& g) {
  if (g.n != 2) throw RingError("gaussian conjugation needs a group of order 2");
  std::vector<std::vector<LinComb>> m(2);
  const int other = 1 - g.id;
  m[g.id] = {lc_single(0), lc_single(1)};
  m[other] = {lc_single(0), lc_single(1, Int(-1))};
  return m;
}

void attach_action(BasedRing& r, std::shared_ptr<const FiniteGroup> g,
                   std::vector<std::vector<LinComb>> mats) {
  r.acting_group = std::move(g);
  r.action = std::move(mats);
  r.verify_action();
}

// --- homomorphism checking --------------------------------------------------

LinComb hom_apply(const RingHom& f, const LinComb& v) {
  LinComb acc;
  for (auto& [i, c] : v)
    for (auto& [k, w] : f.mat[i]) acc.emplace_back(k, c * w);
  return lc_normalize(std::move(acc));
}

HomCheckResult check_hom(const RingHom& f, const HomCheckFlags& flags,
                         const std::vector<int>& equivariance_elems) {
  const BasedRing& A = *f.src;
  const BasedRing& B = *f.tgt;
  if (static_cast<long>(f.mat.size()) != A.rank())
    throw RingError("hom matrix has wrong number of columns");
  for (auto& img : f.mat)
    for (auto& [k, c] : img)
      if (k < 0 || k >= B.rank()) throw RingError("hom image out of range");

  HomCheckResult res;
  auto fail = [&](std::string d) {
    if (res.pass) {
      res.pass = false;
      res.detail = std::move(d);
    }
  };

  if (flags.multiplicative) {
    const long r = A.rank();
    long bad = LONG_MAX;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(min : bad)
#endif
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j) {
        const LinComb ij(A.prod_begin(i, j), A.prod_end(i, j));
        if (hom_apply(f, ij) != B.mul(f.mat[i], f.mat[j])) {
          const long e = i * r + j;
          if (e < bad) bad = e;
        }
      }
    if (bad != LONG_MAX) {
      const long i = bad / r, j = bad % r;
      fail("multiplicativity fails at (" + A.basis[i] + ", " + A.basis[j] +
           "): f(xy) = " + lc_to_string(hom_apply(f, LinComb(A.prod_begin(i, j), A.prod_end(i, j))), B.basis) +
           " but f(x)f(y) = " + lc_to_string(B.mul(f.mat[i], f.mat[j]), B.basis));
    }
  }
  if (flags.unital) {
    if (!A.unit || !B.unit)
      fail("unitality flag on a nonunital ring");
    else if (hom_apply(f, *A.unit) != *B.unit)
      fail("unit maps to " + lc_to_string(hom_apply(f, *A.unit), B.basis));
  }
  if (flags.equivariant) {
    if (!A.acting_group || !B.acting_group) {
      fail("equivariance flag without actions on both sides");
    } else {
      for (int g : equivariance_elems) {
        for (long i = 0; i < A.rank(); ++i) {
          const LinComb lhs = hom_apply(f, A.act(g, lc_single(i)));
          const LinComb rhs = B.act(g, f.mat[i]);
          if (lhs != rhs) {
            fail("equivariance fails for " + A.acting_group->labels[g] + " at " +
                 A.basis[i] + ": f(g x) = " + lc_to_string(lhs, B.basis) +
                 " but g f(x) = " + lc_to_string(rhs, B.basis));
            break;
          }
        }
        if (!res.pass) break;
      }
    }
  }
  if (flags.bijective) {
    if (A.rank() != B.rank()) {
      fail("ranks differ: " + std::to_string(A.rank()) + " vs " + std::to_string(B.rank()));
    } else {
      SparseMat m(B.rank(), A.rank());
      for (long j = 0; j < A.rank(); ++j)
        for (auto& [k, c] : f.mat[j]) m.col[j].emplace_back(k, c);
      const SmithSummary s = smith_sparse(m);
      if (s.rank != A.rank() || !s.nontrivial().empty())
        fail("matrix not invertible over the integers: rank " + std::to_string(s.rank) +
             " of " + std::to_string(A.rank()) + ", torsion factors " +
             std::to_string(s.nontrivial().size()));
    }
  }
  return res;
}

// --- twisted bimodule and s-unitality ---------------------------------------

LinComb TwistedBimodule::left(const LinComb& r, const LinComb& x) const {
  return ring->mul(r, x);
}

LinComb TwistedBimodule::right(const LinComb& x, const LinComb& r) const {
  return ring->mul(x, ring->act(g, r));
}

TwistedBimodule twisted_bimodule(std::shared_ptr<const BasedRing> r, int g) {
  if (!r->acting_group) throw RingError("twist needs an action");
  if (g < 0 || g >= r->acting_group->n) throw RingError("twist element out of range");
  TwistedBimodule tb{std::move(r), g};
  const BasedRing& R = *tb.ring;
  if (R.rank() <= 128) {
    for (long i = 0; i < R.rank(); ++i)
      for (long j = 0; j < R.rank(); ++j)
        for (long k = 0; k < R.rank(); ++k) {
          const LinComb a = lc_single(i), x = lc_single(j), s = lc_single(k);
          if (tb.right(tb.left(a, x), s) != tb.left(a, tb.right(x, s)))
            throw RingError("twisted actions do not commute");
        }
  }
  return tb;
}

SUnitalProbe s_unital_probe(const BasedRing& a, const std::vector<LinComb>& elems) {
  if (elems.empty()) throw RingError("probe needs at least one element");
  const long r = a.rank();
  const long rows = 2 * static_cast<long>(elems.size()) * r;
  DenseMat M(rows, r);
  std::vector<Int> b(rows, Int(0));
  long row0 = 0;
  for (auto& e : elems) {
    // sum_j x_j (e_j * e) = e  and  sum_j x_j (e * e_j) = e
    for (long j = 0; j < r; ++j) {
      for (auto& [k, c] : a.mul(lc_single(j), e)) M.at(row0 + k, j) += c;
      for (auto& [k, c] : a.mul(e, lc_single(j))) M.at(row0 + r + k, j) += c;
    }
    for (auto& [k, c] : e) {
      b[row0 + k] = c;
      b[row0 + r + k] = c;
    }
    row0 += 2 * r;
  }
  const SolveResult sol = solve_full(M, b);
  SUnitalProbe out;
  out.rational_solvable = sol.rational_solvable;
  if (sol.x) {
    LinComb w;
    for (long j = 0; j < r; ++j)
      if ((*sol.x)[j] != 0) w.emplace_back(j, (*sol.x)[j]);
    out.witness = std::move(w);
  }
  return out;
}

}  // namespace zalg
