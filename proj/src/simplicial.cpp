#include "zalg/simplicial.hpp"

#include <algorithm>
#include <set>

namespace zalg {

long SimplicialComplex::top_dim() const {
  return simp.empty() ? -1 : static_cast<long>(simp.back().size()) - 1;
}

long SimplicialComplex::id_of(const std::vector<int>& s) const {
  auto it = index.find(s);
  if (it == index.end()) throw SComplexError("unknown simplex");
  return it->second;
}

long SimplicialComplex::apply_simplex(int g, long s, int* sign) const {
  std::vector<int> img;
  img.reserve(simp[s].size());
  for (int v : simp[s]) img.push_back(vact[g][v]);
  if (sign) {
    int inversions = 0;
    for (size_t i = 0; i < img.size(); ++i)
      for (size_t j = i + 1; j < img.size(); ++j)
        if (img[i] > img[j]) ++inversions;
    *sign = inversions % 2 == 0 ? 1 : -1;
  }
  std::sort(img.begin(), img.end());
  auto it = index.find(img);
  if (it == index.end()) throw SComplexError("action image is not a simplex");
  return it->second;
}

namespace {

bool dim_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void finalize(SimplicialComplex& x, std::set<std::vector<int>> faces) {
  x.simp.assign(faces.begin(), faces.end());
  std::sort(x.simp.begin(), x.simp.end(), dim_lex_less);
  for (long i = 0; i < static_cast<long>(x.simp.size()); ++i) x.index[x.simp[i]] = i;
}

}  // namespace

SimplicialComplex build_complex(long nv, const std::vector<std::vector<int>>& facets) {
  SimplicialComplex x;
  x.nv = nv;
  std::set<std::vector<int>> faces;
  for (auto& f : facets) {
    if (f.empty()) throw SComplexError("empty facet");
    std::vector<int> s = f;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw SComplexError("facet repeats a vertex");
    if (s.front() < 0 || s.back() >= nv) throw SComplexError("facet references unknown vertex");
    // downward closure by subset masks
    const size_t k = s.size();
    for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
      std::vector<int> face;
      for (size_t b = 0; b < k; ++b)
        if (mask & (size_t{1} << b)) face.push_back(s[b]);
      faces.insert(std::move(face));
    }
  }
  finalize(x, std::move(faces));
  return x;
}

void attach_complex_action(SimplicialComplex& x, std::shared_ptr<const FiniteGroup> g,
                           std::vector<std::vector<int>> vact) {
  if (static_cast<long>(vact.size()) != g->n) throw SComplexError("one permutation per element");
  for (auto& p : vact) {
    if (static_cast<long>(p.size()) != x.nv) throw SComplexError("permutation size mismatch");
    std::vector<char> seen(x.nv, 0);
    for (int v : p) {
      if (v < 0 || v >= x.nv || seen[v]) throw SComplexError("not a vertex permutation");
      seen[v] = 1;
    }
  }
  for (int v = 0; v < x.nv; ++v)
    if (vact[g->id][v] != v) throw SComplexError("identity must act trivially");
  for (int a = 0; a < g->n; ++a)
    for (int b = 0; b < g->n; ++b) {
      const int ab = g->mul(a, b);
      for (int v = 0; v < x.nv; ++v)
        if (vact[ab][v] != vact[a][vact[b][v]])
          throw SComplexError("vertex action not a group action");
    }
  x.group = std::move(g);
  x.vact = std::move(vact);
  // simplicial + admissible
  for (int e = 0; e < x.group->n; ++e)
    for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) {
      std::vector<int> img;
      for (int v : x.simp[s]) img.push_back(x.vact[e][v]);
      std::sort(img.begin(), img.end());
      if (!x.has(img)) {
        x.group.reset();
        x.vact.clear();
        throw SComplexError("action is not simplicial");
      }
      if (img == x.simp[s]) {
        for (int v : x.simp[s])
          if (x.vact[e][v] != v) {
            x.group.reset();
            x.vact.clear();
            throw SComplexError(
                "action not admissible: a simplex is stabilized but not fixed; "
                "subdivide() the complex first");
          }
      }
    }
}

SimplicialComplex subdivide(const SimplicialComplex& x) {
  SimplicialComplex sd;
  sd.nv = static_cast<long>(x.simp.size());
  // simplices of sd = chains under strict face inclusion; enumerate by DFS
  // from each simplex id downward
  std::set<std::vector<int>> faces;
  std::vector<int> chain;
  // is a a proper face of b
  auto face_of = [&](long a, long b) {
    return x.simp[a].size() < x.simp[b].size() &&
           std::includes(x.simp[b].begin(), x.simp[b].end(), x.simp[a].begin(),
                         x.simp[a].end());
  };
  auto dfs = [&](auto&& self, long top) -> void {
    chain.push_back(static_cast<int>(top));
    std::vector<int> key(chain.rbegin(), chain.rend());  // ascending dim
    faces.insert(key);
    for (long below = 0; below < top; ++below)
      if (face_of(below, top)) self(self, below);
    chain.pop_back();
  };
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) dfs(dfs, s);
  finalize(sd, std::move(faces));
  if (x.group) {
    std::vector<std::vector<int>> vact(x.group->n, std::vector<int>(sd.nv));
    for (int e = 0; e < x.group->n; ++e)
      for (long s = 0; s < sd.nv; ++s)
        vact[e][s] = static_cast<int>(x.apply_simplex(e, s));
    attach_complex_action(sd, x.group, std::move(vact));
  }
  return sd;
}

namespace {
std::vector<long> sorted_unique(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace

std::vector<long> generated(const SimplicialComplex& x, const std::vector<long>& m) {
  std::vector<long> out;
  for (long s : m) {
    const auto& vs = x.simp[s];
    const size_t k = vs.size();
    for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
      std::vector<int> face;
      for (size_t b = 0; b < k; ++b)
        if (mask & (size_t{1} << b)) face.push_back(vs[b]);
      out.push_back(x.id_of(face));
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<long> star(const SimplicialComplex& x, const std::vector<long>& m) {
  const std::vector<long> gen = generated(x, m);
  std::vector<char> in_gen(x.simp.size(), 0);
  for (long s : gen) in_gen[s] = 1;
  std::vector<long> out;
  for (long t = 0; t < static_cast<long>(x.simp.size()); ++t)
    for (int v : x.simp[t])
      if (in_gen[x.id_of({v})]) {
        out.push_back(t);
        break;
      }
  return out;
}

std::vector<long> closed_star(const SimplicialComplex& x, const std::vector<long>& m) {
  return generated(x, star(x, m));
}

std::vector<long> link(const SimplicialComplex& x, const std::vector<long>& m) {
  const std::vector<long> st = star(x, m);
  const std::vector<long> cst = closed_star(x, m);
  std::vector<long> out;
  std::set_difference(cst.begin(), cst.end(), st.begin(), st.end(), std::back_inserter(out));
  return out;
}

std::vector<long> fixed_ids(const SimplicialComplex& x, const std::vector<int>& H) {
  if (!x.group) throw SComplexError("complex has no action");
  std::vector<long> out;
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) {
    bool fixed = true;
    for (int h : H) {
      for (int v : x.simp[s])
        if (x.vact[h][v] != v) {
          fixed = false;
          break;
        }
      if (!fixed) break;
    }
    if (fixed) out.push_back(s);
  }
  return out;
}

SimplicialComplex subcomplex(const SimplicialComplex& x, const std::vector<long>& ids) {
  SimplicialComplex y;
  y.nv = x.nv;
  std::set<std::vector<int>> faces;
  for (long s : ids) faces.insert(x.simp[s]);
  // verify downward closure rather than silently closing
  for (auto& f : faces)
    if (f.size() > 1)
      for (size_t drop = 0; drop < f.size(); ++drop) {
        std::vector<int> face;
        for (size_t i = 0; i < f.size(); ++i)
          if (i != drop) face.push_back(f[i]);
        if (!faces.count(face)) throw SComplexError("id set is not a subcomplex");
      }
  finalize(y, std::move(faces));
  return y;
}

SimplicialComplex subcomplex_with_action(const SimplicialComplex& x,
                                         const std::vector<long>& ids,
                                         const std::vector<int>& subgroup) {
  if (!x.group) throw SComplexError("complex has no action");
  SimplicialComplex y = subcomplex(x, ids);
  auto sub = std::make_shared<FiniteGroup>(subgroup_group(*x.group, subgroup));
  std::vector<int> h = subgroup;
  std::sort(h.begin(), h.end());
  std::vector<std::vector<int>> vact;
  vact.reserve(h.size());
  for (int e : h) vact.push_back(x.vact[e]);
  attach_complex_action(y, std::move(sub), std::move(vact));
  return y;
}

SimplicialComplex fixed_points(const SimplicialComplex& x, const std::vector<int>& H) {
  if (!x.group) throw SComplexError("complex has no action");
  if (!is_subgroup(*x.group, H)) throw SComplexError("not a subgroup of the acting group");
  return subcomplex(x, fixed_ids(x, H));
}

SimplicialComplex induce_space(std::shared_ptr<const FiniteGroup> G,
                               const std::vector<int>& H, const SimplicialComplex& x) {
  const FiniteGroup sub = subgroup_group(*G, H);
  if (!x.group || x.group->n != sub.n || x.group->table != sub.table)
    throw SComplexError("complex must carry the action of the subgroup");
  std::vector<int> h = H;
  std::sort(h.begin(), h.end());
  std::vector<int> pos(G->n, -1);
  for (size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);

  const CosetSpace cs = coset_space(*G, H);
  const long copies = cs.size();
  SimplicialComplex y;
  y.nv = copies * x.nv;
  std::set<std::vector<int>> faces;
  for (long c = 0; c < copies; ++c)
    for (auto& s : x.simp) {
      std::vector<int> t;
      t.reserve(s.size());
      for (int v : s) t.push_back(static_cast<int>(c * x.nv + v));
      faces.insert(std::move(t));
    }
  finalize(y, std::move(faces));

  std::vector<std::vector<int>> vact(G->n, std::vector<int>(y.nv));
  for (int e = 0; e < G->n; ++e)
    for (long c = 0; c < copies; ++c) {
      const int gc = cs.coset_of[G->mul(e, cs.rep[c])];
      const int hp = pos[G->mul(G->inv[cs.rep[gc]], G->mul(e, cs.rep[c]))];
      if (hp < 0) throw SComplexError("section arithmetic left the subgroup");
      for (int v = 0; v < x.nv; ++v)
        vact[e][c * x.nv + v] = static_cast<int>(gc * x.nv + x.vact[hp][v]);
    }
  attach_complex_action(y, std::move(G), std::move(vact));
  return y;
}

bool family_check(const SimplicialComplex& x,
                  const std::vector<std::vector<int>>& family) {
  if (!x.group) throw SComplexError("complex has no action");
  const FiniteGroup& g = *x.group;
  std::set<std::vector<int>> fam;
  for (auto& f : family) {
    std::vector<int> s = f;
    std::sort(s.begin(), s.end());
    if (!is_subgroup(g, s)) throw SComplexError("family member is not a subgroup");
    fam.insert(std::move(s));
  }
  // family: closed under conjugation and under passing to subgroups
  for (auto& f : fam) {
    for (int c = 0; c < g.n; ++c) {
      std::vector<int> conj;
      for (int h : f) conj.push_back(g.conj(c, h));
      std::sort(conj.begin(), conj.end());
      if (!fam.count(conj)) throw SComplexError("family not closed under conjugation");
    }
    if (f.size() <= 12) {
      // full subgroup closure check by subset enumeration
      const std::vector<int> mem(f.begin(), f.end());
      for (size_t mask = 0; mask < (size_t{1} << mem.size()); ++mask) {
        std::vector<int> s;
        for (size_t b = 0; b < mem.size(); ++b)
          if (mask & (size_t{1} << b)) s.push_back(mem[b]);
        if (!is_subgroup(g, s)) continue;
        if (!fam.count(s)) throw SComplexError("family not closed under subgroups");
      }
    } else {
      // large member: settle for cyclic subgroups
      for (int h : f) {
        std::vector<int> cyc = subgroup_closure(g, {h});
        if (!fam.count(cyc)) throw SComplexError("family not closed under subgroups");
      }
    }
  }
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) {
    std::vector<int> stab;
    for (int e = 0; e < g.n; ++e) {
      bool fixes = true;
      for (int v : x.simp[s])
        if (x.vact[e][v] != v) {
          fixes = false;
          break;
        }
      if (fixes) stab.push_back(e);
    }
    if (!fam.count(stab)) return false;
  }
  return true;
}

std::vector<long> degree_ids(const SimplicialComplex& x, long d) {
  std::vector<long> out;
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s)
    if (static_cast<long>(x.simp[s].size()) == d + 1) out.push_back(s);
  return out;
}

ChainComplexZ chains(const SimplicialComplex& x) {
  std::vector<long> all(x.simp.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<long>(i);
  return chains(x, all);
}

ChainComplexZ chains(const SimplicialComplex& x, const std::vector<long>& raw_ids) {
  const std::vector<long> ids = sorted_unique(raw_ids);
  // position of each simplex id within its degree, restricted to ids
  std::map<long, long> pos;
  std::map<long, long> counts;
  for (long s : ids) {
    const long d = static_cast<long>(x.simp[s].size()) - 1;
    pos[s] = counts[d]++;
  }
  ChainComplexZ c;
  for (auto& [d, n] : counts) c.set_dim(d, n);
  std::map<long, SparseMat> mats;
  for (auto& [d, n] : counts)
    if (counts.count(d - 1)) mats.emplace(d, SparseMat(counts[d - 1], n));
  for (long s : ids) {
    const auto& vs = x.simp[s];
    const long d = static_cast<long>(vs.size()) - 1;
    if (d == 0) continue;
    auto mit = mats.find(d);
    if (mit == mats.end()) throw SComplexError("id set is not closed under faces");
    for (size_t drop = 0; drop < vs.size(); ++drop) {
      std::vector<int> face;
      for (size_t i = 0; i < vs.size(); ++i)
        if (i != drop) face.push_back(vs[i]);
      auto fit = pos.find(x.id_of(face));
      if (fit == pos.end()) throw SComplexError("id set is not closed under faces");
      mit->second.add(fit->second, pos[s], Int(drop % 2 == 0 ? 1 : -1));
    }
  }
  for (auto& [d, m] : mats) {
    m.normalize();
    if (m.nnz() != 0) c.diff[d] = std::move(m);
  }
  return c;
}

SparseMat chain_action(const SimplicialComplex& x, int g, long d) {
  const std::vector<long> ids = degree_ids(x, d);
  std::map<long, long> pos;
  for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<long>(i);
  SparseMat m(static_cast<long>(ids.size()), static_cast<long>(ids.size()));
  for (size_t i = 0; i < ids.size(); ++i) {
    int sign = 1;
    const long img = x.apply_simplex(g, ids[i], &sign);
    m.add(pos.at(img), static_cast<long>(i), Int(sign));
  }
  m.normalize();
  return m;
}

}  // namespace zalg
