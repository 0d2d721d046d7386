#include "zalg/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zalg {

namespace {

void check_order(long n) {
  if (n < 1 || n > kMaxGroupOrder)
    throw GroupError("group order out of range: " + std::to_string(n));
}

void fill_inverses(FiniteGroup& g) {
  g.inv.assign(g.n, -1);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.mul(a, b) == g.id && g.mul(b, a) == g.id) {
        g.inv[a] = b;
        break;
      }
  for (int a = 0; a < g.n; ++a)
    if (g.inv[a] < 0) throw GroupError("element " + g.labels[a] + " has no inverse");
}

}  // namespace

FiniteGroup cyclic_group(long n) {
  check_order(n);
  FiniteGroup g;
  g.n = n;
  g.labels.reserve(n);
  for (long i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
  g.table.resize(static_cast<size_t>(n) * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) g.table[static_cast<size_t>(a) * n + b] = static_cast<int>((a + b) % n);
  g.id = 0;
  g.inv.resize(n);
  for (long a = 0; a < n; ++a) g.inv[a] = static_cast<int>((n - a) % n);
  return g;
}

FiniteGroup symmetric_group(int deg) {
  if (deg < 1 || deg > 6) throw GroupError("symmetric degree out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(deg);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const long n = static_cast<long>(perms.size());
  check_order(n);

  FiniteGroup g;
  g.n = n;
  g.labels.reserve(n);
  for (auto& q : perms) {
    std::string s = "(";
    for (int i = 0; i < deg; ++i) {
      if (i) s += ' ';
      s += std::to_string(q[i]);
    }
    s += ')';
    g.labels.push_back(std::move(s));
  }
  // index lookup by one-line image; lex order matches the perms vector
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  g.table.resize(static_cast<size_t>(n) * n);
  std::vector<int> comp(deg);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      for (int i = 0; i < deg; ++i) comp[i] = perms[a][perms[b][i]];  // a after b
      g.table[static_cast<size_t>(a) * n + b] = index_of(comp);
    }
  g.id = 0;
  g.perms = std::move(perms);
  fill_inverses(g);
  return g;
}

int perm_parity(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> generator_words(const FiniteGroup& g,
                                              const std::vector<int>& gens) {
  std::vector<std::vector<int>> words(g.n);
  std::vector<char> known(g.n, 0);
  known[g.id] = 1;
  std::vector<int> queue{g.id};
  for (size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      const int moves[2] = {g.mul(x, gens[k]), g.mul(x, g.inv[gens[k]])};
      const int letter[2] = {static_cast<int>(k), ~static_cast<int>(k)};
      for (int dir = 0; dir < 2; ++dir) {
        const int y = moves[dir];
        if (known[y]) continue;
        known[y] = 1;
        words[y] = words[x];
        words[y].push_back(letter[dir]);
        queue.push_back(y);
      }
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (!known[x]) throw GroupError("generators do not generate the group");
  return words;
}

FiniteGroup table_group(const std::vector<std::vector<int>>& t) {
  const long n = static_cast<long>(t.size());
  check_order(n);
  FiniteGroup g;
  g.n = n;
  for (long i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
  g.table.resize(static_cast<size_t>(n) * n);
  for (long a = 0; a < n; ++a) {
    if (static_cast<long>(t[a].size()) != n) throw GroupError("table not square");
    for (long b = 0; b < n; ++b) {
      int v = t[a][b];
      if (v < 0 || v >= n) throw GroupError("table entry out of range");
      g.table[static_cast<size_t>(a) * n + b] = v;
    }
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw GroupError("table has no identity");
  g.id = id;
  fill_inverses(g);
  validate_group(g);
  return g;
}

void validate_group(const FiniteGroup& g) {
  if (g.n < 1 || static_cast<long>(g.labels.size()) != g.n ||
      static_cast<long>(g.table.size()) != g.n * g.n)
    throw GroupError("malformed group");
  for (int x = 0; x < g.n; ++x)
    if (g.mul(g.id, x) != x || g.mul(x, g.id) != x) throw GroupError("identity law fails");
  for (int a = 0; a < g.n; ++a)
    if (g.mul(a, g.inv[a]) != g.id || g.mul(g.inv[a], a) != g.id)
      throw GroupError("inverse law fails");
  bool assoc = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(&& : assoc)
#endif
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < g.n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) assoc = false;
    }
  if (!assoc) throw GroupError("multiplication not associative");
}

std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> gens) {
  std::vector<char> in(g.n, 0);
  std::vector<int> queue;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  };
  push(g.id);
  for (int x : gens) {
    if (x < 0 || x >= g.n) throw GroupError("generator out of range");
    push(x);
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    const int a = queue[head];
    push(g.inv[a]);
    for (size_t k = 0; k < queue.size(); ++k) {
      push(g.mul(a, queue[k]));
      push(g.mul(queue[k], a));
    }
  }
  std::vector<int> out;
  for (int x = 0; x < g.n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<char> in(g.n, 0);
  for (int x : h) {
    if (x < 0 || x >= g.n) return false;
    in[x] = 1;
  }
  if (!in[g.id]) return false;
  for (int a : h) {
    if (!in[g.inv[a]]) return false;
    for (int b : h)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work{{g.id}};
  seen.insert(work[0]);
  for (size_t k = 0; k < work.size(); ++k) {
    const std::vector<int> s = work[k];
    for (int e = 0; e < g.n; ++e) {
      if (std::binary_search(s.begin(), s.end(), e)) continue;
      std::vector<int> gens = s;
      gens.push_back(e);
      std::vector<int> t = subgroup_closure(g, gens);
      if (seen.insert(t).second) work.push_back(std::move(t));
    }
  }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& H) {
  if (!is_subgroup(g, H)) throw GroupError("not a subgroup");
  std::vector<int> h = H;
  std::sort(h.begin(), h.end());
  const long m = static_cast<long>(h.size());
  std::vector<int> pos(g.n, -1);
  for (long i = 0; i < m; ++i) pos[h[i]] = static_cast<int>(i);
  FiniteGroup s;
  s.n = m;
  for (int x : h) s.labels.push_back(g.labels[x]);
  s.table.resize(static_cast<size_t>(m) * m);
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      s.table[static_cast<size_t>(a) * m + b] = pos[g.mul(h[a], h[b])];
  s.id = pos[g.id];
  s.inv.resize(m);
  for (long a = 0; a < m; ++a) s.inv[a] = pos[g.inv[h[a]]];
  return s;
}

CosetSpace coset_space(const FiniteGroup& g, const std::vector<int>& H) {
  if (!is_subgroup(g, H)) throw GroupError("not a subgroup");
  CosetSpace cs;
  cs.H = H;
  std::sort(cs.H.begin(), cs.H.end());
  cs.coset_of.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (cs.coset_of[x] >= 0) continue;
    const int c = static_cast<int>(cs.rep.size());
    for (int h : cs.H) cs.coset_of[g.mul(x, h)] = c;
    cs.rep.push_back(x);  // x is smallest in its coset: earlier members were assigned
  }
  cs.rep[cs.coset_of[g.id]] = g.id;  // pointed section
  return cs;
}

DoubleCosets double_cosets(const FiniteGroup& g, const std::vector<int>& H,
                           const std::vector<int>& K) {
  if (!is_subgroup(g, H) || !is_subgroup(g, K)) throw GroupError("not a subgroup");
  DoubleCosets dc;
  std::vector<int> cls(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (cls[x] >= 0) continue;
    const int c = static_cast<int>(dc.theta.size());
    std::vector<int> members;
    for (int h : H)
      for (int k : K) {
        const int y = g.mul(g.mul(h, x), k);
        if (cls[y] < 0) {
          cls[y] = c;
          members.push_back(y);
        }
      }
    std::sort(members.begin(), members.end());
    dc.theta.push_back(x);
    dc.classes.push_back(std::move(members));
  }
  for (int t : dc.theta) {
    std::vector<int> ht, kt;
    const int ti = g.inv[t];
    for (int h : H) {
      // h in theta K theta^-1  <=>  theta^-1 h theta in K
      const int w = g.mul(g.mul(ti, h), t);
      if (std::find(K.begin(), K.end(), w) != K.end()) ht.push_back(h);
    }
    for (int k : K) {
      const int w = g.mul(g.mul(t, k), ti);
      if (std::find(H.begin(), H.end(), w) != H.end()) kt.push_back(k);
    }
    std::sort(ht.begin(), ht.end());
    std::sort(kt.begin(), kt.end());
    dc.H_theta.push_back(std::move(ht));
    dc.K_thetainv.push_back(std::move(kt));
  }
  return dc;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> seen(g.n, 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < g.n; ++x) {
    if (seen[x]) continue;
    std::vector<int> cls;
    for (int a = 0; a < g.n; ++a) {
      const int y = g.conj(a, x);
      if (!seen[y]) {
        seen[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<int> centralizer(const FiniteGroup& g, int x) {
  std::vector<int> out;
  for (int a = 0; a < g.n; ++a)
    if (g.mul(a, x) == g.mul(x, a)) out.push_back(a);
  return out;
}

GSet point_gset(const FiniteGroup& g) {
  GSet s;
  s.group_order = g.n;
  s.size = 1;
  s.act.assign(g.n, 0);
  return s;
}

GSet regular_gset(const FiniteGroup& g) {
  GSet s;
  s.group_order = g.n;
  s.size = g.n;
  s.act = g.table;
  return s;
}

GSet left_coset_gset(const FiniteGroup& g, const CosetSpace& cs) {
  GSet s;
  s.group_order = g.n;
  s.size = cs.size();
  s.act.resize(static_cast<size_t>(g.n) * s.size);
  for (int a = 0; a < g.n; ++a)
    for (long c = 0; c < s.size; ++c)
      s.act[static_cast<size_t>(a) * s.size + c] = cs.coset_of[g.mul(a, cs.rep[c])];
  return s;
}

GSet table_gset(const FiniteGroup& g, long size, const std::vector<int>& act) {
  GSet s;
  s.group_order = g.n;
  s.size = size;
  s.act = act;
  validate_gset(g, s);
  return s;
}

void validate_gset(const FiniteGroup& g, const GSet& s) {
  if (s.group_order != g.n || static_cast<long>(s.act.size()) != g.n * s.size)
    throw GroupError("malformed action table");
  for (auto v : s.act)
    if (v < 0 || v >= s.size) throw GroupError("action image out of range");
  for (long x = 0; x < s.size; ++x)
    if (s.apply(g.id, static_cast<int>(x)) != x) throw GroupError("identity does not act trivially");
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const int ab = g.mul(a, b);
      for (long x = 0; x < s.size; ++x)
        if (s.apply(ab, static_cast<int>(x)) != s.apply(a, s.apply(b, static_cast<int>(x))))
          throw GroupError("action not compatible with multiplication");
    }
}

long TransportGroupoid::arrow_count() const {
  long n = 0;
  for (auto& row : hom)
    for (auto& h : row) n += static_cast<long>(h.size());
  return n;
}

TransportGroupoid transport_groupoid(const FiniteGroup& g, const GSet& s) {
  validate_gset(g, s);
  TransportGroupoid t;
  t.objects = s.size;
  t.hom.assign(s.size, std::vector<std::vector<int>>(s.size));
  for (int a = 0; a < g.n; ++a)
    for (long x = 0; x < s.size; ++x) t.hom[x][s.apply(a, static_cast<int>(x))].push_back(a);
  return t;
}

}  // namespace zalg
