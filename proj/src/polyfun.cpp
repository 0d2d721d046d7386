#include "zalg/polyfun.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace zalg {

namespace {

// graded-lex, leading term first: higher total degree wins, ties go to the
// lexicographically larger exponent vector
int mono_cmp(const std::vector<int>& a, const std::vector<int>& b) {
  long da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

Poly normalize(Poly p) {
  std::sort(p.terms.begin(), p.terms.end(),
            [](const auto& s, const auto& t) { return mono_cmp(s.first, t.first) < 0; });
  std::vector<std::pair<std::vector<int>, Int>> out;
  for (auto& t : p.terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  p.terms = std::move(out);
  return p;
}

long simplex_dim(const SimplicialComplex& x, long s) {
  return static_cast<long>(x.simp[s].size()) - 1;
}

std::string simplex_str(const SimplicialComplex& x, long s) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < x.simp[s].size(); ++i)
    os << (i ? "," : "") << x.simp[s][i];
  os << "}";
  return os.str();
}

long face_id(const SimplicialComplex& x, long s, int k) {
  std::vector<int> v = x.simp[s];
  v.erase(v.begin() + k);
  return x.id_of(v);
}

bool in_ids(const std::vector<long>& ids, long s) {
  return std::binary_search(ids.begin(), ids.end(), s);
}

// u_i -> t_{i} for i < k, t_{i+1} for i >= k; a section of face k
Poly insert_at(const Poly& q, int k, int m, int bound) {
  std::vector<Poly> forms(q.nvars);
  for (int i = 0; i < q.nvars; ++i) forms[i] = poly_var(m, i < k ? i : i + 1);
  return poly_subst(q, forms, m, bound);
}

}  // namespace

int Poly::degree() const {
  if (terms.empty()) return -1;
  long d = 0;
  for (int e : terms.front().first) d += e;
  return static_cast<int>(d);
}

Poly poly_zero(int nvars) {
  Poly p;
  p.nvars = nvars;
  return p;
}

Poly poly_const(int nvars, const Int& c) {
  Poly p;
  p.nvars = nvars;
  if (c != 0) p.terms.push_back({std::vector<int>(nvars, 0), c});
  return p;
}

Poly poly_var(int nvars, int i) {
  if (i < 0 || i >= nvars) throw PolyError("variable index out of range");
  Poly p;
  p.nvars = nvars;
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  p.terms.push_back({std::move(e), Int(1)});
  return p;
}

Poly poly_from_terms(int nvars, std::vector<std::pair<std::vector<int>, Int>> ts) {
  Poly p;
  p.nvars = nvars;
  for (auto& t : ts) {
    if (static_cast<int>(t.first.size()) != nvars)
      throw PolyError("exponent vector has wrong length");
    for (int e : t.first)
      if (e < 0) throw PolyError("negative exponent");
  }
  p.terms = std::move(ts);
  return normalize(std::move(p));
}

Poly poly_add(const Poly& a, const Poly& b) {
  if (a.nvars != b.nvars) throw PolyError("variable count mismatch");
  Poly p = a;
  p.terms.insert(p.terms.end(), b.terms.begin(), b.terms.end());
  return normalize(std::move(p));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_neg(const Poly& a) { return poly_scale(a, Int(-1)); }

Poly poly_scale(const Poly& a, const Int& c) {
  Poly p;
  p.nvars = a.nvars;
  if (c == 0) return p;
  p.terms = a.terms;
  for (auto& t : p.terms) t.second *= c;
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b, int bound) {
  if (a.nvars != b.nvars) throw PolyError("variable count mismatch");
  Poly p;
  p.nvars = a.nvars;
  if (a.is_zero() || b.is_zero()) return p;
  // leading terms cannot cancel over Z, so the product degree is exact
  if (a.degree() + b.degree() > bound)
    throw PolyError("product degree " + std::to_string(a.degree() + b.degree()) +
                    " exceeds bound " + std::to_string(bound));
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      std::vector<int> e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = s.first[i] + t.first[i];
      p.terms.push_back({std::move(e), s.second * t.second});
    }
  return normalize(std::move(p));
}

Poly poly_subst(const Poly& p, const std::vector<Poly>& forms, int out_nvars,
                int bound) {
  if (static_cast<int>(forms.size()) != p.nvars)
    throw PolyError("substitution needs one form per variable");
  for (const auto& f : forms)
    if (f.nvars != out_nvars) throw PolyError("substitute in wrong variable count");
  Poly out = poly_zero(out_nvars);
  for (const auto& t : p.terms) {
    Poly m = poly_const(out_nvars, t.second);
    for (int i = 0; i < p.nvars && !m.is_zero(); ++i)
      for (int e = 0; e < t.first[i]; ++e) m = poly_mul(m, forms[i], bound);
    out = poly_add(out, m);
  }
  return out;
}

Poly poly_div_var(const Poly& p, int i) {
  Poly q = p;
  for (auto& t : q.terms) {
    if (t.first[i] == 0)
      throw PolyError("not divisible by variable t" + std::to_string(i));
    --t.first[i];
  }
  return q;  // term order is preserved by a uniform shift
}

Poly poly_div_exact(const Poly& p, const Poly& f) {
  if (f.is_zero()) throw PolyError("division by zero polynomial");
  if (f.nvars != p.nvars) throw PolyError("variable count mismatch");
  const auto& lf = f.terms.front();
  if (lf.second != 1 && lf.second != -1)
    throw PolyError("divisor leading coefficient must be a unit");
  Poly r = p, q = poly_zero(p.nvars);
  int guard = 0;
  while (!r.is_zero()) {
    const auto& lr = r.terms.front();
    std::vector<int> e(r.nvars);
    for (int i = 0; i < r.nvars; ++i) {
      e[i] = lr.first[i] - lf.first[i];
      if (e[i] < 0) throw PolyError("quotient does not exist over Z");
    }
    Int c = lr.second * lf.second;  // lf.second is +-1
    Poly t;
    t.nvars = r.nvars;
    t.terms.push_back({std::move(e), c});
    q = poly_add(q, t);
    r = poly_sub(r, poly_mul(f, t, std::max(p.degree(), 0)));
    if (++guard > 100000) throw PolyError("division does not terminate");
  }
  return q;
}

std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms) {
    Int c = t.second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int ac = c < 0 ? Int(-c) : c;
    bool any = false;
    for (int e : t.first) any = any || e > 0;
    if (ac != 1 || !any) os << ac.get_str();
    bool star = ac != 1;
    for (int i = 0; i < p.nvars; ++i) {
      if (t.first[i] == 0) continue;
      if (star) os << "*";
      os << "t" << i;
      if (t.first[i] > 1) os << "^" << t.first[i];
      star = true;
    }
    first = false;
  }
  return os.str();
}

Poly face_restrict(const Poly& p, int m, int k) {
  if (p.nvars != m) throw PolyError("polynomial does not live on an m-simplex");
  if (m < 1 || k < 0 || k > m) throw PolyError("face index out of range");
  std::vector<Poly> forms(m);
  if (k < m) {
    for (int i = 0; i < m; ++i)
      forms[i] = i == k   ? poly_zero(m - 1)
                 : i < k  ? poly_var(m - 1, i)
                          : poly_var(m - 1, i - 1);
  } else {
    for (int i = 0; i + 1 < m; ++i) forms[i] = poly_var(m - 1, i);
    Poly last = poly_const(m - 1, Int(1));
    for (int j = 0; j + 1 < m; ++j) last = poly_sub(last, poly_var(m - 1, j));
    forms[m - 1] = last;
  }
  return poly_subst(p, forms, m - 1, std::max(p.degree(), 0));
}

// --- functions on a complex -------------------------------------------------

PolyFun pf_zero(const SimplicialComplex& x, int bound) {
  PolyFun f;
  f.x = &x;
  f.bound = bound;
  f.val.reserve(x.simp.size());
  for (size_t s = 0; s < x.simp.size(); ++s)
    f.val.push_back(poly_zero(static_cast<int>(simplex_dim(x, s))));
  return f;
}

PolyFun pf_const(const SimplicialComplex& x, const Int& c, int bound) {
  PolyFun f = pf_zero(x, bound);
  for (size_t s = 0; s < x.simp.size(); ++s)
    f.val[s] = poly_const(f.val[s].nvars, c);
  return f;
}

void validate_polyfun(const PolyFun& f) {
  const auto& x = *f.x;
  if (f.val.size() != x.simp.size()) throw PolyError("value count mismatch");
  for (size_t s = 0; s < x.simp.size(); ++s) {
    long m = simplex_dim(x, s);
    if (f.val[s].nvars != m) throw PolyError("variable count off on " + simplex_str(x, s));
    if (f.val[s].degree() > f.bound)
      throw PolyError("degree exceeds bound on " + simplex_str(x, s));
    for (int k = 0; k <= m && m >= 1; ++k) {
      Poly r = face_restrict(f.val[s], static_cast<int>(m), k);
      long fs = face_id(x, s, k);
      if (!(r == f.val[fs]))
        throw PolyError("face incompatibility: " + simplex_str(x, s) + " restricts to " +
                        poly_to_string(r) + " on " + simplex_str(x, fs) + ", stored " +
                        poly_to_string(f.val[fs]));
    }
  }
}

PolyFun pf_from_entries(const SimplicialComplex& x,
                        const std::vector<std::pair<std::vector<int>, Poly>>& entries,
                        int bound) {
  std::vector<std::optional<Poly>> v(x.simp.size());
  for (const auto& e : entries) {
    long s = x.id_of(e.first);
    long m = simplex_dim(x, s);
    if (e.second.nvars != m)
      throw PolyError("entry on " + simplex_str(x, s) + " has " +
                      std::to_string(e.second.nvars) + " variables, want " +
                      std::to_string(m));
    if (e.second.degree() > bound)
      throw PolyError("entry degree exceeds bound " + std::to_string(bound));
    if (v[s] && !(*v[s] == e.second))
      throw PolyError("conflicting entries on " + simplex_str(x, s));
    v[s] = e.second;
  }
  // propagate down in descending id order; ids ascend with dimension
  for (long s = static_cast<long>(x.simp.size()) - 1; s >= 0; --s) {
    if (!v[s]) continue;
    long m = simplex_dim(x, s);
    for (int k = 0; k <= m && m >= 1; ++k) {
      Poly r = face_restrict(*v[s], static_cast<int>(m), k);
      long fs = face_id(x, s, k);
      if (v[fs] && !(*v[fs] == r))
        throw PolyError("entries disagree on " + simplex_str(x, fs));
      v[fs] = r;
    }
  }
  PolyFun f = pf_zero(x, bound);
  for (size_t s = 0; s < v.size(); ++s)
    if (v[s]) f.val[s] = *v[s];
  validate_polyfun(f);
  return f;
}

namespace {
void same_space(const PolyFun& a, const PolyFun& b) {
  if (a.x != b.x) throw PolyError("functions live on different complexes");
}
}  // namespace

PolyFun pf_add(const PolyFun& a, const PolyFun& b) {
  same_space(a, b);
  PolyFun f = a;
  f.bound = std::min(a.bound, b.bound);
  for (size_t s = 0; s < f.val.size(); ++s) f.val[s] = poly_add(a.val[s], b.val[s]);
  validate_polyfun(f);
  return f;
}

PolyFun pf_sub(const PolyFun& a, const PolyFun& b) { return pf_add(a, pf_neg(b)); }

PolyFun pf_neg(const PolyFun& a) { return pf_scale(a, Int(-1)); }

PolyFun pf_scale(const PolyFun& a, const Int& c) {
  PolyFun f = a;
  for (auto& p : f.val) p = poly_scale(p, c);
  validate_polyfun(f);
  return f;
}

PolyFun pf_mul(const PolyFun& a, const PolyFun& b) {
  same_space(a, b);
  PolyFun f = a;
  f.bound = std::min(a.bound, b.bound);
  for (size_t s = 0; s < f.val.size(); ++s)
    f.val[s] = poly_mul(a.val[s], b.val[s], f.bound);
  validate_polyfun(f);
  return f;
}

bool pf_eq(const PolyFun& a, const PolyFun& b) {
  same_space(a, b);
  return a.val == b.val;
}

bool pf_is_zero(const PolyFun& f) {
  for (const auto& p : f.val)
    if (!p.is_zero()) return false;
  return true;
}

std::string pf_to_string(const PolyFun& f) {
  std::ostringstream os;
  bool first = true;
  for (size_t s = 0; s < f.val.size(); ++s) {
    if (f.val[s].is_zero()) continue;
    if (!first) os << "; ";
    os << simplex_str(*f.x, s) << ": " << poly_to_string(f.val[s]);
    first = false;
  }
  return first ? "0" : os.str();
}

std::vector<long> support(const PolyFun& f) {
  std::vector<long> nz;
  for (size_t s = 0; s < f.val.size(); ++s)
    if (!f.val[s].is_zero()) nz.push_back(static_cast<long>(s));
  return generated(*f.x, nz);
}

SimplicialMap make_simplicial_map(const SimplicialComplex& src,
                                  const SimplicialComplex& tgt, std::vector<int> v) {
  if (static_cast<long>(v.size()) != src.nv)
    throw PolyError("vertex map has wrong length");
  for (int w : v)
    if (w < 0 || w >= tgt.nv) throw PolyError("vertex image out of range");
  SimplicialMap f{&src, &tgt, std::move(v)};
  for (size_t s = 0; s < src.simp.size(); ++s) {
    std::vector<int> img;
    for (int a : src.simp[s]) img.push_back(f.v[a]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!tgt.has(img))
      throw PolyError("image of " + simplex_str(src, s) + " is not a simplex");
  }
  return f;
}

PolyFun pullback(const SimplicialMap& f, const PolyFun& psi) {
  if (psi.x != f.tgt) throw PolyError("pullback argument lives on the wrong complex");
  const auto& x = *f.src;
  PolyFun out = pf_zero(x, psi.bound);
  for (size_t s = 0; s < x.simp.size(); ++s) {
    const auto& verts = x.simp[s];
    int n = static_cast<int>(verts.size()) - 1;
    std::vector<int> img;
    for (int a : verts) img.push_back(f.v[a]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    long tau = f.tgt->id_of(img);
    int mt = static_cast<int>(img.size()) - 1;
    // coordinate of target vertex img[j] = sum of source coordinates over
    // its preimages; the eliminated source coordinate enters as 1 - sum
    std::vector<Poly> forms(mt, poly_zero(n));
    for (int i = 0; i <= n; ++i) {
      int j = static_cast<int>(std::lower_bound(img.begin(), img.end(), f.v[verts[i]]) -
                               img.begin());
      if (j == mt) continue;  // lands on the eliminated target coordinate
      Poly ti;
      if (i < n) {
        ti = poly_var(n, i);
      } else {
        ti = poly_const(n, Int(1));
        for (int l = 0; l < n; ++l) ti = poly_sub(ti, poly_var(n, l));
      }
      forms[j] = poly_add(forms[j], ti);
    }
    out.val[s] = poly_subst(psi.val[tau], forms, n, psi.bound);
  }
  validate_polyfun(out);
  return out;
}

PolyFun pf_act(int g, const PolyFun& f) {
  const auto& x = *f.x;
  if (!x.group) throw PolyError("complex carries no action");
  SimplicialMap m{&x, &x, x.vact[x.group->inv[g]]};
  return pullback(m, f);
}

// --- extension ---------------------------------------------------------------

PolyFun extend(const PolyFun& phi, const std::vector<long>& yids_in) {
  const auto& x = *phi.x;
  std::vector<long> yids = yids_in;
  std::sort(yids.begin(), yids.end());
  yids.erase(std::unique(yids.begin(), yids.end()), yids.end());
  for (long s : yids) {
    if (s < 0 || s >= static_cast<long>(x.simp.size()))
      throw PolyError("bad simplex id in Y");
    long m = simplex_dim(x, s);
    for (int k = 0; k <= m && m >= 1; ++k)
      if (!in_ids(yids, face_id(x, s, k)))
        throw PolyError("Y is not a subcomplex: face " +
                        simplex_str(x, face_id(x, s, k)) + " of " + simplex_str(x, s) +
                        " is missing");
  }
  // trust phi only on Y: check compatibility and the bound there
  for (long s : yids) {
    long m = simplex_dim(x, s);
    if (phi.val[s].degree() > phi.bound)
      throw PolyError("degree exceeds bound on " + simplex_str(x, s));
    for (int k = 0; k <= m && m >= 1; ++k) {
      long fs = face_id(x, s, k);
      if (!(face_restrict(phi.val[s], static_cast<int>(m), k) == phi.val[fs]))
        throw PolyError("phi is not face compatible on Y at " + simplex_str(x, s));
    }
  }

  std::vector<long> nz;
  for (long s : yids)
    if (!phi.val[s].is_zero()) nz.push_back(s);
  std::vector<long> K = generated(x, nz);
  std::vector<long> st = star(x, K);
  std::vector<long> cst = closed_star(x, K);
  std::vector<long> li = link(x, K);

  PolyFun psi = pf_zero(x, phi.bound);
  for (long s : yids) psi.val[s] = phi.val[s];

  for (long s : st) {
    if (in_ids(yids, s)) continue;
    int m = static_cast<int>(simplex_dim(x, s));
    if (m == 0) continue;  // free vertex, keep zero
    // all faces carry final values already: their ids are smaller
    std::vector<Poly> face(m + 1);
    for (int k = 0; k <= m; ++k) face[k] = psi.val[face_id(x, s, k)];
    Poly p = insert_at(face[0], 0, m, phi.bound);
    for (int k = 1; k < m; ++k) {
      Poly c = poly_sub(face_restrict(p, m, k), face[k]);
      if (!c.is_zero()) p = poly_sub(p, insert_at(c, k, m, phi.bound));
    }
    Poly c = poly_sub(face_restrict(p, m, m), face[m]);
    if (!c.is_zero()) {
      // c vanishes on the whole boundary, so it is divisible by the product
      // of all barycentric coordinates of the face simplex; lifting the
      // quotient and multiplying by the coordinates of s fills the last
      // face and keeps the earlier ones at zero
      Poly q = c;
      for (int i = 0; i + 1 < m; ++i) q = poly_div_var(q, i);
      Poly lin = poly_const(m - 1, Int(-1));  // sum u_i - 1
      for (int i = 0; i + 1 < m; ++i) lin = poly_add(lin, poly_var(m - 1, i));
      q = poly_neg(poly_div_exact(q, lin));
      std::vector<Poly> forms(m - 1);
      for (int i = 0; i + 1 < m; ++i) forms[i] = poly_var(m, i);
      Poly gamma = poly_subst(q, forms, m, phi.bound);
      Poly coords = poly_from_terms(m, {{std::vector<int>(m, 1), Int(1)}});
      gamma = poly_mul(gamma, coords, phi.bound);
      p = poly_sub(p, gamma);
    }
    psi.val[s] = p;
  }

  // postconditions, checked by evaluation
  validate_polyfun(psi);
  for (long s : yids)
    if (!(psi.val[s] == phi.val[s]))
      throw PolyError("internal: extension does not restrict to phi");
  for (long s : li)
    if (!psi.val[s].is_zero())
      throw PolyError("internal: extension does not vanish on the link");
  for (long s : support(psi))
    if (!in_ids(cst, s))
      throw PolyError("internal: extension support leaves the closed star");
  return psi;
}

PolyFun s_unit_witness(const SimplicialComplex& x, const std::vector<PolyFun>& elems,
                       int bound) {
  std::vector<long> K;
  for (const auto& e : elems) {
    if (e.x != &x) throw PolyError("element lives on a different complex");
    auto su = support(e);
    K.insert(K.end(), su.begin(), su.end());
  }
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  PolyFun mu = extend(pf_const(x, Int(1), bound), K);
  for (const auto& e : elems)
    if (!pf_eq(pf_mul(mu, e), e))
      throw PolyError("internal: witness fails on " + pf_to_string(e));
  return mu;
}

PolyFun separating_function(const SimplicialComplex& x, long sigma, int bound) {
  if (sigma < 0 || sigma >= static_cast<long>(x.simp.size()))
    throw PolyError("bad simplex id");
  int m = static_cast<int>(simplex_dim(x, sigma));
  if (m + 1 > bound) throw PolyError("coordinate product degree exceeds bound");
  // t_0 ... t_{m-1} (1 - t_0 - ... - t_{m-1}): all coordinates of sigma
  Poly last = poly_const(m, Int(1));
  for (int i = 0; i < m; ++i) last = poly_sub(last, poly_var(m, i));
  Poly prod = m == 0 ? last
                     : poly_mul(poly_from_terms(m, {{std::vector<int>(m, 1), Int(1)}}),
                                last, bound);
  PolyFun phi = pf_zero(x, bound);
  phi.val[sigma] = prod;  // restricts to zero on every proper face
  PolyFun psi = extend(phi, generated(x, {sigma}));
  if (psi.val[sigma].is_zero())
    throw PolyError("internal: separating function vanishes at sigma");
  return psi;
}

// --- proper structures -------------------------------------------------------

BasedRing vertex_function_ring(const SimplicialComplex& x) {
  RingBuilder b;
  LinComb one;
  for (int v = 0; v < x.nv; ++v) {
    b.add_basis("chi_" + std::to_string(v));
    b.set_product(v, v, lc_single(v));
    one.push_back({v, Int(1)});
  }
  b.unit = one;
  if (x.group) {
    b.acting_group = x.group;
    std::vector<std::vector<LinComb>> mats(x.group->n);
    for (int g = 0; g < x.group->n; ++g) {
      mats[g].resize(x.nv);
      for (int v = 0; v < x.nv; ++v) mats[g][v] = lc_single(x.vact[g][v]);
    }
    b.action = std::move(mats);
  }
  return b.finish();
}

namespace {

// exponent vectors of length m with total degree <= bound, degree-ascending
void mono_rec(int m, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur.push_back(e);
    mono_rec(m, left - e, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> mono_list(int m, int bound) {
  std::vector<std::vector<int>> raw;
  std::vector<int> cur;
  mono_rec(m, bound, cur, raw);
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    long da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  });
  return raw;
}

// linear map restricting a polynomial on the facet to the simplex given by
// a subset of its vertices; columns follow the facet monomial list
void restrict_matrix_into(const SimplicialComplex& x, long facet, long sub,
                          const std::vector<std::vector<int>>& fmono,
                          const std::vector<std::vector<int>>& smono, DenseMat& rows,
                          long row0, long col0, const Int& sign) {
  const std::vector<int>& tgt = x.simp[sub];
  std::map<std::vector<int>, long> sidx;
  for (size_t i = 0; i < smono.size(); ++i) sidx[smono[i]] = static_cast<long>(i);
  for (size_t c = 0; c < fmono.size(); ++c) {
    Poly p;
    p.nvars = static_cast<int>(x.simp[facet].size()) - 1;
    p.terms.push_back({fmono[c], Int(1)});
    std::vector<int> verts = x.simp[facet];
    while (verts.size() > tgt.size()) {
      int k = 0;
      while (std::binary_search(tgt.begin(), tgt.end(), verts[k])) ++k;
      p = face_restrict(p, static_cast<int>(verts.size()) - 1, k);
      verts.erase(verts.begin() + k);
    }
    for (const auto& t : p.terms)
      rows.at(row0 + sidx.at(t.first), col0 + static_cast<long>(c)) += sign * t.second;
  }
}

}  // namespace

DenseMat ProperStructure::module_constraints() const {
  const auto& x = *space;
  std::vector<std::tuple<size_t, size_t, std::vector<int>>> pairs;
  long rows = 0;
  for (size_t i = 0; i < facets.size(); ++i)
    for (size_t j = i + 1; j < facets.size(); ++j) {
      std::vector<int> is;
      std::set_intersection(x.simp[facets[i]].begin(), x.simp[facets[i]].end(),
                            x.simp[facets[j]].begin(), x.simp[facets[j]].end(),
                            std::back_inserter(is));
      if (is.empty()) continue;  // functions on disjoint facets are independent
      rows += static_cast<long>(mono_list(static_cast<int>(is.size()) - 1, bound).size());
      pairs.push_back({i, j, std::move(is)});
    }
  DenseMat c(rows, ambient);
  long row = 0;
  for (const auto& [i, j, is] : pairs) {
    long sub = x.id_of(is);
    auto smono = mono_list(static_cast<int>(is.size()) - 1, bound);
    auto fi = mono_list(static_cast<int>(simplex_dim(x, facets[i])), bound);
    auto fj = mono_list(static_cast<int>(simplex_dim(x, facets[j])), bound);
    restrict_matrix_into(x, facets[i], sub, fi, smono, c, row, facet_offset[i], Int(1));
    restrict_matrix_into(x, facets[j], sub, fj, smono, c, row, facet_offset[j], Int(-1));
    row += static_cast<long>(smono.size());
  }
  return c;
}

PolyFun ProperStructure::from_coords(const std::vector<Int>& v) const {
  const auto& x = *space;
  if (static_cast<long>(v.size()) != ambient) throw PolyError("coordinate length mismatch");
  std::vector<std::pair<std::vector<int>, Poly>> entries;
  for (size_t i = 0; i < facets.size(); ++i) {
    int m = static_cast<int>(simplex_dim(x, facets[i]));
    auto ml = mono_list(m, bound);
    std::vector<std::pair<std::vector<int>, Int>> ts;
    for (size_t k = 0; k < ml.size(); ++k)
      if (v[facet_offset[i] + static_cast<long>(k)] != 0)
        ts.push_back({ml[k], v[facet_offset[i] + static_cast<long>(k)]});
    entries.push_back({x.simp[facets[i]], poly_from_terms(m, ts)});
  }
  return pf_from_entries(x, entries, bound);
}

std::vector<Int> ProperStructure::coords(const PolyFun& f) const {
  if (f.x != space) throw PolyError("function lives on a different complex");
  std::vector<Int> v(ambient, Int(0));
  for (size_t fi = 0; fi < facets.size(); ++fi) {
    const Poly& p = f.val[facets[fi]];
    if (p.degree() > bound) throw PolyError("degree exceeds the structure bound");
    auto ml = mono_list(p.nvars, bound);
    std::map<std::vector<int>, long> idx;
    for (size_t i = 0; i < ml.size(); ++i) idx[ml[i]] = static_cast<long>(i);
    for (const auto& t : p.terms) v[facet_offset[fi] + idx.at(t.first)] = t.second;
  }
  return v;
}

namespace {

std::optional<std::vector<Int>> solve_in_family(const DenseMat& vecs,
                                                const std::vector<Int>& v) {
  return solve(vecs, v);
}

DenseMat columns_to_mat(long rows, const std::vector<std::vector<Int>>& cols) {
  DenseMat m(rows, static_cast<long>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (long r = 0; r < rows; ++r) m.at(r, static_cast<long>(c)) = cols[c][r];
  return m;
}

DenseMat mat_mul_dense(const DenseMat& a, const DenseMat& b) { return mul(a, b); }

bool mat_is_zero(const DenseMat& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](const Int& v) { return v == 0; });
}

LinComb mat_apply(const DenseMat& m, const LinComb& v) {
  LinComb out;
  for (long r = 0; r < m.rows; ++r) {
    Int s(0);
    for (const auto& [j, c] : v) s += m.at(r, j) * c;
    if (s != 0) out.push_back({r, s});
  }
  return out;
}

bool groups_match(const FiniteGroup& a, const FiniteGroup& b) {
  return a.n == b.n && a.table == b.table && a.id == b.id;
}

}  // namespace

DenseMat ProperStructure::act_of(const PolyFun& f) const {
  auto v = coords(f);
  auto lam = solve_in_family(fam_vecs, v);
  if (!lam)
    throw PolyError("function is outside the family span within degree bound " +
                    std::to_string(bound));
  long n = ring->rank();
  DenseMat m(n, n);
  for (size_t i = 0; i < fmat.size(); ++i)
    if ((*lam)[i] != 0)
      for (size_t e = 0; e < m.a.size(); ++e) m.a[e] += (*lam)[i] * fmat[i].a[e];
  return m;
}

std::vector<PolyFun> ProperStructure::ideal_basis(const std::vector<long>& yids_in) const {
  const auto& x = *space;
  std::vector<long> yids = yids_in;
  std::sort(yids.begin(), yids.end());
  yids.erase(std::unique(yids.begin(), yids.end()), yids.end());
  for (long s : yids) {
    long m = simplex_dim(x, s);
    for (int k = 0; k <= m && m >= 1; ++k)
      if (!in_ids(yids, face_id(x, s, k)))
        throw PolyError("Y is not a subcomplex");
  }
  // compatibility rows plus vanishing rows for every simplex outside Y,
  // each imposed through one containing facet
  std::vector<std::tuple<long, long, long>> van;  // (facet index, simplex, rows)
  long extra = 0;
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) {
    if (in_ids(yids, s)) continue;
    long fi = -1;
    for (size_t i = 0; i < facets.size(); ++i) {
      const auto& fv = x.simp[facets[i]];
      if (std::includes(fv.begin(), fv.end(), x.simp[s].begin(), x.simp[s].end())) {
        fi = static_cast<long>(i);
        break;
      }
    }
    if (fi < 0) throw PolyError("internal: simplex has no containing facet");
    long rows = static_cast<long>(mono_list(static_cast<int>(simplex_dim(x, s)), bound).size());
    van.push_back({fi, s, rows});
    extra += rows;
  }
  DenseMat base = module_constraints();
  DenseMat c(base.rows + extra, ambient);
  for (long r = 0; r < base.rows; ++r)
    for (long cc = 0; cc < ambient; ++cc) c.at(r, cc) = base.at(r, cc);
  long row = base.rows;
  for (const auto& [fi, s, rows] : van) {
    auto fmono = mono_list(static_cast<int>(simplex_dim(x, facets[fi])), bound);
    auto smono = mono_list(static_cast<int>(simplex_dim(x, s)), bound);
    restrict_matrix_into(x, facets[fi], s, fmono, smono, c, row, facet_offset[fi],
                         Int(1));
    row += rows;
  }
  DenseMat ker = kernel_basis(c);
  std::vector<PolyFun> out;
  for (long k = 0; k < ker.cols; ++k) {
    std::vector<Int> v(ambient);
    for (long r = 0; r < ambient; ++r) v[r] = ker.at(r, k);
    out.push_back(from_coords(v));
  }
  return out;
}

DenseMat ProperStructure::submodule(const std::vector<long>& yids) const {
  auto ib = ideal_basis(yids);
  long n = ring->rank();
  DenseMat m(n, static_cast<long>(ib.size()) * n);
  for (size_t i = 0; i < ib.size(); ++i) {
    DenseMat a = act_of(ib[i]);
    for (long r = 0; r < n; ++r)
      for (long j = 0; j < n; ++j) m.at(r, static_cast<long>(i) * n + j) = a.at(r, j);
  }
  return column_hnf(std::move(m));
}

ProperStructure proper_structure(std::shared_ptr<const BasedRing> a,
                                 const SimplicialComplex& x,
                                 const std::vector<std::pair<PolyFun, DenseMat>>& gens,
                                 int bound) {
  ProperStructure ps;
  ps.ring = a;
  ps.space = &x;
  ps.bound = bound;
  long n = a->rank();

  for (size_t s = 0; s < x.simp.size(); ++s) {
    bool maximal = true;
    for (size_t t = 0; t < x.simp.size() && maximal; ++t)
      if (t != s && x.simp[t].size() > x.simp[s].size() &&
          std::includes(x.simp[t].begin(), x.simp[t].end(), x.simp[s].begin(),
                        x.simp[s].end()))
        maximal = false;
    if (maximal) ps.facets.push_back(static_cast<long>(s));
  }
  ps.facet_offset.resize(ps.facets.size());
  long off = 0;
  for (size_t i = 0; i < ps.facets.size(); ++i) {
    ps.facet_offset[i] = off;
    off += static_cast<long>(
        mono_list(static_cast<int>(simplex_dim(x, ps.facets[i])), bound).size());
  }
  ps.ambient = off;

  DenseMat cons = ps.module_constraints();
  ps.module_basis = cons.rows == 0 ? DenseMat::identity(ps.ambient) : kernel_basis(cons);

  for (const auto& [f, m] : gens) {
    if (f.x != &x) throw PolyError("generator lives on a different complex");
    validate_polyfun(f);
    if (m.rows != n || m.cols != n) throw PolyError("action matrix has wrong shape");
    ps.fam.push_back(f);
    ps.fmat.push_back(m);
  }

  // generator actions must commute pairwise: the function ring is commutative
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(mat_mul_dense(gens[i].second, gens[j].second) ==
            mat_mul_dense(gens[j].second, gens[i].second)))
        throw PolyError("generator actions do not commute: " +
                        pf_to_string(gens[i].first) + " vs " +
                        pf_to_string(gens[j].first));

  // close the family under products inside the degree bound; products that
  // already lie in the integral span are verified and dropped
  auto rebuild = [&]() {
    std::vector<std::vector<Int>> cols;
    for (const auto& f : ps.fam) cols.push_back(ps.coords(f));
    ps.fam_vecs = columns_to_mat(ps.ambient, cols);
  };
  rebuild();
  size_t lo = 0;
  while (lo < ps.fam.size()) {
    if (ps.fam.size() > 512) throw PolyError("family closure does not stabilize");
    size_t hi = ps.fam.size();
    for (size_t i = 0; i < hi; ++i)
      for (size_t j = std::max(i, lo); j < hi; ++j) {
        bool fits = true;
        for (size_t s = 0; s < x.simp.size() && fits; ++s)
          if (!ps.fam[i].val[s].is_zero() && !ps.fam[j].val[s].is_zero() &&
              ps.fam[i].val[s].degree() + ps.fam[j].val[s].degree() > bound)
            fits = false;
        if (!fits) continue;  // closure is taken within the bound only
        PolyFun pf = pf_mul(ps.fam[i], ps.fam[j]);
        DenseMat pm = mat_mul_dense(ps.fmat[i], ps.fmat[j]);
        auto lam = solve_in_family(ps.fam_vecs, ps.coords(pf));
        if (lam) {
          DenseMat want(n, n);
          for (size_t k = 0; k < ps.fmat.size(); ++k)
            if ((*lam)[k] != 0)
              for (size_t e = 0; e < want.a.size(); ++e)
                want.a[e] += (*lam)[k] * ps.fmat[k].a[e];
          if (!(want == pm))
            throw PolyError("action is not well defined on the product " +
                            pf_to_string(ps.fam[i]) + " * " + pf_to_string(ps.fam[j]));
        } else {
          ps.fam.push_back(pf);
          ps.fmat.push_back(pm);
          rebuild();
        }
      }
    lo = hi;
  }

  // well-definedness on every integer relation of the family
  DenseMat ker = kernel_basis(ps.fam_vecs);
  for (long k = 0; k < ker.cols; ++k) {
    DenseMat m(n, n);
    for (size_t i = 0; i < ps.fmat.size(); ++i) {
      const Int& c = ker.at(static_cast<long>(i), k);
      if (c != 0)
        for (size_t e = 0; e < m.a.size(); ++e) m.a[e] += c * ps.fmat[i].a[e];
    }
    if (!mat_is_zero(m))
      throw PolyError("action is not well defined: a vanishing combination of the "
                      "family acts nontrivially");
  }

  // centrality c(ab) = (ca)b = a(cb) on the supplied generators
  for (const auto& [f, m] : gens) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        LinComb ab = a->mul(lc_single(i), lc_single(j));
        LinComb l1 = mat_apply(m, ab);
        LinComb l2 = a->mul(mat_apply(m, lc_single(i)), lc_single(j));
        LinComb l3 = a->mul(lc_single(i), mat_apply(m, lc_single(j)));
        if (!(l1 == l2 && l2 == l3))
          throw PolyError("centrality fails for " + pf_to_string(f) + " on (" +
                          a->basis[i] + ", " + a->basis[j] + ")");
      }
  }

  // equivariance g(ca) = g(c) g(a) when both sides carry the same group
  if (a->acting_group && x.group && groups_match(*a->acting_group, *x.group)) {
    for (int g = 0; g < x.group->n; ++g)
      for (const auto& [f, m] : gens) {
        PolyFun gf = pf_act(g, f);
        auto lam = solve_in_family(ps.fam_vecs, ps.coords(gf));
        if (!lam)
          throw PolyError("generator family is not stable under the action (g = " +
                          x.group->labels[g] + ")");
        DenseMat mg(n, n);
        for (size_t i = 0; i < ps.fmat.size(); ++i)
          if ((*lam)[i] != 0)
            for (size_t e = 0; e < mg.a.size(); ++e)
              mg.a[e] += (*lam)[i] * ps.fmat[i].a[e];
        for (long j = 0; j < n; ++j) {
          LinComb ga = a->act(g, lc_single(j));
          if (!(mat_apply(mg, ga) == a->act(g, mat_apply(m, lc_single(j)))))
            throw PolyError("equivariance fails for g = " + x.group->labels[g] +
                            " on " + pf_to_string(f) + " at " + a->basis[j]);
        }
      }
  }

  // fullness: the span of all family images must be the whole ring over Z
  {
    SparseMat span(n, static_cast<long>(ps.fmat.size()) * n);
    for (size_t i = 0; i < ps.fmat.size(); ++i)
      for (long j = 0; j < n; ++j)
        for (long r = 0; r < n; ++r)
          if (ps.fmat[i].at(r, j) != 0)
            span.add(r, static_cast<long>(i) * n + j, ps.fmat[i].at(r, j));
    span.normalize();
    SmithSummary sm = smith_sparse(span);
    bool unit = std::all_of(sm.factors.begin(), sm.factors.end(),
                            [](const Int& d) { return d == 1; });
    ps.full = sm.rank == n && unit;
    if (ps.full)
      ps.full_detail = "spans the ring within degree bound " + std::to_string(bound);
    else if (sm.rank < n)
      ps.full_detail = "span has rank " + std::to_string(sm.rank) + " of " +
                       std::to_string(n) + " within degree bound " + std::to_string(bound);
    else
      ps.full_detail = "span is a proper finite-index sublattice within degree bound " +
                       std::to_string(bound);
  }
  return ps;
}

ProperStructure proper_pushforward(const ProperStructure& ps, const SimplicialMap& f,
                                   const std::vector<PolyFun>& ygens) {
  if (f.src != ps.space) throw PolyError("map does not start at the structure space");
  std::vector<std::pair<PolyFun, DenseMat>> gens;
  for (const auto& g : ygens) gens.push_back({g, ps.act_of(pullback(f, g))});
  return proper_structure(ps.ring, *f.tgt, gens, ps.bound);
}

}  // namespace zalg
