#include "zalg/lincat.hpp"

#include <algorithm>
#include <sstream>

namespace zalg {

LinComb LinCat::compose(long g, long f) const {
  if (asrc[g] != atgt[f]) return {};
  auto it = std::lower_bound(comp.begin(), comp.end(), std::make_pair(g, f),
                             [](const auto& cell, const std::pair<long, long>& key) {
                               return std::make_pair(std::get<0>(cell), std::get<1>(cell)) < key;
                             });
  if (it != comp.end() && std::get<0>(*it) == g && std::get<1>(*it) == f)
    return std::get<2>(*it);
  return {};
}

BasedRing arrow_ring(const LinCat& c) {
  RingBuilder b;
  b.basis = c.arrow_labels;
  for (auto& [g, f, v] : c.comp) b.set_product(g, f, v);
  ObjectGrading gr;
  gr.objects = c.objects();
  for (long k = 0; k < c.arrows(); ++k) gr.srctgt.emplace_back(c.asrc[k], c.atgt[k]);
  b.grading = std::move(gr);
  LinComb u;
  for (auto& ida : c.identities) u.insert(u.end(), ida.begin(), ida.end());
  b.unit = lc_normalize(std::move(u));
  return b.finish();
}

void validate_lincat(const LinCat& c) {
  if (static_cast<long>(c.identities.size()) != c.objects())
    throw RingError("one identity per object required");
  for (long a = 0; a < c.objects(); ++a)
    for (auto& [k, coef] : c.identities[a])
      if (c.asrc[k] != a || c.atgt[k] != a)
        throw RingError("identity of " + c.obj_labels[a] + " not in hom(a,a)");
  if (!std::is_sorted(c.comp.begin(), c.comp.end(), [](const auto& x, const auto& y) {
        return std::make_pair(std::get<0>(x), std::get<1>(x)) <
               std::make_pair(std::get<0>(y), std::get<1>(y));
      }))
    throw RingError("composition cells not sorted");
  for (auto& [g, f, v] : c.comp)
    if (c.asrc[g] != c.atgt[f]) throw RingError("composition cell for non-composable pair");
  arrow_ring(c);  // grading, associativity, unit neutrality
}

LinCat one_object_cat(const BasedRing& r) {
  if (!r.unit) throw RingError("one-object category needs a unital ring");
  LinCat c;
  c.obj_labels = {"*"};
  c.asrc.assign(r.rank(), 0);
  c.atgt.assign(r.rank(), 0);
  c.arrow_labels = r.basis;
  for (long i = 0; i < r.rank(); ++i)
    for (long j = 0; j < r.rank(); ++j) {
      LinComb v(r.prod_begin(i, j), r.prod_end(i, j));
      if (!v.empty()) c.comp.emplace_back(i, j, std::move(v));
    }
  c.identities = {*r.unit};
  return c;
}

LinCat path_category(long objects) {
  if (objects < 1) throw RingError("path category needs an object");
  LinCat c;
  for (long a = 0; a < objects; ++a) c.obj_labels.push_back(std::to_string(a));
  // arrow per pair i <= j, lex order; (i,i) is the identity
  std::vector<std::vector<long>> id(objects, std::vector<long>(objects, -1));
  for (long i = 0; i < objects; ++i)
    for (long j = i; j < objects; ++j) {
      id[i][j] = c.arrows();
      c.asrc.push_back(static_cast<int>(i));
      c.atgt.push_back(static_cast<int>(j));
      c.arrow_labels.push_back(i == j ? "1_" + std::to_string(i)
                                      : "f" + std::to_string(i) + std::to_string(j));
    }
  for (long i = 0; i < objects; ++i)
    for (long j = i; j < objects; ++j)
      for (long k = j; k < objects; ++k)
        c.comp.emplace_back(id[j][k], id[i][j], lc_single(id[i][k]));
  std::sort(c.comp.begin(), c.comp.end(), [](const auto& x, const auto& y) {
    return std::make_pair(std::get<0>(x), std::get<1>(x)) <
           std::make_pair(std::get<0>(y), std::get<1>(y));
  });
  for (long a = 0; a < objects; ++a) c.identities.push_back(lc_single(id[a][a]));
  return c;
}

LinCat groupoid_cat(const FiniteGroup& g, const GSet& s) {
  const GroupoidArrows ar = enumerate_arrows(g, s);
  LinCat c;
  for (int x = 0; x < s.size; ++x) c.obj_labels.push_back(std::to_string(x));
  c.asrc = ar.src;
  c.atgt = ar.tgt;
  for (long k = 0; k < ar.count(); ++k)
    c.arrow_labels.push_back("[" + std::to_string(ar.src[k]) + "->" +
                             std::to_string(ar.tgt[k]) + ":" + g.labels[ar.g[k]] + "]");
  for (long al = 0; al < ar.count(); ++al)
    for (long be = 0; be < ar.count(); ++be) {
      if (ar.src[al] != ar.tgt[be]) continue;
      const long comp = ar.at(ar.src[be], g.mul(ar.g[al], ar.g[be]), g.n);
      c.comp.emplace_back(al, be, lc_single(comp));
    }
  for (int x = 0; x < s.size; ++x) c.identities.push_back(lc_single(ar.at(x, g.id, g.n)));
  return c;
}

// --- words -------------------------------------------------------------------

namespace {

void reduce_word(const LinCat& c, const Word& w, const Int& coef,
                 std::map<Word, Int>& out) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (c.asrc[w[i]] != c.atgt[w[i + 1]]) continue;
    // leftmost composable pair; splice each term of the composition in
    const LinComb comps = c.compose(w[i], w[i + 1]);
    for (auto& [k, ck] : comps) {
      Word w2;
      w2.reserve(w.size() - 1);
      w2.insert(w2.end(), w.begin(), w.begin() + i);
      w2.push_back(k);
      w2.insert(w2.end(), w.begin() + i + 2, w.end());
      reduce_word(c, w2, coef * ck, out);
    }
    return;  // composition may be empty: the word dies
  }
  auto [it, fresh] = out.emplace(w, coef);
  if (!fresh) it->second += coef;
}

ConeElem strip_zeros(std::map<Word, Int> m) {
  ConeElem e;
  for (auto& [w, c] : m)
    if (c != 0) e.terms.emplace(w, c);
  return e;
}

}  // namespace

ConeElem cone_from_word(const LinCat& c, const Word& w, const Int& coef) {
  if (w.empty()) throw RingError("empty word");
  std::map<Word, Int> acc;
  if (coef != 0) reduce_word(c, w, coef, acc);
  return strip_zeros(std::move(acc));
}

ConeElem cone_from_arrows(const LinCat& c, const LinComb& v) {
  (void)c;
  ConeElem e;
  for (auto& [k, coef] : v) e.terms.emplace(Word{k}, coef);
  return e;
}

ConeElem cone_add(const ConeElem& a, const ConeElem& b) {
  std::map<Word, Int> acc = a.terms;
  for (auto& [w, c] : b.terms) {
    auto [it, fresh] = acc.emplace(w, c);
    if (!fresh) it->second += c;
  }
  return strip_zeros(std::move(acc));
}

ConeElem cone_scale(const ConeElem& a, const Int& k) {
  if (k == 0) return {};
  ConeElem e = a;
  for (auto& [w, c] : e.terms) c *= k;
  return e;
}

ConeElem cone_mul(const LinCat& c, const ConeElem& a, const ConeElem& b) {
  std::map<Word, Int> acc;
  for (auto& [wa, ca] : a.terms)
    for (auto& [wb, cb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      reduce_word(c, w, ca * cb, acc);
    }
  return strip_zeros(std::move(acc));
}

std::string cone_to_string(const LinCat& c, const ConeElem& e) {
  if (e.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, coef] : e.terms) {
    if (!first) os << (coef > 0 ? " + " : " - ");
    else if (coef < 0) os << "-";
    first = false;
    Int ac = abs(coef);
    if (ac != 1) os << ac.get_str() << "*";
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << "(x)";
      os << c.arrow_labels[w[i]];
    }
  }
  return os.str();
}

LinComb projection_p(const ConeElem& e) {
  LinComb out;
  for (auto& [w, c] : e.terms)
    if (w.size() == 1) out.emplace_back(w[0], c);
  return lc_normalize(std::move(out));
}

// --- polynomials and matrices ------------------------------------------------

void poly_trim(ConePoly& p) {
  while (!p.coef.empty() && p.coef.back().is_zero()) p.coef.pop_back();
}

ConePoly poly_add(const ConePoly& a, const ConePoly& b) {
  ConePoly r;
  r.coef.resize(std::max(a.coef.size(), b.coef.size()));
  for (size_t k = 0; k < r.coef.size(); ++k) {
    if (k < a.coef.size()) r.coef[k] = cone_add(r.coef[k], a.coef[k]);
    if (k < b.coef.size()) r.coef[k] = cone_add(r.coef[k], b.coef[k]);
  }
  poly_trim(r);
  return r;
}

ConePoly poly_mul(const LinCat& c, const ConePoly& a, const ConePoly& b) {
  ConePoly r;
  if (a.coef.empty() || b.coef.empty()) return r;
  r.coef.resize(a.coef.size() + b.coef.size() - 1);
  for (size_t i = 0; i < a.coef.size(); ++i) {
    if (a.coef[i].is_zero()) continue;
    for (size_t j = 0; j < b.coef.size(); ++j)
      r.coef[i + j] = cone_add(r.coef[i + j], cone_mul(c, a.coef[i], b.coef[j]));
  }
  poly_trim(r);
  return r;
}

ConeElem poly_eval01(const ConePoly& p, int at) {
  ConeElem e;
  if (at == 0) return p.coef.empty() ? e : p.coef[0];
  for (auto& c : p.coef) e = cone_add(e, c);
  return e;
}

ConeMat mat_mul(const LinCat& c, const ConeMat& a, const ConeMat& b) {
  ConeMat r;
  r.n = a.n;
  r.e.resize(static_cast<size_t>(r.n) * r.n);
  for (long i = 0; i < r.n; ++i)
    for (long k = 0; k < r.n; ++k) {
      if (a.at(i, k).coef.empty()) continue;
      for (long j = 0; j < r.n; ++j) {
        if (b.at(k, j).coef.empty()) continue;
        r.at(i, j) = poly_add(r.at(i, j), poly_mul(c, a.at(i, k), b.at(k, j)));
      }
    }
  return r;
}

namespace {

// fixed coefficient polynomials of H, lowest degree first
ConePoly scaled_poly(const ConeElem& f, std::initializer_list<long> coefs) {
  ConePoly p;
  for (long c : coefs) p.coef.push_back(cone_scale(f, Int(c)));
  poly_trim(p);
  return p;
}

}  // namespace

ConeMat homotopy_H(const LinCat& c, const LinComb& f) {
  ConeMat m;
  m.n = c.objects() + 1;
  m.e.resize(static_cast<size_t>(m.n) * m.n);
  for (auto& [k, coef] : f) {
    ConeElem w;
    w.terms.emplace(Word{k}, coef);
    const long a = 1 + c.asrc[k], b = 1 + c.atgt[k];
    // -t(t^3-2t), t(t^2-1), (1-t^2)(t^3-2t), (1-t^2)^2
    m.at(0, 0) = poly_add(m.at(0, 0), scaled_poly(w, {0, 0, 2, 0, -1}));
    m.at(0, a) = poly_add(m.at(0, a), scaled_poly(w, {0, -1, 0, 1}));
    m.at(b, 0) = poly_add(m.at(b, 0), scaled_poly(w, {0, -2, 0, 3, 0, -1}));
    m.at(b, a) = poly_add(m.at(b, a), scaled_poly(w, {1, 0, -2, 0, 1}));
  }
  return m;
}

HomotopyReport verify_cone_homotopy(const LinCat& c) {
  HomotopyReport rep;
  if (c.objects() > 4) {
    rep.pass = false;
    rep.detail = "category has more than 4 objects";
    return rep;
  }
  auto fail = [&](std::string d) {
    if (rep.pass) {
      rep.pass = false;
      rep.detail = std::move(d);
    }
  };
  const long n = c.objects() + 1;
  for (long k = 0; k < c.arrows() && rep.pass; ++k) {
    const ConeMat h = homotopy_H(c, lc_single(k));
    ConeElem w;
    w.terms.emplace(Word{k}, Int(1));
    for (long i = 0; i < n && rep.pass; ++i)
      for (long j = 0; j < n && rep.pass; ++j) {
        const ConeElem at0 = poly_eval01(h.at(i, j), 0);
        const ConeElem at1 = poly_eval01(h.at(i, j), 1);
        const bool r_slot = i == 1 + c.atgt[k] && j == 1 + c.asrc[k];
        const bool i_slot = i == 0 && j == 0;
        if (at0 != (r_slot ? w : ConeElem{}))
          fail("ev0 H(" + c.arrow_labels[k] + ") wrong at (" + std::to_string(i) + "," +
               std::to_string(j) + "): " + cone_to_string(c, at0));
        if (at1 != (i_slot ? w : ConeElem{}))
          fail("ev1 H(" + c.arrow_labels[k] + ") wrong at (" + std::to_string(i) + "," +
               std::to_string(j) + "): " + cone_to_string(c, at1));
      }
  }
  for (long g = 0; g < c.arrows() && rep.pass; ++g)
    for (long f = 0; f < c.arrows() && rep.pass; ++f) {
      if (c.asrc[g] != c.atgt[f]) continue;
      const ConeMat lhs = homotopy_H(c, c.compose(g, f));
      const ConeMat rhs = mat_mul(c, homotopy_H(c, lc_single(g)), homotopy_H(c, lc_single(f)));
      if (!(lhs == rhs))
        fail("H(g o f) != H(g) H(f) for g = " + c.arrow_labels[g] +
             ", f = " + c.arrow_labels[f]);
    }
  return rep;
}

}  // namespace zalg
