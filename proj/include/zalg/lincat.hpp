#pragma once

// Finite Z-linear categories and the tensor-algebra quotient R(C) built
// from words of arrows modulo g (x) f = g o f for composable pairs. Words
// are kept in normal form by a leftmost-innermost, length-reducing rewrite,
// so R(C) elements are finite Z-combinations of irreducible words even
// though the ring itself has no finite basis. On top of that sit dense
// polynomials in one variable t and square matrices over them, enough to
// check the degree-4 homotopy identities symbolically.

#include "zalg/rings.hpp"

#include <map>

namespace zalg {

struct LinCat {
  std::vector<std::string> obj_labels;
  std::vector<int> asrc, atgt;  // per basis arrow
  std::vector<std::string> arrow_labels;
  // (g, f) -> g o f for src(g) == tgt(f); sorted by (g, f); missing = zero
  std::vector<std::tuple<long, long, LinComb>> comp;
  std::vector<LinComb> identities;  // per object, an element of hom(a,a)

  long objects() const { return static_cast<long>(obj_labels.size()); }
  long arrows() const { return static_cast<long>(asrc.size()); }
  LinComb compose(long g, long f) const;  // zero when not composable
};

// Basis = arrows, product = composition or zero, unit = sum of identities.
// Runs the full ring validation, which is also how a LinCat gets checked.
BasedRing arrow_ring(const LinCat& c);
void validate_lincat(const LinCat& c);

LinCat one_object_cat(const BasedRing& r);  // r must be unital
LinCat path_category(long objects);         // 0 -> 1 -> ... , free homs
LinCat groupoid_cat(const FiniteGroup& g, const GSet& s);

// --- R(C): normal-form words -------------------------------------------------

using Word = std::vector<long>;  // arrow ids; letters compose leftward

struct ConeElem {
  std::map<Word, Int> terms;  // normal-form words only
  bool operator==(const ConeElem&) const = default;
  bool is_zero() const { return terms.empty(); }
};

ConeElem cone_from_word(const LinCat& c, const Word& w, const Int& coef = Int(1));
ConeElem cone_from_arrows(const LinCat& c, const LinComb& v);  // length-1 words
ConeElem cone_add(const ConeElem& a, const ConeElem& b);
ConeElem cone_scale(const ConeElem& a, const Int& k);
ConeElem cone_mul(const LinCat& c, const ConeElem& a, const ConeElem& b);
std::string cone_to_string(const LinCat& c, const ConeElem& e);

// Words of length >= 2 die (their letters are pairwise non-composable),
// single letters map to themselves.
LinComb projection_p(const ConeElem& e);

// --- polynomials and matrices over R(C) --------------------------------------

struct ConePoly {
  std::vector<ConeElem> coef;  // coef[k] multiplies t^k
  bool operator==(const ConePoly&) const = default;
};
ConePoly poly_add(const ConePoly& a, const ConePoly& b);
ConePoly poly_mul(const LinCat& c, const ConePoly& a, const ConePoly& b);
ConeElem poly_eval01(const ConePoly& p, int at);  // at = 0 or 1
void poly_trim(ConePoly& p);

struct ConeMat {
  long n = 0;  // square, indexed by basepoint 0 then objects 1..ob
  std::vector<ConePoly> e;
  ConePoly& at(long r, long c) { return e[static_cast<size_t>(r) * n + c]; }
  const ConePoly& at(long r, long c) const { return e[static_cast<size_t>(r) * n + c]; }
  bool operator==(const ConeMat&) const = default;
};
ConeMat mat_mul(const LinCat& c, const ConeMat& a, const ConeMat& b);

// H(f) for a Z-combination of basis arrows, extended linearly. For a basis
// arrow f: a -> b the nonzero entries sit at (+,+), (+,a), (b,+), (b,a)
// with the fixed degree-4 coefficient polynomials.
ConeMat homotopy_H(const LinCat& c, const LinComb& f);

struct HomotopyReport {
  bool pass = true;
  std::string detail;
};
// ev0 H(f) = f e_{b,a}, ev1 H(f) = f e_{+,+}, H(g o f) = H(g) H(f) for all
// composable basis pairs. Categories limited to <= 4 objects.
HomotopyReport verify_cone_homotopy(const LinCat& c);

}  // namespace zalg
