#pragma once

// Integer polynomial functions on a finite simplicial complex. A function
// assigns to every nondegenerate simplex a polynomial in its barycentric
// coordinates t0..t_{n-1} (t_n is eliminated through sum t_i = 1, which
// makes equality syntactic), compatibly with face restriction. On top of
// the arithmetic this module carries the extension theorem with an explicit
// closed-form filler, s-unit witnesses, separating functions, and proper
// module structures on based rings.
//
// Everything is degree bounded (default 8). The function ring of a complex
// of positive dimension has infinite rank, so membership questions, ideals
// and spanning checks are computed inside the bound and reported that way;
// operations that would leave the bound throw instead of truncating.

#include "zalg/rings.hpp"
#include "zalg/simplicial.hpp"

namespace zalg {

struct PolyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kDegreeBound = 8;

// Sparse multivariate polynomial over Z; terms sorted graded-lex with the
// leading term first, coefficients nonzero. nvars is fixed per value.
struct Poly {
  int nvars = 0;
  std::vector<std::pair<std::vector<int>, Int>> terms;

  bool is_zero() const { return terms.empty(); }
  int degree() const;  // -1 for the zero polynomial
  bool operator==(const Poly&) const = default;
};

Poly poly_zero(int nvars);
Poly poly_const(int nvars, const Int& c);
Poly poly_var(int nvars, int i);
Poly poly_from_terms(int nvars, std::vector<std::pair<std::vector<int>, Int>> ts);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Int& c);
// Throws PolyError when the product leaves the degree bound.
Poly poly_mul(const Poly& a, const Poly& b, int bound = kDegreeBound);

// Evaluates p at the given substitute polynomials, one per variable of p,
// all living in out_nvars variables. Restriction, pullback and the filler
// below are instances with linear forms, so degrees never grow past p's.
Poly poly_subst(const Poly& p, const std::vector<Poly>& forms, int out_nvars,
                int bound = kDegreeBound);

// Exact division; both throw PolyError when the quotient does not exist
// over Z. The linear divisor must have unit leading coefficient.
Poly poly_div_var(const Poly& p, int i);
Poly poly_div_exact(const Poly& p, const Poly& linear);

std::string poly_to_string(const Poly& p);

// Restriction of a polynomial on an m-simplex to its k-th face, 0 <= k <= m.
// Faces k < m substitute t_k := 0 and renumber; the last face substitutes
// t_{m-1} := 1 - t_0 - ... - t_{m-2}.
Poly face_restrict(const Poly& p, int m, int k);

// --- functions on a complex -------------------------------------------------

// One polynomial per simplex id; val[s] has dim(s) variables. The complex
// is borrowed and must outlive the value.
struct PolyFun {
  const SimplicialComplex* x = nullptr;
  int bound = kDegreeBound;
  std::vector<Poly> val;
};

PolyFun pf_zero(const SimplicialComplex& x, int bound = kDegreeBound);
PolyFun pf_const(const SimplicialComplex& x, const Int& c, int bound = kDegreeBound);

// Builds a function from per-simplex polynomials, propagating to faces by
// restriction; simplices not reachable from an entry default to zero and
// the assembled family is validated for face compatibility.
PolyFun pf_from_entries(const SimplicialComplex& x,
                        const std::vector<std::pair<std::vector<int>, Poly>>& entries,
                        int bound = kDegreeBound);

// Face compatibility on every (simplex, face) pair; throws with a witness.
void validate_polyfun(const PolyFun& f);

PolyFun pf_add(const PolyFun& a, const PolyFun& b);
PolyFun pf_sub(const PolyFun& a, const PolyFun& b);
PolyFun pf_neg(const PolyFun& a);
PolyFun pf_scale(const PolyFun& a, const Int& c);
PolyFun pf_mul(const PolyFun& a, const PolyFun& b);
bool pf_eq(const PolyFun& a, const PolyFun& b);
bool pf_is_zero(const PolyFun& f);
std::string pf_to_string(const PolyFun& f);

// Subcomplex generated by the simplices with a nonzero polynomial.
std::vector<long> support(const PolyFun& f);

// Vertex map between complexes; every simplex must map onto a simplex of
// the target (repeats allowed, so collapses are fine).
struct SimplicialMap {
  const SimplicialComplex* src = nullptr;
  const SimplicialComplex* tgt = nullptr;
  std::vector<int> v;
};
SimplicialMap make_simplicial_map(const SimplicialComplex& src,
                                  const SimplicialComplex& tgt, std::vector<int> v);

// f^* psi = psi o f; the barycentric coordinate of a target vertex pulls
// back to the sum of the coordinates of its preimages in each simplex.
PolyFun pullback(const SimplicialMap& f, const PolyFun& psi);

// The action of a group element on functions, (g . f)(sigma) = f(g^-1 sigma);
// needs an attached action on the complex.
PolyFun pf_act(int g, const PolyFun& f);

// Extends phi, given on the downward-closed id set yids, to the whole
// complex: the result restricts to phi on Y, vanishes outside the closed
// star of K = supp phi and on li(K) = closed star minus star. Simplices of
// the star are filled in (dimension, lex) order; each filling step corrects
// one face at a time with a closed-form section, and the last face uses the
// extra degeneracy of the coordinate simplicial group: a polynomial
// vanishing on the whole boundary is divisible by the product of all
// barycentric coordinates, and dividing then re-multiplying fills the last
// face without disturbing the others.
PolyFun extend(const PolyFun& phi, const std::vector<long>& yids);

// mu with mu * f = f for every given f: the extension of the constant 1 on
// the union of the supports. Verified before returning.
PolyFun s_unit_witness(const SimplicialComplex& x, const std::vector<PolyFun>& elems,
                       int bound = kDegreeBound);

// Nonzero exactly around sigma: the product of all barycentric coordinates
// of sigma, extended from the closure of sigma. Verified nonzero at sigma.
PolyFun separating_function(const SimplicialComplex& x, long sigma,
                            int bound = kDegreeBound);

// --- proper structures ------------------------------------------------------

// The function ring of the vertex set: basis chi_v with chi_v chi_w =
// delta_{vw} chi_v, unit the constant 1, permutation action when the
// complex carries one. For a 0-dimensional complex this is the whole
// function ring; for larger ones it is the ring of its 0-skeleton.
BasedRing vertex_function_ring(const SimplicialComplex& x);

// A module structure of the bounded-degree function ring on a based ring.
// The caller supplies generators as (function, action matrix) pairs; the
// constructor closes the family under products inside the degree bound,
// verifies the action is well defined on all integer relations of the
// family, checks centrality c(ab) = (ca)b = a(cb) on the generators, and
// when ring and space carry the same group also checks g(ca) = g(c) g(a).
struct ProperStructure {
  std::shared_ptr<const BasedRing> ring;
  const SimplicialComplex* space = nullptr;
  int bound = kDegreeBound;

  // spanning family: function coordinates (facet layout) and matrices
  std::vector<PolyFun> fam;
  std::vector<DenseMat> fmat;  // column j = image of basis element j

  // coordinate layout: one block of monomials per facet of the space
  std::vector<long> facets;        // facet simplex ids
  std::vector<long> facet_offset;  // per facet, into the ambient vector
  long ambient = 0;
  DenseMat module_basis;  // columns: a Z-basis of the compatible families
  DenseMat fam_vecs;      // columns: coordinates of fam

  bool full = false;       // Z^(X) . A = A within the bound
  std::string full_detail;

  std::vector<Int> coords(const PolyFun& f) const;  // ambient facet vector
  // agreement rows for every facet pair over their common face
  DenseMat module_constraints() const;
  // compatible family from facet coefficients, faces filled by restriction
  PolyFun from_coords(const std::vector<Int>& v) const;
  // action of an arbitrary function in the span of the family; throws when
  // f is outside it.
  DenseMat act_of(const PolyFun& f) const;
  // basis of I(Y) = {f : supp f inside Y}, within the degree bound
  std::vector<PolyFun> ideal_basis(const std::vector<long>& yids) const;
  // A(Y) = I(Y) . A as a column-HNF lattice basis inside the ring
  DenseMat submodule(const std::vector<long>& yids) const;
};

ProperStructure proper_structure(std::shared_ptr<const BasedRing> a,
                                 const SimplicialComplex& x,
                                 const std::vector<std::pair<PolyFun, DenseMat>>& gens,
                                 int bound = kDegreeBound);

// Structure over the target of f from one over its source, acting through
// the pullback; new generators for the target side are supplied explicitly.
ProperStructure proper_pushforward(const ProperStructure& ps, const SimplicialMap& f,
                                   const std::vector<PolyFun>& ygens);

}  // namespace zalg
