// Induced rings along a subgroup inclusion, compression by the cut-down
// idempotent, and the family of comparison isomorphisms between crossed
// products, matrix rings and induced rings that the checker exposes.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zalg/groups.hpp"
#include "zalg/polyfun.hpp"
#include "zalg/rings.hpp"
#include "zalg/simplicial.hpp"

namespace zalg {

// Copy of a G-ring with the action cut down to the subgroup H; the acting
// group of the result is subgroup_group(g, H) in sorted element order.
BasedRing restrict_ring(const BasedRing& a, const FiniteGroup& g, const std::vector<int>& H);

// Discrete complex on the left cosets G/H with the translation action.
std::shared_ptr<SimplicialComplex> coset_complex(std::shared_ptr<const FiniteGroup> g,
                                                 const CosetSpace& cs);

// ind_H^G(A) for an H-ring A: finitely supported A-valued functions on G
// that twist by the H-action on the right. Basis xi(r,a) runs over the
// pointed section r of G/H and the basis of A, coset-major. The carrier
// keeps the G-action g xi(s,a) = xi(gs,a) translated through the section.
struct InducedRing {
  std::shared_ptr<const FiniteGroup> G;
  std::vector<int> H;  // sorted
  CosetSpace cs;
  std::shared_ptr<const FiniteGroup> HG;    // subgroup as a group in its own right
  std::shared_ptr<const BasedRing> base;    // the H-ring A
  std::shared_ptr<const BasedRing> carrier; // based ring on G/H x basis(A)

  long idx(long x, long a) const { return x * base->rank() + a; }
  int hpos(int h) const;                     // position of h in sorted H
  // xi(s, v) for any s in G expressed in carrier coordinates
  LinComb xi(int s, const LinComb& v) const;
};

// Optional section: rep per coset index, pointed (identity represents H).
// Empty means the default pointed section of coset_space. Validates the
// translation and twist relations exhaustively before returning.
InducedRing induce_ring(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                        std::shared_ptr<const BasedRing> a,
                        const std::vector<int>& section = {});

// Canonical proper structure of an induced ring over the coset complex:
// the coordinate functions act by the block projections of the carrier.
struct ProperOverCosets {
  std::shared_ptr<SimplicialComplex> space;
  ProperStructure ps;
};
ProperOverCosets induced_proper(const InducedRing& ind);

// chi_H . A for a G-ring A proper over G/H. The lattice columns express the
// compressed basis inside A; the ring carries the restricted H-action.
struct CompressedRing {
  std::shared_ptr<const BasedRing> ring;
  DenseMat lattice;  // rank(A) x rank(ring)
};
CompressedRing compress(std::shared_ptr<const BasedRing> a,
                        std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                        const ProperStructure& ps);

// One named comparison map together with everything that was verified
// about it: the ring-hom check with the flags the statement asserts, and
// any side diagrams confirmed elementwise.
struct IsoReport {
  std::string name;
  RingHom hom;
  HomCheckResult verdict;
  std::vector<std::pair<std::string, bool>> diagram_checks;

  bool pass() const {
    if (!verdict.pass) return false;
    for (auto& [what, ok] : diagram_checks)
      if (!ok) return false;
    return true;
  }
  std::string detail() const;
};

// Crossed product of a G-ring by the full group, with the conjugation
// action g(b x k) = g(b) x gkg^-1 attached so equivariance is checkable.
BasedRing crossed_with_conjugation(const BasedRing& a);

// The arrow ring of A x| transport(G/H) against M_{G/H}(A x| H):
// b x (g: sH -> tH) goes to e_{tH,sH} (x) t^-1(b) x| t^-1 g s with hats the
// section representatives. Confirms the triangle through A x| H elementwise.
IsoReport iso_across(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                     std::shared_ptr<const BasedRing> a,
                     const std::vector<int>& section = {});

// ind_H^G(A) x| G against M_{G/H}(A x| H) for an H-ring A, including the
// triangle over A x| H and the endomorphism-ring square on A^(G).
IsoReport iso_green(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                    std::shared_ptr<const BasedRing> a,
                    const std::vector<int>& section = {});

// (M_X A) x| G against M_X(A x| G) where X is a finite G-set permuting the
// matrix slots: (e_{x,y} (x) a) x| g -> e_{x,g^-1 y} (x) (a x| g).
IsoReport iso_mxg(std::shared_ptr<const FiniteGroup> g, std::shared_ptr<const BasedRing> a,
                  const GSet& x);

// ind_H^G(res B) against Z^(G/H) (x) B for a G-ring B: xi(s,b) -> chi_sH (x) s(b).
IsoReport iso_indtriv(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                      std::shared_ptr<const BasedRing> b,
                      const std::vector<int>& section = {});

// B -> chi_H . ind_H^G(B), b -> xi(1,b), as H-rings.
IsoReport iso_indcomp_i(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                        std::shared_ptr<const BasedRing> b,
                        const std::vector<int>& section = {});

// ind_H^G(chi_H . A) -> A for a G-ring A proper over G/H:
// xi(s, chi_H a) -> chi_sH s(a).
IsoReport iso_indcomp_ii(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                         std::shared_ptr<const BasedRing> a, const ProperStructure& ps,
                         const std::vector<int>& section = {});

// Z^(G x_H X) against ind_H^G(Z^(X)) for a discrete H-complex X, through
// theta(f)(pi(g,x)) = f(g)(x).
IsoReport iso_indx(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                   const SimplicialComplex& x);

// The H theta K summand of res_H ind_K^G(A) against ind over H of the
// theta-conjugated coefficients: xi_K(h theta, a) -> xi_{H_theta}(h, a).
// theta must be one of the double coset representatives of dc.
IsoReport iso_indxtheta(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& H,
                        const std::vector<int>& K, std::shared_ptr<const BasedRing> a,
                        const DoubleCosets& dc, long cls);

// res_H ind_K^G(A) split along double cosets; each summand is matched with
// its conjugated induced model and the ranks must add up.
struct ResIndDecomposition {
  DoubleCosets dc;
  std::vector<IsoReport> summands;
  std::vector<long> ranks;
  bool pass = false;
  std::string detail;
};
ResIndDecomposition decompose_res_ind(std::shared_ptr<const FiniteGroup> g,
                                      const std::vector<int>& H, const std::vector<int>& K,
                                      std::shared_ptr<const BasedRing> a);

}  // namespace zalg
