#pragma once

// Finite ordered simplicial complexes with admissible group actions:
// whenever an element maps a simplex to itself setwise it must fix it
// pointwise. Non-admissible actions are rejected with a hint to subdivide;
// one barycentric subdivision always regularizes, because a subdivision
// vertex is a simplex of the original complex and the simplices of a chain
// have pairwise distinct dimensions.
//
// Simplices are stored once, sorted by (dimension, vertex list), and most
// operations speak in terms of their ids in that order. Subcomplexes are
// downward-closed id sets until materialized.

#include "zalg/chain.hpp"
#include "zalg/groups.hpp"

#include <memory>

namespace zalg {

struct SComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimplicialComplex {
  long nv = 0;
  std::vector<std::vector<int>> simp;  // each sorted; list ordered (dim, lex)
  std::map<std::vector<int>, long> index;
  std::shared_ptr<const FiniteGroup> group;  // null when no action
  std::vector<std::vector<int>> vact;        // [g][v]

  long top_dim() const;
  bool has(const std::vector<int>& s) const { return index.count(s) != 0; }
  long id_of(const std::vector<int>& s) const;
  int apply_vertex(int g, int v) const { return vact[g][v]; }
  // image simplex id; sign (if requested) is the sort parity of the image
  long apply_simplex(int g, long s, int* sign = nullptr) const;
};

SimplicialComplex build_complex(long nv, const std::vector<std::vector<int>>& facets);

// Validates that each generator image is simplicial and the whole action is
// admissible; error messages direct the caller to subdivide() otherwise.
void attach_complex_action(SimplicialComplex& x, std::shared_ptr<const FiniteGroup> g,
                           std::vector<std::vector<int>> vact);

// Barycentric subdivision; vertex i of the result is simplex i of the
// input. An attached action comes along and is admissible afterwards.
SimplicialComplex subdivide(const SimplicialComplex& x);

// Subcomplex operations on id sets (inputs need not be closed; outputs are
// sorted). li is the closed star minus the open star, a subcomplex.
std::vector<long> generated(const SimplicialComplex& x, const std::vector<long>& m);
std::vector<long> star(const SimplicialComplex& x, const std::vector<long>& m);
std::vector<long> closed_star(const SimplicialComplex& x, const std::vector<long>& m);
std::vector<long> link(const SimplicialComplex& x, const std::vector<long>& m);

// Ids of simplices fixed pointwise by every element of H.
std::vector<long> fixed_ids(const SimplicialComplex& x, const std::vector<int>& H);

// Materializes a downward-closed id set over the same vertex universe.
// keep_action reattaches the ambient action restricted to the given
// subgroup elements (which must preserve the id set).
SimplicialComplex subcomplex(const SimplicialComplex& x, const std::vector<long>& ids);
SimplicialComplex subcomplex_with_action(const SimplicialComplex& x,
                                         const std::vector<long>& ids,
                                         const std::vector<int>& subgroup);

SimplicialComplex fixed_points(const SimplicialComplex& x, const std::vector<int>& H);

// G x_H X: one tagged copy of X per left coset, vertex (c, v) = c*nv + v,
// with the action g(c, x) = (gc, h x), h = rep(gc)^-1 g rep(c). X must
// carry an action of subgroup_group(G, H).
SimplicialComplex induce_space(std::shared_ptr<const FiniteGroup> G,
                               const std::vector<int>& H, const SimplicialComplex& x);

// Every simplex stabilizer belongs to the family (validated: closed under
// conjugation and subgroups).
bool family_check(const SimplicialComplex& x,
                  const std::vector<std::vector<int>>& family);

// Simplicial chain complex; degree d has one generator per d-simplex, in id
// order within the degree.
ChainComplexZ chains(const SimplicialComplex& x);
ChainComplexZ chains(const SimplicialComplex& x, const std::vector<long>& ids);
// Signed permutation action of g on degree-d chains.
SparseMat chain_action(const SimplicialComplex& x, int g, long d);

// Degree-d simplex ids and the rank per degree, for callers that index
// chain coordinates.
std::vector<long> degree_ids(const SimplicialComplex& x, long d);

}  // namespace zalg
