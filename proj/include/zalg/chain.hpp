#pragma once

// Chain complexes of finitely generated free Z-modules, and the handful of
// constructions the checks need: direct sums, mapping cones, coefficient
// change along a finitely generated abelian group, and resolving a complex
// whose terms are merely presented (generators + relations) into an honest
// free complex with the same homology.
//
// Homology of a free complex needs surprisingly little: rank H_n follows
// from the ranks of the two adjacent boundaries, and its torsion is exactly
// the invariant factors (> 1) of d_{n+1}. No kernel bases in the hot path.

#include "zalg/smith.hpp"

#include <map>
#include <string>

namespace zalg {

struct FGAbelianGroup {
  long rank = 0;
  std::vector<Int> torsion;  // invariant factor chain, each entry > 1
  bool operator==(const FGAbelianGroup&) const = default;
  bool is_zero() const { return rank == 0 && torsion.empty(); }
  std::string to_string() const;  // "0", "Z^2 + Z/2 + Z/4", ...
};

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);

struct ChainComplexZ {
  std::map<long, long> dims;       // degree -> rank of C_n; absent means 0
  std::map<long, SparseMat> diff;  // diff.at(n): C_n -> C_{n-1}

  long dim(long n) const;
  SparseMat boundary(long n) const;  // stored matrix, or a shaped zero
  void set_dim(long n, long r);
  void set_boundary(long n, SparseMat m);  // records both adjacent dims
  long min_degree() const;
  long max_degree() const;
  bool validate(std::string* err = nullptr) const;  // shapes, d o d == 0
};

ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b);

// f[n]: A_n -> B_n must be a chain map; cone_n = A_{n-1} (+) B_n with
// differential (a, b) |-> (-dA a, dB b - f a). A-part indices come first.
ChainComplexZ mapping_cone(const ChainComplexZ& A, const ChainComplexZ& B,
                           const std::map<long, SparseMat>& f);

// Cone of m * id; same homology as C with Z/m coefficients (C free).
ChainComplexZ scale_cone(const ChainComplexZ& C, const Int& m);

// Direct sum of rank copies of C and one scale cone per torsion factor;
// computes H_*(C; A) degreewise.
ChainComplexZ with_coefficients(const ChainComplexZ& C, const FGAbelianGroup& A);

// Terms given by presentations: gens[n] generators, R[n] a relation matrix
// (columns span the relation lattice), D[n] the boundary on generators.
// D must carry relations into relations; resolve() builds the cone of the
// induced map of free complexes, which has the homology of the presented
// complex. Relation columns get reduced to a lattice basis first.
struct PresentedComplex {
  std::map<long, long> gens;
  std::map<long, DenseMat> D;  // D.at(n): Z^gens[n] -> Z^gens[n-1]
  std::map<long, DenseMat> R;  // R.at(n): relations -> Z^gens[n]
};

ChainComplexZ resolve(const PresentedComplex& P);

enum class Engine { parallel, serial };

FGAbelianGroup homology(const ChainComplexZ& C, long n, Engine e = Engine::parallel);
// Computes each boundary's Smith data once across the whole range.
std::map<long, FGAbelianGroup> homology_range(const ChainComplexZ& C, long lo, long hi,
                                              Engine e = Engine::parallel);

}  // namespace zalg
