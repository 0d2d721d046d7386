#pragma once
// Tuple-indexed homological machinery over based rings: bar and Hochschild
// complexes (plain, twisted, nonunital, cyclic-nerve), conjugacy splitting,
// cyclic homology via the (b, -b') bicomplex, group hyperhomology, and the
// equivariant coend that assembles fixed-point chain data over the orbit
// category. Everything lands in the exact ChainComplexZ/SNF pipeline.

#include "zalg/chain.hpp"
#include "zalg/rings.hpp"
#include "zalg/simplicial.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace zalg {

struct HomologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hard ceiling on materialized tuple bases per degree.
constexpr long kTupleCap = 200000;

// Dense enumeration of length-len tuples over a ring basis. Tuples are the
// coordinates of R^{(x)len}; nerve variants keep only cyclically composable
// ones when the ring grades its basis by (source, target) objects.
struct TupleSpace {
  long rank_base = 0;
  int len = 0;
  std::vector<std::vector<long>> tuples;
  std::map<std::vector<long>, long> index;
  long size() const { return static_cast<long>(tuples.size()); }
  long id_of(const std::vector<long>& t) const;  // -1 when absent
};

TupleSpace full_tuples(long rank, int len);
TupleSpace nerve_tuples(const BasedRing& a, int len);

// Signed cyclic rotation t(x0,..,xn) = (-1)^n (xn, x0, .., x_{n-1}) on a
// tuple space (len = n+1). Nerve spaces are stable under it.
SparseMat cyclic_t(const TupleSpace& ts);

// Nonunital bar complex: degree n carries A^{(x)(n+1)}, boundary is the
// alternating sum of the n adjacent merges (no wraparound). Degrees 0..top.
ChainComplexZ bar_complex(const BasedRing& a, long top);

struct BarProbe {
  long top = 0;
  std::vector<FGAbelianGroup> h;  // H_n(C^bar (x) M), n = 0..top
  bool vanishes = false;
  std::string detail;
};

// Tensors the bar complex with a coefficient group and reads off homology
// through degree top (built one degree higher, so every value is exact).
BarProbe bar_tor_probe(const BasedRing& a, const FGAbelianGroup& m, long top);

// --- Hochschild-type complexes ---------------------------------------------

// Degrees 0..top; deg[n] indexes the degree-n tuple basis. For nonunital
// input the slots run over unitalize(A) minus the all-unit tuple (the kernel
// of the augmentation to the base ring), and via_unitalization is set.
struct HochschildComplex {
  std::shared_ptr<const BasedRing> ring;        // coefficients as given
  std::shared_ptr<const BasedRing> tuple_ring;  // ring the slots index
  long top = 0;
  int twist = -1;  // acting-group element for twisted coefficients, -1 plain
  bool via_unitalization = false;
  std::vector<TupleSpace> deg;
  ChainComplexZ c;
};

HochschildComplex hochschild_complex(std::shared_ptr<const BasedRing> a, long top);
// Coefficients in the bimodule A_g (right action twisted through g).
HochschildComplex hochschild_twisted(std::shared_ptr<const BasedRing> a, int g, long top);
// Cyclically composable tuples only; ungraded rings fall back to the full
// complex, which the inclusion is then equal to.
HochschildComplex hochschild_nerve(std::shared_ptr<const BasedRing> a, long top);

// Splits a Hochschild complex by the conjugacy class of the product of the
// group components of a tuple. group_of[i] names the component of basis
// element i of the tuple ring; the split is verified to be preserved by the
// boundary and the cyclic rotation, and the parts are reported with their
// homology through degree top-1.
struct ConjugacyParts {
  long top = 0;
  std::vector<std::vector<int>> classes;
  std::vector<std::vector<long>> ranks;            // [class][degree 0..top]
  std::vector<std::vector<FGAbelianGroup>> h;      // [class][degree 0..top-1]
  bool closed_under_b = false;
  bool closed_under_t = false;
  bool ranks_additive = false;
  bool pass() const { return closed_under_b && closed_under_t && ranks_additive; }
  std::string detail;
};

ConjugacyParts split_conjugacy(const HochschildComplex& hc, const FiniteGroup& g,
                               const std::vector<int>& group_of);

// HC_n through the first-quadrant bicomplex with columns b, -b' and rows
// 1-lambda, N; only the columns p <= n+1 contribute, so the value is exact.
FGAbelianGroup cyclic_hc(std::shared_ptr<const BasedRing> a, long n,
                         Engine e = Engine::parallel);

// --- complexes with a group action -----------------------------------------

struct EquivariantComplex {
  std::shared_ptr<const FiniteGroup> k;
  ChainComplexZ c;
  std::map<long, std::vector<DenseMat>> act;  // degree -> one matrix per element
  void validate() const;  // identity, homomorphism, chain-map; throws
};

// Chains on the subcomplex of x fixed pointwise by fix, with the signed
// permutation action of the listed elements zs (sorted, a subgroup of
// x.group that preserves the fixed part). k becomes subgroup_group(., zs).
EquivariantComplex fixed_chain_complex(const SimplicialComplex& x,
                                       const std::vector<int>& fix,
                                       const std::vector<int>& zs);

// Twisted Hochschild tuples with the diagonal action of the listed elements
// of a's acting group (they must centralize the twist).
EquivariantComplex equivariant_hochschild(std::shared_ptr<const BasedRing> a, int twist,
                                          long top, const std::vector<int>& zs);

// Tensor product of complexes with the Koszul sign; degree-n basis runs over
// blocks p ascending (q = n-p), index i_a * rank_b(q) + i_b inside a block.
ChainComplexZ tensor_complex(const ChainComplexZ& a, const ChainComplexZ& b);
// Same layout, diagonal action (the two factors must share their group).
EquivariantComplex tensor_equivariant(const EquivariantComplex& a,
                                      const EquivariantComplex& b);

// Hyperhomology of the group acting on the complex, through the
// unnormalized bar resolution truncated at homological width top+1; values
// in degrees 0..top are exact. The complex must live in degrees >= 0.
std::vector<FGAbelianGroup> group_hyperhomology(const EquivariantComplex& m, long top,
                                                Engine e = Engine::parallel);

// --- orbit-category coend ---------------------------------------------------

struct CoendResult {
  long top = 0;
  std::vector<std::vector<int>> subgroups;  // sorted element lists, by (size, lex)
  std::vector<FGAbelianGroup> h;            // degrees 0..top
  std::string detail;
};

// Coend over the orbit category of g of  Z[X^H] (x) C(G/H), where C(G/H) is
// the composable-tuple complex of the transport groupoid of G/H with
// coefficients in r. Identifications are imposed as relation lattices and
// resolved through a mapping cone, so torsion is handled exactly.
CoendResult equivariant_coend(std::shared_ptr<const FiniteGroup> g,
                              const SimplicialComplex& x,
                              std::shared_ptr<const BasedRing> r, long top);

struct ReiluReport {
  long top = 0;
  std::vector<int> reps;  // conjugacy representatives the right side used
  std::vector<FGAbelianGroup> lhs, rhs;
  std::vector<std::vector<FGAbelianGroup>> rhs_parts;  // per class, 0..top
  bool agree = false;
  bool alpha_ok = false;   // chain-map identity on the free-orbit instance
  long alpha_pairs = 0;    // generators the identity was expanded on
  bool pass() const { return agree && alpha_ok; }
  std::string detail;
};

// Compares the coend above against the sum over conjugacy classes of the
// hyperhomology of the centralizer acting diagonally on
// Z[fixed chains] (x) (twisted Hochschild tuples), and expands the
// comparison map degreewise on the free orbit to confirm it is a chain map.
ReiluReport verify_reilu(std::shared_ptr<const FiniteGroup> g, const SimplicialComplex& x,
                         std::shared_ptr<const BasedRing> r, long top,
                         std::vector<int> reps = {});

// Iterated multiplication kernels: L_{-1} = A, L_{k+1} = ker(A (x) L_k -> L_k)
// with A acting on the leading slot. Returns the underlying group of L_n,
// free of the reported rank (kernel lattices are saturated).
FGAbelianGroup l_ladder(const BasedRing& a, long n);

// Named entry point for the SNF homology pipeline.
FGAbelianGroup snf_homology(const ChainComplexZ& c, long n, Engine e = Engine::parallel);

}  // namespace zalg
