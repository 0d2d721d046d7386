#pragma once

// Rings that are free and finitely generated as Z-modules, given by sparse
// structure constants over an ordered basis. Covers every construction the
// checks compose: group rings, matrix rings, unitalization, direct sums,
// tensor products, crossed products by a group action, and crossed products
// by the transport groupoid of a finite G-set. Nonunital rings are first
// class; anything needing a unit goes through unitalize() explicitly.
//
// Products are stored CSR-style per basis pair. Associativity is verified
// exhaustively on construction up to rank 128; larger rings expose the same
// exhaustive check as an explicit method.

#include "zalg/groups.hpp"
#include "zalg/smith.hpp"

#include <memory>
#include <optional>
#include <tuple>

namespace zalg {

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long kBasisCap = 4096;

// Sorted by basis index, coefficients nonzero.
using LinComb = std::vector<std::pair<long, Int>>;

LinComb lc_normalize(LinComb v);
LinComb lc_add(const LinComb& a, const LinComb& b);
LinComb lc_sub(const LinComb& a, const LinComb& b);
LinComb lc_scale(const LinComb& a, const Int& c);
LinComb lc_single(long i, const Int& c = Int(1));
std::string lc_to_string(const LinComb& v, const std::vector<std::string>& basis);

// Arrow bookkeeping for rings whose basis elements have source and target
// objects (matrix rings, groupoid crossed products). Lets the homology side
// slice products by composability.
struct ObjectGrading {
  long objects = 0;
  std::vector<std::pair<int, int>> srctgt;  // per basis element: (src, tgt)
};

struct BasedRing {
  std::vector<std::string> basis;
  std::vector<long> off;  // rank*rank + 1 offsets into ent
  std::vector<std::pair<long, Int>> ent;
  std::optional<LinComb> unit;
  std::shared_ptr<const FiniteGroup> acting_group;
  std::vector<std::vector<LinComb>> action;  // [element][basis index]
  std::optional<ObjectGrading> grading;

  long rank() const { return static_cast<long>(basis.size()); }
  const std::pair<long, Int>* prod_begin(long i, long j) const {
    return ent.data() + off[static_cast<size_t>(i) * rank() + j];
  }
  const std::pair<long, Int>* prod_end(long i, long j) const {
    return ent.data() + off[static_cast<size_t>(i) * rank() + j + 1];
  }
  LinComb mul(const LinComb& a, const LinComb& b) const;
  LinComb act(int g, const LinComb& v) const;
  bool is_unital() const { return unit.has_value(); }

  void verify_associative() const;  // exhaustive on triples, parallel
  void verify_unit() const;
  void verify_action() const;  // automorphisms + group homomorphism, exhaustive
};

struct RingBuilder {
  std::vector<std::string> basis;
  std::vector<std::tuple<long, long, LinComb>> cells;  // (i, j, product)
  std::optional<LinComb> unit;
  std::shared_ptr<const FiniteGroup> acting_group;
  std::vector<std::vector<LinComb>> action;
  std::optional<ObjectGrading> grading;

  long add_basis(std::string label);
  void set_product(long i, long j, LinComb v);
  // Builds the CSR table and validates: basis cap, entry sanity, unit and
  // action laws, grading composability, associativity when rank <= 128.
  BasedRing finish() const;
};

// --- constructions ---------------------------------------------------------

BasedRing ring_Z();
BasedRing gaussian_ring();               // Z[i], basis {1, i}
BasedRing truncated_poly(long k);        // t Z[t]/(t^k), rank k-1, nonunital
BasedRing group_ring(std::shared_ptr<const FiniteGroup> g);
BasedRing table_ring(std::vector<std::string> basis,
                     std::vector<std::tuple<long, long, LinComb>> cells,
                     std::optional<LinComb> unit);
BasedRing matrix_ring(long n, const BasedRing& a);  // basis (i,j) x basis(a)
BasedRing unitalize(const BasedRing& a);            // appends basis element "1"
BasedRing direct_sum_ring(const BasedRing& a, const BasedRing& b);
BasedRing tensor_ring(const BasedRing& a, const BasedRing& b);

// Needs a.acting_group; basis (a, g) ring-major: index i*|G| + g, product
// (r x f)(s x g) = r f(s) x fg.
BasedRing crossed_product(const BasedRing& a);

// Transport groupoid arrows in a fixed order: source ascending, then group
// element ascending; target is determined.
struct GroupoidArrows {
  std::vector<int> src, tgt, g;
  std::vector<long> index;  // [s * |G| + g] -> arrow id
  long count() const { return static_cast<long>(src.size()); }
  long at(int s, int gg, long group_order) const {
    return index[static_cast<size_t>(s) * group_order + gg];
  }
};
GroupoidArrows enumerate_arrows(const FiniteGroup& g, const GSet& s);

// Basis (a, arrow) ring-major; (a x al)(b x be) = delta_{src al, tgt be}
// a * g_al(b) x (al o be). Works verbatim for nonunital a. Carries grading.
BasedRing groupoid_crossed(const BasedRing& a, const FiniteGroup& g, const GSet& s);

// Z[groupoid]: groupoid_crossed with coefficient ring Z and trivial action.
BasedRing groupoid_ring(const FiniteGroup& g, const GSet& s);

// --- actions ---------------------------------------------------------------

std::vector<std::vector<LinComb>> trivial_action(const FiniteGroup& g, long rank);
// Needs a character into {+1, -1}: cyclic of even order (generator -> -1),
// symmetric groups (parity). Throws otherwise.
std::vector<std::vector<LinComb>> sign_action(const FiniteGroup& g, long rank);
// G on Z[G] by h -> g h g^-1.
std::vector<std::vector<LinComb>> conjugation_action(const FiniteGroup& g);
// Order-2 generator of g sends i -> -i on gaussian_ring.
std::vector<std::vector<LinComb>> gaussian_conjugation(const FiniteGroup& g);
void attach_action(BasedRing& r, std::shared_ptr<const FiniteGroup> g,
                   std::vector<std::vector<LinComb>> mats);

// --- homomorphism checking --------------------------------------------------

struct RingHom {
  std::shared_ptr<const BasedRing> src, tgt;
  std::vector<LinComb> mat;  // image of each source basis element
};
LinComb hom_apply(const RingHom& f, const LinComb& v);

struct HomCheckFlags {
  bool multiplicative = false;
  bool unital = false;
  bool equivariant = false;  // per element of equivariance list
  bool bijective = false;    // invertible over Z
};
struct HomCheckResult {
  bool pass = true;
  std::string detail;  // first counterexample, human readable
};
HomCheckResult check_hom(const RingHom& f, const HomCheckFlags& flags,
                         const std::vector<int>& equivariance_elems = {});

// --- twisted bimodule and s-unitality ---------------------------------------

// R as a bimodule over itself with the right action twisted by g:
// x . r = x * g(r). Constructor verifies the two actions commute.
struct TwistedBimodule {
  std::shared_ptr<const BasedRing> ring;
  int g = 0;
  LinComb left(const LinComb& r, const LinComb& x) const;
  LinComb right(const LinComb& x, const LinComb& r) const;
};
TwistedBimodule twisted_bimodule(std::shared_ptr<const BasedRing> r, int g);

// Solves e * a_i = a_i = a_i * e over Z for the given finite list.
struct SUnitalProbe {
  std::optional<LinComb> witness;
  bool rational_solvable = false;
};
SUnitalProbe s_unital_probe(const BasedRing& a, const std::vector<LinComb>& elems);

}  // namespace zalg
