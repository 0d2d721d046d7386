#pragma once

// Finite groups as explicit multiplication tables, plus the coset, double
// coset, conjugacy and centralizer combinatorics downstream modules consume.
// Everything is exhaustive enumeration over orders <= 720; element order is
// fixed at construction and every derived object inherits determinism from
// it.

#include <stdexcept>
#include <string>
#include <vector>

namespace zalg {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long kMaxGroupOrder = 720;

struct FiniteGroup {
  long n = 0;
  std::vector<std::string> labels;  // display names, one per element
  std::vector<int> table;           // flat n*n, table[a*n+b] = a*b
  int id = 0;
  std::vector<int> inv;
  // one-line images for symmetric groups, empty otherwise
  std::vector<std::vector<int>> perms;
  int mul(int a, int b) const { return table[static_cast<size_t>(a) * n + b]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv[g]); }  // g x g^-1
};

FiniteGroup cyclic_group(long n);     // 1 <= n <= 720
FiniteGroup symmetric_group(int deg); // 1 <= deg <= 6; identity is element 0
// Validates the full set of axioms; throws GroupError otherwise.
FiniteGroup table_group(const std::vector<std::vector<int>>& t);

// Exhaustive axiom check (associativity on all triples); throws GroupError.
void validate_group(const FiniteGroup& g);

std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h);

// Every subgroup, as sorted element lists ordered by (size, lex). Closure
// saturation; fine for the small groups this library targets.
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g);

int perm_parity(const std::vector<int>& p);  // +1 or -1

// Writes each element as a product of the given generators and their
// inverses: word entries are indices into gens, with ~k meaning the inverse
// of gens[k]. Words multiply left to right. Throws if gens do not generate.
std::vector<std::vector<int>> generator_words(const FiniteGroup& g,
                                              const std::vector<int>& gens);

// The subgroup on elements H as a standalone group; element i of the result
// is the i-th smallest member of H, labels inherited.
FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& H);

// Left cosets G/H with a pointed section: the coset H itself is represented
// by the identity, every other coset by its smallest element.
struct CosetSpace {
  std::vector<int> H;         // sorted subgroup elements
  std::vector<int> coset_of;  // element -> coset index
  std::vector<int> rep;       // coset index -> representative
  long size() const { return static_cast<long>(rep.size()); }
};
CosetSpace coset_space(const FiniteGroup& g, const std::vector<int>& H);

struct DoubleCosets {
  std::vector<int> theta;                    // class representatives
  std::vector<std::vector<int>> classes;     // sorted elements per class
  std::vector<std::vector<int>> H_theta;     // H meet theta K theta^-1
  std::vector<std::vector<int>> K_thetainv;  // theta^-1 H theta meet K
};
DoubleCosets double_cosets(const FiniteGroup& g, const std::vector<int>& H,
                           const std::vector<int>& K);

// Classes sorted internally, ordered by smallest member.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);
std::vector<int> centralizer(const FiniteGroup& g, int x);

// Finite left G-set as an explicit action table.
struct GSet {
  long group_order = 0;
  long size = 0;
  std::vector<int> act;  // act[g*size + s] = g s
  int apply(int g, int s) const { return act[static_cast<size_t>(g) * size + s]; }
};
GSet point_gset(const FiniteGroup& g);
GSet regular_gset(const FiniteGroup& g);                            // G on itself
GSet left_coset_gset(const FiniteGroup& g, const CosetSpace& cs);   // G on G/H
GSet table_gset(const FiniteGroup& g, long size, const std::vector<int>& act);
void validate_gset(const FiniteGroup& g, const GSet& s);  // throws GroupError

// hom(s,t) = {g : g s = t}; composition of arrows is group multiplication.
struct TransportGroupoid {
  long objects = 0;
  std::vector<std::vector<std::vector<int>>> hom;  // hom[s][t], each sorted
  long arrow_count() const;
};
TransportGroupoid transport_groupoid(const FiniteGroup& g, const GSet& s);

}  // namespace zalg
