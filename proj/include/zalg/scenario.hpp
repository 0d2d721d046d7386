#pragma once

// Scenario files: one JSON document naming the objects to build and the
// checks to run against them. Parsing is strict; anything malformed throws
// ScenarioError, which the driver turns into exit code 2.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zalg/chain.hpp"
#include "zalg/groups.hpp"
#include "zalg/lincat.hpp"
#include "zalg/polyfun.hpp"
#include "zalg/rings.hpp"
#include "zalg/simplicial.hpp"

namespace zalg {

using json = nlohmann::json;

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kSchemaVersion = 1;
constexpr int kMaxTruncation = 6;

struct Scenario {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 1;
  int max_degree = 4;         // truncation degree N, at most kMaxTruncation
  json objects;               // name -> {"group"|"ring"|"complex"|"category": spec}
  std::vector<json> checks;   // kept in file order
};

Scenario parse_scenario(const json& doc);
Scenario load_scenario(const std::string& path);  // file or parse error -> ScenarioError

// An argument can be an inline definition or the name of a scenario object.
// resolve() follows names through the object table and unwraps the kind key;
// a missing name or a kind mismatch throws.
json resolve_ref(const Scenario& sc, const json& ref, const std::string& kind);

// "cyclic:n" | "symmetric:n" | {"table": [[...]]}
std::shared_ptr<const FiniteGroup> parse_group(const json& spec);

// sorted, validated element list
std::vector<int> parse_subgroup(const FiniteGroup& g, const json& spec);

// "point" | "regular" | {"cosets": [...]} | {"table": [[...]]}
GSet parse_gset(std::shared_ptr<const FiniteGroup> g, const json& spec);

// "trivial" | "sign" | "conjugation" | "gaussian" | "perm:0,1;1,0" |
// {"perm": [[...], ...]}; one basis image per (element, basis) pair
std::vector<std::vector<LinComb>> parse_action(const FiniteGroup& g, long rank,
                                               const json& spec);

// Expression tree over the ring constructors. Leaves: "Z", "Z[i]",
// {"op":"group_ring","group":G}, {"op":"truncated","k":k}, {"op":"table",...}.
// Nodes: matrix, unitalize, sum, tensor, act, crossed, groupoid, arrow_ring,
// functions, induced. "crossed" attaches the action, then takes the product.
std::shared_ptr<const BasedRing> parse_ring(const Scenario& sc, const json& spec);

// {"vertices": n, "facets": [[...]], "action": {"group": G,
//  "generators": [[perm], ...], "elements": [g, ...]?}}
// Generator images are extended to the whole group along generator words.
std::shared_ptr<SimplicialComplex> parse_complex(const Scenario& sc, const json& spec);

// "path:n" | {"objects":[...], "arrows":[{"src","tgt"},...],
//  "compose":[[g,f,[[arrow,coef],...]],...], "identities":[[[arrow,coef],...],...]}
LinCat parse_category(const Scenario& sc, const json& spec);

// [{"simplex":[v...], "poly":[{"exps":[...],"coef":c},...]}, ...]
// One polynomial in nvars variables from [{"exps": [...], "coef": c}, ...].
Poly parse_poly(int nvars, const json& spec);

PolyFun parse_polyfun(const SimplicialComplex& x, const json& spec);

// homology values on the wire: {"rank": r, "torsion": [d1, d2, ...]}
json hval(const FGAbelianGroup& h);
FGAbelianGroup parse_hval(const json& j);

// strict field access; `who` names the context in error messages
const json& jfield(const json& j, const char* key, const char* who);
long jint(const json& j, const char* key, const char* who);
std::vector<int> jints(const json& v, const char* who);
std::vector<std::vector<int>> jtable(const json& v, const char* who);

}  // namespace zalg
