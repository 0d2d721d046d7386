#include "zalg/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "zalg/induction.hpp"

namespace zalg {

namespace {

std::string who_str(const char* who) { return std::string(who); }

Int int_of(const json& v, const char* who) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw ScenarioError(who_str(who) + ": expected an integer coefficient");
}

// "cyclic:3" -> 3; throws unless the prefix matches and the rest is a number
long suffix_num(const std::string& s, const std::string& prefix, const char* who) {
  std::string digits = s.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ScenarioError(who_str(who) + ": malformed spec '" + s + "'");
  return std::stol(digits);
}

LinComb lc_of(const json& v, const char* who) {
  if (!v.is_array()) throw ScenarioError(who_str(who) + ": expected [[index, coef], ...]");
  LinComb out;
  for (const json& t : v) {
    if (!t.is_array() || t.size() != 2)
      throw ScenarioError(who_str(who) + ": expected [[index, coef], ...]");
    out.emplace_back(t.at(0).get<long>(), int_of(t.at(1), who));
  }
  return lc_normalize(std::move(out));
}

std::vector<int> perm_of(const json& v, long n, const char* who) {
  std::vector<int> p = jints(v, who);
  if (static_cast<long>(p.size()) != n)
    throw ScenarioError(who_str(who) + ": permutation length mismatch");
  std::vector<char> seen(n, 0);
  for (int i : p) {
    if (i < 0 || i >= n || seen[i])
      throw ScenarioError(who_str(who) + ": not a permutation");
    seen[i] = 1;
  }
  return p;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

}  // namespace

const json& jfield(const json& j, const char* key, const char* who) {
  if (!j.is_object() || !j.contains(key))
    throw ScenarioError(who_str(who) + ": missing field '" + key + "'");
  return j.at(key);
}

long jint(const json& j, const char* key, const char* who) {
  const json& v = jfield(j, key, who);
  if (!v.is_number_integer())
    throw ScenarioError(who_str(who) + ": field '" + key + "' must be an integer");
  return v.get<long>();
}

std::vector<int> jints(const json& v, const char* who) {
  if (!v.is_array()) throw ScenarioError(who_str(who) + ": expected an integer list");
  std::vector<int> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_integer())
      throw ScenarioError(who_str(who) + ": expected an integer list");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> jtable(const json& v, const char* who) {
  if (!v.is_array()) throw ScenarioError(who_str(who) + ": expected a table");
  std::vector<std::vector<int>> out;
  out.reserve(v.size());
  for (const json& row : v) out.push_back(jints(row, who));
  return out;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario: top level must be an object");
  Scenario sc;
  const long sv = jint(doc, "schema_version", "scenario");
  if (sv != kSchemaVersion)
    throw ScenarioError("scenario: unsupported schema_version " + std::to_string(sv));
  sc.schema_version = static_cast<int>(sv);
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ScenarioError("scenario: seed must be a nonnegative integer");
    sc.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("max_degree")) {
    const long n = jint(doc, "max_degree", "scenario");
    if (n < 0 || n > kMaxTruncation)
      throw ScenarioError("scenario: max_degree must lie in [0, " +
                          std::to_string(kMaxTruncation) + "]");
    sc.max_degree = static_cast<int>(n);
  }
  if (doc.contains("objects")) {
    if (!doc.at("objects").is_object())
      throw ScenarioError("scenario: objects must map names to definitions");
    sc.objects = doc.at("objects");
    for (const auto& [name, def] : sc.objects.items()) {
      if (!def.is_object() ||
          (!def.contains("group") && !def.contains("ring") && !def.contains("complex") &&
           !def.contains("category")))
        throw ScenarioError("scenario: object '" + name +
                            "' needs a group/ring/complex/category definition");
    }
  }
  const json& cl = jfield(doc, "checks", "scenario");
  if (!cl.is_array()) throw ScenarioError("scenario: checks must be a list");
  for (const json& c : cl) {
    if (!c.is_object() || !c.contains("check") || !c.at("check").is_string())
      throw ScenarioError("scenario: every check entry needs a 'check' id");
    sc.checks.push_back(c);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

json resolve_ref(const Scenario& sc, const json& ref, const std::string& kind) {
  if (ref.is_string()) {
    const std::string s = ref.get<std::string>();
    // inline string forms are never object names
    const bool inl = (kind == "group" && (s.rfind("cyclic:", 0) == 0 ||
                                          s.rfind("symmetric:", 0) == 0)) ||
                     (kind == "ring" && (s == "Z" || s == "Z[i]")) ||
                     (kind == "category" && s.rfind("path:", 0) == 0);
    if (!inl) {
      if (!sc.objects.is_object() || !sc.objects.contains(s))
        throw ScenarioError("unresolved reference: " + s);
      const json& def = sc.objects.at(s);
      if (!def.contains(kind))
        throw ScenarioError("object '" + s + "' is not a " + kind);
      return def.at(kind);
    }
  }
  return ref;
}

std::shared_ptr<const FiniteGroup> parse_group(const json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s.rfind("cyclic:", 0) == 0)
      return std::make_shared<const FiniteGroup>(cyclic_group(suffix_num(s, "cyclic:", "group")));
    if (s.rfind("symmetric:", 0) == 0)
      return std::make_shared<const FiniteGroup>(
          symmetric_group(static_cast<int>(suffix_num(s, "symmetric:", "group"))));
    throw ScenarioError("group: unknown spec '" + s + "'");
  }
  if (spec.is_object() && spec.contains("table"))
    return std::make_shared<const FiniteGroup>(table_group(jtable(spec.at("table"), "group")));
  throw ScenarioError("group: expected \"cyclic:n\", \"symmetric:n\" or {\"table\": ...}");
}

std::vector<int> parse_subgroup(const FiniteGroup& g, const json& spec) {
  std::vector<int> h = jints(spec, "subgroup");
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  for (int e : h)
    if (e < 0 || e >= g.n) throw ScenarioError("subgroup: element out of range");
  if (!is_subgroup(g, h)) throw ScenarioError("subgroup: listed elements are not a subgroup");
  return h;
}

GSet parse_gset(std::shared_ptr<const FiniteGroup> g, const json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "point") return point_gset(*g);
    if (s == "regular") return regular_gset(*g);
    throw ScenarioError("points: unknown spec '" + s + "'");
  }
  if (spec.is_object() && spec.contains("cosets")) {
    const std::vector<int> h = parse_subgroup(*g, spec.at("cosets"));
    return left_coset_gset(*g, coset_space(*g, h));
  }
  if (spec.is_object() && spec.contains("table")) {
    const auto rows = jtable(spec.at("table"), "points");
    if (static_cast<long>(rows.size()) != g->n)
      throw ScenarioError("points: table needs one row per group element");
    const long size = rows.empty() ? 0 : static_cast<long>(rows[0].size());
    std::vector<int> flat;
    for (const auto& r : rows) {
      if (static_cast<long>(r.size()) != size)
        throw ScenarioError("points: ragged table");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return table_gset(*g, size, flat);
  }
  throw ScenarioError("points: expected \"point\", \"regular\", {\"cosets\"} or {\"table\"}");
}

std::vector<std::vector<LinComb>> parse_action(const FiniteGroup& g, long rank,
                                               const json& spec) {
  auto perm_action = [&](const std::vector<std::vector<int>>& ps) {
    if (static_cast<long>(ps.size()) != g.n)
      throw ScenarioError("action: one permutation per group element required");
    std::vector<std::vector<LinComb>> out(g.n);
    for (long e = 0; e < g.n; ++e) {
      perm_of(json(ps[e]), rank, "action");
      out[e].resize(rank);
      for (long b = 0; b < rank; ++b) out[e][b] = lc_single(ps[e][b]);
    }
    return out;
  };
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "trivial") return trivial_action(g, rank);
    if (s == "sign") return sign_action(g, rank);
    if (s == "conjugation") {
      if (rank != g.n)
        throw ScenarioError("action: conjugation needs the group ring basis");
      return conjugation_action(g);
    }
    if (s == "gaussian") {
      if (rank != 2) throw ScenarioError("action: gaussian needs the basis {1, i}");
      return gaussian_conjugation(g);
    }
    if (s.rfind("perm:", 0) == 0) {
      // per-element basis permutations: "perm:0,1;1,0"
      std::vector<std::vector<int>> ps;
      std::stringstream body(s.substr(5));
      std::string one;
      while (std::getline(body, one, ';')) {
        std::vector<int> p;
        std::stringstream row(one);
        std::string cell;
        while (std::getline(row, cell, ','))
          p.push_back(static_cast<int>(suffix_num(cell, "", "action")));
        ps.push_back(std::move(p));
      }
      return perm_action(ps);
    }
    throw ScenarioError("action: unknown spec '" + s + "'");
  }
  if (spec.is_object() && spec.contains("perm"))
    return perm_action(jtable(spec.at("perm"), "action"));
  throw ScenarioError(
      "action: expected trivial/sign/conjugation/gaussian, \"perm:...\" or {\"perm\"}");
}

namespace {

BasedRing build_ring_expr(const Scenario& sc, const json& spec);

BasedRing sub_ring(const Scenario& sc, const json& j, const char* key) {
  return build_ring_expr(sc, resolve_ref(sc, jfield(j, key, "ring"), "ring"));
}

std::shared_ptr<const FiniteGroup> group_field(const Scenario& sc, const json& j,
                                               const char* key) {
  return parse_group(resolve_ref(sc, jfield(j, key, "ring"), "group"));
}

BasedRing with_action(const Scenario& sc, BasedRing r, const json& j) {
  auto g = group_field(sc, j, "group");
  json aspec = j.contains("action") ? j.at("action") : json("trivial");
  attach_action(r, g, parse_action(*g, r.rank(), aspec));
  return r;
}

BasedRing build_ring_expr(const Scenario& sc, const json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "Z") return ring_Z();
    if (s == "Z[i]") return gaussian_ring();
    throw ScenarioError("ring: unknown spec '" + s + "'");
  }
  if (!spec.is_object())
    throw ScenarioError("ring: expected \"Z\", \"Z[i]\" or an expression object");
  const json& opj = jfield(spec, "op", "ring");
  if (!opj.is_string()) throw ScenarioError("ring: 'op' must be a string");
  const std::string op = opj.get<std::string>();

  if (op == "group_ring") return group_ring(group_field(sc, spec, "group"));
  if (op == "truncated") return truncated_poly(jint(spec, "k", "ring"));
  if (op == "table") {
    std::vector<std::string> basis;
    for (const json& b : jfield(spec, "basis", "ring")) basis.push_back(b.get<std::string>());
    std::vector<std::tuple<long, long, LinComb>> cells;
    for (const json& c : jfield(spec, "cells", "ring")) {
      if (!c.is_array() || c.size() != 3)
        throw ScenarioError("ring: table cells are [i, j, value]");
      cells.emplace_back(c.at(0).get<long>(), c.at(1).get<long>(), lc_of(c.at(2), "ring"));
    }
    std::optional<LinComb> unit;
    if (spec.contains("unit")) unit = lc_of(spec.at("unit"), "ring");
    return table_ring(std::move(basis), std::move(cells), std::move(unit));
  }
  if (op == "matrix") return matrix_ring(jint(spec, "n", "ring"), sub_ring(sc, spec, "ring"));
  if (op == "unitalize") return unitalize(sub_ring(sc, spec, "ring"));
  if (op == "sum")
    return direct_sum_ring(sub_ring(sc, spec, "left"), sub_ring(sc, spec, "right"));
  if (op == "tensor")
    return tensor_ring(sub_ring(sc, spec, "left"), sub_ring(sc, spec, "right"));
  if (op == "act") return with_action(sc, sub_ring(sc, spec, "ring"), spec);
  if (op == "crossed") return crossed_product(with_action(sc, sub_ring(sc, spec, "ring"), spec));
  if (op == "groupoid") {
    auto g = group_field(sc, spec, "group");
    BasedRing r = with_action(sc, sub_ring(sc, spec, "ring"), spec);
    return groupoid_crossed(r, *g, parse_gset(g, jfield(spec, "points", "ring")));
  }
  if (op == "arrow_ring")
    return arrow_ring(parse_category(sc, resolve_ref(sc, jfield(spec, "category", "ring"),
                                                     "category")));
  if (op == "functions") {
    auto x = parse_complex(sc, resolve_ref(sc, jfield(spec, "complex", "ring"), "complex"));
    return vertex_function_ring(*x);
  }
  if (op == "induced") {
    auto g = group_field(sc, spec, "group");
    const std::vector<int> h = parse_subgroup(*g, jfield(spec, "subgroup", "ring"));
    auto base = parse_ring(sc, jfield(spec, "ring", "ring"));
    return BasedRing(*induce_ring(g, h, base).carrier);
  }
  throw ScenarioError("ring: unknown op '" + op + "'");
}

}  // namespace

std::shared_ptr<const BasedRing> parse_ring(const Scenario& sc, const json& spec) {
  return std::make_shared<const BasedRing>(
      build_ring_expr(sc, resolve_ref(sc, spec, "ring")));
}

std::shared_ptr<SimplicialComplex> parse_complex(const Scenario& sc, const json& spec) {
  const json j = resolve_ref(sc, spec, "complex");
  if (!j.is_object()) throw ScenarioError("complex: expected an object");
  const long nv = jint(j, "vertices", "complex");
  SimplicialComplex x = build_complex(nv, jtable(jfield(j, "facets", "complex"), "complex"));
  if (j.contains("action")) {
    const json& a = j.at("action");
    auto g = parse_group(resolve_ref(sc, jfield(a, "group", "complex action"), "group"));
    std::vector<std::vector<int>> gens;
    for (const json& p : jfield(a, "generators", "complex action"))
      gens.push_back(perm_of(p, nv, "complex action"));
    std::vector<int> elems;
    if (a.contains("elements"))
      elems = jints(a.at("elements"), "complex action");
    else
      for (size_t k = 1; k <= gens.size(); ++k) elems.push_back(static_cast<int>(k));
    if (elems.size() != gens.size())
      throw ScenarioError("complex action: one group element per generator");
    for (int e : elems)
      if (e < 0 || e >= g->n) throw ScenarioError("complex action: element out of range");

    // extend the generator images along words; the attach call below
    // re-validates the whole assignment, so a bad extension cannot slip by
    const auto words = generator_words(*g, elems);
    std::vector<std::vector<int>> inv_gens;
    for (const auto& p : gens) inv_gens.push_back(inverse_perm(p));
    std::vector<std::vector<int>> vact(g->n);
    for (int e = 0; e < g->n; ++e) {
      std::vector<int> p(nv);
      for (long v = 0; v < nv; ++v) p[v] = static_cast<int>(v);
      for (int letter : words[e]) {
        const std::vector<int>& q = letter >= 0 ? gens[letter] : inv_gens[~letter];
        std::vector<int> np(nv);
        for (long v = 0; v < nv; ++v) np[v] = p[q[v]];
        p = std::move(np);
      }
      vact[e] = std::move(p);
    }
    attach_complex_action(x, g, std::move(vact));
  }
  return std::make_shared<SimplicialComplex>(std::move(x));
}

LinCat parse_category(const Scenario& sc, const json& spec) {
  const json j = resolve_ref(sc, spec, "category");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("path:", 0) == 0) return path_category(suffix_num(s, "path:", "category"));
    throw ScenarioError("category: unknown spec '" + s + "'");
  }
  if (!j.is_object()) throw ScenarioError("category: expected \"path:n\" or an object");
  LinCat c;
  for (const json& o : jfield(j, "objects", "category")) c.obj_labels.push_back(o.get<std::string>());
  const long no = c.objects();
  long ai = 0;
  for (const json& a : jfield(j, "arrows", "category")) {
    const long s = jint(a, "src", "category"), t = jint(a, "tgt", "category");
    if (s < 0 || s >= no || t < 0 || t >= no)
      throw ScenarioError("category: arrow endpoint out of range");
    c.asrc.push_back(static_cast<int>(s));
    c.atgt.push_back(static_cast<int>(t));
    c.arrow_labels.push_back(a.contains("label") ? a.at("label").get<std::string>()
                                                 : "f" + std::to_string(ai));
    ++ai;
  }
  for (const json& t : jfield(j, "compose", "category")) {
    if (!t.is_array() || t.size() != 3)
      throw ScenarioError("category: compose entries are [g, f, value]");
    c.comp.emplace_back(t.at(0).get<long>(), t.at(1).get<long>(), lc_of(t.at(2), "category"));
  }
  std::sort(c.comp.begin(), c.comp.end(),
            [](const auto& a, const auto& b) {
              return std::make_pair(std::get<0>(a), std::get<1>(a)) <
                     std::make_pair(std::get<0>(b), std::get<1>(b));
            });
  for (const json& e : jfield(j, "identities", "category"))
    c.identities.push_back(lc_of(e, "category"));
  validate_lincat(c);
  return c;
}

Poly parse_poly(int nvars, const json& spec) {
  if (!spec.is_array()) throw ScenarioError("poly: expected a list of terms");
  std::vector<std::pair<std::vector<int>, Int>> terms;
  for (const json& m : spec) {
    std::vector<int> exps = jints(jfield(m, "exps", "poly"), "poly");
    if (static_cast<int>(exps.size()) != nvars)
      throw ScenarioError("poly: exponent arity must match the simplex dimension");
    terms.emplace_back(std::move(exps), int_of(jfield(m, "coef", "poly"), "poly"));
  }
  return poly_from_terms(nvars, std::move(terms));
}

PolyFun parse_polyfun(const SimplicialComplex& x, const json& spec) {
  if (!spec.is_array()) throw ScenarioError("function: expected a list of simplex entries");
  std::vector<std::pair<std::vector<int>, Poly>> entries;
  for (const json& e : spec) {
    std::vector<int> s = jints(jfield(e, "simplex", "function"), "function");
    std::sort(s.begin(), s.end());
    const int nvars = static_cast<int>(s.size()) - 1;
    entries.emplace_back(std::move(s), parse_poly(nvars, jfield(e, "poly", "function")));
  }
  try {
    return pf_from_entries(x, entries);
  } catch (const PolyError& e) {
    throw ScenarioError(std::string("function: ") + e.what());
  }
}

json hval(const FGAbelianGroup& h) {
  json t = json::array();
  for (const Int& d : h.torsion)
    t.push_back(d.fits_slong_p() ? json(d.get_si()) : json(d.get_str()));
  return json{{"rank", h.rank}, {"torsion", t}};
}

FGAbelianGroup parse_hval(const json& j) {
  FGAbelianGroup h;
  h.rank = jint(j, "rank", "expect");
  if (j.contains("torsion"))
    for (const json& d : j.at("torsion")) h.torsion.push_back(int_of(d, "expect"));
  return h;
}

}  // namespace zalg
