// Named checks the scenario runner dispatches on. Each handler builds the
// objects its statement needs, runs the library operation, and reduces the
// result to pass/fail/error with a deterministic details payload. Nothing
// here throws across the run_check boundary: library errors come back as
// status error with the message as details.

#include "zalg/checks.hpp"

#include "zalg/homology.hpp"
#include "zalg/induction.hpp"
#include "zalg/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>

namespace zalg {

namespace {

// What a check entry asserts. Verdict checks default to expecting a pass;
// value checks without an expectation just report what they computed.
struct Expect {
  enum Kind { none, want_pass, want_fail, vanish, values } kind = none;
  std::vector<FGAbelianGroup> vals;
};

Expect parse_expect(const json& entry) {
  Expect ex;
  if (!entry.contains("expect")) return ex;
  const json& e = entry["expect"];
  if (e.is_string()) {
    std::string s = e.get<std::string>();
    if (s == "pass") ex.kind = Expect::want_pass;
    else if (s == "fail") ex.kind = Expect::want_fail;
    else if (s == "vanish") ex.kind = Expect::vanish;
    else throw ScenarioError("expect: unknown keyword '" + s + "'");
    return ex;
  }
  if (e.is_array()) {
    ex.kind = Expect::values;
    for (const json& v : e) ex.vals.push_back(parse_hval(v));
    return ex;
  }
  if (e.is_object()) {
    ex.kind = Expect::values;
    ex.vals.push_back(parse_hval(e));
    return ex;
  }
  throw ScenarioError("expect: must be pass/fail/vanish or homology values");
}

json values_json(const std::vector<FGAbelianGroup>& hs) {
  json a = json::array();
  for (const auto& h : hs) a.push_back(hval(h));
  return a;
}

// Verdict checks: ok against want_pass/want_fail (default pass).
void settle_verdict(CheckOutcome& out, const Expect& ex, bool ok, json details) {
  if (ex.kind == Expect::vanish || ex.kind == Expect::values)
    throw ScenarioError(out.id + ": expectation must be pass or fail");
  bool want = ex.kind != Expect::want_fail;
  out.status = (ok == want) ? CheckStatus::pass : CheckStatus::fail;
  out.details = std::move(details);
}

// Value checks: report values, compare against the expectation if present.
// lo names the degree values[0] sits in (witness degrees stay honest).
void settle_values(CheckOutcome& out, const Expect& ex,
                   const std::vector<FGAbelianGroup>& values, long lo, json details) {
  details["values"] = values_json(values);
  if (ex.kind == Expect::want_pass || ex.kind == Expect::want_fail)
    throw ScenarioError(out.id + ": expectation must be homology values or vanish");
  if (ex.kind == Expect::vanish) {
    for (size_t n = 0; n < values.size(); ++n)
      if (!values[n].is_zero()) {
        details["witness"] = {{"degree", lo + static_cast<long>(n)}, {"got", hval(values[n])}};
        out.status = CheckStatus::fail;
        out.details = std::move(details);
        return;
      }
  } else if (ex.kind == Expect::values) {
    if (ex.vals.size() != values.size()) {
      details["witness"] = {{"expected_count", ex.vals.size()}, {"got_count", values.size()}};
      out.status = CheckStatus::fail;
      out.details = std::move(details);
      return;
    }
    for (size_t n = 0; n < values.size(); ++n)
      if (!(values[n] == ex.vals[n])) {
        details["witness"] = {{"degree", lo + static_cast<long>(n)},
                              {"got", hval(values[n])},
                              {"want", hval(ex.vals[n])}};
        out.status = CheckStatus::fail;
        out.details = std::move(details);
        return;
      }
  }
  out.status = CheckStatus::pass;
  out.details = std::move(details);
}

std::vector<FGAbelianGroup> range_values(const ChainComplexZ& c, long lo, long hi) {
  auto m = homology_range(c, lo, hi);
  std::vector<FGAbelianGroup> v;
  for (long n = lo; n <= hi; ++n) v.push_back(m.at(n));
  return v;
}

// The ring argument of a check, carrying an action of k. An explicit
// "action" argument (or a ring with no action yet) attaches one; a ring
// that already acts must act through a group of the right order.
std::shared_ptr<const BasedRing> ring_for(const Scenario& sc, const json& entry,
                                          std::shared_ptr<const FiniteGroup> k,
                                          const char* who) {
  json spec = entry.contains("ring") ? entry["ring"] : json("Z");
  auto r = parse_ring(sc, resolve_ref(sc, spec, "ring"));
  if (entry.contains("action") || !r->acting_group) {
    BasedRing b = *r;
    json aspec = entry.contains("action") ? entry["action"] : json("trivial");
    attach_action(b, k, parse_action(*k, b.rank(), aspec));
    return std::make_shared<const BasedRing>(std::move(b));
  }
  if (r->acting_group->n != k->n)
    throw ScenarioError(std::string(who) + ": ring acts through a group of order " +
                        std::to_string(r->acting_group->n) + ", expected " +
                        std::to_string(k->n));
  return r;
}

std::shared_ptr<const FiniteGroup> group_arg(const Scenario& sc, const json& entry,
                                             const char* who) {
  return parse_group(resolve_ref(sc, jfield(entry, "group", who), "group"));
}

std::vector<int> subgroup_arg(const FiniteGroup& g, const json& entry, const char* key,
                              const char* who) {
  return parse_subgroup(g, jfield(entry, key, who));
}

std::vector<int> section_arg(const json& entry) {
  if (!entry.contains("section")) return {};
  return jints(entry["section"], "section");
}

long top_arg(const json& entry, long top) {
  if (!entry.contains("top")) return top;
  long t = jint(entry, "top", "check");
  if (t < 0 || t > kMaxTruncation) throw ScenarioError("top: out of range 0..6");
  return t;
}

// The G-simplicial set a reilu comparison runs over: "point", "free"
// (|G| vertices, left translation), or a named complex with an action.
std::shared_ptr<SimplicialComplex> space_arg(const Scenario& sc, const json& entry,
                                             std::shared_ptr<const FiniteGroup> g) {
  const json& s = jfield(entry, "space", "reilu");
  if (s.is_string() && s.get<std::string>() == "point") {
    auto x = std::make_shared<SimplicialComplex>(build_complex(1, {{0}}));
    attach_complex_action(*x, g, std::vector<std::vector<int>>(g->n, {0}));
    return x;
  }
  if (s.is_string() && s.get<std::string>() == "free") {
    std::vector<std::vector<int>> fac, act;
    for (int v = 0; v < g->n; ++v) fac.push_back({v});
    for (int e = 0; e < g->n; ++e) {
      std::vector<int> row(g->n);
      for (int v = 0; v < g->n; ++v) row[v] = g->mul(e, v);
      act.push_back(std::move(row));
    }
    auto x = std::make_shared<SimplicialComplex>(build_complex(g->n, fac));
    attach_complex_action(*x, g, act);
    return x;
  }
  auto x = parse_complex(sc, resolve_ref(sc, s, "complex"));
  if (!x->group) throw ScenarioError("space: the complex carries no group action");
  if (x->group->n != g->n)
    throw ScenarioError("space: the complex action group has the wrong order");
  return x;
}

// Barycentric coordinate of vertex v as a global polynomial function.
PolyFun coordinate_function(const SimplicialComplex& x, int v) {
  PolyFun f = pf_zero(x);
  for (long s = 0; s < static_cast<long>(x.simp.size()); ++s) {
    const auto& sv = x.simp[s];
    auto it = std::find(sv.begin(), sv.end(), v);
    if (it == sv.end()) continue;
    int m = static_cast<int>(sv.size()) - 1;
    int pos = static_cast<int>(it - sv.begin());
    if (pos < m) {
      f.val[s] = poly_var(m, pos);
    } else if (m == 0) {
      f.val[s] = poly_const(0, 1);
    } else {
      Poly p = poly_const(m, 1);
      for (int j = 0; j < m; ++j) p = poly_sub(p, poly_var(m, j));
      f.val[s] = p;
    }
  }
  return f;
}

long simplex_id(const SimplicialComplex& x, std::vector<int> sv, const char* who) {
  std::sort(sv.begin(), sv.end());
  if (!x.has(sv)) throw ScenarioError(std::string(who) + ": simplex not in the complex");
  return x.id_of(sv);
}

// --- iso family -------------------------------------------------------------

CheckOutcome check_iso(const Scenario& sc, const json& entry, const std::string& name,
                       const Expect& ex, CheckOutcome out) {
  auto g = group_arg(sc, entry, name.c_str());
  std::vector<int> section = section_arg(entry);
  IsoReport rep;
  if (name == "mxg") {
    auto r = ring_for(sc, entry, g, name.c_str());
    GSet x = parse_gset(g, jfield(entry, "gset", "mxg"));
    rep = iso_mxg(g, r, x);
  } else if (name == "indx") {
    std::vector<int> H = subgroup_arg(*g, entry, "subgroup", name.c_str());
    auto hs = std::make_shared<const FiniteGroup>(subgroup_group(*g, H));
    long nv = jint(entry, "vertices", "indx");
    if (nv < 1) throw ScenarioError("indx: vertices must be positive");
    std::vector<std::vector<int>> fac;
    for (long v = 0; v < nv; ++v) fac.push_back({static_cast<int>(v)});
    SimplicialComplex x = build_complex(nv, fac);
    attach_complex_action(x, hs, jtable(jfield(entry, "haction", "indx"), "indx"));
    rep = iso_indx(g, H, x);
  } else if (name == "indxtheta") {
    std::vector<int> H = subgroup_arg(*g, entry, "subgroup", name.c_str());
    std::vector<int> K = subgroup_arg(*g, entry, "subgroup2", name.c_str());
    auto ks = std::make_shared<const FiniteGroup>(subgroup_group(*g, K));
    auto r = ring_for(sc, entry, ks, name.c_str());
    DoubleCosets dc = double_cosets(*g, H, K);
    long cls = entry.contains("class") ? jint(entry, "class", "indxtheta") : 0;
    if (cls < 0 || cls >= static_cast<long>(dc.theta.size()))
      throw ScenarioError("indxtheta: class index out of range");
    rep = iso_indxtheta(g, H, K, r, dc, cls);
  } else {
    std::vector<int> H = subgroup_arg(*g, entry, "subgroup", name.c_str());
    if (name == "across") {
      rep = iso_across(g, H, ring_for(sc, entry, g, name.c_str()), section);
    } else if (name == "green") {
      auto hs = std::make_shared<const FiniteGroup>(subgroup_group(*g, H));
      rep = iso_green(g, H, ring_for(sc, entry, hs, name.c_str()), section);
    } else if (name == "indtriv") {
      rep = iso_indtriv(g, H, ring_for(sc, entry, g, name.c_str()), section);
    } else if (name == "indcomp_i") {
      auto hs = std::make_shared<const FiniteGroup>(subgroup_group(*g, H));
      rep = iso_indcomp_i(g, H, ring_for(sc, entry, hs, name.c_str()), section);
    } else if (name == "indcomp_ii") {
      auto hs = std::make_shared<const FiniteGroup>(subgroup_group(*g, H));
      InducedRing ind = induce_ring(g, H, ring_for(sc, entry, hs, name.c_str()), section);
      ProperOverCosets po = induced_proper(ind);
      rep = iso_indcomp_ii(g, H, ind.carrier, po.ps, section);
    } else {
      throw ScenarioError("unknown check id: iso:" + name);
    }
  }
  settle_verdict(out, ex, rep.pass(), json(rep.detail()));
  return out;
}

// --- handlers ---------------------------------------------------------------

CheckOutcome check_res_ind(const Scenario& sc, const json& entry, const Expect& ex,
                           CheckOutcome out) {
  auto g = group_arg(sc, entry, "res-ind");
  std::vector<int> H = subgroup_arg(*g, entry, "subgroup", "res-ind");
  std::vector<int> K = subgroup_arg(*g, entry, "subgroup2", "res-ind");
  auto ks = std::make_shared<const FiniteGroup>(subgroup_group(*g, K));
  auto r = ring_for(sc, entry, ks, "res-ind");
  ResIndDecomposition d = decompose_res_ind(g, H, K, r);
  json det = {{"classes", d.dc.theta.size()}, {"ranks", d.ranks}, {"note", d.detail}};
  settle_verdict(out, ex, d.pass, std::move(det));
  return out;
}

CheckOutcome check_reilu(const Scenario& sc, const json& entry, long top, const Expect& ex,
                         CheckOutcome out) {
  auto g = group_arg(sc, entry, "reilu");
  auto x = space_arg(sc, entry, g);
  auto r = ring_for(sc, entry, g, "reilu");
  std::vector<int> reps;
  if (entry.contains("representatives")) reps = jints(entry["representatives"], "reilu");
  ReiluReport rep = verify_reilu(g, *x, r, top, reps);
  json det = {{"N", top},
              {"reps", rep.reps},
              {"lhs", values_json(rep.lhs)},
              {"rhs", values_json(rep.rhs)},
              {"alpha_pairs", rep.alpha_pairs},
              {"note", rep.detail}};
  if (ex.kind == Expect::values) {
    bool ok = rep.pass() && rep.lhs.size() == ex.vals.size();
    if (ok)
      for (size_t n = 0; n < ex.vals.size(); ++n)
        if (!(rep.lhs[n] == ex.vals[n])) { ok = false; break; }
    if (!ok) det["want"] = values_json(ex.vals);
    out.status = ok ? CheckStatus::pass : CheckStatus::fail;
    out.details = std::move(det);
    return out;
  }
  settle_verdict(out, ex, rep.pass(), std::move(det));
  return out;
}

CheckOutcome check_yoneda(const Scenario& sc, const json& entry, long top, const Expect& ex,
                          CheckOutcome out) {
  auto g = group_arg(sc, entry, "yoneda");
  auto r = ring_for(sc, entry, g, "yoneda");
  json per = json::array();
  bool ok = true;
  json witness;
  for (const auto& H : all_subgroups(*g)) {
    CosetSpace cs = coset_space(*g, H);
    auto x = coset_complex(g, cs);
    CoendResult lhs = equivariant_coend(g, *x, r, top);
    BasedRing gc = groupoid_crossed(*r, *g, left_coset_gset(*g, cs));
    HochschildComplex hc =
        hochschild_nerve(std::make_shared<const BasedRing>(std::move(gc)), top + 1);
    std::vector<FGAbelianGroup> rhs = range_values(hc.c, 0, top);
    per.push_back({{"H", H}, {"h", values_json(lhs.h)}});
    for (long n = 0; n <= top && ok; ++n)
      if (!(lhs.h[n] == rhs[n])) {
        ok = false;
        witness = {{"H", H}, {"degree", n}, {"coend", hval(lhs.h[n])}, {"nerve", hval(rhs[n])}};
      }
    if (!ok) break;
  }
  json det = {{"N", top}, {"subgroups", per}};
  if (!ok) det["witness"] = witness;
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_homology(const Scenario& sc, const json& entry, const Expect& ex,
                            CheckOutcome out) {
  auto x = parse_complex(sc, resolve_ref(sc, jfield(entry, "complex", "homology"), "complex"));
  long lo = entry.contains("lo") ? jint(entry, "lo", "homology") : 0;
  long hi = entry.contains("hi") ? jint(entry, "hi", "homology") : x->top_dim();
  if (lo > hi) throw ScenarioError("homology: lo exceeds hi");
  std::vector<FGAbelianGroup> values = range_values(chains(*x), lo, hi);
  settle_values(out, ex, values, lo, json{{"lo", lo}, {"hi", hi}});
  return out;
}

CheckOutcome check_hochschild(const Scenario& sc, const json& entry, long top,
                              const Expect& ex, CheckOutcome out) {
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "hochschild"), "ring"));
  HochschildComplex hc;
  if (entry.contains("twist")) {
    long tw = jint(entry, "twist", "hochschild");
    if (!r->acting_group) throw ScenarioError("hochschild: twist needs a ring with an action");
    if (tw < 0 || tw >= r->acting_group->n)
      throw ScenarioError("hochschild: twist element out of range");
    hc = hochschild_twisted(r, static_cast<int>(tw), top + 1);
  } else {
    hc = hochschild_complex(r, top + 1);
  }
  settle_values(out, ex, range_values(hc.c, 0, top), 0, json{{"N", top}});
  return out;
}

CheckOutcome check_nerve(const Scenario& sc, const json& entry, long top, const Expect& ex,
                         CheckOutcome out) {
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "nerve"), "ring"));
  HochschildComplex hc = hochschild_nerve(r, top + 1);
  settle_values(out, ex, range_values(hc.c, 0, top), 0, json{{"N", top}});
  return out;
}

CheckOutcome check_cyclic(const Scenario& sc, const json& entry, long top, const Expect& ex,
                          CheckOutcome out) {
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "cyclic"), "ring"));
  std::vector<FGAbelianGroup> values;
  for (long n = 0; n <= top; ++n) values.push_back(cyclic_hc(r, n));
  settle_values(out, ex, values, 0, json{{"N", top}});
  return out;
}

CheckOutcome check_hyperhomology(const Scenario& sc, const json& entry, long top,
                                 const Expect& ex, CheckOutcome out) {
  auto g = group_arg(sc, entry, "hyperhomology");
  FGAbelianGroup m{1, {}};
  if (entry.contains("module")) m = parse_hval(entry["module"]);
  long t = static_cast<long>(m.torsion.size());
  EquivariantComplex ec;
  ec.k = g;
  ec.c.set_dim(0, m.rank + t);
  ec.act[0] = std::vector<DenseMat>(g->n, DenseMat::identity(m.rank + t));
  if (t > 0) {
    DenseMat d(m.rank + t, t);
    for (long j = 0; j < t; ++j) d.at(m.rank + j, j) = m.torsion[j];
    ec.c.set_boundary(1, SparseMat::from_dense(d));
    ec.act[1] = std::vector<DenseMat>(g->n, DenseMat::identity(t));
  }
  ec.validate();
  settle_values(out, ex, group_hyperhomology(ec, top), 0,
                json{{"N", top}, {"module", hval(m)}});
  return out;
}

CheckOutcome check_decomp(const Scenario& sc, const json& entry, long top, const Expect& ex,
                          CheckOutcome out) {
  auto g = group_arg(sc, entry, "decomp");
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "decomp"), "ring"));
  std::vector<int> gof;
  if (entry.contains("group_of")) {
    gof = jints(entry["group_of"], "decomp");
    if (static_cast<long>(gof.size()) != r->rank())
      throw ScenarioError("decomp: group_of must cover the ring basis");
  } else if (r->rank() == g->n) {
    gof.resize(r->rank());
    std::iota(gof.begin(), gof.end(), 0);
  } else if (r->rank() % g->n == 0) {
    gof.resize(r->rank());
    for (long b = 0; b < r->rank(); ++b) gof[b] = static_cast<int>(b % g->n);
  } else {
    throw ScenarioError("decomp: cannot infer group components; pass group_of");
  }
  HochschildComplex hc = hochschild_complex(r, top);
  ConjugacyParts parts = split_conjugacy(hc, *g, gof);
  json det = {{"N", top},
              {"classes", parts.classes},
              {"ranks", parts.ranks},
              {"note", parts.detail}};
  settle_verdict(out, ex, parts.pass(), std::move(det));
  return out;
}

CheckOutcome check_bar(const Scenario& sc, const json& entry, long top, const Expect& ex,
                       CheckOutcome out) {
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "bar"), "ring"));
  FGAbelianGroup m{1, {}};
  if (entry.contains("module")) m = parse_hval(entry["module"]);
  BarProbe probe = bar_tor_probe(*r, m, top);
  settle_values(out, ex, probe.h, 0,
                json{{"N", top}, {"module", hval(m)}, {"vanishes", probe.vanishes}});
  return out;
}

CheckOutcome check_barsum(const Scenario& sc, const json& entry, long top, const Expect& ex,
                          CheckOutcome out) {
  const json& list = jfield(entry, "rings", "barsum");
  if (!list.is_array() || list.empty())
    throw ScenarioError("barsum: rings must be a nonempty list");
  std::vector<std::shared_ptr<const BasedRing>> rs;
  for (const json& spec : list) rs.push_back(parse_ring(sc, resolve_ref(sc, spec, "ring")));
  FGAbelianGroup m{1, {}};
  std::vector<bool> single;
  for (const auto& r : rs) single.push_back(bar_tor_probe(*r, m, top).vanishes);
  bool ok = true;
  json witness;
  for (size_t i = 0; i < rs.size() && ok; ++i)
    for (size_t j = 0; j < rs.size() && ok; ++j) {
      bool sum = bar_tor_probe(direct_sum_ring(*rs[i], *rs[j]), m, top).vanishes;
      if (sum != (single[i] && single[j])) {
        ok = false;
        witness = {{"i", i}, {"j", j}, {"sum_vanishes", sum},
                   {"left", static_cast<bool>(single[i])},
                   {"right", static_cast<bool>(single[j])}};
      }
    }
  json det = {{"N", top}, {"vanishing", single}};
  if (!ok) det["witness"] = witness;
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_extend(const Scenario& sc, const json& entry, const Expect& ex,
                          CheckOutcome out) {
  auto x = parse_complex(sc, resolve_ref(sc, jfield(entry, "complex", "extend"), "complex"));
  std::vector<long> seeds;
  for (const json& svj : jfield(entry, "sub", "extend"))
    seeds.push_back(simplex_id(*x, jints(svj, "extend"), "extend"));
  std::vector<long> yids = generated(*x, seeds);
  PolyFun phi = pf_zero(*x);
  for (const json& e : jfield(entry, "phi", "extend")) {
    long id = simplex_id(*x, jints(jfield(e, "simplex", "extend"), "extend"), "extend");
    if (!std::binary_search(yids.begin(), yids.end(), id))
      throw ScenarioError("extend: phi entry outside the subcomplex");
    int m = static_cast<int>(x->simp[id].size()) - 1;
    phi.val[id] = parse_poly(m, jfield(e, "poly", "extend"));
  }
  // propagate down inside Y so phi is an honest function on the subcomplex
  std::vector<long> by_dim = yids;
  std::sort(by_dim.begin(), by_dim.end(), [&](long a, long b) {
    return x->simp[a].size() > x->simp[b].size();
  });
  for (long id : by_dim) {
    const auto& sv = x->simp[id];
    int m = static_cast<int>(sv.size()) - 1;
    if (m == 0) continue;
    for (int k = 0; k <= m; ++k) {
      std::vector<int> face = sv;
      face.erase(face.begin() + k);
      long fid = x->id_of(face);
      Poly want = face_restrict(phi.val[id], m, k);
      if (phi.val[fid].is_zero()) phi.val[fid] = want;
      else if (!(phi.val[fid] == want))
        throw ScenarioError("extend: phi is not face-compatible on the subcomplex");
    }
  }
  PolyFun psi = extend(phi, yids);
  bool ok = true;
  json witness;
  for (long id : yids)
    if (!(psi.val[id] == phi.val[id])) {
      ok = false;
      witness = {{"simplex", x->simp[id]}, {"note", "restriction mismatch"}};
      break;
    }
  json det = {{"Y", yids.size()}, {"support", support(psi).size()}};
  if (!ok) det["witness"] = witness;
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_extend_roundtrip(const json& entry, const Expect& ex, Rng rng,
                                    CheckOutcome out) {
  long count = entry.contains("count") ? jint(entry, "count", "extend-roundtrip") : 25;
  long degree = entry.contains("degree") ? jint(entry, "degree", "extend-roundtrip") : 3;
  if (count < 1 || count > 100000) throw ScenarioError("extend-roundtrip: count out of range");
  if (degree < 1 || degree > 3) throw ScenarioError("extend-roundtrip: degree out of range 1..3");
  bool ok = true;
  json witness;
  for (long inst = 0; inst < count && ok; ++inst) {
    Rng r = rng.fork(static_cast<std::uint64_t>(inst) + 1);
    long nv = r.uniform(2, 8);
    std::vector<std::vector<int>> fac;
    long nfac = r.uniform(1, 6);
    for (long f = 0; f < nfac; ++f) {
      long d = r.uniform(0, std::min<long>(3, nv - 1));
      std::vector<int> idx(nv);
      std::iota(idx.begin(), idx.end(), 0);
      for (long j = 0; j <= d; ++j)
        std::swap(idx[j], idx[r.uniform(j, nv - 1)]);
      std::vector<int> s(idx.begin(), idx.begin() + d + 1);
      std::sort(s.begin(), s.end());
      fac.push_back(std::move(s));
    }
    SimplicialComplex x = build_complex(nv, fac);
    long nsimp = static_cast<long>(x.simp.size());
    std::vector<long> seeds;
    long k = r.uniform(1, std::max<long>(1, nsimp / 2));
    for (long j = 0; j < k; ++j) seeds.push_back(r.uniform(0, nsimp - 1));
    std::vector<long> yids = generated(x, seeds);

    // random global function as a Z-combination of coordinate products,
    // restricted to Y; face-compatible on Y by construction
    PolyFun rho = pf_zero(x);
    long terms = r.uniform(1, 3);
    for (long t = 0; t < terms; ++t) {
      PolyFun prod = pf_const(x, 1);
      long factors = r.uniform(1, degree);
      for (long f = 0; f < factors; ++f)
        prod = pf_mul(prod, coordinate_function(x, static_cast<int>(r.uniform(0, nv - 1))));
      Int c(r.uniform(1, 3) * (r.coin() ? 1 : -1));
      rho = pf_add(rho, pf_scale(prod, c));
    }
    validate_polyfun(rho);
    PolyFun phi = pf_zero(x);
    for (long id : yids) phi.val[id] = rho.val[id];
    try {
      PolyFun psi = extend(phi, yids);
      for (long id : yids)
        if (!(psi.val[id] == phi.val[id])) {
          ok = false;
          witness = {{"instance", inst}, {"simplex", x.simp[id]},
                     {"note", "restriction mismatch"}};
          break;
        }
    } catch (const PolyError& e) {
      ok = false;
      witness = {{"instance", inst}, {"error", e.what()}};
    }
  }
  json det = {{"count", count}, {"degree", degree}};
  if (!ok) det["witness"] = witness;
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_sunit(const Scenario& sc, const json& entry, const Expect& ex,
                         CheckOutcome out) {
  auto x = parse_complex(sc, resolve_ref(sc, jfield(entry, "complex", "sunit"), "complex"));
  std::vector<PolyFun> elems;
  for (const json& e : jfield(entry, "elems", "sunit"))
    elems.push_back(parse_polyfun(*x, e));
  try {
    PolyFun mu = s_unit_witness(*x, elems);
    settle_verdict(out, ex, true,
                   json{{"elems", elems.size()}, {"support", support(mu).size()}});
  } catch (const PolyError& e) {
    settle_verdict(out, ex, false, json{{"witness", e.what()}});
  }
  return out;
}

CheckOutcome check_separate(const Scenario& sc, const json& entry, const Expect& ex,
                            CheckOutcome out) {
  auto x = parse_complex(sc, resolve_ref(sc, jfield(entry, "complex", "separate"), "complex"));
  long sigma = simplex_id(*x, jints(jfield(entry, "simplex", "separate"), "separate"),
                          "separate");
  PolyFun f = separating_function(*x, sigma);
  std::vector<long> sup = support(f);
  std::vector<long> cst = closed_star(*x, {sigma});
  bool ok = std::includes(cst.begin(), cst.end(), sup.begin(), sup.end());
  json det = {{"support", sup.size()}, {"closed_star", cst.size()}};
  if (!ok) det["witness"] = "support leaves the closed star";
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_cone_homotopy(const Scenario& sc, const json& entry, const Expect& ex,
                                 CheckOutcome out) {
  LinCat c = parse_category(sc, resolve_ref(sc, jfield(entry, "category", "cone-homotopy"),
                                            "category"));
  HomotopyReport rep = verify_cone_homotopy(c);
  settle_verdict(out, ex, rep.pass, json(rep.detail));
  return out;
}

CheckOutcome check_confluence(const Scenario& sc, const json& entry, const Expect& ex,
                              Rng rng, CheckOutcome out) {
  LinCat c = parse_category(sc, resolve_ref(sc, jfield(entry, "category", "confluence"),
                                            "category"));
  long count = entry.contains("count") ? jint(entry, "count", "confluence") : 50;
  long len = entry.contains("len") ? jint(entry, "len", "confluence") : 3;
  if (count < 1 || count > 100000) throw ScenarioError("confluence: count out of range");
  if (len < 1 || len > 6) throw ScenarioError("confluence: len out of range 1..6");
  long na = c.arrows();
  if (na == 0) throw ScenarioError("confluence: the category has no arrows");
  auto word = [&](Rng& r) {
    Word w;
    long l = r.uniform(1, len);
    for (long j = 0; j < l; ++j) w.push_back(r.uniform(0, na - 1));
    return cone_from_word(c, w, Int(r.uniform(1, 2) * (r.coin() ? 1 : -1)));
  };
  bool ok = true;
  json witness;
  for (long inst = 0; inst < count && ok; ++inst) {
    Rng r = rng.fork(static_cast<std::uint64_t>(inst) + 1);
    ConeElem u = word(r), v = word(r), w = word(r);
    std::string l1 = cone_to_string(c, cone_mul(c, cone_mul(c, u, v), w));
    std::string r1 = cone_to_string(c, cone_mul(c, u, cone_mul(c, v, w)));
    if (l1 != r1) {
      ok = false;
      witness = {{"instance", inst}, {"law", "associativity"}, {"lhs", l1}, {"rhs", r1}};
      break;
    }
    std::string l2 = cone_to_string(c, cone_mul(c, cone_add(u, v), w));
    std::string r2 = cone_to_string(c, cone_add(cone_mul(c, u, w), cone_mul(c, v, w)));
    if (l2 != r2) {
      ok = false;
      witness = {{"instance", inst}, {"law", "distributivity"}, {"lhs", l2}, {"rhs", r2}};
    }
  }
  json det = {{"count", count}, {"len", len}};
  if (!ok) det["witness"] = witness;
  settle_verdict(out, ex, ok, std::move(det));
  return out;
}

CheckOutcome check_ladder(const Scenario& sc, const json& entry, const Expect& ex,
                          CheckOutcome out) {
  auto r = parse_ring(sc, resolve_ref(sc, jfield(entry, "ring", "ladder"), "ring"));
  long n = jint(entry, "n", "ladder");
  FGAbelianGroup v = l_ladder(*r, n);
  settle_values(out, ex, {v}, n, json{{"n", n}, {"rank", v.rank}});
  return out;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "error";
  }
}

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"iso:across", "group, subgroup, ring[, action][, section][, expect]",
       "Lemma across=cross"},
      {"iso:green", "group, subgroup, ring[, action][, section][, expect]", "Theorem git"},
      {"iso:mxg", "group, ring[, action], gset[, expect]", "Lemma mxg"},
      {"iso:indtriv", "group, subgroup, ring[, action][, section][, expect]",
       "Lemma indtriv"},
      {"iso:indcomp_i", "group, subgroup, ring[, action][, section][, expect]",
       "Prop indcomp"},
      {"iso:indcomp_ii", "group, subgroup, ring[, action][, section][, expect]",
       "Prop indcomp"},
      {"iso:indx", "group, subgroup, vertices, haction[, expect]", "Lemma indx"},
      {"iso:indxtheta", "group, subgroup, subgroup2, ring[, action][, class][, expect]",
       "Lemma indxtheta"},
      {"res-ind", "group, subgroup, subgroup2, ring[, action][, expect]", "eq. decompx"},
      {"reilu", "group, space, ring[, action][, top][, representatives][, expect]",
       "Prop reilu"},
      {"yoneda", "group[, ring][, action][, top][, expect]",
       "\"is just E_* evaluated at the crossed product\""},
      {"homology", "complex[, lo][, hi][, expect]", "Para equihom"},
      {"hochschild", "ring[, top][, twist][, expect]", "Example cc"},
      {"nerve", "ring[, top][, expect]", "Remark mismofi"},
      {"cyclic", "ring[, top][, expect]", "Example cc"},
      {"hyperhomology", "group[, module][, top][, expect]", "Prop reilu"},
      {"decomp", "group, ring[, group_of][, top][, expect]", "eq. decomp"},
      {"bar", "ring[, module][, top][, expect]", "Lemma barflatres"},
      {"barsum", "rings[, top][, expect]", "Prop barsum"},
      {"extend", "complex, sub, phi[, expect]", "Theorem supp"},
      {"extend-roundtrip", "[count][, degree][, expect]", "Theorem supp"},
      {"sunit", "complex, elems[, expect]", "Prop tfp"},
      {"separate", "complex, simplex[, expect]", "Prop axseparate"},
      {"cone-homotopy", "category[, expect]", "Lemma eac=ebc"},
      {"confluence", "category[, count][, len][, expect]", "Lemma eac=ebc"},
      {"ladder", "ring, n[, expect]", "Lemma freetenso"},
  };
  return catalog;
}

CheckOutcome run_check(const Scenario& sc, const json& entry, int index, int top,
                       std::uint64_t seed) {
  CheckOutcome out;
  std::string id;
  auto t0 = std::chrono::steady_clock::now();
  try {
    id = jfield(entry, "check", "check").get<std::string>();
    std::string name;
    if (id == "iso") {
      name = jfield(entry, "name", "iso").get<std::string>();
      id = "iso:" + name;
    } else if (id.rfind("iso:", 0) == 0) {
      name = id.substr(4);
    }
    out.id = id;
    Expect ex = parse_expect(entry);
    long etop = top_arg(entry, top);
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(index) + 1)));
    if (!name.empty()) {
      out = check_iso(sc, entry, name, ex, std::move(out));
    } else if (id == "res-ind") {
      out = check_res_ind(sc, entry, ex, std::move(out));
    } else if (id == "reilu") {
      out = check_reilu(sc, entry, etop, ex, std::move(out));
    } else if (id == "yoneda") {
      out = check_yoneda(sc, entry, etop, ex, std::move(out));
    } else if (id == "homology") {
      out = check_homology(sc, entry, ex, std::move(out));
    } else if (id == "hochschild") {
      out = check_hochschild(sc, entry, etop, ex, std::move(out));
    } else if (id == "nerve") {
      out = check_nerve(sc, entry, etop, ex, std::move(out));
    } else if (id == "cyclic") {
      out = check_cyclic(sc, entry, etop, ex, std::move(out));
    } else if (id == "hyperhomology") {
      out = check_hyperhomology(sc, entry, etop, ex, std::move(out));
    } else if (id == "decomp") {
      out = check_decomp(sc, entry, etop, ex, std::move(out));
    } else if (id == "bar") {
      out = check_bar(sc, entry, etop, ex, std::move(out));
    } else if (id == "barsum") {
      out = check_barsum(sc, entry, etop, ex, std::move(out));
    } else if (id == "extend") {
      out = check_extend(sc, entry, ex, std::move(out));
    } else if (id == "extend-roundtrip") {
      out = check_extend_roundtrip(entry, ex, rng, std::move(out));
    } else if (id == "sunit") {
      out = check_sunit(sc, entry, ex, std::move(out));
    } else if (id == "separate") {
      out = check_separate(sc, entry, ex, std::move(out));
    } else if (id == "cone-homotopy") {
      out = check_cone_homotopy(sc, entry, ex, std::move(out));
    } else if (id == "confluence") {
      out = check_confluence(sc, entry, ex, rng, std::move(out));
    } else if (id == "ladder") {
      out = check_ladder(sc, entry, ex, std::move(out));
    } else {
      throw ScenarioError("unknown check id: " + id);
    }
  } catch (const std::exception& e) {
    out.id = id;  // the handler may have consumed the outcome before throwing
    out.status = CheckStatus::error;
    out.details = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  out.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return out;
}

}  // namespace zalg
