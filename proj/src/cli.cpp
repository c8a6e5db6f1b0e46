#include "ualoc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ualoc/closure.hpp"
#include "ualoc/congruence.hpp"
#include "ualoc/corpus.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/hom.hpp"
#include "ualoc/io.hpp"
#include "ualoc/isomorphism.hpp"
#include "ualoc/localization.hpp"
#include "ualoc/structure.hpp"
#include "ualoc/unary_clone.hpp"

namespace ualoc {

namespace {

using nlohmann::json;

// Owns algebras parsed from files so references stay valid for the command.
struct Store {
  std::vector<std::unique_ptr<FiniteAlgebra>> owned;

  const FiniteAlgebra& resolve(const std::string& selector) {
    if (selector.rfind("builtin:", 0) == 0) return builtin_algebra(selector.substr(8));
    std::string path = selector;
    std::string name;
    const auto colon = selector.rfind(':');
    if (colon != std::string::npos) {
      path = selector.substr(0, colon);
      name = selector.substr(colon + 1);
    }
    std::ifstream in(path);
    if (!in) {
      // maybe the whole selector is a path containing ':'
      in.open(selector);
      if (!in) throw precondition_error("cannot open algebra file '" + path + "'");
      path = selector;
      name.clear();
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::vector<FiniteAlgebra> parsed = parse_algebras(buffer.str());
    if (parsed.empty()) throw precondition_error("file '" + path + "' contains no algebras");
    if (name.empty()) {
      if (parsed.size() > 1)
        throw precondition_error("file '" + path + "' contains " +
                                 std::to_string(parsed.size()) +
                                 " algebras; use FILE:NAME to pick one");
      owned.push_back(std::make_unique<FiniteAlgebra>(std::move(parsed[0])));
      return *owned.back();
    }
    for (auto& a : parsed)
      if (a.name == name) {
        owned.push_back(std::make_unique<FiniteAlgebra>(std::move(a)));
        return *owned.back();
      }
    throw precondition_error("no algebra named '" + name + "' in '" + path + "'");
  }
};

struct Ctx {
  Store store;
  Limits limits;
  const std::string* format = nullptr;
  std::string lemma21_domain = "intersect";
  std::ostream* out = nullptr;
  int exit_code = 0;

  bool json_output() const { return format && *format == "json"; }
};

std::string map_to_string(std::span<const int> map) {
  std::string s = "[";
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(map[i]);
  }
  s += ']';
  return s;
}

json map_to_json(std::span<const int> map) { return json(std::vector<int>(map.begin(), map.end())); }

json unary_to_json(const UnaryTermMap& m) {
  return json{{"map", map_to_json(m.map)},
              {"witness", to_string(m.witness)},
              {"constant", m.is_constant}};
}

void emit(Ctx& c, const json& j, const std::string& text) {
  if (c.json_output())
    *c.out << j.dump(2) << "\n";
  else
    *c.out << text;
}

Neighborhood select_neighborhood(Ctx& c, const FiniteAlgebra& a, const std::string& e_flag) {
  if (e_flag.empty()) return chosen_neighborhood(a, c.limits);
  std::vector<int> map;
  std::stringstream ss(e_flag);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) map.push_back(std::stoi(tok));
  if (static_cast<int>(map.size()) != a.size)
    throw precondition_error("--e expects " + std::to_string(a.size) +
                             " comma-separated values for '" + a.name + "'");
  const UnaryMonoid monoid = unary_term_monoid(a, c.limits);
  const UnaryTermMap* found = monoid.find(map);
  if (!found)
    throw precondition_error("--e " + e_flag + " is not a unary term operation of '" + a.name +
                             "'");
  return make_neighborhood(a, *found);
}

Lemma21Domain domain_of(const Ctx& c) {
  return c.lemma21_domain == "require-containment" ? Lemma21Domain::require_containment
                                                   : Lemma21Domain::intersect;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return 0;
    case Verdict::no:
      return 1;
    default:
      return 3;
  }
}

json stats_json(const SearchStats& s) {
  return json{{"nodes", s.nodes}, {"candidates", s.candidates}};
}

json iso_to_json(const IsoReport& r) {
  json j{{"verdict", std::string(to_string(r.isomorphic))},
         {"method", r.method == IsoMethod::brute ? "brute" : "localized"},
         {"stats", stats_json(r.stats)}};
  if (r.witness) j["witness"] = map_to_json(r.witness->map);
  if (!r.fallback_reason.empty()) j["fallback_reason"] = r.fallback_reason;
  return j;
}

std::string iso_to_text(const IsoReport& r) {
  std::string s = "isomorphic: ";
  s += to_string(r.isomorphic);
  s += "  (method ";
  s += r.method == IsoMethod::brute ? "brute" : "localized";
  s += ", nodes " + std::to_string(r.stats.nodes) + ", candidates " +
       std::to_string(r.stats.candidates) + ")\n";
  if (r.witness) s += "witness: " + map_to_string(r.witness->map) + "\n";
  if (!r.fallback_reason.empty()) s += "fallback: " + r.fallback_reason + "\n";
  return s;
}

json classification_json(const LocalClassification& cl) {
  json j{{"kind", std::string(to_string(cl.kind))},
         {"neighborhood", map_to_json(cl.neighborhood.elements)},
         {"e", unary_to_json(cl.neighborhood.e)}};
  if (cl.group_order) j["group_order"] = *cl.group_order;
  if (cl.malcev_witness) j["malcev_witness"] = to_string(*cl.malcev_witness);
  if (cl.tc_violation) {
    j["tc_violation"] = json{{"term", to_string(cl.tc_violation->term)},
                             {"arity", cl.tc_violation->arity},
                             {"x", cl.tc_violation->x},
                             {"y", cl.tc_violation->y},
                             {"u", map_to_json(cl.tc_violation->u)},
                             {"v", map_to_json(cl.tc_violation->v)}};
  }
  if (!cl.detail.empty()) j["detail"] = cl.detail;
  return j;
}

std::string classification_text(const LocalClassification& cl) {
  std::string s = "kind: ";
  s += to_string(cl.kind);
  s += "\nneighborhood: " + map_to_string(cl.neighborhood.elements) + "  e = " +
       map_to_string(cl.neighborhood.e.map) + " (witness " + to_string(cl.neighborhood.e.witness) +
       ")\n";
  if (cl.group_order) s += "group order: " + std::to_string(*cl.group_order) + "\n";
  if (cl.malcev_witness) s += "malcev witness: " + to_string(*cl.malcev_witness) + "\n";
  if (cl.tc_violation)
    s += "term-condition violation: " + to_string(cl.tc_violation->term) + " at x=" +
         std::to_string(cl.tc_violation->x) + " y=" + std::to_string(cl.tc_violation->y) +
         " u=" + map_to_string(cl.tc_violation->u) + " v=" + map_to_string(cl.tc_violation->v) +
         "\n";
  if (!cl.detail.empty()) s += "detail: " + cl.detail + "\n";
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx ctx;
  ctx.out = &out;

  CLI::App app{"ualoc: finite universal algebra localization toolkit"};
  app.fallthrough(true);
  std::string format = "text";
  ctx.format = &format;
  app.add_option("--format", format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--arity-bound", ctx.limits.arity_bound, "fragment arity bound (default 3)");
  app.add_option("--max-product-size", ctx.limits.max_product_elements,
                 "largest direct product or probe power");
  app.add_option("--max-search-nodes", ctx.limits.max_search_nodes,
                 "backtracking node bound");
  app.add_option("--jobs", ctx.limits.jobs, "worker threads for parallel scans");
  app.add_option("--lemma21-domain", ctx.lemma21_domain,
                 "domain reading for the separation oracle")
      ->check(CLI::IsMember({"intersect", "require-containment"}));
  app.require_subcommand(1);

  // ---- info --------------------------------------------------------------
  std::string info_sel;
  auto* info = app.add_subcommand("info", "signature and size of an algebra");
  info->add_option("algebra", info_sel)->required();
  info->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(info_sel);
    json jops = json::array();
    std::string text = "algebra " + a.name + ": size " + std::to_string(a.size) + "\n";
    for (const auto& op : a.ops) {
      jops.push_back(json{{"symbol", op.symbol}, {"arity", op.arity}});
      text += "  op " + op.symbol + "/" + std::to_string(op.arity) + "\n";
    }
    emit(ctx, json{{"command", "info"}, {"algebra", a.name}, {"size", a.size}, {"ops", jops}},
         text);
  });

  // ---- unary-monoid / idempotents / minimal-idempotents -------------------
  std::string um_sel;
  auto* um = app.add_subcommand("unary-monoid", "the monoid of unary term operations");
  um->add_option("algebra", um_sel)->required();
  um->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(um_sel);
    const UnaryMonoid m = unary_term_monoid(a, ctx.limits);
    json members = json::array();
    std::string text = "unary monoid of " + a.name + ": " + std::to_string(m.members.size()) +
                       " members\n";
    for (const auto& t : m.members) {
      members.push_back(unary_to_json(t));
      text += "  " + map_to_string(t.map) + "  " + to_string(t.witness) + "\n";
    }
    emit(ctx,
         json{{"command", "unary-monoid"},
              {"algebra", a.name},
              {"count", m.members.size()},
              {"members", members}},
         text);
  });

  std::string id_sel;
  auto* idc = app.add_subcommand("idempotents", "idempotent unary term operations");
  idc->add_option("algebra", id_sel)->required();
  idc->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(id_sel);
    const auto idems = idempotent_unary_terms(a, ctx.limits);
    json members = json::array();
    std::string text = "idempotents of " + a.name + ": " + std::to_string(idems.size()) + "\n";
    for (const auto& t : idems) {
      members.push_back(unary_to_json(t));
      text += "  " + map_to_string(t.map) + "  " + to_string(t.witness) + "\n";
    }
    emit(ctx,
         json{{"command", "idempotents"},
              {"algebra", a.name},
              {"count", idems.size()},
              {"idempotents", members}},
         text);
  });

  std::string mi_sel;
  auto* mic = app.add_subcommand("minimal-idempotents", "minimal idempotents and the chosen one");
  mic->add_option("algebra", mi_sel)->required();
  mic->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(mi_sel);
    const auto mins = minimal_idempotents(a, ctx.limits);
    json members = json::array();
    std::string text = "minimal idempotents of " + a.name + ": " + std::to_string(mins.size()) +
                       "\n";
    for (const auto& t : mins) {
      members.push_back(unary_to_json(t));
      text += "  " + map_to_string(t.map) + "  " + to_string(t.witness) + "\n";
    }
    text += "chosen: " + map_to_string(mins.front().map) + "\n";
    emit(ctx,
         json{{"command", "minimal-idempotents"},
              {"algebra", a.name},
              {"minimal_idempotents", members},
              {"chosen", unary_to_json(mins.front())}},
         text);
  });

  // ---- localize ------------------------------------------------------------
  std::string loc_sel, loc_e;
  auto* loc = app.add_subcommand("localize", "neighborhood and clone fragments");
  loc->add_option("algebra", loc_sel)->required();
  loc->add_option("--e", loc_e, "idempotent map, comma-separated images");
  loc->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(loc_sel);
    const Neighborhood e = select_neighborhood(ctx, a, loc_e);
    json frags = json::array();
    std::string text = "localization of " + a.name + " at e = " + map_to_string(e.e.map) + "\n";
    text += "neighborhood U = " + map_to_string(e.elements) + "\n";
    for (int k = 1; k <= ctx.limits.arity_bound; ++k) {
      const auto ops = localize_clone_fragment(a, e, k, ctx.limits);
      json jops = json::array();
      text += "arity " + std::to_string(k) + ": " + std::to_string(ops.size()) + " operations\n";
      for (const auto& op : ops) {
        jops.push_back(json{{"table", map_to_json(op.table)}, {"witness", to_string(op.witness)}});
        text += "  " + map_to_string(op.table) + "  e∘" + to_string(op.witness) + "\n";
      }
      frags.push_back(json{{"arity", k}, {"operations", jops}});
    }
    emit(ctx,
         json{{"command", "localize"},
              {"algebra", a.name},
              {"e", unary_to_json(e.e)},
              {"neighborhood", map_to_json(e.elements)},
              {"fragments", frags}},
         text);
  });

  // ---- separates / dense / densify ------------------------------------------
  std::string sep_sel, sep_e;
  auto* sep = app.add_subcommand("separates", "does the idempotent separate the algebra");
  sep->add_option("algebra", sep_sel)->required();
  sep->add_option("--e", sep_e, "idempotent map, comma-separated images");
  sep->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(sep_sel);
    const Neighborhood e = select_neighborhood(ctx, a, sep_e);
    const SeparationReport r = separates(e, ctx.limits);
    json j{{"command", "separates"},
           {"algebra", a.name},
           {"e", unary_to_json(e.e)},
           {"separating", r.separating}};
    std::string text = "algebra " + a.name + ": e = " + map_to_string(e.e.map) + "\n";
    if (r.separating) {
      json ws = json::array();
      text += "separating: yes\n";
      for (const auto& w : r.witnesses) {
        ws.push_back(json{{"pair", json::array({w.elements.first, w.elements.second})},
                          {"separator", to_string(w.separator)}});
        text += "  (" + std::to_string(w.elements.first) + ", " +
                std::to_string(w.elements.second) + ") separated by " + to_string(w.separator) +
                "\n";
      }
      j["witnesses"] = ws;
    } else {
      j["inseparable_pair"] =
          json::array({r.inseparable_pair->first, r.inseparable_pair->second});
      text += "separating: no\ninseparable pair: (" + std::to_string(r.inseparable_pair->first) +
              ", " + std::to_string(r.inseparable_pair->second) + ")\n";
      ctx.exit_code = 1;
    }
    emit(ctx, j, text);
  });

  std::string den_sel, den_e;
  auto* den = app.add_subcommand("dense", "does the neighborhood generate the algebra");
  den->add_option("algebra", den_sel)->required();
  den->add_option("--e", den_e, "idempotent map, comma-separated images");
  den->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(den_sel);
    const Neighborhood e = select_neighborhood(ctx, a, den_e);
    const bool d = is_dense(e);
    if (!d) ctx.exit_code = 1;
    emit(ctx,
         json{{"command", "dense"}, {"algebra", a.name}, {"e", unary_to_json(e.e)}, {"dense", d}},
         "algebra " + a.name + ": dense = " + (d ? "yes" : "no") + "\n");
  });

  std::string dfy_sel, dfy_e;
  auto* dfy = app.add_subcommand("densify", "subalgebra generated by the neighborhood");
  dfy->add_option("algebra", dfy_sel)->required();
  dfy->add_option("--e", dfy_e, "idempotent map, comma-separated images");
  dfy->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(dfy_sel);
    const Neighborhood e = select_neighborhood(ctx, a, dfy_e);
    const SubUniverse d = densify(e);
    emit(ctx,
         json{{"command", "densify"},
              {"algebra", a.name},
              {"e", unary_to_json(e.e)},
              {"elements", map_to_json(d.elements)}},
         "densify " + a.name + ": A' = " + map_to_string(d.elements) + "\n");
  });

  // ---- structural verdicts ---------------------------------------------------
  std::string simple_sel;
  auto* simple = app.add_subcommand("simple", "is the algebra simple");
  simple->add_option("algebra", simple_sel)->required();
  simple->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(simple_sel);
    const bool v = is_simple(a, ctx.limits);
    if (!v) ctx.exit_code = 1;
    emit(ctx, json{{"command", "simple"}, {"algebra", a.name}, {"verdict", v}},
         "algebra " + a.name + ": simple = " + (v ? "yes" : "no") + "\n");
  });

  std::string ss_sel;
  auto* ss = app.add_subcommand("strictly-simple", "is the algebra strictly simple");
  ss->add_option("algebra", ss_sel)->required();
  ss->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(ss_sel);
    const bool v = is_strictly_simple(a, ctx.limits);
    if (!v) ctx.exit_code = 1;
    emit(ctx, json{{"command", "strictly-simple"}, {"algebra", a.name}, {"verdict", v}},
         "algebra " + a.name + ": strictly simple = " + (v ? "yes" : "no") + "\n");
  });

  std::string ab_sel;
  auto* ab = app.add_subcommand("abelian", "diagonal test in the square");
  ab->add_option("algebra", ab_sel)->required();
  ab->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(ab_sel);
    const AbelianReport r = is_abelian(a, ctx.limits);
    json j{{"command", "abelian"}, {"algebra", a.name}, {"verdict", r.abelian}};
    std::string text = "algebra " + a.name + ": abelian = " + (r.abelian ? "yes" : "no") + "\n";
    if (r.witness) {
      j["witness"] = map_to_json(*r.witness);
      text += "witness: ((" + std::to_string((*r.witness)[0]) + "," +
              std::to_string((*r.witness)[1]) + "),(" + std::to_string((*r.witness)[2]) + "," +
              std::to_string((*r.witness)[3]) + ")) related in the square\n";
      ctx.exit_code = 1;
    }
    emit(ctx, j, text);
  });

  std::string cls_sel;
  auto* cls = app.add_subcommand("classify", "classification of the localization");
  cls->add_option("algebra", cls_sel)->required();
  cls->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(cls_sel);
    const LocalClassification cl = classify_local(a, ctx.limits);
    if (cl.kind == LocalKind::unknown) ctx.exit_code = 3;
    json j = classification_json(cl);
    j["command"] = "classify";
    j["algebra"] = a.name;
    emit(ctx, j, "algebra " + a.name + "\n" + classification_text(cl));
  });

  std::string sab_sel;
  auto* sab = app.add_subcommand("strongly-abelian", "strongly abelian verdict");
  sab->add_option("algebra", sab_sel)->required();
  sab->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(sab_sel);
    const Verdict v = strongly_abelian_verdict(a, ctx.limits);
    ctx.exit_code = verdict_exit(v);
    emit(ctx,
         json{{"command", "strongly-abelian"},
              {"algebra", a.name},
              {"verdict", std::string(to_string(v))}},
         "algebra " + a.name + ": strongly abelian = " + std::string(to_string(v)) + "\n");
  });

  std::string proj_sel;
  auto* proj = app.add_subcommand("projective", "projectivity in the generated variety");
  proj->add_option("algebra", proj_sel)->required();
  proj->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(proj_sel);
    const ProjectivityVerdict v = projectivity_verdict(a, ctx.limits);
    ctx.exit_code = verdict_exit(v.projective);
    json j{{"command", "projective"},
           {"algebra", a.name},
           {"projective", std::string(to_string(v.projective))},
           {"reason", v.reason},
           {"classification", classification_json(v.classification)}};
    emit(ctx, j,
         "algebra " + a.name + ": projective = " + std::string(to_string(v.projective)) +
             "\nreason: " + v.reason + "\n" + classification_text(v.classification));
  });

  // ---- isomorphism ------------------------------------------------------------
  std::string iso_a, iso_b, iso_method = "both";
  auto* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("algebraA", iso_a)->required();
  iso->add_option("algebraB", iso_b)->required();
  iso->add_option("--method", iso_method, "brute, local or both")
      ->check(CLI::IsMember({"brute", "local", "both"}));
  iso->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(iso_a);
    const FiniteAlgebra& b = ctx.store.resolve(iso_b);
    json j{{"command", "iso"}, {"algebraA", a.name}, {"algebraB", b.name}, {"method", iso_method}};
    std::string text;
    Verdict verdict = Verdict::unknown;
    if (iso_method == "brute") {
      const IsoReport r = brute_force_isomorphism(a, b, ctx.limits);
      verdict = r.isomorphic;
      j["brute"] = iso_to_json(r);
      text += iso_to_text(r);
    } else if (iso_method == "local") {
      const IsoReport r = iso_via_localization(a, b, ctx.limits);
      verdict = r.isomorphic;
      j["localized"] = iso_to_json(r);
      text += iso_to_text(r);
    } else {
      const IsoReport rb = brute_force_isomorphism(a, b, ctx.limits);
      const IsoReport rl = iso_via_localization(a, b, ctx.limits);
      j["brute"] = iso_to_json(rb);
      j["localized"] = iso_to_json(rl);
      const bool agree = rb.isomorphic == rl.isomorphic || rb.isomorphic == Verdict::unknown ||
                         rl.isomorphic == Verdict::unknown;
      j["agree"] = agree;
      text += "brute:     " + iso_to_text(rb) + "localized: " + iso_to_text(rl);
      if (!agree) throw invariant_error("iso: the two methods disagree");
      verdict = rb.isomorphic != Verdict::unknown ? rb.isomorphic : rl.isomorphic;
    }
    j["verdict"] = std::string(to_string(verdict));
    ctx.exit_code = verdict_exit(verdict);
    emit(ctx, j, text);
  });

  // ---- hom enumeration ----------------------------------------------------------
  std::string homs_a, homs_b;
  auto* homs = app.add_subcommand("homs", "all homomorphisms A -> B");
  homs->add_option("algebraA", homs_a)->required();
  homs->add_option("algebraB", homs_b)->required();
  homs->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(homs_a);
    const FiniteAlgebra& b = ctx.store.resolve(homs_b);
    const auto hs = enumerate_homomorphisms(a, b, ctx.limits);
    json arr = json::array();
    std::string text = "homomorphisms " + a.name + " -> " + b.name + ": " +
                       std::to_string(hs.size()) + "\n";
    for (const auto& h : hs) {
      arr.push_back(map_to_json(h.map));
      text += "  " + map_to_string(h.map) + "\n";
    }
    emit(ctx,
         json{{"command", "homs"},
              {"algebraA", a.name},
              {"algebraB", b.name},
              {"count", hs.size()},
              {"homs", arr}},
         text);
  });

  std::string lh_a, lh_b, lh_e;
  auto* lh = app.add_subcommand("local-homs", "homomorphisms of the localizations");
  lh->add_option("algebraA", lh_a)->required();
  lh->add_option("algebraB", lh_b)->required();
  lh->add_option("--e", lh_e, "idempotent map in A, comma-separated images");
  lh->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(lh_a);
    const FiniteAlgebra& b = ctx.store.resolve(lh_b);
    const Neighborhood ea = select_neighborhood(ctx, a, lh_e);
    const Neighborhood eb = interpret_neighborhood(b, ea.e.witness);
    const auto ls = enumerate_local_homs(ea, eb, ctx.limits);
    json arr = json::array();
    std::string text = "local homs e(" + a.name + ") -> e(" + b.name + "): " +
                       std::to_string(ls.size()) + "\n";
    text += "U_A = " + map_to_string(ea.elements) + ", U_B = " + map_to_string(eb.elements) + "\n";
    for (const auto& l : ls) {
      arr.push_back(map_to_json(l.image));
      text += "  " + map_to_string(l.image) + "\n";
    }
    emit(ctx,
         json{{"command", "local-homs"},
              {"algebraA", a.name},
              {"algebraB", b.name},
              {"neighborhoodA", map_to_json(ea.elements)},
              {"neighborhoodB", map_to_json(eb.elements)},
              {"count", ls.size()},
              {"maps", arr}},
         text);
  });

  std::string lift_a, lift_b, lift_e, lift_map;
  auto* lift = app.add_subcommand("lift", "lift a local homomorphism");
  lift->add_option("algebraA", lift_a)->required();
  lift->add_option("algebraB", lift_b)->required();
  lift->add_option("--e", lift_e, "idempotent map in A, comma-separated images");
  lift->add_option("--map", lift_map, "images of U_A in U_B, comma-separated")->required();
  lift->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(lift_a);
    const FiniteAlgebra& b = ctx.store.resolve(lift_b);
    const Neighborhood ea = select_neighborhood(ctx, a, lift_e);
    const Neighborhood eb = interpret_neighborhood(b, ea.e.witness);
    std::vector<int> image;
    std::stringstream ss(lift_map);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) image.push_back(std::stoi(tok));
    if (image.size() != ea.elements.size())
      throw precondition_error("--map expects " + std::to_string(ea.elements.size()) + " values");
    const LocalMap lm{ea, eb, image};
    if (!is_local_hom(lm, ctx.limits)) {
      ctx.exit_code = 1;
      emit(ctx,
           json{{"command", "lift"}, {"local_map", map_to_json(image)}, {"local_hom", false}},
           "the map " + map_to_string(image) + " is not a local homomorphism\n");
      return;
    }
    const HomGraph lifted = lift_local_hom(lm, ctx.limits);
    emit(ctx,
         json{{"command", "lift"},
              {"local_map", map_to_json(image)},
              {"local_hom", true},
              {"lift", map_to_json(lifted.map)}},
         "local map " + map_to_string(image) + " lifts to " + map_to_string(lifted.map) + "\n");
  });

  // ---- free algebras and the retract oracle -----------------------------------
  std::string free_sel;
  int free_gens = 1;
  auto* freec = app.add_subcommand("free", "free algebra on k generators in ISP(A)");
  freec->add_option("algebra", free_sel)->required();
  freec->add_option("--gens", free_gens, "number of generators")->required();
  freec->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(free_sel);
    const FreeAlgebraResult f = free_algebra(a, free_gens, ctx.limits);
    std::string text = "free algebra on " + std::to_string(free_gens) + " generators over " +
                       a.name + ": " + std::to_string(f.algebra.size) + " elements\n";
    text += "generators: " + map_to_string(f.generators) + "\n";
    text += render_algebra(f.algebra);
    emit(ctx,
         json{{"command", "free"},
              {"algebra", a.name},
              {"rank", free_gens},
              {"size", f.algebra.size},
              {"generators", map_to_json(f.generators)},
              {"render", render_algebra(f.algebra)}},
         text);
  });

  std::string ro_p, ro_a;
  int ro_gens = 0;
  auto* ro = app.add_subcommand("retract-oracle", "is P a retract of a free algebra over A");
  ro->add_option("algebraP", ro_p)->required();
  ro->add_option("algebraA", ro_a)->required();
  ro->add_option("--gens", ro_gens, "free algebra rank (default: least generating set of P)");
  ro->callback([&] {
    const FiniteAlgebra& p = ctx.store.resolve(ro_p);
    const FiniteAlgebra& a = ctx.store.resolve(ro_a);
    const RetractReport r = retract_oracle(
        p, a, ro_gens > 0 ? std::optional<int>(ro_gens) : std::nullopt, ctx.limits);
    ctx.exit_code = verdict_exit(r.retract);
    json j{{"command", "retract-oracle"},
           {"algebraP", p.name},
           {"algebraA", a.name},
           {"verdict", std::string(to_string(r.retract))},
           {"rank", r.rank},
           {"free_size", r.free_size}};
    std::string text = "retract of F" + std::to_string(r.rank) + "(" + a.name + ") (" +
                       std::to_string(r.free_size) + " elements): " +
                       std::string(to_string(r.retract)) + "\n";
    if (r.sigma) {
      j["sigma"] = map_to_json(r.sigma->map);
      j["tau"] = map_to_json(r.tau->map);
      text += "sigma: " + map_to_string(r.sigma->map) + "\ntau:   " + map_to_string(r.tau->map) +
              "\n";
    }
    if (r.l_variant.ran) {
      j["l_variant"] = json{{"l_size", r.l_variant.l_size},
                            {"p_dense", r.l_variant.p_dense},
                            {"restrictions_surjective", r.l_variant.restrictions_surjective}};
      text += "L-variant: |L| = " + std::to_string(r.l_variant.l_size) +
              (r.l_variant.p_dense
                   ? std::string(", σ|L surjective for every surjection: ") +
                         (r.l_variant.restrictions_surjective ? "yes" : "no")
                   : std::string(", P not dense for e")) +
              "\n";
    }
    emit(ctx, j, text);
  });

  // ---- oracle-lemma21 -----------------------------------------------------------
  std::string l21_sel, l21_e;
  auto* l21 = app.add_subcommand("oracle-lemma21", "brute-force separation oracle");
  l21->add_option("algebra", l21_sel)->required();
  l21->add_option("--e", l21_e, "idempotent map, comma-separated images");
  l21->callback([&] {
    const FiniteAlgebra& a = ctx.store.resolve(l21_sel);
    const Neighborhood e = select_neighborhood(ctx, a, l21_e);
    const Lemma21Report r = lemma21_oracle(e, domain_of(ctx), ctx.limits);
    json j{{"command", "oracle-lemma21"},
           {"algebra", a.name},
           {"e", unary_to_json(e.e)},
           {"holds", r.holds}};
    std::string text =
        "algebra " + a.name + ": oracle = " + (r.holds ? "separating" : "not separating") + "\n";
    if (r.iso) {
      json pairs = json::array();
      for (const auto& [x, y] : r.iso->mapping) pairs.push_back(json::array({x, y}));
      j["iso_counterexample"] = json{{"domain", map_to_json(r.iso->domain)}, {"mapping", pairs}};
      text += "counterexample isomorphism on " + map_to_string(r.iso->domain) + "\n";
    }
    if (r.congruence) {
      j["congruence_counterexample"] = json{{"carrier", map_to_json(r.congruence->carrier)},
                                            {"classes", map_to_json(r.congruence->class_of)}};
      text += "counterexample congruence on " + map_to_string(r.congruence->carrier) +
              " with classes " + map_to_string(r.congruence->class_of) + "\n";
    }
    if (!r.holds) ctx.exit_code = 1;
    emit(ctx, j, text);
  });

  // ---- corpus --------------------------------------------------------------------
  std::string corpus_dir = ".";
  auto* corp = app.add_subcommand("corpus", "write the builtin algebras to files");
  corp->add_option("--dir", corpus_dir, "output directory");
  corp->callback([&] {
    json written = json::array();
    std::string text;
    for (const FiniteAlgebra& a : builtin_corpus()) {
      const std::string path = corpus_dir + "/" + a.name + ".ua";
      std::ofstream out_file(path);
      if (!out_file) throw precondition_error("cannot write '" + path + "'");
      out_file << render_algebra(a);
      written.push_back(path);
      text += "wrote " + path + "\n";
    }
    emit(ctx, json{{"command", "corpus"}, {"written", written}}, text);
  });

  // ---- parse and dispatch -----------------------------------------------------------
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const resource_limit_error& e) {
    if (format == "json")
      out << json{{"verdict", "unknown"}, {"error", e.what()}}.dump(2) << "\n";
    else
      out << "unknown: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}

}  // namespace ualoc
